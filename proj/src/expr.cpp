#include "vortexsym/expr.hpp"

#include <algorithm>
#include <utility>

namespace vortexsym {

Expr Expr::make(ExprNode n) {
    Expr e;
    e.node_ = std::make_shared<const ExprNode>(std::move(n));
    return e;
}

bool Expr::operator==(const Expr& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    const ExprNode& a = *node_;
    const ExprNode& b = *o.node_;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Number:
            return a.number == b.number;
        case NodeKind::Variable:
            return a.var == b.var;
        case NodeKind::Function:
            if (a.func_name != b.func_name || a.func_deriv != b.func_deriv) return false;
            break;
        case NodeKind::Power:
            if (a.exponent != b.exponent) return false;
            break;
        default:
            break;
    }
    if (a.kids.size() != b.kids.size()) return false;
    for (size_t i = 0; i < a.kids.size(); ++i)
        if (!(a.kids[i] == b.kids[i])) return false;
    return true;
}

Expr num(Rational value) {
    ExprNode n;
    n.kind = NodeKind::Number;
    n.number = std::move(value);
    return Expr::make(std::move(n));
}

Expr num(long long value) { return num(Rational(value)); }

Expr num(long long numer, long long denom) {
    if (denom == 0) throw Error("rational constant with zero denominator");
    return num(Rational(Integer(numer), Integer(denom)));
}

Expr var(Var v) {
    if (!v.valid()) throw Error("variable handle is empty");
    ExprNode n;
    n.kind = NodeKind::Variable;
    n.var = std::move(v);
    return Expr::make(std::move(n));
}

Expr func(const std::string& name, std::vector<int> deriv, std::vector<Expr> args) {
    if (args.empty()) throw Error("function symbol needs at least one argument: " + name);
    if (deriv.empty()) deriv.assign(args.size(), 0);
    if (deriv.size() != args.size())
        throw Error("derivative multi-index length mismatch for " + name);
    for (int c : deriv)
        if (c < 0) throw Error("negative derivative count for " + name);
    ExprNode n;
    n.kind = NodeKind::Function;
    n.func_name = name;
    n.func_deriv = std::move(deriv);
    n.kids = std::move(args);
    return Expr::make(std::move(n));
}

Expr func(const std::string& name, std::vector<Expr> args) {
    return func(name, {}, std::move(args));
}

Expr exp_of(Expr arg) {
    ExprNode n;
    n.kind = NodeKind::Exp;
    n.kids.push_back(std::move(arg));
    return Expr::make(std::move(n));
}

Expr ln_of(Expr arg) {
    ExprNode n;
    n.kind = NodeKind::Ln;
    n.kids.push_back(std::move(arg));
    return Expr::make(std::move(n));
}

Expr sum(std::vector<Expr> terms) {
    if (terms.empty()) return num(0);
    if (terms.size() == 1) return terms[0];
    ExprNode n;
    n.kind = NodeKind::Sum;
    n.kids = std::move(terms);
    return Expr::make(std::move(n));
}

Expr product(std::vector<Expr> factors) {
    if (factors.empty()) return num(1);
    if (factors.size() == 1) return factors[0];
    ExprNode n;
    n.kind = NodeKind::Product;
    n.kids = std::move(factors);
    return Expr::make(std::move(n));
}

Expr power(Expr base, long long exponent) {
    if (exponent == 1) return base;
    ExprNode n;
    n.kind = NodeKind::Power;
    n.kids.push_back(std::move(base));
    n.exponent = exponent;
    return Expr::make(std::move(n));
}

Expr add(Expr a, Expr b) { return sum({std::move(a), std::move(b)}); }

Expr sub(Expr a, Expr b) { return add(std::move(a), neg(std::move(b))); }

Expr mul(Expr a, Expr b) { return product({std::move(a), std::move(b)}); }

Expr div(Expr a, Expr b) { return mul(std::move(a), power(std::move(b), -1)); }

Expr neg(Expr a) {
    if (a.kind() == NodeKind::Number) return num(Rational(-a.number()));
    return mul(num(-1), std::move(a));
}

bool contains_var(const Expr& e, const Var& v) {
    if (e.kind() == NodeKind::Variable) return e.var() == v;
    for (const Expr& k : e.kids())
        if (contains_var(k, v)) return true;
    return false;
}

void collect_vars(const Expr& e, std::set<Var>& out) {
    if (e.kind() == NodeKind::Variable) {
        out.insert(e.var());
        return;
    }
    for (const Expr& k : e.kids()) collect_vars(k, out);
}

std::set<Var> vars_of(const Expr& e) {
    std::set<Var> out;
    collect_vars(e, out);
    return out;
}

namespace {

void scan_orders(const Expr& e, std::map<std::string, int>& out) {
    if (e.kind() == NodeKind::Function) {
        int total = 0;
        for (int c : e.func_deriv()) total += c;
        auto it = out.find(e.func_name());
        if (it == out.end())
            out[e.func_name()] = total;
        else
            it->second = std::max(it->second, total);
    }
    for (const Expr& k : e.kids()) scan_orders(k, out);
}

}  // namespace

std::map<std::string, int> max_derivative_orders(const Expr& e) {
    std::map<std::string, int> out;
    scan_orders(e, out);
    return out;
}

namespace {

bool is_const(const Expr& e, long long value) {
    return e.kind() == NodeKind::Number && e.number() == value;
}

// Derivatives produce many zero and unit factors; folding them away here
// keeps results readable and makes equal derivatives structurally equal.
Expr dmul(std::vector<Expr> factors) {
    std::vector<Expr> kept;
    kept.reserve(factors.size());
    for (Expr& f : factors) {
        if (is_const(f, 0)) return num(0);
        if (is_const(f, 1)) continue;
        kept.push_back(std::move(f));
    }
    return product(std::move(kept));
}

Expr dsum(std::vector<Expr> parts) {
    std::vector<Expr> kept;
    kept.reserve(parts.size());
    for (Expr& p : parts) {
        if (is_const(p, 0)) continue;
        kept.push_back(std::move(p));
    }
    return sum(std::move(kept));
}

}  // namespace

Expr differentiate(const Expr& e, const Var& v) {
    switch (e.kind()) {
        case NodeKind::Number:
            return num(0);
        case NodeKind::Variable:
            return e.var() == v ? num(1) : num(0);
        case NodeKind::Exp:
            return dmul({e, differentiate(e.kids()[0], v)});
        case NodeKind::Ln: {
            Expr d = differentiate(e.kids()[0], v);
            if (is_const(d, 0)) return num(0);
            return dmul({std::move(d), power(e.kids()[0], -1)});
        }
        case NodeKind::Sum: {
            std::vector<Expr> parts;
            parts.reserve(e.kids().size());
            for (const Expr& k : e.kids()) parts.push_back(differentiate(k, v));
            return dsum(std::move(parts));
        }
        case NodeKind::Product: {
            std::vector<Expr> parts;
            const auto& fs = e.kids();
            for (size_t i = 0; i < fs.size(); ++i) {
                std::vector<Expr> factors;
                factors.reserve(fs.size());
                for (size_t j = 0; j < fs.size(); ++j)
                    factors.push_back(j == i ? differentiate(fs[j], v) : fs[j]);
                parts.push_back(dmul(std::move(factors)));
            }
            return dsum(std::move(parts));
        }
        case NodeKind::Power: {
            const Expr& base = e.kids()[0];
            long long n = e.exponent();
            if (n == 0) return num(0);
            return dmul({num(n), power(base, n - 1), differentiate(base, v)});
        }
        case NodeKind::Function: {
            std::vector<Expr> parts;
            const auto& args = e.kids();
            for (size_t r = 0; r < args.size(); ++r) {
                Expr darg = differentiate(args[r], v);
                if (is_const(darg, 0)) continue;
                std::vector<int> bumped = e.func_deriv();
                bumped[r] += 1;
                parts.push_back(
                    dmul({func(e.func_name(), std::move(bumped), args), std::move(darg)}));
            }
            return dsum(std::move(parts));
        }
    }
    throw Error("differentiate: unreachable node kind");
}

Expr replace_subtree(const Expr& e, const Expr& needle, const Expr& replacement) {
    if (e == needle) return replacement;
    if (e.kids().empty()) return e;
    std::vector<Expr> kids;
    kids.reserve(e.kids().size());
    bool changed = false;
    for (const Expr& k : e.kids()) {
        kids.push_back(replace_subtree(k, needle, replacement));
        changed = changed || !(kids.back() == k);
    }
    if (!changed) return e;
    switch (e.kind()) {
        case NodeKind::Function:
            return func(e.func_name(), e.func_deriv(), std::move(kids));
        case NodeKind::Exp:
            return exp_of(std::move(kids[0]));
        case NodeKind::Ln:
            return ln_of(std::move(kids[0]));
        case NodeKind::Sum:
            return sum(std::move(kids));
        case NodeKind::Product:
            return product(std::move(kids));
        case NodeKind::Power:
            return power(std::move(kids[0]), e.exponent());
        default:
            throw Error("replace_subtree: unreachable node kind");
    }
}

Expr substitute(const Expr& e, const std::map<Var, Expr>& bindings) {
    switch (e.kind()) {
        case NodeKind::Number:
            return e;
        case NodeKind::Variable: {
            auto it = bindings.find(e.var());
            return it == bindings.end() ? e : it->second;
        }
        default: {
            std::vector<Expr> kids;
            kids.reserve(e.kids().size());
            bool changed = false;
            for (const Expr& k : e.kids()) {
                kids.push_back(substitute(k, bindings));
                changed = changed || !(kids.back() == k);
            }
            if (!changed) return e;
            switch (e.kind()) {
                case NodeKind::Function:
                    return func(e.func_name(), e.func_deriv(), std::move(kids));
                case NodeKind::Exp:
                    return exp_of(std::move(kids[0]));
                case NodeKind::Ln:
                    return ln_of(std::move(kids[0]));
                case NodeKind::Sum:
                    return sum(std::move(kids));
                case NodeKind::Product:
                    return product(std::move(kids));
                case NodeKind::Power:
                    return power(std::move(kids[0]), e.exponent());
                default:
                    throw Error("substitute: unreachable node kind");
            }
        }
    }
}

}  // namespace vortexsym
