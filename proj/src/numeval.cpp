#include "vortexsym/numeval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace vortexsym {

namespace {

// value with a running magnitude estimate; the scale bounds the size of the
// intermediate quantities that were combined, so |value| / max(1, scale)
// measures cancellation depth rather than raw smallness
struct VS {
    double v = 0.0;
    double s = 0.0;
};

struct SingularPoint {};  // resample signal, never escapes this file

double falling(int d, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= static_cast<double>(d - i);
    return r;
}

// Opaque function symbols are modelled as short sums of powers of affine
// forms, c_r * (w_r . u + b_r)^{d_r}; every partial derivative of any order
// then has a closed form, so sampled derivatives stay exactly consistent
// with sampled values.
struct FuncModel {
    struct Component {
        double c = 0.0;
        double b = 0.0;
        std::vector<double> w;
        int d = 0;
    };
    std::vector<Component> comps;

    double eval(const std::vector<double>& args, const std::vector<int>& deriv) const {
        int total = 0;
        for (int m : deriv) total += m;
        double out = 0.0;
        for (const Component& comp : comps) {
            if (comp.d < total) continue;
            double inner = comp.b;
            for (size_t i = 0; i < args.size(); ++i) inner += comp.w[i] * args[i];
            double term = comp.c * falling(comp.d, total);
            for (size_t i = 0; i < args.size(); ++i)
                for (int k = 0; k < deriv[i]; ++k) term *= comp.w[i];
            term *= std::pow(inner, comp.d - total);
            out += term;
        }
        return out;
    }
};

struct SymbolKey {
    std::string name;
    size_t arity = 0;
    bool operator<(const SymbolKey& o) const {
        if (name != o.name) return name < o.name;
        return arity < o.arity;
    }
};

void scan_symbols(const Expr& e, std::map<SymbolKey, int>& max_order) {
    if (e.kind() == NodeKind::Function) {
        int total = 0;
        for (int m : e.func_deriv()) total += m;
        int& cur = max_order[SymbolKey{e.func_name(), e.kids().size()}];
        cur = std::max(cur, total);
    }
    for (const Expr& k : e.kids()) scan_symbols(k, max_order);
}

class Evaluator {
public:
    const std::map<Var, double>* vars = nullptr;
    const std::map<SymbolKey, FuncModel>* models = nullptr;  // null: closed only
    bool strict = false;  // true: throw EvalError instead of SingularPoint

    VS eval(const Expr& e) {
        VS r = eval_inner(e);
        if (!std::isfinite(r.v) || !std::isfinite(r.s)) fail("overflow in evaluation");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) {
        if (strict) throw EvalError(what);
        throw SingularPoint{};
    }

    VS eval_inner(const Expr& e) {
        switch (e.kind()) {
            case NodeKind::Number: {
                double v = rat_to_double(e.number());
                return VS{v, std::abs(v)};
            }
            case NodeKind::Variable: {
                auto it = vars->find(e.var());
                if (it == vars->end())
                    fail("no value supplied for variable '" + e.var().name() + "'");
                return VS{it->second, std::abs(it->second)};
            }
            case NodeKind::Exp: {
                VS a = eval(e.kids()[0]);
                if (a.v > 700.0) fail("exp overflow");
                double v = std::exp(a.v);
                return VS{v, v * (1.0 + a.s)};
            }
            case NodeKind::Ln: {
                VS a = eval(e.kids()[0]);
                if (a.v <= 0.0) fail("ln of a non-positive value");
                double v = std::log(a.v);
                return VS{v, a.s / a.v + std::abs(v) + 1.0};
            }
            case NodeKind::Sum: {
                VS acc{0.0, 0.0};
                for (const Expr& k : e.kids()) {
                    VS a = eval(k);
                    acc.v += a.v;
                    acc.s += a.s;
                }
                return acc;
            }
            case NodeKind::Product: {
                VS acc{1.0, 1.0};
                for (const Expr& k : e.kids()) {
                    VS a = eval(k);
                    acc.v *= a.v;
                    acc.s *= a.s;
                }
                return acc;
            }
            case NodeKind::Power: {
                VS a = eval(e.kids()[0]);
                long long n = e.exponent();
                if (n < 0) {
                    if (std::abs(a.v) < 1e-12 * std::max(1.0, a.s))
                        fail("division by a vanishing value");
                    a = VS{1.0 / a.v, a.s / (a.v * a.v)};
                    n = -n;
                }
                VS out{1.0, 1.0};
                for (long long i = 0; i < n; ++i) {
                    out.v *= a.v;
                    out.s *= std::max(a.s, std::abs(a.v));
                }
                return out;
            }
            case NodeKind::Function: {
                if (!models)
                    fail("cannot numerically evaluate opaque function '" +
                         e.func_name() + "'");
                auto it = models->find(SymbolKey{e.func_name(), e.kids().size()});
                if (it == models->end()) fail("no model for '" + e.func_name() + "'");
                std::vector<double> args;
                double args_scale = 1.0;
                args.reserve(e.kids().size());
                for (const Expr& k : e.kids()) {
                    VS a = eval(k);
                    args.push_back(a.v);
                    args_scale = std::max(args_scale, a.s);
                }
                double v = it->second.eval(args, e.func_deriv());
                return VS{v, (std::abs(v) + 1.0) * args_scale};
            }
        }
        fail("unreachable node kind");
    }
};

}  // namespace

double eval_closed(const Expr& e, const std::map<Var, double>& values) {
    Evaluator ev;
    ev.vars = &values;
    ev.models = nullptr;
    ev.strict = true;
    return ev.eval(e).v;
}

ZeroSampleResult sample_for_zero(const Expr& e, const ZeroOptions& opts) {
    ZeroSampleResult result;
    std::set<Var> var_set = vars_of(e);
    std::vector<Var> var_list(var_set.begin(), var_set.end());
    std::map<SymbolKey, int> symbols;
    scan_symbols(e, symbols);

    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> grid(16, 256);      // value = k/64 in [1/4, 4]
    std::uniform_int_distribution<int> coeff(32, 128);     // |c| = k/64 in [1/2, 2]
    std::uniform_int_distribution<int> sign(0, 1);

    int budget = opts.retry_factor * opts.samples;
    int draws = 0;
    while (result.samples_used < opts.samples && draws < budget) {
        ++draws;
        std::map<Var, double> values;
        for (const Var& v : var_list) values[v] = grid(rng) / 64.0;
        std::map<SymbolKey, FuncModel> models;
        for (const auto& sym : symbols) {
            FuncModel model;
            for (int r = 0; r < 3; ++r) {
                FuncModel::Component comp;
                comp.c = (sign(rng) ? 1.0 : -1.0) * (coeff(rng) / 64.0);
                comp.b = coeff(rng) / 64.0;
                comp.d = sym.second + 1 + r;
                double m = std::max<size_t>(sym.first.arity, 1);
                std::uniform_int_distribution<int> wdist(16, 64);
                comp.w.reserve(sym.first.arity);
                for (size_t i = 0; i < sym.first.arity; ++i)
                    comp.w.push_back((sign(rng) ? 1.0 : -1.0) * wdist(rng) / (64.0 * m));
                model.comps.push_back(std::move(comp));
            }
            models.emplace(sym.first, std::move(model));
        }
        Evaluator ev;
        ev.vars = &values;
        ev.models = &models;
        ev.strict = false;
        try {
            VS r = ev.eval(e);
            ++result.samples_used;
            double rel = std::abs(r.v) / std::max(1.0, r.s);
            result.max_rel = std::max(result.max_rel, rel);
            result.max_abs = std::max(result.max_abs, std::abs(r.v));
            if (rel > opts.tolerance) {
                result.exceeded = true;
                return result;
            }
        } catch (const SingularPoint&) {
            continue;
        }
    }
    if (result.samples_used < opts.samples) result.exhausted = true;
    return result;
}

}  // namespace vortexsym
