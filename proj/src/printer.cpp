#include "vortexsym/printer.hpp"

#include <sstream>

namespace vortexsym {

namespace {

// Precedence context the fragment is printed into.
enum Prec { PrecSum = 0, PrecProduct = 1, PrecPower = 2 };

void print(std::ostream& os, const Expr& e, int prec);

// Splits a leading minus off a term so sums can render "a - b".
bool split_negative(const Expr& e, Expr& magnitude) {
    if (e.kind() == NodeKind::Number) {
        if (e.number() < 0) {
            magnitude = num(Rational(-e.number()));
            return true;
        }
        return false;
    }
    if (e.kind() == NodeKind::Product && !e.kids().empty() &&
        e.kids()[0].kind() == NodeKind::Number && e.kids()[0].number() < 0) {
        std::vector<Expr> kids = e.kids();
        Rational lead = -kids[0].number();
        if (lead == 1 && kids.size() > 1)
            kids.erase(kids.begin());
        else
            kids[0] = num(lead);
        magnitude = product(std::move(kids));
        return true;
    }
    return false;
}

void print_derivative_suffix(std::ostream& os, const std::vector<int>& deriv) {
    std::vector<int> positions;
    for (size_t slot = 0; slot < deriv.size(); ++slot)
        for (int c = 0; c < deriv[slot]; ++c) positions.push_back(static_cast<int>(slot) + 1);
    if (positions.empty()) return;
    bool single_digits = positions.back() <= 9;
    os << '_';
    if (single_digits) {
        for (int p : positions) os << p;
    } else {
        os << '[';
        for (size_t i = 0; i < positions.size(); ++i) {
            if (i) os << ',';
            os << positions[i];
        }
        os << ']';
    }
}

void print_call(std::ostream& os, const char* name, const Expr& arg) {
    os << name << '(';
    print(os, arg, PrecSum);
    os << ')';
}

void print_product(std::ostream& os, const Expr& e) {
    std::vector<Expr> upper;
    std::vector<Expr> lower;  // bases of negative powers
    std::vector<long long> lower_exp;
    for (const Expr& f : e.kids()) {
        if (f.kind() == NodeKind::Power && f.exponent() < 0) {
            lower.push_back(f.kids()[0]);
            lower_exp.push_back(-f.exponent());
        } else {
            upper.push_back(f);
        }
    }
    auto print_factor = [&os](const Expr& f, long long exp) {
        bool needs_parens = false;
        if (exp != 1) {
            // power base must be atomic in the grammar
            needs_parens = f.kind() == NodeKind::Sum || f.kind() == NodeKind::Product ||
                           f.kind() == NodeKind::Power ||
                           (f.kind() == NodeKind::Number &&
                            (f.number() < 0 || !rat_is_integer(f.number())));
        } else {
            needs_parens = f.kind() == NodeKind::Sum ||
                           (f.kind() == NodeKind::Number && f.number() < 0);
        }
        if (needs_parens) {
            os << '(';
            print(os, f, PrecSum);
            os << ')';
        } else {
            print(os, f, exp != 1 ? PrecPower : PrecProduct);
        }
        if (exp != 1) os << '^' << exp;
    };
    if (upper.empty()) {
        os << '1';
    } else {
        for (size_t i = 0; i < upper.size(); ++i) {
            if (i) os << '*';
            print_factor(upper[i], 1);
        }
    }
    for (size_t i = 0; i < lower.size(); ++i) {
        os << '/';
        print_factor(lower[i], lower_exp[i]);
    }
}

void print(std::ostream& os, const Expr& e, int prec) {
    switch (e.kind()) {
        case NodeKind::Number: {
            const Rational& r = e.number();
            bool composite = r < 0 || !rat_is_integer(r);
            if (composite && prec >= PrecProduct) {
                os << '(' << rat_to_string(r) << ')';
            } else {
                os << rat_to_string(r);
            }
            return;
        }
        case NodeKind::Variable:
            os << e.var().name();
            return;
        case NodeKind::Exp:
            print_call(os, "exp", e.kids()[0]);
            return;
        case NodeKind::Ln:
            print_call(os, "ln", e.kids()[0]);
            return;
        case NodeKind::Function: {
            os << e.func_name();
            print_derivative_suffix(os, e.func_deriv());
            os << '(';
            for (size_t i = 0; i < e.kids().size(); ++i) {
                if (i) os << ',';
                print(os, e.kids()[i], PrecSum);
            }
            os << ')';
            return;
        }
        case NodeKind::Sum: {
            if (prec > PrecSum) os << '(';
            for (size_t i = 0; i < e.kids().size(); ++i) {
                Expr magnitude;
                if (i == 0) {
                    if (split_negative(e.kids()[i], magnitude)) {
                        os << '-';
                        print(os, magnitude, PrecProduct);
                    } else {
                        print(os, e.kids()[i], PrecSum);
                    }
                } else if (split_negative(e.kids()[i], magnitude)) {
                    os << " - ";
                    print(os, magnitude, PrecProduct);
                } else {
                    os << " + ";
                    print(os, e.kids()[i], PrecProduct);
                }
            }
            if (prec > PrecSum) os << ')';
            return;
        }
        case NodeKind::Product: {
            if (prec > PrecProduct) os << '(';
            print_product(os, e);
            if (prec > PrecProduct) os << ')';
            return;
        }
        case NodeKind::Power: {
            const Expr& base = e.kids()[0];
            bool needs_parens = base.kind() == NodeKind::Sum ||
                                base.kind() == NodeKind::Product ||
                                base.kind() == NodeKind::Power ||
                                (base.kind() == NodeKind::Number &&
                                 (base.number() < 0 || !rat_is_integer(base.number())));
            if (needs_parens) {
                os << '(';
                print(os, base, PrecSum);
                os << ')';
            } else {
                print(os, base, PrecPower);
            }
            os << '^' << e.exponent();
            return;
        }
    }
    throw Error("to_dsl: unreachable node kind");
}

}  // namespace

std::string to_dsl(const Expr& e) {
    std::ostringstream os;
    Expr magnitude;
    if (e.kind() != NodeKind::Sum && split_negative(e, magnitude)) {
        os << '-';
        print(os, magnitude, PrecProduct);
    } else {
        print(os, e, PrecSum);
    }
    return os.str();
}

}  // namespace vortexsym
