#pragma once

#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "vortexsym/rational.hpp"
#include "vortexsym/workspace.hpp"

namespace vortexsym {

enum class NodeKind {
    Number,    // exact rational constant
    Variable,  // reference to a workspace variable
    Function,  // opaque function symbol application, with derivative multi-index
    Exp,       // exp(arg)
    Ln,        // ln(arg), opaque atom apart from exp-factor peeling
    Sum,       // n-ary sum
    Product,   // n-ary product
    Power,     // integer power; exponent -1 encodes division
};

class Expr;

struct ExprNode {
    NodeKind kind;

    Rational number;              // Number
    Var var;                      // Variable
    std::string func_name;        // Function
    std::vector<int> func_deriv;  // Function: per-slot derivative counts
    std::vector<Expr> kids;       // Function args, Exp/Ln arg, Sum terms, Product factors, Power base
    long long exponent = 0;       // Power
};

// Immutable shared expression tree. Equality is deep structural equality.
class Expr {
public:
    Expr() = default;  // invalid; use factories

    bool valid() const { return static_cast<bool>(node_); }
    NodeKind kind() const { return node_->kind; }
    const ExprNode& node() const { return *node_; }

    const Rational& number() const { return node_->number; }
    const Var& var() const { return node_->var; }
    const std::string& func_name() const { return node_->func_name; }
    const std::vector<int>& func_deriv() const { return node_->func_deriv; }
    const std::vector<Expr>& kids() const { return node_->kids; }
    long long exponent() const { return node_->exponent; }

    bool operator==(const Expr& o) const;
    bool operator!=(const Expr& o) const { return !(*this == o); }

    static Expr make(ExprNode n);

private:
    std::shared_ptr<const ExprNode> node_;
};

// --- Factories -------------------------------------------------------------

Expr num(Rational value);
Expr num(long long value);
Expr num(long long numer, long long denom);
Expr var(Var v);
// Derivative multi-index `deriv` lists one count per argument slot; pass an
// empty vector for the undifferentiated symbol.
Expr func(const std::string& name, std::vector<int> deriv, std::vector<Expr> args);
Expr func(const std::string& name, std::vector<Expr> args);
Expr exp_of(Expr arg);
Expr ln_of(Expr arg);
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr power(Expr base, long long exponent);

Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);       // a + (-1)*b
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);       // a * b^-1
Expr neg(Expr a);

// --- Queries ---------------------------------------------------------------

bool contains_var(const Expr& e, const Var& v);
void collect_vars(const Expr& e, std::set<Var>& out);
std::set<Var> vars_of(const Expr& e);

// Highest total derivative order per function name (for numeric models).
std::map<std::string, int> max_derivative_orders(const Expr& e);

// --- Calculus on raw trees ---------------------------------------------------

// Partial derivative with respect to one variable. Opaque function symbols
// follow the chain rule by bumping the derivative multi-index per slot.
Expr differentiate(const Expr& e, const Var& v);

// Simultaneous replacement of variables; bindings apply to the original tree
// only, never to already substituted fragments.
Expr substitute(const Expr& e, const std::map<Var, Expr>& bindings);

// Replaces every subtree equal to needle by replacement, outermost first;
// replacements are never rescanned.
Expr replace_subtree(const Expr& e, const Expr& needle, const Expr& replacement);

}  // namespace vortexsym
