#pragma once

#include <string>
#include <vector>

#include "vortexsym/expr.hpp"
#include "vortexsym/jet.hpp"

namespace vortexsym {

// A first-order equation written as residual = 0, linear in one designated
// jet coordinate (the pivot) so it can be solved for that coordinate.
struct Equation {
    Expr residual;
    Var pivot;
};

// Writes relation = A*target + B with A and B free of target and returns
// -B/A. Throws when the relation is not linear in the target or when the
// multiplier A normalizes to zero.
Expr solve_linear(const Expr& relation, const Expr& target);

// The pivot jet coordinate expressed through the remaining coordinates.
Expr solve_pivot(const Equation& eq);

// Substitutes the solved pivot into e.
Expr reduce_on_shell(const Equation& eq, const Expr& e);

enum class SymmetryMode {
    Prolonged,  // extend the field to the jet before applying it
    Direct,     // apply the field as written
};

// The field applied to the equation's residual, unnormalized.
Expr symmetry_residual(const JetSpace& js, const Equation& eq, const VectorField& field,
                       SymmetryMode mode);

struct DeterminingEquation {
    Expr monomial;     // jet monomial the coefficient was read from
    Expr coefficient;  // must vanish for the field to be a symmetry
};

using DeterminingSystem = std::vector<DeterminingEquation>;

enum class Reduction {
    Free,     // collect the raw symmetry residual
    OnShell,  // substitute the solved pivot first
};

// Applies the (prolonged) field to the residual and splits the result by jet
// monomials. Coefficients are normalized; vanishing groups are dropped.
DeterminingSystem derive_determining(const JetSpace& js, const Equation& eq,
                                     const VectorField& ansatz, Reduction reduction);

// Set equality of the coefficient lists, where members match when they agree
// up to a nonzero rational factor.
bool systems_equivalent(const DeterminingSystem& a, const DeterminingSystem& b);

}  // namespace vortexsym
