#include "vortexsym/detsys.hpp"

#include <map>

#include "vortexsym/normal.hpp"

namespace vortexsym {

Expr solve_linear(const Expr& relation, const Expr& target) {
    Expr at0 = replace_subtree(relation, target, num(0));
    Expr at1 = replace_subtree(relation, target, num(1));
    Expr at2 = replace_subtree(relation, target, num(2));
    if (!normalizes_to_zero(sum({at2, neg(mul(num(2), at1)), at0})))
        throw Error("relation is not linear in the target");
    Expr multiplier = normalize(sub(at1, at0));
    if (normalizes_to_zero(multiplier))
        throw Error("target is absent or its multiplier vanishes");
    return normalize(div(neg(at0), multiplier));
}

Expr solve_pivot(const Equation& eq) { return solve_linear(eq.residual, var(eq.pivot)); }

Expr reduce_on_shell(const Equation& eq, const Expr& e) {
    return substitute(e, {{eq.pivot, solve_pivot(eq)}});
}

Expr symmetry_residual(const JetSpace& js, const Equation& eq, const VectorField& field,
                       SymmetryMode mode) {
    if (mode == SymmetryMode::Prolonged)
        return apply(prolong(js, field), eq.residual);
    return apply(field, eq.residual);
}

DeterminingSystem derive_determining(const JetSpace& js, const Equation& eq,
                                     const VectorField& ansatz, Reduction reduction) {
    Expr residual = symmetry_residual(js, eq, ansatz, SymmetryMode::Prolonged);
    if (reduction == Reduction::OnShell) residual = reduce_on_shell(eq, residual);
    DeterminingSystem system;
    for (auto& [monomial, coefficient] : collect(residual, js.jet_vars())) {
        Expr c = normalize(coefficient);
        if (c.kind() == NodeKind::Number && c.number() == 0) continue;
        system.push_back(DeterminingEquation{monomial, std::move(c)});
    }
    return system;
}

bool systems_equivalent(const DeterminingSystem& a, const DeterminingSystem& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const DeterminingEquation& ea : a) {
        bool matched = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (equal_up_to_rational_scale(ea.coefficient, b[j].coefficient)) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace vortexsym
