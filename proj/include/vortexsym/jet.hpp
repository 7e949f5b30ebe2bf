#pragma once

#include <map>
#include <string>
#include <vector>

#include "vortexsym/expr.hpp"
#include "vortexsym/workspace.hpp"

namespace vortexsym {

// First-order jet coordinates for three wave-vector components k and three
// refraction components n over the evolution variable t. q and p hold the
// first t-derivatives of k and n; the *t variables hold the transient second
// derivatives that appear while prolonging and must cancel from results.
class JetSpace {
public:
    JetSpace();

    Workspace& ws() { return ws_; }
    const Workspace& ws() const { return ws_; }

    Var t() const { return ws_.var("t"); }
    Var k(int i) const { return indexed("k", i); }
    Var n(int i) const { return indexed("n", i); }
    Var q(int i) const { return indexed("q", i); }
    Var p(int i) const { return indexed("p", i); }
    Var qt(int i) const { return indexed("q", i, "t"); }
    Var pt(int i) const { return indexed("p", i, "t"); }

    // t, k1..k3, n1..n3, q1..q3, p1..p3
    std::vector<Var> first_jet_coords() const;
    // q1..q3, p1..p3
    std::vector<Var> jet_vars() const;
    // q1t..q3t, p1t..p3t
    std::vector<Var> second_jet_vars() const;

    Expr parse(const std::string& text) const;

    // F(t, k1, k2, k3, n1, n2, n3) for an undetermined point coefficient
    Expr base_call(const std::string& name) const;
    // F(t, k1, k2, k3, n1, n2, n3, q1, q2, q3, p1, p2, p3)
    Expr contact_call(const std::string& name) const;

private:
    Var indexed(const char* stem, int i, const char* suffix = "") const;

    Workspace ws_;
};

// A sparse assignment of coefficient expressions to coordinates; missing
// coordinates carry coefficient zero.
class VectorField {
public:
    VectorField() = default;

    void set(const Var& coord, Expr coefficient);
    Expr coeff(const Var& coord) const;  // zero when absent
    bool has(const Var& coord) const;
    const std::map<Var, Expr>& coefficients() const { return coeffs_; }

private:
    std::map<Var, Expr> coeffs_;
};

// Directional derivative: sum of coefficient * d/d(coordinate).
Expr apply(const VectorField& field, const Expr& e);

// Total derivative along t, treating k and n as curves with derivatives q
// and p, and q and p as curves with the transient second-jet derivatives.
Expr total_derivative(const JetSpace& js, const Expr& e);

// Extends a field on (t, k, n) to the first jet: the q and p coefficients
// are fixed by requiring contact with differentiated curves. Throws when the
// input already involves jet coordinates.
VectorField prolong(const JetSpace& js, const VectorField& field);

// Lie bracket [a, b]: apply(a, coeff of b) - apply(b, coeff of a), per
// coordinate, with normalized coefficients.
VectorField commutator(const VectorField& a, const VectorField& b);

}  // namespace vortexsym
