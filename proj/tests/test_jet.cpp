// Jet coordinates, total derivatives, prolongation, and Lie brackets.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "vortexsym/jet.hpp"
#include "vortexsym/normal.hpp"
#include "vortexsym/printer.hpp"

using namespace vortexsym;

namespace {

JetSpace& js() {
    static JetSpace space;
    return space;
}

Expr P(const std::string& text) { return js().parse(text); }

bool same(const Expr& a, const Expr& b) { return normalizes_to_zero(sub(a, b)); }

// scaling field with a free time profile: T d/dt + sum k_i T d/dk_i
// + sum n_j (T' - T) d/dn_j, here instantiated with a concrete profile
VectorField scaling_field(const std::string& profile, const std::string& dprofile) {
    VectorField v;
    v.set(js().t(), P(profile));
    for (int i = 1; i <= 3; ++i)
        v.set(js().k(i), mul(var(js().k(i)), P(profile)));
    for (int j = 1; j <= 3; ++j)
        v.set(js().n(j), mul(var(js().n(j)), P("(" + dprofile + ") - (" + profile + ")")));
    return v;
}

bool fields_match(const VectorField& a, const VectorField& b) {
    for (const Var& c : js().first_jet_coords())
        if (!same(a.coeff(c), b.coeff(c))) return false;
    return true;
}

}  // namespace

TEST_CASE("the total derivative follows the jet hierarchy") {
    CHECK(same(total_derivative(js(), P("k1")), P("q1")));
    CHECK(same(total_derivative(js(), P("n2")), P("p2")));
    CHECK(same(total_derivative(js(), P("t")), P("1")));
    CHECK(same(total_derivative(js(), P("q3")), P("q3t")));
    CHECK(same(total_derivative(js(), P("p1")), P("p1t")));
    CHECK(same(total_derivative(js(), P("T(t)")), P("T_1(t)")));
    CHECK(same(total_derivative(js(), P("k1*n1")), P("q1*n1 + k1*p1")));
    CHECK(same(total_derivative(js(), P("T(t)*k2")), P("T_1(t)*k2 + T(t)*q2")));
    CHECK(same(total_derivative(js(), P("w")), P("0")));
}

TEST_CASE("prolonging the unit scaling field differentiates the curves") {
    VectorField v = scaling_field("1", "0");
    VectorField pr = prolong(js(), v);
    for (int i = 1; i <= 3; ++i) {
        CHECK(same(pr.coeff(js().q(i)), var(js().q(i))));
        CHECK(same(pr.coeff(js().p(i)), neg(var(js().p(i)))));
    }
    // base coefficients ride along unchanged
    CHECK(same(pr.coeff(js().t()), P("1")));
    CHECK(same(pr.coeff(js().k(2)), P("k2")));
}

TEST_CASE("prolongation with a free time profile matches the hand result") {
    VectorField v = scaling_field("T(t)", "T_1(t)");
    VectorField pr = prolong(js(), v);
    for (int i = 1; i <= 3; ++i) {
        std::string qi = "q" + std::to_string(i);
        std::string ki = "k" + std::to_string(i);
        CHECK(same(pr.coeff(js().q(i)),
                   P(qi + "*T(t) + " + ki + "*T_1(t) - " + qi + "*T_1(t)")));
        std::string pi = "p" + std::to_string(i);
        std::string ni = "n" + std::to_string(i);
        CHECK(same(pr.coeff(js().p(i)),
                   P(ni + "*(T_11(t) - T_1(t)) - " + pi + "*T(t)")));
    }
}

TEST_CASE("prolongation rejects fields that already live on the jet") {
    VectorField on_jet;
    on_jet.set(js().q(1), P("1"));
    CHECK_THROWS_AS(prolong(js(), on_jet), Error);

    VectorField jet_coeff;
    jet_coeff.set(js().k(1), P("q1*k1"));
    CHECK_THROWS_AS(prolong(js(), jet_coeff), Error);
}

TEST_CASE("applying a field differentiates along its coefficients") {
    VectorField v = scaling_field("1", "0");
    CHECK(normalizes_to_zero(apply(v, P("ln(k1) - t"))));
    CHECK(normalizes_to_zero(apply(v, P("ln(n2) + t"))));
    CHECK(same(apply(v, P("k1*n1")), P("0")));
    CHECK(same(apply(v, P("k1 + n1")), P("k1 - n1")));
    CHECK(same(apply(VectorField{}, P("k1")), P("0")));
}

TEST_CASE("brackets of simple fields match hand computations") {
    VectorField a, b;
    a.set(js().k(1), P("k1"));
    b.set(js().k(1), P("exp(t)"));
    VectorField c = commutator(a, b);
    CHECK(same(c.coeff(js().k(1)), P("-exp(t)")));
    CHECK_FALSE(c.has(js().t()));

    VectorField dt, tdt;
    dt.set(js().t(), P("1"));
    tdt.set(js().t(), P("t"));
    CHECK(same(commutator(dt, tdt).coeff(js().t()), P("1")));
}

TEST_CASE("the bracket of two scaling fields is the scaling field of the Wronskian") {
    // profiles 1 and t: the bracket profile is 1*(t)' - t*(1)' = 1
    VectorField v1 = scaling_field("1", "0");
    VectorField v2 = scaling_field("t", "1");
    CHECK(fields_match(commutator(v1, v2), v1));

    // profiles t and t^2: bracket profile t*2t - t^2*1 = t^2
    VectorField vt2 = scaling_field("t^2", "2*t");
    CHECK(fields_match(commutator(v2, vt2), vt2));

    // profiles 1 and t^2: bracket profile 2t
    VectorField v2t = scaling_field("2*t", "2");
    CHECK(fields_match(commutator(v1, vt2), v2t));
}

TEST_CASE("prolongation commutes with the bracket") {
    VectorField v1 = scaling_field("1", "0");
    VectorField v2 = scaling_field("t", "1");
    VectorField vt2 = scaling_field("t^2", "2*t");
    CHECK(fields_match(commutator(prolong(js(), v1), prolong(js(), v2)),
                       prolong(js(), commutator(v1, v2))));
    CHECK(fields_match(commutator(prolong(js(), v2), prolong(js(), vt2)),
                       prolong(js(), commutator(v2, vt2))));
}

TEST_CASE("brackets satisfy the Jacobi identity") {
    VectorField a, b, c;
    a.set(js().t(), P("t"));
    a.set(js().k(1), P("k1"));
    b.set(js().k(1), P("exp(t)"));
    b.set(js().n(1), P("n1"));
    c.set(js().k(1), P("k1^2"));
    c.set(js().t(), P("1/n1"));

    VectorField ab_c = commutator(commutator(a, b), c);
    VectorField bc_a = commutator(commutator(b, c), a);
    VectorField ca_b = commutator(commutator(c, a), b);
    for (const Var& coord : js().first_jet_coords()) {
        CAPTURE(coord.name());
        CHECK(normalizes_to_zero(
            sum({ab_c.coeff(coord), bc_a.coeff(coord), ca_b.coeff(coord)})));
    }
}

TEST_CASE("vector fields report absent coefficients as zero") {
    VectorField v;
    CHECK(v.coeff(js().t()) == num(0));
    CHECK_FALSE(v.has(js().t()));
    v.set(js().t(), P("t^2"));
    CHECK(v.has(js().t()));
    CHECK(same(v.coeff(js().t()), P("t^2")));
}
