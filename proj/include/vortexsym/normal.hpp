#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vortexsym/expr.hpp"

namespace vortexsym {

inline constexpr std::uint64_t kDefaultSeed = 1729;

// Rewrites e into the canonical rational normal form: a fully expanded
// quotient of polynomials over the atoms {variables, ln atoms, opaque
// function applications}, with exp factors collected per monomial
// (exp(a)*exp(b) -> exp(a+b)), common polynomial factors of numerator and
// denominator cancelled, the denominator scaled monic, and terms emitted in a
// fixed total order. Idempotent: normalize(normalize(e)) == normalize(e).
//
// ln is kept opaque except for two domain-safe rewrites: ln(1) = 0 and
// peeling a uniform exponential factor, ln(u*exp(w)) = ln(u) + w.
Expr normalize(const Expr& e);

// True when e normalizes to the zero polynomial (stage one of is_zero).
bool normalizes_to_zero(const Expr& e);

enum class ZeroVerdict { Zero, NonZero, Inconclusive };

struct ZeroOptions {
    std::uint64_t seed = kDefaultSeed;
    int samples = 50;
    double tolerance = 1e-9;
    int retry_factor = 10;  // budget = retry_factor * samples draws
};

struct ZeroReport {
    ZeroVerdict verdict = ZeroVerdict::Inconclusive;
    bool by_normalization = false;  // stage one settled it
    int samples_used = 0;
    double max_rel = 0.0;  // max |value| / max(1, scale) over samples
    double max_abs = 0.0;  // max |value| over samples
    std::string note;
};

// Two-stage zero decision: canonical normalization first; if that leaves a
// nonzero form, random rational points in [1/4, 4] decide, with opaque
// function symbols replaced consistently by random polynomial models whose
// positional derivatives are the true derivatives of the model. Singular
// draws are resampled within a retry budget.
ZeroReport is_zero(const Expr& e, const ZeroOptions& opts = {});

// Views e as a polynomial in the listed variables and returns
// (monomial, coefficient) pairs in a fixed order, the free term keyed by the
// constant monomial 1. Throws when e depends on a listed variable
// non-polynomially (inside ln, exp or a function argument, or in the
// denominator).
std::vector<std::pair<Expr, Expr>> collect(const Expr& e, const std::vector<Var>& vars);

// True when a == c*b for some nonzero rational c; reports c when asked.
// Zero equals only zero.
bool equal_up_to_rational_scale(const Expr& a, const Expr& b, Rational* scale_out = nullptr);

}  // namespace vortexsym
