#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "vortexsym/expr.hpp"
#include "vortexsym/normal.hpp"

namespace vortexsym {

class EvalError : public Error {
public:
    explicit EvalError(const std::string& what) : Error(what) {}
};

// Evaluates a closed-form expression (no opaque function symbols) at the
// given variable assignment. Domain violations (ln of a non-positive value,
// division by zero, overflow) raise EvalError.
double eval_closed(const Expr& e, const std::map<Var, double>& values);

struct ZeroSampleResult {
    int samples_used = 0;
    double max_rel = 0.0;  // max |value| / max(1, scale)
    double max_abs = 0.0;  // max |value|
    bool exceeded = false;   // some sample rose above tolerance
    bool exhausted = false;  // retry budget ran out before enough samples
};

// Randomized numeric stage behind is_zero, usable on its own for spot checks.
// Variables draw rational values in [1/4, 4]; every opaque function symbol is
// modelled by a random polynomial (a sum of powers of random affine forms, so
// positional derivatives of any needed order are exact); the model is shared
// by all occurrences of the same symbol within a sample.
ZeroSampleResult sample_for_zero(const Expr& e, const ZeroOptions& opts);

}  // namespace vortexsym
