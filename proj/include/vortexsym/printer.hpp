#pragma once

#include <string>

#include "vortexsym/expr.hpp"

namespace vortexsym {

// Renders an expression in the surface syntax accepted by parse(). The output
// is minimally parenthesized; parse(to_dsl(e)) always normalizes equal to e.
std::string to_dsl(const Expr& e);

}  // namespace vortexsym
