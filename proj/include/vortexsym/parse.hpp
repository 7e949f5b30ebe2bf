#pragma once

#include <string>

#include "vortexsym/expr.hpp"
#include "vortexsym/workspace.hpp"

namespace vortexsym {

class ParseError : public Error {
public:
    ParseError(const std::string& message, size_t column)
        : Error(message + " at column " + std::to_string(column + 1)), column_(column) {}

    size_t column() const { return column_; }

private:
    size_t column_;
};

// Parses the expression surface syntax:
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | ident | call | 'exp' '(' expr ')' | 'ln' '(' expr ')'
//           | '(' expr ')'
//   call   := ident deriv? '(' expr (',' expr)* ')'
//   deriv  := '_' digits | '_[' integer (',' integer)* ']'
//
// A derivative suffix lists argument positions, one per differentiation, e.g.
// F_12 differentiates once by slot 1 and once by slot 2; the bracketed form
// covers slots above 9. All identifiers must be declared in the workspace.
Expr parse(const std::string& text, const Workspace& ws);

}  // namespace vortexsym
