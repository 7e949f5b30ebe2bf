#include "vortexsym/parse.hpp"

#include <cctype>
#include <vector>

namespace vortexsym {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma,
                 Underscore, LBracket, RBracket, End };

struct Token {
    Tok kind;
    std::string text;
    size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\t')) ++i_;
        size_t start = i_;
        if (i_ >= text_.size()) {
            current_ = {Tok::End, "", start};
            return;
        }
        char c = text_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
            current_ = {Tok::Number, text_.substr(i_, j - i_), start};
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[j])))
                ++j;
            current_ = {Tok::Ident, text_.substr(i_, j - i_), start};
            i_ = j;
            return;
        }
        Tok kind;
        switch (c) {
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case ',': kind = Tok::Comma; break;
            case '_': kind = Tok::Underscore; break;
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        current_ = {kind, std::string(1, c), start};
        ++i_;
    }

    const std::string& text_;
    size_t i_ = 0;
    Token current_{Tok::End, "", 0};
};

class Parser {
public:
    Parser(const std::string& text, const Workspace& ws) : lex_(text), ws_(ws) {}

    Expr run() {
        Expr e = parse_expr();
        if (lex_.peek().kind != Tok::End)
            throw ParseError("unexpected trailing input", lex_.peek().pos);
        return e;
    }

private:
    Expr parse_expr() {
        std::vector<Expr> terms;
        bool negate_first = false;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            negate_first = true;
        }
        Expr first = parse_term();
        terms.push_back(negate_first ? neg(std::move(first)) : std::move(first));
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool minus = lex_.take().kind == Tok::Minus;
            Expr t = parse_term();
            terms.push_back(minus ? neg(std::move(t)) : std::move(t));
        }
        return sum(std::move(terms));
    }

    Expr parse_term() {
        std::vector<Expr> factors;
        factors.push_back(parse_factor());
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            bool divide = lex_.take().kind == Tok::Slash;
            Expr f = parse_factor();
            factors.push_back(divide ? power(std::move(f), -1) : std::move(f));
        }
        return product(std::move(factors));
    }

    Expr parse_factor() {
        Expr base = parse_base();
        if (lex_.peek().kind != Tok::Caret) return base;
        lex_.take();
        bool negative = false;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            negative = true;
        }
        Token t = expect(Tok::Number, "integer exponent");
        long long value = parse_int(t);
        return power(std::move(base), negative ? -value : value);
    }

    Expr parse_base() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Number: {
                Token n = lex_.take();
                return num(Rational(Integer(n.text)));
            }
            case Tok::LParen: {
                lex_.take();
                Expr e = parse_expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident:
                return parse_ident();
            default:
                throw ParseError("expected a number, identifier or '('", t.pos);
        }
    }

    Expr parse_ident() {
        Token name = lex_.take();
        std::vector<int> positions;
        bool has_deriv = false;
        size_t deriv_pos = name.pos;
        if (lex_.peek().kind == Tok::Underscore) {
            has_deriv = true;
            deriv_pos = lex_.take().pos;
            if (lex_.peek().kind == Tok::LBracket) {
                lex_.take();
                positions.push_back(static_cast<int>(parse_int(expect(Tok::Number, "slot"))));
                while (lex_.peek().kind == Tok::Comma) {
                    lex_.take();
                    positions.push_back(
                        static_cast<int>(parse_int(expect(Tok::Number, "slot"))));
                }
                expect(Tok::RBracket, "']'");
            } else {
                Token digits = expect(Tok::Number, "derivative positions");
                for (char c : digits.text) {
                    if (c == '0')
                        throw ParseError("derivative slot 0 is invalid", digits.pos);
                    positions.push_back(c - '0');
                }
            }
        }

        if (lex_.peek().kind != Tok::LParen) {
            if (has_deriv)
                throw ParseError("derivative suffix requires an argument list", name.pos);
            if (!ws_.has_var(name.text)) {
                if (ws_.has_function_name(name.text) || name.text == "exp" || name.text == "ln")
                    throw ParseError("function '" + name.text + "' needs arguments", name.pos);
                throw ParseError("undeclared identifier '" + name.text + "'", name.pos);
            }
            return var(ws_.var(name.text));
        }

        lex_.take();
        std::vector<Expr> args;
        args.push_back(parse_expr());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            args.push_back(parse_expr());
        }
        expect(Tok::RParen, "')'");

        if (name.text == "exp" || name.text == "ln") {
            if (has_deriv)
                throw ParseError("'" + name.text + "' takes no derivative suffix", name.pos);
            if (args.size() != 1)
                throw ParseError("'" + name.text + "' takes exactly one argument", name.pos);
            return name.text == "exp" ? exp_of(std::move(args[0])) : ln_of(std::move(args[0]));
        }

        int arity = static_cast<int>(args.size());
        if (!ws_.has_function(name.text, arity)) {
            if (ws_.has_function_name(name.text))
                throw ParseError("arity mismatch for function '" + name.text + "': got " +
                                     std::to_string(arity),
                                 name.pos);
            throw ParseError("undeclared function '" + name.text + "'", name.pos);
        }
        std::vector<int> deriv(args.size(), 0);
        for (int p : positions) {
            if (p < 1 || p > arity)
                throw ParseError("derivative slot " + std::to_string(p) +
                                     " out of range for '" + name.text + "'",
                                 deriv_pos);
            deriv[p - 1] += 1;
        }
        return func(name.text, std::move(deriv), std::move(args));
    }

    Token expect(Tok kind, const std::string& what) {
        if (lex_.peek().kind != kind)
            throw ParseError("expected " + what, lex_.peek().pos);
        return lex_.take();
    }

    static long long parse_int(const Token& t) {
        if (t.text.size() > 18) throw ParseError("integer literal too large", t.pos);
        return std::stoll(t.text);
    }

    Lexer lex_;
    const Workspace& ws_;
};

}  // namespace

Expr parse(const std::string& text, const Workspace& ws) {
    return Parser(text, ws).run();
}

}  // namespace vortexsym
