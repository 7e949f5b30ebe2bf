// Expression kernel: parsing, printing, normal forms, calculus, zero testing.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "vortexsym/expr.hpp"
#include "vortexsym/normal.hpp"
#include "vortexsym/numeval.hpp"
#include "vortexsym/parse.hpp"
#include "vortexsym/printer.hpp"
#include "vortexsym/workspace.hpp"

using namespace vortexsym;

namespace {

Workspace build_ws() {
    Workspace w;
    w.declare_var("t", VarKind::Independent);
    for (const char* n : {"k1", "k2", "k3", "n1", "n2", "n3"})
        w.declare_var(n, VarKind::Dependent);
    for (const char* n : {"q1", "q2", "q3", "p1", "p2", "p3"})
        w.declare_var(n, VarKind::Jet);
    for (const char* n : {"s", "w", "x", "y", "z"})
        w.declare_var(n, VarKind::Parameter);
    w.declare_function("f", 1);
    w.declare_function("g", 2);
    w.declare_function("T", 1);
    w.declare_function("H", 3);
    w.declare_function("C", 13);
    return w;
}

Workspace& ws() {
    static Workspace w = build_ws();
    return w;
}

Expr P(const std::string& text) { return parse(text, ws()); }

bool same(const Expr& a, const Expr& b) { return normalizes_to_zero(sub(a, b)); }

// Random expressions kept inside the evaluator's comfortable domain: ln only
// of 1 + square, reciprocals only of 1 + square, shallow exp arguments.
struct RandomExprs {
    std::mt19937_64 rng;
    std::vector<Var> vars;

    explicit RandomExprs(std::uint64_t seed)
        : rng(seed), vars{ws().var("x"), ws().var("y"), ws().var("z")} {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    Expr leaf() {
        if (pick(0, 2) == 0) {
            int n = pick(-3, 3);
            if (n == 0) n = 1;
            return num(n, pick(1, 4));
        }
        return var(vars[static_cast<size_t>(pick(0, 2))]);
    }

    Expr gen(int depth) {
        if (depth <= 0) return leaf();
        switch (pick(0, 9)) {
            case 0:
            case 1:
            case 2: {
                std::vector<Expr> kids;
                int n = pick(2, 3);
                for (int i = 0; i < n; ++i) kids.push_back(gen(depth - 1));
                return sum(std::move(kids));
            }
            case 3:
            case 4:
            case 5: {
                std::vector<Expr> kids;
                int n = pick(2, 3);
                for (int i = 0; i < n; ++i) kids.push_back(gen(depth - 1));
                return product(std::move(kids));
            }
            case 6:
                return power(gen(depth - 1), pick(2, 3));
            case 7:
                return exp_of(leaf());
            case 8:
                return power(add(num(1), power(gen(std::min(depth - 1, 1)), 2)), -1);
            default:
                return ln_of(add(num(1), power(gen(std::min(depth - 1, 1)), 2)));
        }
    }
};

constexpr std::uint64_t kPropertySeed = 20260816ULL;

}  // namespace

TEST_CASE("parser accepts the surface syntax and printing round-trips") {
    const char* cases[] = {
        "x",
        "-x",
        "3/4",
        "x + y - z",
        "x*y/z",
        "x^2 - 2*x + 1",
        "x^-2",
        "(x + y)*(x - y)",
        "exp(x + y)",
        "ln(x)",
        "f(x)",
        "f_1(x^2)",
        "g_12(x, y)",
        "T_11(t)",
        "H_123(k1, k2, k3)",
        "n1*(q1 - k1) + n2*(q2 - k2) + n3*(q3 - k3)",
        "1/2*x/y",
        "exp(ln(x) + s)",
    };
    for (const char* c : cases) {
        CAPTURE(c);
        Expr e = P(c);
        std::string printed = to_dsl(e);
        CAPTURE(printed);
        Expr back = P(printed);
        CHECK(same(back, e));
        // printing is a fixed point after one round trip
        CHECK(to_dsl(P(printed)) == printed);
    }
}

TEST_CASE("printer keeps numeric bases and negative leads unambiguous") {
    CHECK(same(P(to_dsl(power(num(3, 4), 2))), num(9, 16)));
    CHECK(same(P(to_dsl(neg(P("x*y")))), P("-x*y")));
    CHECK(same(P(to_dsl(P("x - 2*y"))), P("x - 2*y")));
    CHECK(same(P(to_dsl(P("1/(x^2+1)"))), P("1/(x^2+1)")));
}

TEST_CASE("bracketed derivative slots cover wide function signatures") {
    Expr e = P("C_[13](t, k1, k2, k3, n1, n2, n3, q1, q2, q3, p1, p2, p3)");
    CHECK(e.func_deriv()[12] == 1);
    std::string printed = to_dsl(e);
    CHECK(printed.find("_[13]") != std::string::npos);
    CHECK(same(P(printed), e));
    // narrow signatures print with plain digit slots
    CHECK(to_dsl(P("H_[1,2,3](x, y, z)")) == to_dsl(P("H_123(x, y, z)")));
}

TEST_CASE("parse errors carry positions and specific causes") {
    auto expect_error = [](const std::string& text, const std::string& needle,
                           size_t column) {
        try {
            P(text);
            FAIL_CHECK("expected a parse error for: " << text);
        } catch (const ParseError& err) {
            CAPTURE(text);
            CAPTURE(err.what());
            CHECK(std::string(err.what()).find(needle) != std::string::npos);
            CHECK(err.column() == column);
        }
    };
    expect_error("x + + y", "expected", 4);
    expect_error("bogus", "undeclared identifier", 0);
    expect_error("f(x, y)", "arity", 0);
    expect_error("f", "function", 0);
    expect_error("x + f(", "expected", 6);
    expect_error("x y", "unexpected", 2);
    expect_error("f_2(x)", "slot", 1);
    expect_error("x^999999999999999999999", "too large", 2);
}

TEST_CASE("normal form implements exact field arithmetic") {
    CHECK(normalizes_to_zero(P("(x+y)^2 - x^2 - 2*x*y - y^2")));
    CHECK(normalizes_to_zero(P("(x^2 - y^2)/(x - y) - x - y")));
    CHECK(normalizes_to_zero(P("1/x + 1/y - (x + y)/(x*y)")));
    CHECK(normalizes_to_zero(P("x/(x^2 + x) - 1/(x + 1)")));
    CHECK(normalizes_to_zero(sub(P("1/(1/x)"), P("x"))));
    CHECK_FALSE(normalizes_to_zero(P("(x+y)^2 - x^2 - y^2")));
    CHECK_THROWS_AS(normalize(P("x/(y - y)")), Error);
}

TEST_CASE("normal form collects exponentials into a single factor per term") {
    CHECK(normalizes_to_zero(P("exp(x)*exp(y) - exp(x + y)")));
    CHECK(normalizes_to_zero(P("exp(x)^3 - exp(3*x)")));
    CHECK(normalizes_to_zero(P("exp(x)*exp(-x) - 1")));
    CHECK(normalizes_to_zero(sub(P("exp(x - x)"), num(1))));
    CHECK(normalizes_to_zero(P("exp(x + y)/exp(y) - exp(x)")));
    CHECK_FALSE(normalizes_to_zero(P("exp(x) - exp(y)")));
    // quotients with exponential denominators reach one canonical writing
    Expr a = normalize(P("(exp(x) + exp(y))/(exp(x) - exp(y))"));
    Expr b = normalize(P("(1 + exp(y - x))/(1 - exp(y - x))"));
    CHECK(a == b);
}

TEST_CASE("ln stays opaque except for safe exponential peeling") {
    CHECK(normalizes_to_zero(P("ln(x*exp(y)) - ln(x) - y")));
    CHECK(normalizes_to_zero(P("ln(exp(y)) - y")));
    CHECK(normalizes_to_zero(P("ln(x/exp(y)) - ln(x) + y")));
    CHECK(normalizes_to_zero(sub(P("ln(x^2/x)"), P("ln(x)"))));
    CHECK(normalizes_to_zero(ln_of(num(1))));
    CHECK_FALSE(normalizes_to_zero(P("ln(x*y) - ln(x) - ln(y)")));
    CHECK_FALSE(normalizes_to_zero(P("ln(x^2) - 2*ln(x)")));
}

TEST_CASE("normalization is idempotent on the node level") {
    const char* cases[] = {
        "(x+y)^3/(x+y)",
        "x/(2*y) + z",
        "(exp(x) + 1)/(2*exp(x) - 2)",
        "ln(x*exp(t)) + f(x)/x",
        "g_2(x, y)*x^2/(x*y)",
    };
    for (const char* c : cases) {
        CAPTURE(c);
        Expr n1 = normalize(P(c));
        CHECK(normalize(n1) == n1);
    }
    RandomExprs gen(kPropertySeed);
    for (int i = 0; i < 200; ++i) {
        Expr e = gen.gen(3);
        Expr n1 = normalize(e);
        CHECK(normalize(n1) == n1);
    }
}

TEST_CASE("printing then parsing preserves the normal form") {
    RandomExprs gen(kPropertySeed + 1);
    for (int i = 0; i < 200; ++i) {
        Expr e = gen.gen(3);
        std::string printed = to_dsl(e);
        CAPTURE(printed);
        CHECK(same(P(printed), e));
    }
}

TEST_CASE("sums and products normalize independently of operand order") {
    RandomExprs gen(kPropertySeed + 2);
    for (int i = 0; i < 200; ++i) {
        std::vector<Expr> kids;
        int n = gen.pick(2, 4);
        for (int j = 0; j < n; ++j) kids.push_back(gen.gen(2));
        std::vector<Expr> shuffled = kids;
        std::shuffle(shuffled.begin(), shuffled.end(), gen.rng);
        CHECK(normalize(sum(kids)) == normalize(sum(shuffled)));
        CHECK(normalize(product(kids)) == normalize(product(shuffled)));
    }
}

TEST_CASE("differentiation follows the calculus rules") {
    Var x = ws().var("x");
    Var t = ws().var("t");
    CHECK(same(differentiate(P("x^3 + 2*x"), x), P("3*x^2 + 2")));
    CHECK(same(differentiate(P("exp(x^2)"), x), P("2*x*exp(x^2)")));
    CHECK(same(differentiate(P("ln(x^2 + 1)"), x), P("2*x/(x^2 + 1)")));
    CHECK(same(differentiate(P("1/x"), x), P("-1/x^2")));
    CHECK(same(differentiate(P("f(x^2)"), x), P("2*x*f_1(x^2)")));
    CHECK(same(differentiate(P("g(x, x)"), x), P("g_1(x, x) + g_2(x, x)")));
    CHECK(same(differentiate(P("T(t)^2"), t), P("2*T(t)*T_1(t)")));
    CHECK(differentiate(P("y"), x) == num(0));
    // mixed partials commute on the node level
    Expr gxy = P("g(x, y)");
    Var y = ws().var("y");
    CHECK(differentiate(differentiate(gxy, x), y) ==
          differentiate(differentiate(gxy, y), x));
}

TEST_CASE("differentiation is linear and satisfies the product rule") {
    Var x = ws().var("x");
    RandomExprs gen(kPropertySeed + 3);
    for (int i = 0; i < 200; ++i) {
        Expr a = gen.gen(2);
        Expr b = gen.gen(2);
        CHECK(same(differentiate(add(a, b), x),
                   add(differentiate(a, x), differentiate(b, x))));
        CHECK(same(differentiate(mul(a, b), x),
                   add(mul(differentiate(a, x), b), mul(a, differentiate(b, x)))));
    }
}

TEST_CASE("substitution is simultaneous and leaves replacements alone") {
    Var x = ws().var("x");
    Var y = ws().var("y");
    std::map<Var, Expr> swap_xy{{x, P("y")}, {y, P("x")}};
    CHECK(same(substitute(P("x^2 + y"), swap_xy), P("y^2 + x")));
    std::map<Var, Expr> chain{{x, P("y")}, {y, P("z")}};
    CHECK(same(substitute(P("x + y"), chain), P("y + z")));
    std::map<Var, Expr> id{{x, P("x")}};
    Expr e = P("f(x) + x^2");
    CHECK(substitute(e, id) == e);
}

TEST_CASE("substituting a flow into a difference of logs cancels exactly") {
    Var k1 = ws().var("k1");
    Var t = ws().var("t");
    std::map<Var, Expr> flow{{k1, P("k1*exp(s)")}, {t, P("t + s")}};
    Expr invariant = P("ln(k1) - t");
    CHECK(normalizes_to_zero(sub(substitute(invariant, flow), invariant)));
}

TEST_CASE("collect groups by monomials in the chosen variables") {
    std::vector<Var> jets{ws().var("q1"), ws().var("q2"), ws().var("q3"),
                          ws().var("p1"), ws().var("p2"), ws().var("p3")};
    Expr e = P("n1*q1^2 + n2*q1*p2 + n3*q1 + n1*p1 + k1");
    auto groups = collect(e, jets);
    REQUIRE(groups.size() == 5);
    // canonical order is a fixed descending monomial order
    CHECK(to_dsl(groups[0].first) == "q1^2");
    CHECK(to_dsl(groups[1].first) == "q1*p2");
    CHECK(to_dsl(groups[2].first) == "q1");
    CHECK(to_dsl(groups[3].first) == "p1");
    CHECK(to_dsl(groups[4].first) == "1");
    CHECK(same(groups[0].second, P("n1")));
    CHECK(same(groups[1].second, P("n2")));
    CHECK(same(groups[2].second, P("n3")));
    CHECK(same(groups[3].second, P("n1")));
    CHECK(same(groups[4].second, P("k1")));

    // rational coefficients are carried along
    auto rat = collect(P("(n1*q1 + n2)/n3"), jets);
    REQUIRE(rat.size() == 2);
    CHECK(same(rat[0].second, P("n1/n3")));
    CHECK(same(rat[1].second, P("n2/n3")));

    // reconstructing from the groups gives back the expression
    std::vector<Expr> parts;
    for (const auto& kv : groups) parts.push_back(mul(kv.first, kv.second));
    CHECK(same(sum(parts), e));
}

TEST_CASE("collect rejects non-polynomial dependence on the chosen variables") {
    std::vector<Var> qs{ws().var("q1")};
    auto check_throws = [&](const char* text) {
        CAPTURE(text);
        try {
            collect(P(text), qs);
            FAIL_CHECK("expected an error for: " << text);
        } catch (const Error& err) {
            CHECK(std::string(err.what()).find("non-polynomial") != std::string::npos);
        }
    };
    check_throws("exp(q1)");
    check_throws("1/q1");
    check_throws("f(q1)");
    check_throws("ln(q1 + 1)");
    check_throws("x/(q1 + 1)");
}

TEST_CASE("proportionality of expressions is decided exactly") {
    Rational scale;
    CHECK(equal_up_to_rational_scale(P("2*x + 2*y"), P("x + y"), &scale));
    CHECK(scale == 2);
    CHECK(equal_up_to_rational_scale(P("-n1*x"), P("3*n1*x"), &scale));
    CHECK(scale == Rational(-1, 3));
    CHECK(equal_up_to_rational_scale(P("(x + y)/n1"), P("(3*x + 3*y)/n1"), &scale));
    CHECK(scale == Rational(1, 3));
    CHECK(equal_up_to_rational_scale(P("x - x"), P("y - y")));
    CHECK_FALSE(equal_up_to_rational_scale(P("x + y"), P("x - y")));
    CHECK_FALSE(equal_up_to_rational_scale(P("x"), P("x - x")));
    CHECK_FALSE(equal_up_to_rational_scale(P("x + y"), P("x")));
    CHECK_FALSE(equal_up_to_rational_scale(P("2*x + y"), P("x + y")));
}

TEST_CASE("zero testing distinguishes zero, nonzero, and inconclusive") {
    ZeroReport r = is_zero(P("(x+y)^2 - x^2 - 2*x*y - y^2"));
    CHECK(r.verdict == ZeroVerdict::Zero);
    CHECK(r.by_normalization);

    r = is_zero(P("x^2 + 1"));
    CHECK(r.verdict == ZeroVerdict::NonZero);
    CHECK(r.max_rel > 1e-9);

    r = is_zero(P("T_1(t)*k1 + x"));
    CHECK(r.verdict == ZeroVerdict::NonZero);

    // numerically zero everywhere, but not by polynomial rewriting
    r = is_zero(P("ln(x*y) - ln(x) - ln(y)"));
    CHECK(r.verdict == ZeroVerdict::Inconclusive);
    CHECK(r.note == "normal form nonzero but all samples vanish");
    CHECK(r.samples_used == 50);

    // every sample point is outside the domain
    r = is_zero(P("ln(-1 - x^2)"));
    CHECK(r.verdict == ZeroVerdict::Inconclusive);
    CHECK(r.note == "sampling budget exhausted");
    CHECK(r.samples_used == 0);
}

TEST_CASE("zero testing is deterministic for a fixed seed") {
    ZeroOptions opts;
    opts.seed = 99;
    ZeroReport a = is_zero(P("T(t)*f(x) - g(x, y)"), opts);
    ZeroReport b = is_zero(P("T(t)*f(x) - g(x, y)"), opts);
    CHECK(a.verdict == b.verdict);
    CHECK(a.samples_used == b.samples_used);
    CHECK(a.max_rel == b.max_rel);
    CHECK(a.verdict == ZeroVerdict::NonZero);
}

TEST_CASE("derivative samples stay consistent with value samples") {
    // d/dt of T(t)^2 minus 2 T T' vanishes at every sampled point even
    // though the model for T is drawn at random
    Var t = ws().var("t");
    Expr e = sub(differentiate(P("T(t)^2"), t), P("2*T(t)*T_1(t)"));
    ZeroSampleResult r = sample_for_zero(e, {});
    CHECK_FALSE(r.exceeded);
    CHECK(r.samples_used == 50);

    // the same with a second-order derivative and two arguments
    Var x = ws().var("x");
    Expr mixed = sub(differentiate(differentiate(P("g(x^2, x)"), x), x),
                     differentiate(differentiate(P("g(x^2, x)"), x), x));
    CHECK(sample_for_zero(mixed, {}).samples_used == 50);

    Expr chain = sub(differentiate(P("f(f(x))"), x), P("f_1(f(x))*f_1(x)"));
    r = sample_for_zero(chain, {});
    CHECK_FALSE(r.exceeded);
}

TEST_CASE("normalization preserves sampled values") {
    RandomExprs gen(kPropertySeed + 4);
    ZeroOptions opts;
    opts.samples = 3;
    for (int i = 0; i < 200; ++i) {
        Expr e = gen.gen(3);
        ZeroSampleResult r = sample_for_zero(sub(e, normalize(e)), opts);
        CAPTURE(to_dsl(e));
        CHECK_FALSE(r.exceeded);
    }
}

TEST_CASE("closed evaluation matches after normalization") {
    RandomExprs gen(kPropertySeed + 5);
    std::map<Var, double> pt;
    int evaluated = 0;
    for (int i = 0; i < 200; ++i) {
        Expr e = gen.gen(2);
        Expr n = normalize(e);
        pt[ws().var("x")] = gen.pick(16, 256) / 64.0;
        pt[ws().var("y")] = gen.pick(16, 256) / 64.0;
        pt[ws().var("z")] = gen.pick(16, 256) / 64.0;
        try {
            double v1 = eval_closed(e, pt);
            double v2 = eval_closed(n, pt);
            ++evaluated;
            CAPTURE(to_dsl(e));
            CHECK(std::abs(v1 - v2) <=
                  1e-9 * std::max({1.0, std::abs(v1), std::abs(v2)}));
        } catch (const EvalError&) {
            continue;  // overflow or a vanishing divisor at this point
        }
    }
    CHECK(evaluated >= 120);
}

TEST_CASE("closed evaluation computes exact values and flags bad input") {
    std::map<Var, double> pt{{ws().var("x"), 2.0}, {ws().var("y"), 3.0}};
    CHECK(eval_closed(P("(x + y)^2"), pt) == 25.0);
    CHECK(eval_closed(P("exp(x - x)"), pt) == 1.0);
    CHECK(eval_closed(P("ln(x/2)"), pt) == 0.0);
    CHECK(eval_closed(P("x^-2"), pt) == 0.25);
    CHECK_THROWS_AS(eval_closed(P("T(x)"), pt), EvalError);
    CHECK_THROWS_AS(eval_closed(P("ln(x - y)"), pt), EvalError);
    CHECK_THROWS_AS(eval_closed(P("1/(x - x)"), pt), EvalError);
    CHECK_THROWS_AS(eval_closed(P("z"), pt), EvalError);
}
