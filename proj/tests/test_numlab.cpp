#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vortexsym/casebook.hpp"
#include "vortexsym/numlab.hpp"

using namespace vortexsym;

namespace {

const Casebook& book() {
    static Casebook cb;
    return cb;
}

const JetSpace& js() { return book().js(); }

Equation balance() { return *book().entry("eq2").equation; }
Equation ray_equation() { return *book().entry("eq1").equation; }

double max_abs_error(const SampledCurve& curve, const std::string& component,
                     double (*reference)(double)) {
    double worst = 0.0;
    for (std::size_t i = 0; i < curve.t.size(); ++i)
        worst = std::max(worst, std::abs(curve.values.at(component)[i] -
                                         reference(curve.t[i])));
    return worst;
}

}  // namespace

TEST_CASE("the exponential scenario integrates to e^t within RK4 accuracy") {
    SampledCurve curve = integrate_solution(js(), balance(), scenario_exp());
    CHECK(curve.t.size() == 1001);
    CHECK(max_abs_error(curve, "k1", [](double t) { return std::exp(t); }) < 1e-10);
    CHECK(residual_max(js(), curve, balance()) < 1e-8);
}

TEST_CASE("the shifted scenario integrates to e^t - 1") {
    SampledCurve curve = integrate_solution(js(), balance(), scenario_shifted());
    CHECK(max_abs_error(curve, "k1",
                        [](double t) { return std::exp(t) - 1.0; }) < 1e-10);
    CHECK(residual_max(js(), curve, balance()) < 1e-8);
}

TEST_CASE("the mixed scenario is self-consistent under the residual oracle") {
    SampledCurve curve = integrate_solution(js(), balance(), scenario_mixed());
    CHECK(residual_max(js(), curve, balance()) < 1e-8);
}

TEST_CASE("an exact closed-form solution has near-zero residual") {
    SampledCurve curve = curve_from_closed_forms(
        js(),
        {{"k1", "exp(t)"}, {"k2", "0"}, {"k3", "0"},
         {"n1", "1"}, {"n2", "t"}, {"n3", "exp(-t)"}},
        0.0, 1.0, 1e-3);
    CHECK(residual_max(js(), curve, balance()) < 1e-10);
}

TEST_CASE("a corrupted curve is detected by the residual") {
    SampledCurve curve = integrate_solution(js(), balance(), scenario_shifted());
    for (double& v : curve.values["k1"]) v *= 1.01;
    CHECK(residual_max(js(), curve, balance()) > 1e-3);
}

TEST_CASE("halving the step shrinks the integration error at fourth order") {
    ScenarioSpec coarse = scenario_exp();
    coarse.h = 0.05;
    ScenarioSpec fine = scenario_exp();
    fine.h = 0.025;
    double coarse_err = max_abs_error(integrate_solution(js(), balance(), coarse),
                                      "k1", [](double t) { return std::exp(t); });
    double fine_err = max_abs_error(integrate_solution(js(), balance(), fine), "k1",
                                    [](double t) { return std::exp(t); });
    double ratio = coarse_err / fine_err;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("scenario validation rejects a vanishing pivot coefficient") {
    ScenarioSpec spec = scenario_exp();
    spec.n1 = "t - 1/2";
    CHECK_THROWS_AS(integrate_solution(js(), balance(), spec), Error);
}

TEST_CASE("transport at parameter zero returns the same curve") {
    SampledCurve curve = integrate_solution(js(), balance(), scenario_exp());
    SampledCurve moved = transport(js(), curve, *book().entry("example-1").flow, 0.0);
    REQUIRE(moved.t.size() == curve.t.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < curve.t.size(); ++i) {
        worst = std::max(worst, std::abs(moved.t[i] - curve.t[i]));
        for (const std::string& name : curve_components())
            worst = std::max(worst, std::abs(moved.values.at(name)[i] -
                                             curve.values.at(name)[i]));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("verified flows move solutions to solutions") {
    SampledCurve exp_curve = integrate_solution(js(), balance(), scenario_exp());
    SampledCurve shifted = integrate_solution(js(), balance(), scenario_shifted());
    const FlowMap& flow1 = *book().entry("example-1").flow;
    const FlowMap& flow2 = *book().entry("example-2").flow;

    CHECK(residual_max(js(), transport(js(), exp_curve, flow1, 0.7), balance()) <
          1e-8);
    CHECK(residual_max(js(), transport(js(), shifted, flow2, 0.3), balance()) < 1e-6);
    for (double s : {-1.0, -0.25, 0.25, 1.0}) {
        CHECK(residual_max(js(), transport(js(), exp_curve, flow2, s), balance()) <
              1e-6);
        CHECK(residual_max(js(), transport(js(), shifted, flow1, s), balance()) <
              1e-6);
    }
}

TEST_CASE("the refuted transformations break the solution property") {
    SampledCurve shifted = integrate_solution(js(), balance(), scenario_shifted());
    const FlowMap& flow3 = *book().entry("example-3").flow;
    CHECK(residual_max(js(), transport(js(), shifted, flow3, 0.25), balance()) >
          1e-3);
}

TEST_CASE("a non-monotone induced time map is rejected") {
    SampledCurve curve = integrate_solution(js(), balance(), scenario_exp());
    FlowMap fold;
    fold.parameter = js().ws().var("s");
    fold.components[js().t()] = js().parse("(t - 1/2)^2");
    CHECK_THROWS_AS(transport(js(), curve, fold, 1.0), Error);
}

TEST_CASE("catalog invariants stay constant along their own flows") {
    ScenarioSpec spec;
    spec.name = "positive";
    spec.n2 = "exp(-t)";
    spec.n3 = "2";
    spec.k2 = "1 + t";
    spec.k3 = "2 + t";
    SampledCurve curve = integrate_solution(js(), balance(), spec);
    std::size_t mid = curve.t.size() / 2;

    std::map<Var, double> point;
    point[js().t()] = curve.t[mid];
    for (int j = 1; j <= 3; ++j) {
        point[js().k(j)] = curve.values.at("k" + std::to_string(j))[mid];
        point[js().n(j)] = curve.values.at("n" + std::to_string(j))[mid];
    }

    for (const char* id : {"example-1", "example-2"}) {
        const CaseEntry& entry = book().entry(id);
        for (const Invariant& inv : entry.invariants) {
            double reference = 0.0;
            bool first = true;
            for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                std::map<Var, double> moved =
                    flow_point(js(), *entry.flow, point, s);
                double value = eval_closed(inv.expression, moved);
                if (first) {
                    reference = value;
                    first = false;
                } else {
                    CHECK_MESSAGE(std::abs(value - reference) < 1e-6, id, " ",
                                  inv.label, " drifts at s = ", s);
                }
            }
        }
    }
}

TEST_CASE("an orthogonal ray solution reparametrizes to a balance solution") {
    SampledCurve curve = curve_from_closed_forms(
        js(),
        {{"k1", "exp(t)"}, {"k2", "0"}, {"k3", "0"},
         {"n1", "0"}, {"n2", "1"}, {"n3", "0"}},
        0.0, 1.0, 1e-3, {{"w", 1.0}});
    CHECK(residual_max(js(), curve, ray_equation()) < 1e-12);
    SampledCurve in_time = reparametrize_to_time(js(), curve, 1.0);
    CHECK(residual_max(js(), in_time, balance()) < 1e-8);
}

TEST_CASE("an integrated ray solution reparametrizes to a balance solution") {
    SampledCurve curve = integrate_solution(js(), ray_equation(), scenario_ray(2.0));
    CHECK(residual_max(js(), curve, ray_equation()) < 1e-8);
    SampledCurve in_time = reparametrize_to_time(js(), curve, 2.0);
    CHECK(residual_max(js(), in_time, balance()) < 1e-6);
}

TEST_CASE("degenerate reparametrizations are reported") {
    SampledCurve constant = curve_from_closed_forms(
        js(),
        {{"k1", "1"}, {"k2", "0"}, {"k3", "0"},
         {"n1", "0"}, {"n2", "1"}, {"n3", "0"}},
        0.0, 1.0, 1e-2);
    CHECK_THROWS_AS(reparametrize_to_time(js(), constant, 1.0), Error);

    SampledCurve tiny = curve_from_closed_forms(
        js(),
        {{"k1", "0"}, {"k2", "0"}, {"k3", "0"},
         {"n1", "0"}, {"n2", "1"}, {"n3", "0"}},
        0.0, 1.0, 1e-2);
    CHECK_THROWS_AS(reparametrize_to_time(js(), tiny, -1.0), Error);
}

TEST_CASE("curve validation guards grids and values") {
    SampledCurve curve = curve_from_closed_forms(
        js(),
        {{"k1", "t"}, {"k2", "0"}, {"k3", "0"},
         {"n1", "1"}, {"n2", "0"}, {"n3", "0"}},
        0.0, 1.0, 0.25);
    CHECK_NOTHROW(validate_curve(curve));

    SampledCurve bad_grid = curve;
    bad_grid.t[2] = bad_grid.t[1];
    CHECK_THROWS_AS(validate_curve(bad_grid), Error);

    SampledCurve bad_value = curve;
    bad_value.values["n2"][0] = std::nan("");
    CHECK_THROWS_AS(validate_curve(bad_value), Error);

    SampledCurve short_grid = curve_from_closed_forms(
        js(),
        {{"k1", "t"}, {"k2", "0"}, {"k3", "0"},
         {"n1", "1"}, {"n2", "0"}, {"n3", "0"}},
        0.0, 1.0, 0.5);
    CHECK_THROWS_AS(residual_max(js(), short_grid, balance()), Error);
}

TEST_CASE("curves serialize to CSV with a canonical header") {
    SampledCurve curve = curve_from_closed_forms(
        js(),
        {{"k1", "t"}, {"k2", "0"}, {"k3", "0"},
         {"n1", "1"}, {"n2", "0"}, {"n3", "0"}},
        0.0, 1.0, 0.5);
    std::ostringstream out;
    write_csv(curve, out);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,k1,k2,k3,n1,n2,n3");
    int rows = 0;
    std::string row;
    while (std::getline(lines, row)) ++rows;
    CHECK(rows == 3);
}
