#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vortexsym/detsys.hpp"
#include "vortexsym/checker.hpp"
#include "vortexsym/jet.hpp"

namespace vortexsym {

// A closed-form scenario: five of the six dependent components are pinned as
// expressions in the curve parameter t, leaving the pivot component k1 to
// numeric integration. Parameter symbols appearing in the equation (such as
// w) take their values from `params`.
struct ScenarioSpec {
    std::string name = "scenario";
    std::string n1 = "1";
    std::string n2 = "0";
    std::string n3 = "0";
    std::string k2 = "0";
    std::string k3 = "0";
    double k1_start = 1.0;
    double a = 0.0;
    double b = 1.0;
    double h = 1e-3;
    std::map<std::string, double> params;
};

// A discrete solution curve on a strictly increasing parameter grid. The six
// component series are keyed k1..k3, n1..n3; components whose exact closed
// form is known keep it in `closed_forms` (expressions in t), so residual
// measurement can differentiate them exactly instead of by finite
// differences.
struct SampledCurve {
    std::string name;
    std::vector<double> t;
    std::map<std::string, std::vector<double>> values;
    std::map<std::string, Expr> closed_forms;
    std::map<std::string, double> params;
    std::string provenance;
};

// Component names in canonical order: k1, k2, k3, n1, n2, n3.
const std::vector<std::string>& curve_components();

// Throws unless the grid is strictly increasing, every component series has
// the grid's length, and all values are finite.
void validate_curve(const SampledCurve& curve);

// Builds a curve by evaluating six closed forms (DSL expressions in t) on a
// uniform grid; no integration involved.
SampledCurve curve_from_closed_forms(const JetSpace& js,
                                     const std::map<std::string, std::string>& forms,
                                     double a, double b, double h,
                                     const std::map<std::string, double>& params = {});

// Integrates the equation's pivot component k1 with classical fourth-order
// Runge-Kutta at the scenario's step, reading every other component from the
// scenario's closed forms. The equation must be solvable for the q1 jet
// coordinate. Throws on pivot underflow or a non-finite state.
SampledCurve integrate_solution(const JetSpace& js, const Equation& eq,
                                const ScenarioSpec& spec);

// Maximum absolute equation residual over interior grid points. Closed-form
// components are differentiated exactly; sampled components use fourth-order
// central finite differences (so measurement error matches the integrator's
// order). Throws when the grid has fewer than five points.
double residual_max(const JetSpace& js, const SampledCurve& curve, const Equation& eq);

// The image of one point under the flow at parameter value s: every base
// coordinate moves to its flow component's value, coordinates the flow does
// not mention stay put.
std::map<Var, double> flow_point(const JetSpace& js, const FlowMap& flow,
                                 const std::map<Var, double>& at, double s);

// Applies the flow at parameter value s to every sample, then re-grids the
// image uniformly over the induced time range by cubic (four-point Lagrange)
// interpolation. Throws when the induced time map is not strictly monotone.
SampledCurve transport(const JetSpace& js, const SampledCurve& curve,
                       const FlowMap& flow, double s);

// Changes the curve parameter to t = ln(k^2 + w)/2 and re-grids uniformly.
// Throws when k^2 + w is not positive or the induced map is not strictly
// monotone (the degenerate case, e.g. a constant k).
SampledCurve reparametrize_to_time(const JetSpace& js, const SampledCurve& curve,
                                   double w);

// Writes the curve as CSV with header t,k1,k2,k3,n1,n2,n3.
void write_csv(const SampledCurve& curve, std::ostream& out);

// Canonical scenarios used by the verification suites.
ScenarioSpec scenario_exp();      // n=(1,0,0), k2=k3=0, k1(0)=1: k1 = e^t
ScenarioSpec scenario_shifted();  // n=(1,1,0), k2=1, k1(0)=0:    k1 = e^t - 1
ScenarioSpec scenario_mixed();    // n=(1,t,1), k2=e^(t/2), k3=t^2
ScenarioSpec scenario_ray(double w);  // pivot scenario for the ray equation

}  // namespace vortexsym
