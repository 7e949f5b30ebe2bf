#include "vortexsym/numlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <sstream>

#include "vortexsym/numeval.hpp"
#include "vortexsym/normal.hpp"

namespace vortexsym {

namespace {

const std::vector<std::string> kComponents = {"k1", "k2", "k3", "n1", "n2", "n3"};

std::map<Var, double> param_env(const JetSpace& js,
                                const std::map<std::string, double>& params) {
    std::map<Var, double> env;
    for (const auto& [name, value] : params) env[js.ws().var(name)] = value;
    return env;
}

// Uniform grid with N = round((b - a)/h) steps; the step is adjusted so the
// grid lands exactly on b.
std::vector<double> uniform_grid(double a, double b, double h) {
    if (!(b > a)) throw Error("curve interval is empty: b must exceed a");
    if (!(h > 0)) throw Error("step h must be positive");
    auto steps = static_cast<std::size_t>(std::llround((b - a) / h));
    if (steps < 1) steps = 1;
    std::vector<double> grid(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        grid[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(steps);
    return grid;
}

// Fourth-order central difference on a uniform grid, defined on the interior
// i in [2, N-2].
double fd4(const std::vector<double>& y, std::size_t i, double h) {
    return (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * h);
}

// Four-point Lagrange interpolation of (x, y) samples at target; x must be
// strictly increasing but need not be uniform.
double lagrange4(const std::vector<double>& x, const std::vector<double>& y,
                 double target) {
    std::size_t n = x.size();
    auto it = std::upper_bound(x.begin(), x.end(), target);
    std::size_t j = static_cast<std::size_t>(it - x.begin());
    std::size_t start = j < 2 ? 0 : j - 2;
    if (start + 4 > n) start = n - 4;
    double out = 0.0;
    for (std::size_t p = start; p < start + 4; ++p) {
        double weight = 1.0;
        for (std::size_t q = start; q < start + 4; ++q) {
            if (q == p) continue;
            weight *= (target - x[q]) / (x[p] - x[q]);
        }
        out += weight * y[p];
    }
    return out;
}

enum class Direction { Increasing, Decreasing, Neither };

Direction monotone_direction(const std::vector<double>& x) {
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) increasing = false;
        if (!(x[i] < x[i - 1])) decreasing = false;
    }
    if (increasing) return Direction::Increasing;
    if (decreasing) return Direction::Decreasing;
    return Direction::Neither;
}

// Re-grids component samples given against a (monotone) raw time series onto
// a uniform grid of the same size over the same range.
SampledCurve regrid(std::vector<double> raw_time,
                    std::map<std::string, std::vector<double>> comps,
                    const std::string& what) {
    switch (monotone_direction(raw_time)) {
        case Direction::Increasing:
            break;
        case Direction::Decreasing:
            std::reverse(raw_time.begin(), raw_time.end());
            for (auto& [name, series] : comps)
                std::reverse(series.begin(), series.end());
            break;
        case Direction::Neither:
            throw Error(what + " produced a time map that is not strictly monotone");
    }
    if (raw_time.size() < 4)
        throw Error(what + " needs at least four samples to re-grid");
    SampledCurve out;
    out.t = uniform_grid(raw_time.front(), raw_time.back(),
                         (raw_time.back() - raw_time.front()) /
                             static_cast<double>(raw_time.size() - 1));
    for (const auto& [name, series] : comps) {
        std::vector<double> mapped(out.t.size());
        for (std::size_t i = 0; i < out.t.size(); ++i)
            mapped[i] = lagrange4(raw_time, series, out.t[i]);
        out.values[name] = std::move(mapped);
    }
    return out;
}

std::map<std::string, Expr> parse_forms(const JetSpace& js,
                                        const std::map<std::string, std::string>& dsl) {
    std::map<std::string, Expr> forms;
    for (const auto& [name, text] : dsl) forms[name] = js.parse(text);
    return forms;
}

}  // namespace

const std::vector<std::string>& curve_components() { return kComponents; }

void validate_curve(const SampledCurve& curve) {
    if (curve.t.size() < 2) throw Error("curve grid needs at least two points");
    if (monotone_direction(curve.t) != Direction::Increasing)
        throw Error("curve grid must be strictly increasing");
    for (const std::string& name : kComponents) {
        auto it = curve.values.find(name);
        if (it == curve.values.end())
            throw Error("curve is missing the " + name + " component");
        if (it->second.size() != curve.t.size())
            throw Error("curve component " + name + " disagrees with the grid length");
        for (double v : it->second)
            if (!std::isfinite(v))
                throw Error("curve component " + name + " holds a non-finite value");
    }
}

SampledCurve curve_from_closed_forms(const JetSpace& js,
                                     const std::map<std::string, std::string>& dsl,
                                     double a, double b, double h,
                                     const std::map<std::string, double>& params) {
    SampledCurve curve;
    curve.name = "closed form";
    curve.provenance = "evaluated from closed forms";
    curve.params = params;
    curve.t = uniform_grid(a, b, h);
    curve.closed_forms = parse_forms(js, dsl);
    for (const std::string& name : kComponents)
        if (!curve.closed_forms.count(name))
            throw Error("closed-form curve is missing the " + name + " component");
    std::map<Var, double> env = param_env(js, params);
    for (const std::string& name : kComponents) {
        std::vector<double> series(curve.t.size());
        for (std::size_t i = 0; i < curve.t.size(); ++i) {
            env[js.t()] = curve.t[i];
            series[i] = eval_closed(curve.closed_forms.at(name), env);
        }
        curve.values[name] = std::move(series);
    }
    validate_curve(curve);
    return curve;
}

SampledCurve integrate_solution(const JetSpace& js, const Equation& eq,
                                const ScenarioSpec& spec) {
    if (!(eq.pivot == js.q(1)))
        throw Error("scenario integration expects an equation with pivot q1");

    const std::map<std::string, std::string> dsl = {{"n1", spec.n1}, {"n2", spec.n2},
                                                    {"n3", spec.n3}, {"k2", spec.k2},
                                                    {"k3", spec.k3}};
    std::map<std::string, Expr> forms = parse_forms(js, dsl);
    std::map<Var, double> env = param_env(js, spec.params);

    // pivot safety: the scenario promises n1 stays away from zero
    for (int i = 0; i <= 256; ++i) {
        env[js.t()] = spec.a + (spec.b - spec.a) * i / 256.0;
        if (std::abs(eval_closed(forms.at("n1"), env)) < 1e-9)
            throw Error("scenario n1 vanishes on the interval; the pivot is unsafe");
    }

    // reduce the solved pivot q1 = f(t, k1) using the closed forms: the other
    // five components and their exact t-derivatives
    std::map<Var, Expr> bind;
    bind[js.k(2)] = forms.at("k2");
    bind[js.k(3)] = forms.at("k3");
    for (int i = 1; i <= 3; ++i) {
        Expr n_form = forms.at("n" + std::to_string(i));
        bind[js.n(i)] = n_form;
        bind[js.p(i)] = differentiate(n_form, js.t());
    }
    bind[js.q(2)] = differentiate(forms.at("k2"), js.t());
    bind[js.q(3)] = differentiate(forms.at("k3"), js.t());
    Expr rhs = normalize(substitute(solve_pivot(eq), bind));

    SampledCurve curve;
    curve.name = spec.name;
    curve.provenance = "k1 integrated by classical Runge-Kutta, others closed form";
    curve.params = spec.params;
    curve.t = uniform_grid(spec.a, spec.b, spec.h);
    curve.closed_forms = forms;

    double step = curve.t[1] - curve.t[0];
    std::vector<double> k1(curve.t.size());
    k1[0] = spec.k1_start;
    auto f = [&](double t, double y) {
        env[js.t()] = t;
        env[js.k(1)] = y;
        double v;
        try {
            v = eval_closed(rhs, env);
        } catch (const EvalError& err) {
            throw Error(std::string("pivot evaluation failed at t = ") +
                        std::to_string(t) + ": " + err.what());
        }
        if (!std::isfinite(v))
            throw Error("pivot derivative is non-finite at t = " + std::to_string(t));
        return v;
    };
    for (std::size_t i = 0; i + 1 < curve.t.size(); ++i) {
        double t = curve.t[i];
        double y = k1[i];
        double f1 = f(t, y);
        double f2 = f(t + step / 2, y + step / 2 * f1);
        double f3 = f(t + step / 2, y + step / 2 * f2);
        double f4 = f(t + step, y + step * f3);
        k1[i + 1] = y + step / 6 * (f1 + 2 * f2 + 2 * f3 + f4);
        if (!std::isfinite(k1[i + 1]))
            throw Error("integration left the finite range at t = " +
                        std::to_string(curve.t[i + 1]));
    }
    curve.values["k1"] = std::move(k1);

    for (const auto& [name, form] : forms) {
        std::vector<double> series(curve.t.size());
        for (std::size_t i = 0; i < curve.t.size(); ++i) {
            env[js.t()] = curve.t[i];
            series[i] = eval_closed(form, env);
        }
        curve.values[name] = std::move(series);
    }
    validate_curve(curve);
    return curve;
}

double residual_max(const JetSpace& js, const SampledCurve& curve, const Equation& eq) {
    validate_curve(curve);
    if (curve.t.size() < 5)
        throw Error("residual measurement needs at least five grid points");

    double step = curve.t[1] - curve.t[0];
    std::map<std::string, Expr> rates;  // exact derivative expressions, where known
    for (const auto& [name, form] : curve.closed_forms)
        rates[name] = differentiate(form, js.t());

    auto jet_of = [&js](const std::string& name) {
        int index = name[1] - '0';
        return name[0] == 'k' ? js.q(index) : js.p(index);
    };
    auto base_of = [&js](const std::string& name) {
        int index = name[1] - '0';
        return name[0] == 'k' ? js.k(index) : js.n(index);
    };

    std::map<Var, double> env = param_env(js, curve.params);
    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < curve.t.size(); ++i) {
        env[js.t()] = curve.t[i];
        for (const std::string& name : kComponents) {
            env[base_of(name)] = curve.values.at(name)[i];
            auto rate = rates.find(name);
            env[jet_of(name)] = rate != rates.end()
                                    ? eval_closed(rate->second, env)
                                    : fd4(curve.values.at(name), i, step);
        }
        worst = std::max(worst, std::abs(eval_closed(eq.residual, env)));
    }
    return worst;
}

std::map<Var, double> flow_point(const JetSpace& js, const FlowMap& flow,
                                 const std::map<Var, double>& at, double s) {
    std::map<Var, double> env = at;
    env[flow.parameter] = s;
    std::map<Var, double> out;
    std::vector<Var> coords = {js.t(),  js.k(1), js.k(2), js.k(3),
                               js.n(1), js.n(2), js.n(3)};
    for (const Var& c : coords) {
        auto it = flow.components.find(c);
        out[c] = it == flow.components.end() ? at.at(c) : eval_closed(it->second, env);
    }
    return out;
}

SampledCurve transport(const JetSpace& js, const SampledCurve& curve,
                       const FlowMap& flow, double s) {
    validate_curve(curve);
    std::vector<double> raw_time(curve.t.size());
    std::map<std::string, std::vector<double>> comps;
    for (const std::string& name : kComponents)
        comps[name] = std::vector<double>(curve.t.size());

    std::map<Var, double> at = param_env(js, curve.params);
    for (std::size_t i = 0; i < curve.t.size(); ++i) {
        at[js.t()] = curve.t[i];
        for (int j = 1; j <= 3; ++j) {
            at[js.k(j)] = curve.values.at("k" + std::to_string(j))[i];
            at[js.n(j)] = curve.values.at("n" + std::to_string(j))[i];
        }
        std::map<Var, double> moved = flow_point(js, flow, at, s);
        raw_time[i] = moved.at(js.t());
        for (int j = 1; j <= 3; ++j) {
            comps["k" + std::to_string(j)][i] = moved.at(js.k(j));
            comps["n" + std::to_string(j)][i] = moved.at(js.n(j));
        }
    }

    SampledCurve out = regrid(std::move(raw_time), std::move(comps), "transport");
    out.name = curve.name;
    out.params = curve.params;
    std::ostringstream tag;
    tag << "transported at parameter " << s;
    out.provenance = tag.str();
    validate_curve(out);
    return out;
}

SampledCurve reparametrize_to_time(const JetSpace&, const SampledCurve& curve,
                                   double w) {
    validate_curve(curve);
    std::vector<double> raw_time(curve.t.size());
    std::map<std::string, std::vector<double>> comps;
    for (const std::string& name : kComponents) comps[name] = curve.values.at(name);
    for (std::size_t i = 0; i < curve.t.size(); ++i) {
        double k1 = curve.values.at("k1")[i];
        double k2 = curve.values.at("k2")[i];
        double k3 = curve.values.at("k3")[i];
        double arg = k1 * k1 + k2 * k2 + k3 * k3 + w;
        if (!(arg > 0))
            throw Error("reparametrization needs k^2 + w > 0 along the curve");
        raw_time[i] = 0.5 * std::log(arg);
    }
    SampledCurve out = regrid(std::move(raw_time), std::move(comps),
                              "reparametrization");
    out.name = curve.name;
    out.params = curve.params;
    std::ostringstream tag;
    tag << "reparametrized by t = ln(k^2 + " << w << ")/2";
    out.provenance = tag.str();
    validate_curve(out);
    return out;
}

void write_csv(const SampledCurve& curve, std::ostream& out) {
    out << "t";
    for (const std::string& name : kComponents) out << "," << name;
    out << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < curve.t.size(); ++i) {
        out << curve.t[i];
        for (const std::string& name : kComponents)
            out << "," << curve.values.at(name)[i];
        out << "\n";
    }
}

ScenarioSpec scenario_exp() {
    ScenarioSpec spec;
    spec.name = "exp";
    return spec;
}

ScenarioSpec scenario_shifted() {
    ScenarioSpec spec;
    spec.name = "shifted-exp";
    spec.n2 = "1";
    spec.k2 = "1";
    spec.k1_start = 0.0;
    return spec;
}

ScenarioSpec scenario_mixed() {
    ScenarioSpec spec;
    spec.name = "mixed";
    spec.n2 = "t";
    spec.n3 = "1";
    spec.k2 = "exp(t/2)";
    spec.k3 = "t^2";
    return spec;
}

ScenarioSpec scenario_ray(double w) {
    ScenarioSpec spec;
    spec.name = "ray";
    spec.k2 = "1 + t/2";
    spec.k3 = "1";
    spec.params["w"] = w;
    return spec;
}

}  // namespace vortexsym
