#include "vortexsym/report.hpp"

#include "vortexsym/printer.hpp"

namespace vortexsym {

namespace {

using nlohmann::json;

const char* kSpace = "J1(R,R6)";

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw Error(std::string("expected a string field '") + key + "'");
    return j.at(key).get<std::string>();
}

Expr parse_field_value(const JetSpace& js, const std::string& where,
                       const std::string& dsl) {
    try {
        return js.parse(dsl);
    } catch (const Error& err) {
        throw Error(where + ": " + err.what());
    }
}

}  // namespace

json to_json(const Expr& e) { return to_dsl(e); }

json to_json(const JetSpace& js, const VectorField& f) {
    (void)js;
    json coeffs = json::object();
    for (const auto& [coord, coeff] : f.coefficients())
        coeffs[coord.name()] = to_dsl(coeff);
    return json{{"space", kSpace}, {"coefficients", coeffs}};
}

json to_json(const Equation& eq) {
    return json{{"residual", to_dsl(eq.residual)}, {"pivot", eq.pivot.name()}};
}

json to_json(const DeterminingSystem& system) {
    json rows = json::array();
    for (const DeterminingEquation& member : system)
        rows.push_back(json{{"monomial", to_dsl(member.monomial)},
                            {"coefficient", to_dsl(member.coefficient)}});
    return rows;
}

json to_json(const VerificationReport& report) {
    return json{{"claim", report.claim},
                {"verdict", verdict_name(report.verdict)},
                {"residual", to_dsl(report.residual)},
                {"numeric", json{{"samples", report.numeric.samples},
                                 {"max_abs", report.numeric.max_abs}}},
                {"paper_agreement", report.paper_agreement},
                {"note", report.note}};
}

json to_json(const JetSpace& js, const FlowMap& flow) {
    (void)js;
    json comps = json::object();
    for (const auto& [coord, expr] : flow.components) comps[coord.name()] = to_dsl(expr);
    return json{{"parameter", flow.parameter.name()}, {"components", comps}};
}

json to_json(const Invariant& inv) {
    return json{{"label", inv.label}, {"expression", to_dsl(inv.expression)}};
}

json to_json(const GeneralSolution& sol) {
    json invariants = json::array();
    for (const Invariant& inv : sol.invariants) invariants.push_back(to_json(inv));
    return json{{"symbol", sol.symbol}, {"invariants", invariants}};
}

json to_json(const JetSpace& js, const CaseEntry& entry) {
    json out{{"id", entry.id}, {"locator", entry.locator}, {"summary", entry.summary}};
    if (entry.equation) out["equation"] = to_json(*entry.equation);
    if (entry.field) out["field"] = to_json(js, *entry.field);
    if (entry.derived_field) out["derived_field"] = to_json(js, *entry.derived_field);
    if (entry.flow) out["flow"] = to_json(js, *entry.flow);
    if (!entry.invariants.empty()) {
        json invariants = json::array();
        for (const Invariant& inv : entry.invariants)
            invariants.push_back(to_json(inv));
        out["invariants"] = invariants;
    }
    if (entry.solution) out["solution"] = to_json(*entry.solution);
    if (!entry.conditions.empty()) out["conditions"] = to_json(entry.conditions);
    if (!entry.basis.empty()) {
        json basis = json::array();
        for (const VectorField& f : entry.basis) basis.push_back(to_json(js, f));
        out["basis"] = basis;
    }
    return out;
}

json to_json(const SampledCurve& curve) {
    json values = json::object();
    for (const auto& [name, series] : curve.values) values[name] = series;
    json closed = json::object();
    for (const auto& [name, form] : curve.closed_forms) closed[name] = to_dsl(form);
    return json{{"name", curve.name},
                {"provenance", curve.provenance},
                {"params", curve.params},
                {"t", curve.t},
                {"values", values},
                {"closed_forms", closed}};
}

json to_json(const DisplayCoverage& row) {
    return json{{"display", row.display},
                {"where", row.where},
                {"cataloged", row.cataloged}};
}

json to_json(const ScenarioSpec& spec) {
    return json{{"name", spec.name}, {"n1", spec.n1},
                {"n2", spec.n2},     {"n3", spec.n3},
                {"k2", spec.k2},     {"k3", spec.k3},
                {"k1_start", spec.k1_start},
                {"a", spec.a},       {"b", spec.b},
                {"h", spec.h},       {"params", spec.params}};
}

VectorField field_from_json(const JetSpace& js, const json& j) {
    if (!j.is_object() || !j.contains("coefficients") ||
        !j.at("coefficients").is_object())
        throw Error("a field needs a 'coefficients' object of coordinate: expression");
    if (j.contains("space") && j.at("space") != kSpace)
        throw Error(std::string("unknown field space; expected ") + kSpace);
    VectorField f;
    for (const auto& [name, dsl] : j.at("coefficients").items()) {
        if (!dsl.is_string())
            throw Error("coefficient of " + name + " must be a DSL string");
        f.set(js.ws().var(name),
              parse_field_value(js, "coefficient of " + name, dsl.get<std::string>()));
    }
    return f;
}

FlowMap flow_from_json(const JetSpace& js, const json& j) {
    if (!j.is_object() || !j.contains("components") || !j.at("components").is_object())
        throw Error("a flow needs a 'components' object of coordinate: expression");
    FlowMap flow;
    flow.parameter = js.ws().var(
        j.contains("parameter") ? require_string(j, "parameter") : std::string("s"));
    for (const auto& [name, dsl] : j.at("components").items()) {
        if (!dsl.is_string())
            throw Error("component " + name + " must be a DSL string");
        flow.components[js.ws().var(name)] =
            parse_field_value(js, "component " + name, dsl.get<std::string>());
    }
    return flow;
}

Invariant invariant_from_json(const JetSpace& js, const json& j) {
    Invariant inv;
    inv.label = require_string(j, "label");
    inv.expression =
        parse_field_value(js, "invariant " + inv.label, require_string(j, "expression"));
    return inv;
}

Equation equation_from_json(const JetSpace& js, const json& j) {
    Equation eq{parse_field_value(js, "equation residual",
                                  require_string(j, "residual")),
                js.ws().var(require_string(j, "pivot"))};
    return eq;
}

ScenarioSpec scenario_from_json(const json& j) {
    if (!j.is_object()) throw Error("a scenario must be a JSON object");
    ScenarioSpec spec;
    auto pick_string = [&j](const char* key, std::string& into) {
        if (j.contains(key)) {
            if (!j.at(key).is_string())
                throw Error(std::string("scenario field '") + key +
                            "' must be a DSL string");
            into = j.at(key).get<std::string>();
        }
    };
    auto pick_number = [&j](const char* key, double& into) {
        if (j.contains(key)) {
            if (!j.at(key).is_number())
                throw Error(std::string("scenario field '") + key +
                            "' must be a number");
            into = j.at(key).get<double>();
        }
    };
    pick_string("name", spec.name);
    pick_string("n1", spec.n1);
    pick_string("n2", spec.n2);
    pick_string("n3", spec.n3);
    pick_string("k2", spec.k2);
    pick_string("k3", spec.k3);
    pick_number("k1_start", spec.k1_start);
    pick_number("a", spec.a);
    pick_number("b", spec.b);
    pick_number("h", spec.h);
    if (j.contains("params")) {
        if (!j.at("params").is_object())
            throw Error("scenario field 'params' must be an object of numbers");
        for (const auto& [name, value] : j.at("params").items()) {
            if (!value.is_number())
                throw Error("scenario parameter " + name + " must be a number");
            spec.params[name] = value.get<double>();
        }
    }
    return spec;
}

}  // namespace vortexsym
