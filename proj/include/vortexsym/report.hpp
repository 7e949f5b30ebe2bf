#pragma once

#include <string>

#include "json.hpp"

#include "vortexsym/casebook.hpp"
#include "vortexsym/numlab.hpp"

namespace vortexsym {

// JSON renderings of the engine's value types. Keys are emitted in sorted
// order and expressions print through the canonical DSL printer, so equal
// values always serialize to identical bytes.

nlohmann::json to_json(const Expr& e);
nlohmann::json to_json(const JetSpace& js, const VectorField& f);
nlohmann::json to_json(const Equation& eq);
nlohmann::json to_json(const DeterminingSystem& system);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const JetSpace& js, const FlowMap& flow);
nlohmann::json to_json(const Invariant& inv);
nlohmann::json to_json(const GeneralSolution& sol);
nlohmann::json to_json(const JetSpace& js, const CaseEntry& entry);
nlohmann::json to_json(const SampledCurve& curve);
nlohmann::json to_json(const DisplayCoverage& row);
nlohmann::json to_json(const ScenarioSpec& spec);

// Readers for the same schemas, used by command-line inputs. Each throws
// Error on a missing key, a wrong shape, or an expression that fails to
// parse (the message keeps the parser's position information).

VectorField field_from_json(const JetSpace& js, const nlohmann::json& j);
FlowMap flow_from_json(const JetSpace& js, const nlohmann::json& j);
Invariant invariant_from_json(const JetSpace& js, const nlohmann::json& j);
Equation equation_from_json(const JetSpace& js, const nlohmann::json& j);
ScenarioSpec scenario_from_json(const nlohmann::json& j);

}  // namespace vortexsym
