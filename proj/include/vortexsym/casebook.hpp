#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vortexsym/checker.hpp"

namespace vortexsym {

class Casebook;

// One catalog item: immutable payloads keyed by a stable identifier, with a
// locator quoting where the analyzed source text states them.
struct CaseEntry {
    std::string id;
    std::string locator;
    std::string summary;
    std::optional<Equation> equation;
    std::optional<VectorField> field;          // as printed
    std::optional<VectorField> derived_field;  // instantiation of the general
                                               // form, kept when it differs
    std::optional<FlowMap> flow;
    std::vector<Invariant> invariants;
    std::optional<GeneralSolution> solution;
    std::vector<DeterminingEquation> conditions;  // printed determining conditions
    std::vector<VectorField> basis;               // basis and table payloads
};

// An executable claim: what the source text asserts, and a runner that
// produces the engine's own verdict for it.
struct Claim {
    std::string id;
    std::string description;
    std::optional<Verdict> claimed;  // the source text's verdict, when stated
    std::function<VerificationReport(const Casebook&)> run;
};

// Catalog coverage row for one numbered display of the source text.
struct DisplayCoverage {
    int display = 0;
    std::string where;  // entry ids, or a scope note when not cataloged
    bool cataloged = false;
};

// The machine-readable catalog every verifier draws its fixtures from.
class Casebook {
public:
    Casebook();

    const JetSpace& js() const { return js_; }

    bool has_entry(const std::string& id) const;
    const CaseEntry& entry(const std::string& id) const;  // throws on unknown id
    std::vector<std::string> ids() const;                 // sorted

    // The printed point determining conditions flattened into one system
    // (unit monomials), for equivalence comparison against derivation output.
    DeterminingSystem expected_point_system() const;

    // Fully symbolic coefficient ansatz fields: seven-argument coefficients
    // on the base coordinates, thirteen-argument coefficients on the jet.
    VectorField point_ansatz() const;
    VectorField contact_ansatz() const;

    // Replaces the opaque time profile T(t) (and its derivatives) by
    // `profile`, an expression in t, and the opaque shift profile H (and its
    // slot derivatives) by `shift`, an expression in the placeholders
    // a1, a2, a3 evaluated along (k1, k2, k3)*e^-t.
    Expr instantiate_opaque(const Expr& e, const Expr& profile, const Expr& shift) const;
    VectorField instantiate_field(const VectorField& f, const Expr& profile,
                                  const Expr& shift) const;
    // The general point field instantiated at (profile, shift).
    VectorField instantiate_point_general(const Expr& profile, const Expr& shift) const;

    // The full executable claim suite, in a fixed order.
    std::vector<Claim> claims() const;

    // Rows for displays 1..25 of the source text.
    std::vector<DisplayCoverage> display_coverage() const;

private:
    void build();

    JetSpace js_;
    std::map<std::string, CaseEntry> entries_;
};

}  // namespace vortexsym
