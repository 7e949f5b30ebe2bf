#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vortexsym/detsys.hpp"
#include "vortexsym/jet.hpp"
#include "vortexsym/normal.hpp"
#include "vortexsym/numeval.hpp"

namespace vortexsym {

enum class Verdict { Verified, Refuted, Inconclusive };

// "verified" / "refuted" / "inconclusive"
std::string verdict_name(Verdict v);

// Aggregation order: refuted beats inconclusive beats verified.
Verdict worst(Verdict a, Verdict b);

// A scalar expression in the base coordinates (t, k, n) claimed constant
// along the orbits of some field.
struct Invariant {
    std::string label;
    Expr expression;
};

// One-parameter transformation: each base coordinate maps to an expression
// in the base coordinates and the flow parameter. Coordinates without an
// entry are fixed.
struct FlowMap {
    std::map<Var, Expr> components;
    Var parameter;
};

// An opaque function symbol applied to a list of invariants.
struct GeneralSolution {
    std::string symbol;
    std::vector<Invariant> invariants;
};

struct NumericSpot {
    int samples = 0;
    double max_abs = 0.0;
};

struct VerificationReport {
    std::string claim;
    Verdict verdict = Verdict::Inconclusive;
    Expr residual;  // normalized witness; the zero expression when verified
    NumericSpot numeric;
    std::string paper_agreement = "n/a";  // set by the claims runner
    std::string note;                     // which sub-check failed, if any
};

// Default sampling options for verifier spot checks.
ZeroOptions checker_options();

// Two-stage verdict on a raw residual: normalization decides when it can,
// and the raw tree is always sampled so the report carries numeric evidence
// even for symbolically settled checks.
VerificationReport report_on_residual(std::string claim, const Expr& residual,
                                      const ZeroOptions& opts = checker_options());

enum class ReductionMode {
    Identical,  // the residual must vanish as an expression
    OnShell,    // substitute the solved pivot first
};

// Applies the (optionally prolonged) field to the equation residual and
// decides whether the result vanishes.
VerificationReport check_generator(const JetSpace& js, const VectorField& field,
                                   const Equation& eq, SymmetryMode mode,
                                   ReductionMode reduction,
                                   const ZeroOptions& opts = checker_options());

// Verifies field[I] = 0 for a base-coordinate field and invariant.
VerificationReport check_invariant(const JetSpace& js, const Invariant& inv,
                                   const VectorField& field,
                                   const ZeroOptions& opts = checker_options());

// Verifies (a) the flow is the identity at parameter zero and (b) the
// parameter derivative of every component equals the field coefficient
// evaluated along the flow.
VerificationReport check_flow(const JetSpace& js, const FlowMap& flow,
                              const VectorField& field,
                              const ZeroOptions& opts = checker_options());

// Verifies the one-parameter group law: composing the flow at parameters s2
// then s1 equals the flow at s1 + s2, componentwise.
VerificationReport check_flow_group_law(const JetSpace& js, const FlowMap& flow,
                                        const ZeroOptions& opts = checker_options());

// Expands field[mu(I1, ..., Im)] by the chain rule and also checks each
// invariant separately; the verdict aggregates the per-invariant verdicts.
VerificationReport check_general_solution(const JetSpace& js, const GeneralSolution& sol,
                                          const VectorField& field,
                                          const ZeroOptions& opts = checker_options());

// Componentwise equality of two fields, reported with the first differing
// coefficient as the witness.
VerificationReport check_fields_equal(const VectorField& a, const VectorField& b,
                                      const ZeroOptions& opts = checker_options());

// Returns a description of the family member a field belongs to, or nullopt.
using FamilyMatcher = std::function<std::optional<std::string>(const VectorField&)>;

struct BracketEntry {
    size_t left = 0;
    size_t right = 0;
    VectorField bracket;
    bool zero = false;
    std::optional<std::string> match;  // family description when recognized
};

// All pairwise brackets (left < right) with family recognition; unmatched
// nonzero brackets carry no description and stay available raw.
std::vector<BracketEntry> commutator_table(const std::vector<VectorField>& gens,
                                           const std::vector<FamilyMatcher>& matchers);

// Recognizes t |-> T(t) rescaling fields: t-coefficient T depending on t
// alone, k_i-coefficient k_i*T, n_j-coefficient n_j*(T' - T).
FamilyMatcher scaling_family_matcher(const JetSpace& js);

// Recognizes the k1-shift fields: k1-coefficient e^t * eta with eta constant
// along t-translated rays (a function of k*e^-t alone), n_j-coefficient
// -n1 * e^t * d(eta)/dk_j, everything else zero.
FamilyMatcher shift_family_matcher(const JetSpace& js);

// The two point-symmetry families, scaling first.
std::vector<FamilyMatcher> point_family_matchers(const JetSpace& js);

// Recognizes sums of the twelve contact basis patterns by reading each
// pattern's designated coordinate and checking the induced k1-coefficient.
FamilyMatcher contact_family_matcher(const JetSpace& js);

}  // namespace vortexsym
