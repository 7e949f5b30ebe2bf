#include "vortexsym/checker.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "vortexsym/printer.hpp"

namespace vortexsym {

namespace {

const char* kBaseOnlyField = "expected a field on the base coordinates (t, k, n)";

bool is_base_coord(const JetSpace& js, const Var& v) {
    for (const Var& c : js.first_jet_coords())
        if (c == v) return v.kind() == VarKind::Independent || v.kind() == VarKind::Dependent;
    return false;
}

void require_base_field(const JetSpace& js, const VectorField& field) {
    for (const auto& [coord, coeff] : field.coefficients()) {
        if (!is_base_coord(js, coord)) throw Error(kBaseOnlyField);
        for (const Var& jv : js.jet_vars())
            if (contains_var(coeff, jv)) throw Error(kBaseOnlyField);
    }
}

void require_jet_free(const JetSpace& js, const Expr& e, const char* what) {
    for (const Var& jv : js.jet_vars())
        if (contains_var(e, jv)) throw Error(what);
    for (const Var& jv : js.second_jet_vars())
        if (contains_var(e, jv)) throw Error(what);
}

// The seven base coordinates in declaration order.
std::vector<Var> base_coords(const JetSpace& js) {
    std::vector<Var> out;
    for (const Var& c : js.first_jet_coords())
        if (c.kind() == VarKind::Independent || c.kind() == VarKind::Dependent)
            out.push_back(c);
    return out;
}

Expr flow_component(const FlowMap& flow, const Var& coord) {
    auto it = flow.components.find(coord);
    return it == flow.components.end() ? var(coord) : it->second;
}

struct LabeledDefect {
    std::string label;
    Expr defect;
};

// Shared aggregation for checks made of several labeled residuals: the worst
// labeled verdict wins, the witness is the first defect at that level, and
// numeric evidence accumulates across all parts.
VerificationReport aggregate_defects(std::string claim,
                                     const std::vector<LabeledDefect>& defects,
                                     const ZeroOptions& opts) {
    VerificationReport report;
    report.claim = std::move(claim);
    report.verdict = Verdict::Verified;
    report.residual = num(0);
    for (const LabeledDefect& part : defects) {
        VerificationReport sub = report_on_residual(part.label, part.defect, opts);
        report.numeric.samples += sub.numeric.samples;
        report.numeric.max_abs = std::max(report.numeric.max_abs, sub.numeric.max_abs);
        if (sub.verdict == Verdict::Verified) continue;
        // keep the first failing witness, upgrading an undecided one when a
        // hard refutation arrives later
        bool keep = report.verdict == Verdict::Verified ||
                    (sub.verdict == Verdict::Refuted &&
                     report.verdict == Verdict::Inconclusive);
        if (keep) {
            report.residual = sub.residual;
            report.note = (sub.verdict == Verdict::Refuted ? "defect in " : "undecided in ") +
                          part.label;
            if (sub.verdict == Verdict::Inconclusive && !sub.note.empty())
                report.note += " (" + sub.note + ")";
        }
        report.verdict = worst(report.verdict, sub.verdict);
    }
    return report;
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::Refuted: return "refuted";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict worst(Verdict a, Verdict b) {
    if (a == Verdict::Refuted || b == Verdict::Refuted) return Verdict::Refuted;
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
    return Verdict::Verified;
}

ZeroOptions checker_options() {
    ZeroOptions opts;
    opts.samples = 100;
    return opts;
}

VerificationReport report_on_residual(std::string claim, const Expr& residual,
                                      const ZeroOptions& opts) {
    VerificationReport report;
    report.claim = std::move(claim);
    report.residual = normalize(residual);
    bool symbolically_zero = normalizes_to_zero(report.residual);
    ZeroSampleResult spot = sample_for_zero(residual, opts);
    report.numeric.samples = spot.samples_used;
    report.numeric.max_abs = spot.max_abs;
    if (symbolically_zero) {
        if (spot.exceeded) {
            report.verdict = Verdict::Inconclusive;
            report.note = "symbolic and numeric stages disagree";
        } else {
            report.verdict = Verdict::Verified;
        }
        return report;
    }
    if (spot.exceeded) {
        report.verdict = Verdict::Refuted;
        return report;
    }
    report.verdict = Verdict::Inconclusive;
    report.note = spot.exhausted ? "sampling budget exhausted"
                                 : "normal form nonzero but all samples vanish";
    return report;
}

VerificationReport check_generator(const JetSpace& js, const VectorField& field,
                                   const Equation& eq, SymmetryMode mode,
                                   ReductionMode reduction, const ZeroOptions& opts) {
    Expr residual = symmetry_residual(js, eq, field, mode);
    if (reduction == ReductionMode::OnShell) residual = reduce_on_shell(eq, residual);
    return report_on_residual("generator", residual, opts);
}

VerificationReport check_invariant(const JetSpace& js, const Invariant& inv,
                                   const VectorField& field, const ZeroOptions& opts) {
    require_base_field(js, field);
    require_jet_free(js, inv.expression, "invariants must mention base coordinates only");
    Expr residual = apply(field, inv.expression);
    VerificationReport report = report_on_residual(inv.label, residual, opts);
    return report;
}

VerificationReport check_flow(const JetSpace& js, const FlowMap& flow,
                              const VectorField& field, const ZeroOptions& opts) {
    require_base_field(js, field);
    std::vector<Var> coords = base_coords(js);
    std::map<Var, Expr> at_zero;
    at_zero[flow.parameter] = num(0);
    std::map<Var, Expr> along_flow;
    for (const Var& c : coords) along_flow[c] = flow_component(flow, c);

    std::vector<LabeledDefect> defects;
    for (const Var& c : coords) {
        Expr comp = flow_component(flow, c);
        defects.push_back({"identity at parameter zero in " + c.name(),
                           sub(substitute(comp, at_zero), var(c))});
    }
    for (const Var& c : coords) {
        Expr comp = flow_component(flow, c);
        Expr rate = differentiate(comp, flow.parameter);
        Expr expected = substitute(field.coeff(c), along_flow);
        defects.push_back({"parameter derivative in " + c.name(), sub(rate, expected)});
    }
    return aggregate_defects("flow", defects, opts);
}

VerificationReport check_flow_group_law(const JetSpace& js, const FlowMap& flow,
                                        const ZeroOptions& opts) {
    std::vector<Var> coords = base_coords(js);
    Var s1 = js.ws().var("s1");
    Var s2 = js.ws().var("s2");

    std::map<Var, Expr> inner;  // the flow at parameter s2
    for (const Var& c : coords) {
        inner[c] = substitute(flow_component(flow, c), {{flow.parameter, var(s2)}});
    }
    inner[flow.parameter] = var(s1);
    std::map<Var, Expr> combined;  // the flow at parameter s1 + s2
    combined[flow.parameter] = add(var(s1), var(s2));

    std::vector<LabeledDefect> defects;
    for (const Var& c : coords) {
        Expr comp = flow_component(flow, c);
        Expr composed = substitute(comp, inner);
        Expr direct = substitute(comp, combined);
        defects.push_back({"group law in " + c.name(), sub(composed, direct)});
    }
    return aggregate_defects("group law", defects, opts);
}

VerificationReport check_general_solution(const JetSpace& js, const GeneralSolution& sol,
                                          const VectorField& field, const ZeroOptions& opts) {
    require_base_field(js, field);
    int arity = static_cast<int>(sol.invariants.size());
    if (!js.ws().has_function(sol.symbol, arity))
        throw Error("undeclared solution symbol '" + sol.symbol + "'");

    std::vector<Expr> args;
    for (const Invariant& inv : sol.invariants) args.push_back(inv.expression);
    Expr full = apply(field, func(sol.symbol, std::move(args)));

    VerificationReport report = report_on_residual("general solution", full, opts);
    std::vector<std::string> failing;
    Verdict parts = Verdict::Verified;
    for (const Invariant& inv : sol.invariants) {
        VerificationReport sub = check_invariant(js, inv, field, opts);
        parts = worst(parts, sub.verdict);
        if (sub.verdict != Verdict::Verified) failing.push_back(inv.label);
    }
    report.verdict = worst(report.verdict, parts);
    if (!failing.empty()) {
        std::string joined;
        for (const std::string& label : failing) {
            if (!joined.empty()) joined += ", ";
            joined += label;
        }
        report.note = "failing invariants: " + joined;
    }
    return report;
}

VerificationReport check_fields_equal(const VectorField& a, const VectorField& b,
                                      const ZeroOptions& opts) {
    std::set<Var> coords;
    for (const auto& [coord, coeff] : a.coefficients()) coords.insert(coord);
    for (const auto& [coord, coeff] : b.coefficients()) coords.insert(coord);
    std::vector<LabeledDefect> defects;
    for (const Var& c : coords)
        defects.push_back({"coefficient of " + c.name(), sub(a.coeff(c), b.coeff(c))});
    return aggregate_defects("fields equal", defects, opts);
}

std::vector<BracketEntry> commutator_table(const std::vector<VectorField>& gens,
                                           const std::vector<FamilyMatcher>& matchers) {
    std::vector<BracketEntry> table;
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = i + 1; j < gens.size(); ++j) {
            BracketEntry entry;
            entry.left = i;
            entry.right = j;
            entry.bracket = commutator(gens[i], gens[j]);
            entry.zero = entry.bracket.coefficients().empty();
            if (!entry.zero) {
                for (const FamilyMatcher& matcher : matchers) {
                    if (auto m = matcher(entry.bracket)) {
                        entry.match = *m;
                        break;
                    }
                }
            }
            table.push_back(std::move(entry));
        }
    }
    return table;
}

namespace {

bool vars_within(const Expr& e, const std::set<Var>& allowed) {
    for (const Var& v : vars_of(e))
        if (!allowed.count(v)) return false;
    return true;
}

bool coeffs_outside_zero(const VectorField& field, const std::set<Var>& designated) {
    for (const auto& [coord, coeff] : field.coefficients())
        if (!designated.count(coord) && !normalizes_to_zero(coeff)) return false;
    return true;
}

}  // namespace

FamilyMatcher scaling_family_matcher(const JetSpace& js) {
    return [&js](const VectorField& field) -> std::optional<std::string> {
        Var t = js.t();
        Expr profile = field.coeff(t);
        if (normalizes_to_zero(profile)) return std::nullopt;
        if (!vars_within(profile, {t})) return std::nullopt;
        Expr rate = differentiate(profile, t);
        std::set<Var> designated = {t};
        for (int i = 1; i <= 3; ++i) {
            designated.insert(js.k(i));
            designated.insert(js.n(i));
        }
        if (!coeffs_outside_zero(field, designated)) return std::nullopt;
        for (int i = 1; i <= 3; ++i) {
            Expr kd = sub(field.coeff(js.k(i)), mul(var(js.k(i)), profile));
            if (!normalizes_to_zero(kd)) return std::nullopt;
            Expr nd = sub(field.coeff(js.n(i)), mul(var(js.n(i)), sub(rate, profile)));
            if (!normalizes_to_zero(nd)) return std::nullopt;
        }
        return "vT[T = " + to_dsl(normalize(profile)) + "]";
    };
}

FamilyMatcher shift_family_matcher(const JetSpace& js) {
    return [&js](const VectorField& field) -> std::optional<std::string> {
        Var t = js.t();
        Expr lead = field.coeff(js.k(1));
        if (normalizes_to_zero(lead)) return std::nullopt;
        // eta along the orbit, written in (t, k): e^-t times the k1 coefficient
        Expr eta = normalize(mul(exp_of(neg(var(t))), lead));
        std::set<Var> allowed = {t, js.k(1), js.k(2), js.k(3)};
        if (!vars_within(eta, allowed)) return std::nullopt;
        // eta must be a function of k*e^-t alone: d/dt + sum k_i d/dk_i kills it
        Expr transport = differentiate(eta, t);
        for (int i = 1; i <= 3; ++i)
            transport = add(transport, mul(var(js.k(i)), differentiate(eta, js.k(i))));
        if (!normalizes_to_zero(transport)) return std::nullopt;
        std::set<Var> designated = {js.k(1), js.n(1), js.n(2), js.n(3)};
        if (!coeffs_outside_zero(field, designated)) return std::nullopt;
        for (int j = 1; j <= 3; ++j) {
            Expr expected = neg(mul(var(js.n(1)), mul(exp_of(var(t)), differentiate(eta, js.k(j)))));
            if (!normalizes_to_zero(sub(field.coeff(js.n(j)), expected))) return std::nullopt;
        }
        return "vH[eta along k*exp(-t) = " + to_dsl(eta) + "]";
    };
}

std::vector<FamilyMatcher> point_family_matchers(const JetSpace& js) {
    return {scaling_family_matcher(js), shift_family_matcher(js)};
}

FamilyMatcher contact_family_matcher(const JetSpace& js) {
    return [&js](const VectorField& field) -> std::optional<std::string> {
        // Designated coordinate and induced k1 weight for each of the twelve
        // contact patterns; the k1 coefficient is fully determined by them.
        struct Pattern {
            const char* name;
            Var coord;
            Expr weight;  // k1 contribution per unit of the designated coefficient
        };
        Expr n1 = var(js.n(1));
        std::vector<Pattern> patterns = {
            {"v1", js.t(), num(0)},
            {"v2", js.k(2), neg(div(var(js.n(2)), n1))},
            {"v3", js.k(3), neg(div(var(js.n(3)), n1))},
            {"v4", js.q(1), num(1)},
            {"v5", js.q(2), div(var(js.n(2)), n1)},
            {"v6", js.q(3), div(var(js.n(3)), n1)},
            {"v7", js.n(1), div(sub(var(js.q(1)), var(js.k(1))), n1)},
            {"v8", js.n(2), div(sub(var(js.q(2)), var(js.k(2))), n1)},
            {"v9", js.n(3), div(sub(var(js.q(3)), var(js.k(3))), n1)},
            {"v10", js.p(1), num(0)},
            {"v11", js.p(2), num(0)},
            {"v12", js.p(3), num(0)},
        };
        std::set<Var> designated;
        for (const Pattern& p : patterns) designated.insert(p.coord);
        for (const auto& [coord, coeff] : field.coefficients()) {
            if (coord == js.k(1)) continue;
            if (!designated.count(coord) && !normalizes_to_zero(coeff)) return std::nullopt;
        }
        Expr expected_k1 = num(0);
        std::string description;
        for (const Pattern& p : patterns) {
            Expr c = field.coeff(p.coord);
            if (normalizes_to_zero(c)) continue;
            expected_k1 = add(expected_k1, mul(p.weight, c));
            if (!description.empty()) description += " + ";
            description += std::string(p.name) + "[" + to_dsl(normalize(c)) + "]";
        }
        if (description.empty()) return std::nullopt;
        if (!normalizes_to_zero(sub(field.coeff(js.k(1)), expected_k1))) return std::nullopt;
        return description;
    };
}

}  // namespace vortexsym
