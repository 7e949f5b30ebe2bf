#include "vortexsym/casebook.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace vortexsym {

namespace {

const char* kBaseArgs = "t, k1, k2, k3, n1, n2, n3";
const char* kContactArgs = "t, k1, k2, k3, n1, n2, n3, q1, q2, q3, p1, p2, p3";
const char* kRayArgs = "k1*exp(-t), k2*exp(-t), k3*exp(-t)";

std::string bcall(const std::string& head) { return head + "(" + kBaseArgs + ")"; }
std::string ccall(const std::string& head) { return head + "(" + kContactArgs + ")"; }
std::string hcall(const std::string& head) { return head + "(" + kRayArgs + ")"; }

using Components = std::vector<std::pair<std::string, std::string>>;

VectorField field_from(const JetSpace& js, const Components& comps) {
    VectorField f;
    for (const auto& [coord, dsl] : comps) f.set(js.ws().var(coord), js.parse(dsl));
    return f;
}

FlowMap flow_from(const JetSpace& js, const Components& comps) {
    FlowMap flow;
    flow.parameter = js.ws().var("s");
    for (const auto& [coord, dsl] : comps) flow.components[js.ws().var(coord)] = js.parse(dsl);
    return flow;
}

std::vector<Invariant> invariants_from(const JetSpace& js, const Components& comps) {
    std::vector<Invariant> out;
    for (const auto& [label, dsl] : comps) out.push_back(Invariant{label, js.parse(dsl)});
    return out;
}

std::string idx(int i) { return std::to_string(i); }

}  // namespace

Casebook::Casebook() {
    js_.ws().declare_function("mu", 6);
    build();
}

bool Casebook::has_entry(const std::string& id) const { return entries_.count(id) > 0; }

const CaseEntry& Casebook::entry(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw Error("unknown catalog entry '" + id + "'");
    return it->second;
}

std::vector<std::string> Casebook::ids() const {
    std::vector<std::string> out;
    for (const auto& [id, e] : entries_) out.push_back(id);
    return out;
}

void Casebook::build() {
    const JetSpace& js = js_;

    {
        CaseEntry e;
        e.id = "eq1";
        e.locator = "display (1): \"dk/dphi . (n - k.n/(k^2 + w) k) = 0\"";
        e.summary = "vortex-mode balance in the wave phase, with the squared-length shift w";
        e.equation = Equation{
            js.parse("q1*(n1 - (k1*n1 + k2*n2 + k3*n3)*k1/(k1^2 + k2^2 + k3^2 + w))"
                     " + q2*(n2 - (k1*n1 + k2*n2 + k3*n3)*k2/(k1^2 + k2^2 + k3^2 + w))"
                     " + q3*(n3 - (k1*n1 + k2*n2 + k3*n3)*k3/(k1^2 + k2^2 + k3^2 + w))"),
            js.q(1)};
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "eq2";
        e.locator = "display (2): \"n . (dk/dt - k) = 0\"";
        e.summary = "reparametrized vortex-mode balance: growth of k along t weighted by n";
        e.equation =
            Equation{js.parse("n1*(q1 - k1) + n2*(q2 - k2) + n3*(q3 - k3)"), js.q(1)};
        entries_[e.id] = std::move(e);
    }

    {
        CaseEntry e;
        e.id = "det-4";
        e.locator =
            "display (4): \"N_i - n_i T_t + n_1 K_{1 k_i} + n_2 K_{2 k_i} + n_3 K_{3 k_i}"
            " = 0\"";
        e.summary = "determining conditions read off the linear q-monomials";
        for (int i = 1; i <= 3; ++i) {
            std::string slot = idx(1 + i);  // argument slot of k_i
            e.conditions.push_back(DeterminingEquation{
                js.parse("q" + idx(i)),
                js.parse(bcall("N" + idx(i)) + " - n" + idx(i) + "*" + bcall("T_1") +
                         " + n1*" + bcall("K1_" + slot) + " + n2*" + bcall("K2_" + slot) +
                         " + n3*" + bcall("K3_" + slot))});
        }
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "det-5";
        e.locator = "display (5): \"n_1 K_{1 n_i} + n_2 K_{2 n_i} + n_3 K_{3 n_i} = 0\"";
        e.summary = "determining conditions read off the linear p-monomials";
        for (int i = 1; i <= 3; ++i) {
            std::string slot = idx(4 + i);  // argument slot of n_i
            e.conditions.push_back(DeterminingEquation{
                js.parse("p" + idx(i)),
                js.parse("n1*" + bcall("K1_" + slot) + " + n2*" + bcall("K2_" + slot) +
                         " + n3*" + bcall("K3_" + slot))});
        }
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "det-6";
        e.locator =
            "display (6): \"n_i T_{k_i} = 0, n_i T_{n_j} = 0, n_i T_{k_j} + n_j T_{k_i}"
            " = 0\"";
        e.summary = "determining conditions read off the quadratic jet monomials";
        for (int i = 1; i <= 3; ++i)
            e.conditions.push_back(DeterminingEquation{
                js.parse("q" + idx(i) + "^2"),
                js.parse("n" + idx(i) + "*" + bcall("T_" + idx(1 + i)))});
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                e.conditions.push_back(DeterminingEquation{
                    js.parse("q" + idx(i) + "*p" + idx(j)),
                    js.parse("n" + idx(i) + "*" + bcall("T_" + idx(4 + j)))});
        for (int i = 1; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j)
                e.conditions.push_back(DeterminingEquation{
                    js.parse("q" + idx(i) + "*q" + idx(j)),
                    js.parse("n" + idx(i) + "*" + bcall("T_" + idx(1 + j)) + " + n" +
                             idx(j) + "*" + bcall("T_" + idx(1 + i)))});
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "det-7";
        e.locator = "display (7): \"sum_i (n_i (K_{i t} - K_i) - N_i k_i) = 0\"";
        e.summary = "determining condition read off the jet-free part";
        std::string text;
        for (int i = 1; i <= 3; ++i) {
            if (i > 1) text += " + ";
            text += "n" + idx(i) + "*(" + bcall("K" + idx(i) + "_1") + " - " +
                    bcall("K" + idx(i)) + ") - " + bcall("N" + idx(i)) + "*k" + idx(i);
        }
        e.conditions.push_back(DeterminingEquation{num(1), js.parse(text)});
        entries_[e.id] = std::move(e);
    }

    {
        CaseEntry e;
        e.id = "gen-20";
        e.locator =
            "display (20): \"v = T (d_t + k_2 d_{k_2} + k_3 d_{k_3}) + (k_1 T + e^t H)"
            " d_{k_1} + sum_i (n_i (T_t - T) - n_1 H_i) d_{n_i}\"";
        e.summary = "general point symmetry field with free time profile T and shift profile H";
        Components comps = {{"t", "T(t)"}, {"k1", "k1*T(t) + exp(t)*" + hcall("H")},
                            {"k2", "k2*T(t)"}, {"k3", "k3*T(t)"}};
        for (int i = 1; i <= 3; ++i)
            comps.push_back({"n" + idx(i), "n" + idx(i) + "*(T_1(t) - T(t)) - n1*" +
                                               hcall("H_" + idx(i))});
        e.field = field_from(js, comps);
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "gen-vT";
        e.locator =
            "display (21): \"v_T = T (d_t + sum_i k_i d_{k_i}) + (T_t - T) sum_i n_i"
            " d_{n_i}\"";
        e.summary = "time-rescaling family of the general point field";
        Components comps = {{"t", "T(t)"}};
        for (int i = 1; i <= 3; ++i) comps.push_back({"k" + idx(i), "k" + idx(i) + "*T(t)"});
        for (int i = 1; i <= 3; ++i)
            comps.push_back({"n" + idx(i), "n" + idx(i) + "*(T_1(t) - T(t))"});
        e.field = field_from(js, comps);
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "gen-vH";
        e.locator = "display (21): \"v_H = e^t H d_{k_1} - n_1 sum_i H_i d_{n_i}\"";
        e.summary = "first-component shift family of the general point field";
        Components comps = {{"k1", "exp(t)*" + hcall("H")}};
        for (int i = 1; i <= 3; ++i)
            comps.push_back({"n" + idx(i), "-n1*" + hcall("H_" + idx(i))});
        e.field = field_from(js, comps);
        entries_[e.id] = std::move(e);
    }

    {
        CaseEntry e;
        e.id = "invariants-23";
        e.locator =
            "display (23): \"I_1 = k_2^{-1} (k_1 T + H), I_i = ln(k_i) - t, I_4 = (T_t -"
            " T - H_1) ln(k_1) - T ln(n_1), I_j = (T_t - T) ln(k_j) - T ln(n_j (T_t - T)"
            " - n_1 H)\"";
        e.summary = "six functionally independent invariants of the general point field";
        e.invariants = invariants_from(
            js, {{"I1", "(k1*T(t) + " + hcall("H") + ")/k2"},
                 {"I2", "ln(k2) - t"},
                 {"I3", "ln(k3) - t"},
                 {"I4", "(T_1(t) - T(t) - " + hcall("H_1") + ")*ln(k1) - T(t)*ln(n1)"},
                 {"I5", "(T_1(t) - T(t))*ln(k2) - T(t)*ln(n2*(T_1(t) - T(t)) - n1*" +
                            hcall("H") + ")"},
                 {"I6", "(T_1(t) - T(t))*ln(k3) - T(t)*ln(n3*(T_1(t) - T(t)) - n1*" +
                            hcall("H") + ")"}});
        e.solution = GeneralSolution{"mu", e.invariants};
        entries_[e.id] = std::move(e);
    }

    {
        CaseEntry e;
        e.id = "example-1";
        e.locator = "Example 1: \"T = 1 and H = 0\"";
        e.summary = "uniform translation-and-rescaling example";
        e.field = field_from(js, {{"t", "1"}, {"k1", "k1"}, {"k2", "k2"}, {"k3", "k3"},
                                  {"n1", "-n1"}, {"n2", "-n2"}, {"n3", "-n3"}});
        e.flow = flow_from(js, {{"t", "t + s"}, {"k1", "k1*exp(s)"}, {"k2", "k2*exp(s)"},
                                {"k3", "k3*exp(s)"}, {"n1", "n1*exp(-s)"},
                                {"n2", "n2*exp(-s)"}, {"n3", "n3*exp(-s)"}});
        e.invariants = invariants_from(
            js, {{"I1", "ln(k1) - t"}, {"I2", "ln(k2) - t"}, {"I3", "ln(k3) - t"},
                 {"I4", "ln(n1) + t"}, {"I5", "ln(n2) + t"}, {"I6", "ln(n3) + t"}});
        e.solution = GeneralSolution{"mu", e.invariants};
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "example-2";
        e.locator = "Example 2: \"T = t and H = 0\"";
        e.summary = "linear time-rescaling example";
        e.field = field_from(js, {{"t", "t"}, {"k1", "k1*t"}, {"k2", "k2*t"},
                                  {"k3", "k3*t"}, {"n1", "n1*(1 - t)"},
                                  {"n2", "n2*(1 - t)"}, {"n3", "n3*(1 - t)"}});
        e.flow = flow_from(
            js, {{"t", "t*exp(s)"},
                 {"k1", "k1*exp(t*(exp(s) - 1))"},
                 {"k2", "k2*exp(t*(exp(s) - 1))"},
                 {"k3", "k3*exp(t*(exp(s) - 1))"},
                 {"n1", "n1*exp(s - t*(exp(s) - 1))"},
                 {"n2", "n2*exp(s - t*(exp(s) - 1))"},
                 {"n3", "n3*exp(s - t*(exp(s) - 1))"}});
        e.invariants = invariants_from(
            js, {{"I1", "ln(k1) - t"}, {"I2", "ln(k2) - t"}, {"I3", "ln(k3) - t"},
                 {"I4", "ln(n1/t) + t"}, {"I5", "ln(n2/t) + t"}, {"I6", "ln(n3/t) + t"}});
        e.solution = GeneralSolution{"mu", e.invariants};
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "example-3";
        e.locator = "Example 3: \"T = 0 and H = k_1 e^{-t}\"";
        e.summary = "pure first-component shift example";
        e.field = field_from(js, {{"k1", "k1"}, {"n1", "-n1"}, {"n2", "-n1"},
                                  {"n3", "-n1"}});
        e.derived_field = field_from(js, {{"k1", "k1"}, {"n1", "-n1"}});
        e.flow = flow_from(js, {{"t", "t"}, {"k1", "k1*exp(s)"}, {"k2", "k2"},
                                {"k3", "k3"}, {"n1", "n1*exp(-s)"},
                                {"n2", "n2*exp(-s) - n1 + n2"},
                                {"n3", "n3*exp(-s) - n1 + n3"}});
        e.invariants = invariants_from(
            js, {{"I1", "t"}, {"I2", "k2"}, {"I3", "k3"}, {"I4", "k1/n1"},
                 {"I5", "ln(k1) - n2/n1"}, {"I6", "ln(k1) - n3/n1"}});
        e.solution = GeneralSolution{"mu", e.invariants};
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "example-4";
        e.locator = "Example 4: \"T = t and H = (k_1 + k_2 + k_3) e^{-t}\"";
        e.summary = "time rescaling combined with a summed shift";
        Components comps = {{"t", "t"}, {"k1", "t*(2*k1 + k2 + k3)"}, {"k2", "k2*t"},
                            {"k3", "k3*t"}};
        for (int j = 1; j <= 3; ++j)
            comps.push_back({"n" + idx(j), "n" + idx(j) + "*(1 - t) - n1*t"});
        e.field = field_from(js, comps);
        Components derived = {{"t", "t"}, {"k1", "k1*t + k1 + k2 + k3"}, {"k2", "k2*t"},
                              {"k3", "k3*t"}};
        for (int j = 1; j <= 3; ++j)
            derived.push_back({"n" + idx(j), "n" + idx(j) + "*(1 - t) - n1"});
        e.derived_field = field_from(js, derived);
        e.flow = flow_from(
            js,
            {{"t", "t*exp(s)"},
             {"k1", "-(k2 + k3)*exp(t*(exp(s) - 1)) + (k1 + k2 + k3)*exp(2*t*(exp(s)"
                    " - 1))"},
             {"k2", "k2*exp(t*(exp(s) - 1))"},
             {"k3", "k3*exp(t*(exp(s) - 1))"},
             {"n1", "n1*exp(s - 2*t*(exp(s) - 1))"},
             {"n2", "n1*exp(s - 2*t*(exp(s) - 1)) + (n2 - n1)*exp(s - t*(exp(s) - 1))"},
             {"n3", "n1*exp(s - 2*t*(exp(s) - 1)) + (n3 - n1)*exp(s - t*(exp(s) - 1))"}});
        e.invariants = invariants_from(
            js, {{"I1", "(1 - 2*t)*ln(k3) - t*ln(n1*(1 - 2*t))"},
                 {"I2", "2*t - ln(2*k1 + k2 + k3)"},
                 {"I3", "(1 - t)*ln(k2) - t*ln(n2*(1 - t) - n1*t)"},
                 {"I4", "t - ln(k2)"},
                 {"I5", "(1 - t)*ln(k3) - t*ln(n3*(1 - t) - n1*t)"},
                 {"I6", "k2/k3"}});
        e.solution = GeneralSolution{"mu", e.invariants};
        entries_[e.id] = std::move(e);
    }

    {
        CaseEntry e;
        e.id = "contact-24";
        e.locator =
            "display (24): \"v = T d_t + sum_{i=2,3} K_i (d_{k_i} - n_i/n_1 d_{k_1}) +"
            " sum_j [Q_j (d_{q_j} + n_j/n_1 d_{k_1}) + N_j (d_{n_j} + (q_j - k_j)/n_1"
            " d_{k_1}) + P_j d_{p_j}]\"";
        e.summary = "combined contact symmetry field after solving for the first"
                    " wave-vector coefficient";
        std::string k1coeff = "-(n2/n1)*" + ccall("K2") + " - (n3/n1)*" + ccall("K3") +
                              " + " + ccall("Q1") + " + (n2/n1)*" + ccall("Q2") +
                              " + (n3/n1)*" + ccall("Q3");
        for (int j = 1; j <= 3; ++j)
            k1coeff += " + ((q" + idx(j) + " - k" + idx(j) + ")/n1)*" +
                       ccall("N" + idx(j));
        Components comps = {{"t", ccall("T")}, {"k1", k1coeff}, {"k2", ccall("K2")},
                            {"k3", ccall("K3")}};
        for (int j = 1; j <= 3; ++j) {
            comps.push_back({"q" + idx(j), ccall("Q" + idx(j))});
            comps.push_back({"n" + idx(j), ccall("N" + idx(j))});
            comps.push_back({"p" + idx(j), ccall("P" + idx(j))});
        }
        e.field = field_from(js, comps);
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "contact-basis-25";
        e.locator = "display (25): \"v_1 = T d_t, ..., v_12 = P_3 d_{p_3}\"";
        e.summary = "twelve-field basis of the contact symmetry algebra";
        e.basis.push_back(field_from(js, {{"t", ccall("T")}}));
        for (int i = 2; i <= 3; ++i)
            e.basis.push_back(field_from(
                js, {{"k" + idx(i), ccall("K" + idx(i))},
                     {"k1", "-(n" + idx(i) + "/n1)*" + ccall("K" + idx(i))}}));
        e.basis.push_back(field_from(js, {{"q1", ccall("Q1")}, {"k1", ccall("Q1")}}));
        for (int i = 2; i <= 3; ++i)
            e.basis.push_back(field_from(
                js, {{"q" + idx(i), ccall("Q" + idx(i))},
                     {"k1", "(n" + idx(i) + "/n1)*" + ccall("Q" + idx(i))}}));
        for (int j = 1; j <= 3; ++j)
            e.basis.push_back(field_from(
                js, {{"n" + idx(j), ccall("N" + idx(j))},
                     {"k1", "((q" + idx(j) + " - k" + idx(j) + ")/n1)*" +
                                ccall("N" + idx(j))}}));
        for (int j = 1; j <= 3; ++j)
            e.basis.push_back(field_from(js, {{"p" + idx(j), ccall("P" + idx(j))}}));
        entries_[e.id] = std::move(e);
    }

    {
        CaseEntry e;
        e.id = "table-1";
        e.locator = "Table 1: \"The commutators table of g\"";
        e.summary = "commutator table of the point families, tabulated as all-zero";
        e.basis = {instantiate_field(*entries_.at("gen-vT").field, js.parse("1"), num(0)),
                   instantiate_field(*entries_.at("gen-vT").field, js.parse("t"), num(0)),
                   instantiate_field(*entries_.at("gen-vH").field, num(0), js.parse("a1"))};
        entries_[e.id] = std::move(e);
    }
    {
        CaseEntry e;
        e.id = "table-2";
        e.locator = "Table 2: \"The commutators table provided by contact symmetry.\"";
        e.summary = "commutator table of the contact basis, tabulated as two-part"
                    " combinations";
        e.basis = entries_.at("contact-basis-25").basis;
        entries_[e.id] = std::move(e);
    }
}

DeterminingSystem Casebook::expected_point_system() const {
    DeterminingSystem out;
    for (const char* id : {"det-4", "det-5", "det-6", "det-7"})
        for (const DeterminingEquation& member : entry(id).conditions)
            out.push_back(member);
    return out;
}

VectorField Casebook::point_ansatz() const {
    VectorField f;
    f.set(js_.t(), js_.base_call("T"));
    for (int i = 1; i <= 3; ++i) {
        f.set(js_.k(i), js_.base_call("K" + idx(i)));
        f.set(js_.n(i), js_.base_call("N" + idx(i)));
    }
    return f;
}

VectorField Casebook::contact_ansatz() const {
    VectorField f;
    f.set(js_.t(), js_.contact_call("T"));
    for (int i = 1; i <= 3; ++i) {
        f.set(js_.k(i), js_.contact_call("K" + idx(i)));
        f.set(js_.n(i), js_.contact_call("N" + idx(i)));
        f.set(js_.q(i), js_.contact_call("Q" + idx(i)));
        f.set(js_.p(i), js_.contact_call("P" + idx(i)));
    }
    return f;
}

Expr Casebook::instantiate_opaque(const Expr& e, const Expr& profile,
                                  const Expr& shift) const {
    const Workspace& ws = js_.ws();
    Var t = js_.t();
    for (const Var& v : vars_of(profile))
        if (v != t) throw Error("time profile must be an expression in t alone");
    std::set<Var> placeholders = {ws.var("a1"), ws.var("a2"), ws.var("a3")};
    for (const Var& v : vars_of(shift))
        if (!placeholders.count(v))
            throw Error("shift profile must be an expression in a1, a2, a3 alone");

    std::map<Var, Expr> along;  // placeholder -> coordinate along the ray k*e^-t
    std::vector<Expr> ray;
    for (int i = 1; i <= 3; ++i) {
        Expr u = js_.parse("k" + idx(i) + "*exp(-t)");
        along[ws.var("a" + idx(i))] = u;
        ray.push_back(u);
    }

    Expr out = e;
    Expr profile_d = profile;
    for (int order = 0; order <= 2; ++order) {
        out = replace_subtree(out, func("T", {order}, {var(t)}), profile_d);
        profile_d = differentiate(profile_d, t);
    }
    static const std::vector<std::vector<int>> kIndices = {
        {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
        {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    for (const auto& index : kIndices) {
        Expr d = shift;
        for (int slot = 0; slot < 3; ++slot)
            for (int c = 0; c < index[slot]; ++c) d = differentiate(d, ws.var("a" + idx(slot + 1)));
        out = replace_subtree(out, func("H", index, ray), substitute(d, along));
    }
    return out;
}

VectorField Casebook::instantiate_field(const VectorField& f, const Expr& profile,
                                        const Expr& shift) const {
    VectorField out;
    for (const auto& [coord, coeff] : f.coefficients()) {
        Expr c = normalize(instantiate_opaque(coeff, profile, shift));
        if (c.kind() == NodeKind::Number && c.number() == 0) continue;
        out.set(coord, std::move(c));
    }
    return out;
}

VectorField Casebook::instantiate_point_general(const Expr& profile,
                                                const Expr& shift) const {
    return instantiate_field(*entry("gen-20").field, profile, shift);
}

namespace {

using Runner = std::function<VerificationReport(const Casebook&)>;

Runner generator_runner(std::string id, bool derived) {
    return [id, derived](const Casebook& cb) {
        const CaseEntry& e = cb.entry(id);
        const VectorField& f = derived ? *e.derived_field : *e.field;
        return check_generator(cb.js(), f, *cb.entry("eq2").equation,
                               SymmetryMode::Prolonged, ReductionMode::Identical);
    };
}

Runner flow_runner(std::string id) {
    return [id](const Casebook& cb) {
        const CaseEntry& e = cb.entry(id);
        return check_flow(cb.js(), *e.flow, *e.field);
    };
}

Runner group_law_runner(std::string id) {
    return [id](const Casebook& cb) {
        return check_flow_group_law(cb.js(), *cb.entry(id).flow);
    };
}

Runner invariant_runner(std::string id, int index) {
    return [id, index](const Casebook& cb) {
        const CaseEntry& e = cb.entry(id);
        return check_invariant(cb.js(), e.invariants[index - 1], *e.field);
    };
}

Runner solution_runner(std::string id) {
    return [id](const Casebook& cb) {
        const CaseEntry& e = cb.entry(id);
        return check_general_solution(cb.js(), *e.solution, *e.field);
    };
}

Runner match_runner(std::string id, std::string profile, std::string shift) {
    return [id, profile, shift](const Casebook& cb) {
        VectorField derived = cb.instantiate_point_general(cb.js().parse(profile),
                                                           cb.js().parse(shift));
        return check_fields_equal(*cb.entry(id).field, derived);
    };
}

Runner instance_runner(std::string profile, std::string shift) {
    return [profile, shift](const Casebook& cb) {
        VectorField f = cb.instantiate_point_general(cb.js().parse(profile),
                                                     cb.js().parse(shift));
        return check_generator(cb.js(), f, *cb.entry("eq2").equation,
                               SymmetryMode::Prolonged, ReductionMode::Identical);
    };
}

Runner instantiated_invariant_runner(std::string profile, std::string shift, int index) {
    return [profile, shift, index](const Casebook& cb) {
        Expr p = cb.js().parse(profile);
        Expr h = cb.js().parse(shift);
        VectorField f = cb.instantiate_point_general(p, h);
        Invariant inv = cb.entry("invariants-23").invariants[index - 1];
        inv.expression = cb.instantiate_opaque(inv.expression, p, h);
        return check_invariant(cb.js(), inv, f);
    };
}

Expr first_coefficient(const VectorField& f) {
    return f.coefficients().begin()->second;
}

}  // namespace

std::vector<Claim> Casebook::claims() const {
    std::vector<Claim> out;
    auto add = [&out](std::string id, std::string description,
                      std::optional<Verdict> claimed, Runner run) {
        out.push_back(Claim{std::move(id), std::move(description), claimed,
                            std::move(run)});
    };

    // --- contact claims ------------------------------------------------------
    for (int i = 1; i <= 12; ++i) {
        std::string nn = (i < 10 ? "0" : "") + idx(i);
        add("contact-basis-" + nn,
            "contact basis field v" + idx(i) +
                " annihilates the equation residual under direct application",
            Verdict::Verified, [i](const Casebook& cb) {
                return check_generator(cb.js(), cb.entry("contact-basis-25").basis[i - 1],
                                       *cb.entry("eq2").equation, SymmetryMode::Direct,
                                       ReductionMode::Identical);
            });
    }
    add("contact-combined",
        "the combined contact field annihilates the equation residual under direct"
        " application",
        Verdict::Verified, [](const Casebook& cb) {
            return check_generator(cb.js(), *cb.entry("contact-24").field,
                                   *cb.entry("eq2").equation, SymmetryMode::Direct,
                                   ReductionMode::Identical);
        });
    add("contact-k1-solve",
        "solving the direct-application relation for the first wave-vector coefficient"
        " reproduces the cataloged expression",
        Verdict::Verified, [](const Casebook& cb) {
            const JetSpace& js = cb.js();
            Expr relation = symmetry_residual(js, *cb.entry("eq2").equation,
                                              cb.contact_ansatz(), SymmetryMode::Direct);
            Expr solved = solve_linear(relation, js.contact_call("K1"));
            std::string text = ccall("Q1") + " + (1/n1)*(n2*(" + ccall("Q2") + " - " +
                               ccall("K2") + ") + n3*(" + ccall("Q3") + " - " +
                               ccall("K3") + ")";
            for (int j = 1; j <= 3; ++j)
                text += " + " + ccall("N" + idx(j)) + "*(q" + idx(j) + " - k" + idx(j) +
                        ")";
            text += ")";
            return report_on_residual("solved first wave-vector coefficient",
                                      sub(solved, js.parse(text)));
        });
    add("contact-k1-substitute-back",
        "substituting the solved first wave-vector coefficient back into the relation"
        " leaves zero",
        Verdict::Verified, [](const Casebook& cb) {
            const JetSpace& js = cb.js();
            Expr relation = symmetry_residual(js, *cb.entry("eq2").equation,
                                              cb.contact_ansatz(), SymmetryMode::Direct);
            Expr solved = solve_linear(relation, js.contact_call("K1"));
            Expr back = replace_subtree(relation, js.contact_call("K1"), solved);
            return report_on_residual("relation after substitution", back);
        });

    // --- determining system ------------------------------------------------
    add("det-free-system",
        "the freely derived determining system matches the cataloged conditions as a"
        " coefficient set",
        Verdict::Verified, [](const Casebook& cb) {
            DeterminingSystem derived =
                derive_determining(cb.js(), *cb.entry("eq2").equation, cb.point_ansatz(),
                                   Reduction::Free);
            DeterminingSystem expected = cb.expected_point_system();
            bool ok = systems_equivalent(derived, expected);
            VerificationReport report;
            report.claim = "determining system";
            report.verdict = ok ? Verdict::Verified : Verdict::Refuted;
            report.residual = num(ok ? 0 : 1);
            report.note = "derived " + std::to_string(derived.size()) +
                          " members against " + std::to_string(expected.size()) +
                          " cataloged conditions";
            return report;
        });

    // --- the four worked examples -------------------------------------------
    struct ExampleRow {
        const char* id;
        const char* label;
        const char* profile;
        const char* shift;
        bool has_derived;
    };
    const std::vector<ExampleRow> examples = {
        {"example-1", "ex1", "1", "0", false},
        {"example-2", "ex2", "t", "0", false},
        {"example-3", "ex3", "0", "a1", true},
        {"example-4", "ex4", "t", "a1 + a2 + a3", true},
    };
    for (const ExampleRow& ex : examples) {
        std::string id = ex.id;
        std::string label = ex.label;
        if (ex.has_derived)
            add(label + "-derived-generator",
                "the general point field at T = " + std::string(ex.profile) + ", H = " +
                    ex.shift + " generates a symmetry",
                std::nullopt, generator_runner(id, true));
        add(label + "-field-from-general",
            "the " + id + " field equals the general point field at T = " + ex.profile +
                ", H = " + ex.shift,
            Verdict::Verified, match_runner(id, ex.profile, ex.shift));
        add(label + "-flow",
            "the " + id + " transformations are the flow of the " + id + " field",
            Verdict::Verified, flow_runner(id));
        add(label + "-generator", "the " + id + " field generates a symmetry",
            Verdict::Verified, generator_runner(id, false));
        add(label + "-group-law",
            "the " + id + " transformations compose as a one-parameter group",
            Verdict::Verified, group_law_runner(id));
        for (int i = 1; i <= 6; ++i)
            add(label + "-invariant-" + idx(i),
                id + " invariant I" + idx(i) + " is constant along the field's orbits",
                Verdict::Verified, invariant_runner(id, i));
        add(label + "-solution",
            "an arbitrary function of the " + id + " invariants is annihilated by the"
            " field",
            Verdict::Verified, solution_runner(id));
    }

    // --- instantiations of the general point field ---------------------------
    const std::vector<std::string> profiles = {"1", "t", "t^2",
                                               "7/2 - 2*t + t^2 + 5*t^3"};
    const std::vector<std::string> shifts = {"a1", "a2*a3", "a1 + a2 + a3"};
    int instance = 0;
    for (const std::string& profile : profiles) {
        for (const std::string& shift : shifts) {
            ++instance;
            std::string nn = (instance < 10 ? "0" : "") + idx(instance);
            add("gen-instance-" + nn,
                "the general point field at T = " + profile + ", H = " + shift +
                    " along k*exp(-t) generates a symmetry",
                Verdict::Verified, instance_runner(profile, shift));
        }
    }

    // --- the cataloged invariants of the general field -----------------------
    for (int i = 1; i <= 6; ++i)
        add("inv23-constant-" + idx(i),
            "cataloged invariant I" + idx(i) +
                " instantiated at T = 1, H = 0 is constant along the matching field",
            Verdict::Verified, instantiated_invariant_runner("1", "0", i));
    for (int i = 1; i <= 6; ++i)
        add("inv23-linear-" + idx(i),
            "cataloged invariant I" + idx(i) +
                " instantiated at T = t, H = 0 is constant along the matching field",
            Verdict::Verified, instantiated_invariant_runner("t", "0", i));

    // --- closing coefficient list --------------------------------------------
    add("k3-closing-line",
        "the closing coefficient list, whose third wave-vector entry reads k1*T,"
        " generates a symmetry",
        Verdict::Verified, [](const Casebook& cb) {
            VectorField f = *cb.entry("gen-20").field;
            f.set(cb.js().k(3), cb.js().parse("k1*T(t)"));
            return check_generator(cb.js(), f, *cb.entry("eq2").equation,
                                   SymmetryMode::Prolonged, ReductionMode::Identical);
        });

    // --- commutator tables ----------------------------------------------------
    add("table1-all-brackets-vanish",
        "all pairwise brackets of the tabulated point fields vanish",
        Verdict::Verified, [](const Casebook& cb) {
            const std::vector<VectorField>& basis = cb.entry("table-1").basis;
            std::vector<FamilyMatcher> matchers = point_family_matchers(cb.js());
            std::vector<std::string> names;
            for (const VectorField& g : basis) {
                std::string name = "field " + idx(static_cast<int>(names.size()) + 1);
                for (const FamilyMatcher& m : matchers)
                    if (auto d = m(g)) {
                        name = *d;
                        break;
                    }
                names.push_back(name);
            }
            for (const BracketEntry& row : commutator_table(basis, matchers)) {
                if (row.zero) continue;
                VerificationReport report =
                    report_on_residual("bracket", first_coefficient(row.bracket));
                report.note = "[" + names[row.left] + ", " + names[row.right] +
                              "] is nonzero" +
                              (row.match ? ", recognized as " + *row.match : "");
                return report;
            }
            VerificationReport report;
            report.claim = "bracket table";
            report.verdict = Verdict::Verified;
            report.residual = num(0);
            return report;
        });
    add("table2-all-brackets-in-span",
        "every bracket of two contact basis fields is zero or combines the two operand"
        " families",
        Verdict::Verified, [](const Casebook& cb) {
            const JetSpace& js = cb.js();
            const std::vector<VectorField>& basis = cb.entry("contact-basis-25").basis;
            FamilyMatcher matcher = contact_family_matcher(js);
            // designated coordinate of each family, in basis order
            const std::vector<Var> designated = {
                js.t(),  js.k(2), js.k(3), js.q(1), js.q(2), js.q(3),
                js.n(1), js.n(2), js.n(3), js.p(1), js.p(2), js.p(3)};
            int vanished = 0;
            int recognized = 0;
            for (const BracketEntry& row : commutator_table(basis, {matcher})) {
                std::string left = "v" + idx(static_cast<int>(row.left) + 1);
                std::string right = "v" + idx(static_cast<int>(row.right) + 1);
                if (row.zero) {
                    ++vanished;
                    continue;
                }
                if (!row.match) {
                    VerificationReport report =
                        report_on_residual("bracket", first_coefficient(row.bracket));
                    report.verdict = worst(report.verdict, Verdict::Inconclusive);
                    report.note = "[" + left + ", " + right +
                                  "] was not recognized by the family matcher";
                    return report;
                }
                // the bracket may only move along the two operand families: its
                // coordinates are the operands' designated ones plus the induced
                // k1 direction
                for (const auto& [coord, coeff] : row.bracket.coefficients()) {
                    if (coord == js.k(1) || coord == designated[row.left] ||
                        coord == designated[row.right])
                        continue;
                    VerificationReport report = report_on_residual("bracket", coeff);
                    report.verdict = Verdict::Refuted;
                    report.note = "[" + left + ", " + right +
                                  "] leaves the operand families along " + coord.name();
                    return report;
                }
                ++recognized;
            }
            VerificationReport report;
            report.claim = "bracket table";
            report.verdict = Verdict::Verified;
            report.residual = num(0);
            report.note = idx(vanished) + " brackets vanish, " + idx(recognized) +
                          " recognized inside the operand families";
            return report;
        });
    add("table2-constant-shift-pair",
        "the bracket of two constant transversal shifts vanishes identically",
        Verdict::Verified, [](const Casebook& cb) {
            const JetSpace& js = cb.js();
            VectorField a;
            a.set(js.p(1), num(1));
            VectorField b;
            b.set(js.p(2), num(1));
            VectorField bracket = commutator(a, b);
            VerificationReport report;
            report.claim = "bracket";
            bool zero = bracket.coefficients().empty();
            report.verdict = zero ? Verdict::Verified : Verdict::Refuted;
            report.residual = zero ? num(0) : first_coefficient(bracket);
            report.note = "constant-coefficient pair along p1, p2";
            return report;
        });

    // --- the two families and their combination, fully symbolic ---------------
    add("thm1-general",
        "the general point field with opaque profiles T and H generates a symmetry",
        Verdict::Verified, generator_runner("gen-20", false));
    add("thm1-vH",
        "the wave-vector shift family with opaque profile H generates a symmetry",
        Verdict::Verified, generator_runner("gen-vH", false));
    add("thm1-vT",
        "the time-rescaling family with opaque profile T generates a symmetry",
        Verdict::Verified, generator_runner("gen-vT", false));

    std::sort(out.begin(), out.end(),
              [](const Claim& a, const Claim& b) { return a.id < b.id; });
    return out;
}

std::vector<DisplayCoverage> Casebook::display_coverage() const {
    std::vector<DisplayCoverage> rows;
    auto covered = [&rows](int display, std::string where) {
        rows.push_back(DisplayCoverage{display, std::move(where), true});
    };
    auto skipped = [&rows](int display, std::string why) {
        rows.push_back(DisplayCoverage{display, std::move(why), false});
    };
    covered(1, "eq1");
    covered(2, "eq2");
    skipped(3, "prolonged symmetry residual; regenerated by the derivation");
    covered(4, "det-4");
    covered(5, "det-5");
    covered(6, "det-6");
    covered(7, "det-7");
    for (int d = 8; d <= 19; ++d)
        skipped(d, "intermediate integration step of the determining system");
    covered(20, "gen-20");
    covered(21, "gen-vT, gen-vH");
    skipped(22, "characteristic system; restates the families as quotients");
    covered(23, "invariants-23");
    covered(24, "contact-24");
    covered(25, "contact-basis-25");
    return rows;
}

}  // namespace vortexsym
