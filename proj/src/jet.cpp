#include "vortexsym/jet.hpp"

#include <set>

#include "vortexsym/normal.hpp"
#include "vortexsym/parse.hpp"

namespace vortexsym {

JetSpace::JetSpace() {
    ws_.declare_var("t", VarKind::Independent);
    for (const char* name : {"k1", "k2", "k3", "n1", "n2", "n3"})
        ws_.declare_var(name, VarKind::Dependent);
    for (const char* name : {"q1", "q2", "q3", "p1", "p2", "p3"})
        ws_.declare_var(name, VarKind::Jet);
    for (const char* name : {"q1t", "q2t", "q3t", "p1t", "p2t", "p3t"})
        ws_.declare_var(name, VarKind::SecondJet);
    for (const char* name : {"s", "s1", "s2", "w", "a1", "a2", "a3"})
        ws_.declare_var(name, VarKind::Parameter);

    ws_.declare_function("T", 1);
    ws_.declare_function("H", 3);
    for (const char* name : {"T", "K1", "K2", "K3", "N1", "N2", "N3"})
        ws_.declare_function(name, 7);
    for (const char* name : {"T", "K1", "K2", "K3", "Q1", "Q2", "Q3", "N1", "N2",
                             "N3", "P1", "P2", "P3"})
        ws_.declare_function(name, 13);
}

Var JetSpace::indexed(const char* stem, int i, const char* suffix) const {
    if (i < 1 || i > 3) throw Error("jet coordinate index out of range");
    return ws_.var(std::string(stem) + std::to_string(i) + suffix);
}

std::vector<Var> JetSpace::first_jet_coords() const {
    std::vector<Var> out{t()};
    for (int i = 1; i <= 3; ++i) out.push_back(k(i));
    for (int i = 1; i <= 3; ++i) out.push_back(n(i));
    for (int i = 1; i <= 3; ++i) out.push_back(q(i));
    for (int i = 1; i <= 3; ++i) out.push_back(p(i));
    return out;
}

std::vector<Var> JetSpace::jet_vars() const {
    std::vector<Var> out;
    for (int i = 1; i <= 3; ++i) out.push_back(q(i));
    for (int i = 1; i <= 3; ++i) out.push_back(p(i));
    return out;
}

std::vector<Var> JetSpace::second_jet_vars() const {
    std::vector<Var> out;
    for (int i = 1; i <= 3; ++i) out.push_back(qt(i));
    for (int i = 1; i <= 3; ++i) out.push_back(pt(i));
    return out;
}

Expr JetSpace::parse(const std::string& text) const { return vortexsym::parse(text, ws_); }

Expr JetSpace::base_call(const std::string& name) const {
    std::vector<Expr> args{var(t())};
    for (int i = 1; i <= 3; ++i) args.push_back(var(k(i)));
    for (int i = 1; i <= 3; ++i) args.push_back(var(n(i)));
    return func(name, std::move(args));
}

Expr JetSpace::contact_call(const std::string& name) const {
    std::vector<Expr> args{var(t())};
    for (int i = 1; i <= 3; ++i) args.push_back(var(k(i)));
    for (int i = 1; i <= 3; ++i) args.push_back(var(n(i)));
    for (int i = 1; i <= 3; ++i) args.push_back(var(q(i)));
    for (int i = 1; i <= 3; ++i) args.push_back(var(p(i)));
    return func(name, std::move(args));
}

void VectorField::set(const Var& coord, Expr coefficient) {
    coeffs_[coord] = std::move(coefficient);
}

Expr VectorField::coeff(const Var& coord) const {
    auto it = coeffs_.find(coord);
    return it == coeffs_.end() ? num(0) : it->second;
}

bool VectorField::has(const Var& coord) const { return coeffs_.count(coord) > 0; }

Expr apply(const VectorField& field, const Expr& e) {
    std::vector<Expr> parts;
    for (const auto& [coord, coefficient] : field.coefficients()) {
        Expr d = differentiate(e, coord);
        if (d.kind() == NodeKind::Number && d.number() == 0) continue;
        parts.push_back(mul(coefficient, std::move(d)));
    }
    return sum(std::move(parts));
}

Expr total_derivative(const JetSpace& js, const Expr& e) {
    std::vector<Expr> parts;
    Expr dt = differentiate(e, js.t());
    if (!(dt.kind() == NodeKind::Number && dt.number() == 0)) parts.push_back(std::move(dt));
    auto chain = [&](const Var& rate, const Var& coord) {
        Expr d = differentiate(e, coord);
        if (d.kind() == NodeKind::Number && d.number() == 0) return;
        parts.push_back(mul(var(rate), std::move(d)));
    };
    for (int i = 1; i <= 3; ++i) {
        chain(js.q(i), js.k(i));
        chain(js.p(i), js.n(i));
        chain(js.qt(i), js.q(i));
        chain(js.pt(i), js.p(i));
    }
    return sum(std::move(parts));
}

VectorField prolong(const JetSpace& js, const VectorField& field) {
    std::vector<Var> base{js.t()};
    for (int i = 1; i <= 3; ++i) base.push_back(js.k(i));
    for (int i = 1; i <= 3; ++i) base.push_back(js.n(i));
    std::set<Var> base_set(base.begin(), base.end());

    for (const auto& [coord, coefficient] : field.coefficients()) {
        if (!base_set.count(coord))
            throw Error("prolong expects a field on the base coordinates; got a '" +
                        coord.name() + "' component");
        for (const Var& jv : js.jet_vars())
            if (contains_var(coefficient, jv))
                throw Error("prolong expects jet-free coefficients; '" +
                            coord.name() + "' component involves '" + jv.name() + "'");
        for (const Var& sv : js.second_jet_vars())
            if (contains_var(coefficient, sv))
                throw Error("prolong expects jet-free coefficients; '" +
                            coord.name() + "' component involves '" + sv.name() + "'");
    }

    Expr tc = field.coeff(js.t());
    Expr dtc = total_derivative(js, tc);

    VectorField out;
    for (const auto& [coord, coefficient] : field.coefficients())
        out.set(coord, coefficient);

    auto extend = [&](const Var& dep, const Var& jet, const Var& second) {
        Expr c = field.coeff(dep);
        Expr direct = sub(total_derivative(js, c), mul(var(jet), dtc));
        // the same coefficient via the characteristic form, as a cross-check
        Expr characteristic = sub(c, mul(tc, var(jet)));
        Expr alt = add(total_derivative(js, characteristic), mul(tc, var(second)));
        if (!normalizes_to_zero(sub(direct, alt)))
            throw Error("internal: prolongation routes disagree for '" + jet.name() + "'");
        Expr coeff = normalize(direct);
        for (const Var& sv : js.second_jet_vars())
            if (contains_var(coeff, sv))
                throw Error("internal: second-order terms failed to cancel in '" +
                            jet.name() + "'");
        if (!(coeff.kind() == NodeKind::Number && coeff.number() == 0))
            out.set(jet, std::move(coeff));
    };

    for (int i = 1; i <= 3; ++i) extend(js.k(i), js.q(i), js.qt(i));
    for (int i = 1; i <= 3; ++i) extend(js.n(i), js.p(i), js.pt(i));
    return out;
}

VectorField commutator(const VectorField& a, const VectorField& b) {
    std::set<Var> coords;
    for (const auto& [coord, coefficient] : a.coefficients()) coords.insert(coord);
    for (const auto& [coord, coefficient] : b.coefficients()) coords.insert(coord);

    VectorField out;
    for (const Var& coord : coords) {
        Expr raw = sub(apply(a, b.coeff(coord)), apply(b, a.coeff(coord)));
        Expr n = normalize(raw);
        if (n.kind() == NodeKind::Number && n.number() == 0) continue;
        out.set(coord, std::move(n));
    }
    return out;
}

}  // namespace vortexsym
