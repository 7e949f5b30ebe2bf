#include "vortexsym/normal.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <utility>

#include "vortexsym/numeval.hpp"
#include "vortexsym/printer.hpp"

namespace vortexsym {

namespace {

// ---------------------------------------------------------------------------
// Internal canonical representation: a quotient of polynomials whose
// "variables" are atoms (plain variables, ln atoms, opaque function
// applications). Each monomial additionally carries at most one exponential
// factor exp(E); multiplying monomials adds the E parts, which is what makes
// exp(a)*exp(b) = exp(a+b) and exp(a)*exp(-a) = 1 structural facts.
// ---------------------------------------------------------------------------

struct Atom;
struct NFData;
using AtomPtr = std::shared_ptr<const Atom>;
using NFPtr = std::shared_ptr<const NFData>;

struct Atom {
    enum class Kind { Variable = 0, Ln = 1, Function = 2 };
    Kind kind = Kind::Variable;
    Var var;                   // Variable
    NFPtr ln_arg;              // Ln
    std::string name;          // Function
    std::vector<int> deriv;    // Function
    std::vector<NFPtr> args;   // Function
};

struct Mono {
    std::vector<std::pair<AtomPtr, int>> powers;  // sorted by atom, exponents > 0
    NFPtr exparg;                                 // nullptr = no exp factor
};

struct Term {
    Mono mono;
    Rational coeff;
};

using Poly = std::vector<Term>;  // sorted descending by mono, no zero coeffs

struct NFData {
    Poly num;
    Poly den;  // canonical: nonzero, coprime to num, monic lead, exp-mean zero
};

// --- comparisons -----------------------------------------------------------

int cmp_nf(const NFPtr& a, const NFPtr& b);

int cmp_ll(long long a, long long b) { return a < b ? -1 : (a > b ? 1 : 0); }

int cmp_rat(const Rational& a, const Rational& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

int cmp_var(const Var& a, const Var& b) {
    if (a == b) return 0;
    if (int c = cmp_ll(a.ordinal(), b.ordinal())) return c;
    return a.name().compare(b.name());
}

int cmp_atom(const AtomPtr& a, const AtomPtr& b) {
    if (a == b) return 0;
    if (int c = cmp_ll(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
    switch (a->kind) {
        case Atom::Kind::Variable:
            return cmp_var(a->var, b->var);
        case Atom::Kind::Ln:
            return cmp_nf(a->ln_arg, b->ln_arg);
        case Atom::Kind::Function: {
            if (int c = a->name.compare(b->name)) return c;
            if (int c = cmp_ll(static_cast<long long>(a->args.size()),
                               static_cast<long long>(b->args.size())))
                return c;
            for (size_t i = 0; i < a->deriv.size(); ++i)
                if (int c = cmp_ll(a->deriv[i], b->deriv[i])) return c;
            for (size_t i = 0; i < a->args.size(); ++i)
                if (int c = cmp_nf(a->args[i], b->args[i])) return c;
            return 0;
        }
    }
    return 0;
}

int cmp_exparg(const NFPtr& a, const NFPtr& b) {
    if (a == b) return 0;
    if (!a) return -1;
    if (!b) return 1;
    return cmp_nf(a, b);
}

// Lexicographic over the union of atoms (earliest atom most significant,
// absent atoms count as exponent zero). A genuine monomial order: compatible
// with multiplication, which exact division relies on.
int cmp_mono(const Mono& a, const Mono& b) {
    size_t i = 0, j = 0;
    while (i < a.powers.size() || j < b.powers.size()) {
        if (i >= a.powers.size()) return -1;  // b has a further atom, a is 1 there
        if (j >= b.powers.size()) return 1;
        int c = cmp_atom(a.powers[i].first, b.powers[j].first);
        if (c < 0) return 1;   // a alone holds the more significant atom
        if (c > 0) return -1;  // b alone holds it
        if (int e = cmp_ll(a.powers[i].second, b.powers[j].second)) return e;
        ++i;
        ++j;
    }
    return cmp_exparg(a.exparg, b.exparg);
}

int cmp_poly(const Poly& a, const Poly& b) {
    if (int c = cmp_ll(static_cast<long long>(a.size()), static_cast<long long>(b.size())))
        return c;
    for (size_t i = 0; i < a.size(); ++i) {
        if (int c = cmp_mono(a[i].mono, b[i].mono)) return c;
        if (int c = cmp_rat(a[i].coeff, b[i].coeff)) return c;
    }
    return 0;
}

int cmp_nf(const NFPtr& a, const NFPtr& b) {
    if (a == b) return 0;
    if (int c = cmp_poly(a->num, b->num)) return c;
    return cmp_poly(a->den, b->den);
}

struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const { return cmp_mono(a, b) < 0; }
};

struct NfPtrLess {
    bool operator()(const NFPtr& a, const NFPtr& b) const { return cmp_exparg(a, b) < 0; }
};

// --- polynomial arithmetic ---------------------------------------------------

const Poly& poly_one() {
    static const Poly p{Term{Mono{}, Rational(1)}};
    return p;
}

bool poly_is_one(const Poly& p) {
    return p.size() == 1 && p[0].mono.powers.empty() && !p[0].mono.exparg &&
           p[0].coeff == 1;
}

bool poly_is_constant(const Poly& p) {
    return p.empty() ||
           (p.size() == 1 && p[0].mono.powers.empty() && !p[0].mono.exparg);
}

Poly poly_const(const Rational& c) {
    if (c == 0) return {};
    return {Term{Mono{}, c}};
}

void poly_sort(Poly& p) {
    std::sort(p.begin(), p.end(),
              [](const Term& a, const Term& b) { return cmp_mono(a.mono, b.mono) > 0; });
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = cmp_mono(a[i].mono, b[j].mono);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
        } else {
            Rational s = a[i].coeff + b[j].coeff;
            if (s != 0) out.push_back(Term{a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

Poly poly_scale(const Poly& a, const Rational& c) {
    if (c == 0) return {};
    Poly out = a;
    for (Term& t : out) t.coeff *= c;
    return out;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, Rational(-1))); }

NFPtr nf_add(const NFPtr& a, const NFPtr& b);
NFPtr nf_sub(const NFPtr& a, const NFPtr& b);
NFPtr nf_scale(const NFPtr& a, const Rational& c);
const NFPtr& nf_zero();

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono out;
    out.powers.reserve(a.powers.size() + b.powers.size());
    size_t i = 0, j = 0;
    while (i < a.powers.size() && j < b.powers.size()) {
        int c = cmp_atom(a.powers[i].first, b.powers[j].first);
        if (c < 0) {
            out.powers.push_back(a.powers[i++]);
        } else if (c > 0) {
            out.powers.push_back(b.powers[j++]);
        } else {
            out.powers.emplace_back(a.powers[i].first,
                                    a.powers[i].second + b.powers[j].second);
            ++i;
            ++j;
        }
    }
    for (; i < a.powers.size(); ++i) out.powers.push_back(a.powers[i]);
    for (; j < b.powers.size(); ++j) out.powers.push_back(b.powers[j]);
    if (a.exparg && b.exparg) {
        NFPtr s = nf_add(a.exparg, b.exparg);
        out.exparg = (cmp_nf(s, nf_zero()) == 0) ? nullptr : s;
    } else {
        out.exparg = a.exparg ? a.exparg : b.exparg;
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    if (poly_is_one(a)) return b;
    if (poly_is_one(b)) return a;
    std::map<Mono, Rational, MonoLess> acc;
    for (const Term& ta : a) {
        for (const Term& tb : b) {
            Mono m = mono_mul(ta.mono, tb.mono);
            Rational c = ta.coeff * tb.coeff;
            auto it = acc.find(m);
            if (it == acc.end()) {
                acc.emplace(std::move(m), std::move(c));
            } else {
                it->second += c;
                if (it->second == 0) acc.erase(it);
            }
        }
    }
    Poly out;
    out.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        out.push_back(Term{it->first, it->second});
    return out;
}

Poly poly_powi(const Poly& a, long long n) {
    Poly result = poly_one();
    Poly base = a;
    while (n > 0) {
        if (n & 1) result = poly_mul(result, base);
        n >>= 1;
        if (n > 0) base = poly_mul(base, base);
    }
    return result;
}

// --- monomial helpers for GCD ------------------------------------------------

// Per-atom minimum exponent over all terms; the largest monomial dividing p.
Mono poly_mono_content(const Poly& p) {
    Mono content;
    bool first = true;
    for (const Term& t : p) {
        if (first) {
            content.powers = t.mono.powers;
            first = false;
            continue;
        }
        std::vector<std::pair<AtomPtr, int>> next;
        size_t i = 0, j = 0;
        while (i < content.powers.size() && j < t.mono.powers.size()) {
            int c = cmp_atom(content.powers[i].first, t.mono.powers[j].first);
            if (c < 0) {
                ++i;
            } else if (c > 0) {
                ++j;
            } else {
                next.emplace_back(content.powers[i].first,
                                  std::min(content.powers[i].second, t.mono.powers[j].second));
                ++i;
                ++j;
            }
        }
        content.powers = std::move(next);
        if (content.powers.empty()) break;
    }
    return content;
}

Mono mono_gcd(const Mono& a, const Mono& b) {
    Mono out;
    size_t i = 0, j = 0;
    while (i < a.powers.size() && j < b.powers.size()) {
        int c = cmp_atom(a.powers[i].first, b.powers[j].first);
        if (c < 0)
            ++i;
        else if (c > 0)
            ++j;
        else {
            out.powers.emplace_back(a.powers[i].first,
                                    std::min(a.powers[i].second, b.powers[j].second));
            ++i;
            ++j;
        }
    }
    return out;
}

// Divides mono a by divisor d; requires divisibility.
Mono mono_div(const Mono& a, const Mono& d) {
    Mono out;
    out.exparg = a.exparg;
    size_t i = 0, j = 0;
    while (i < a.powers.size()) {
        if (j < d.powers.size() &&
            cmp_atom(a.powers[i].first, d.powers[j].first) == 0) {
            int e = a.powers[i].second - d.powers[j].second;
            if (e < 0) throw Error("internal: monomial division underflow");
            if (e > 0) out.powers.emplace_back(a.powers[i].first, e);
            ++i;
            ++j;
        } else {
            out.powers.push_back(a.powers[i]);
            ++i;
        }
    }
    if (j < d.powers.size()) throw Error("internal: monomial not divisible");
    return out;
}

bool mono_divides(const Mono& d, const Mono& a) {
    size_t i = 0, j = 0;
    while (j < d.powers.size()) {
        if (i >= a.powers.size()) return false;
        int c = cmp_atom(a.powers[i].first, d.powers[j].first);
        if (c > 0) return false;  // a's atoms pass d's atom without matching
        if (c < 0) {
            ++i;
            continue;
        }
        if (a.powers[i].second < d.powers[j].second) return false;
        ++i;
        ++j;
    }
    return true;
}

Poly poly_div_mono(const Poly& p, const Mono& m) {
    if (m.powers.empty()) return p;
    Poly out;
    out.reserve(p.size());
    for (const Term& t : p) out.push_back(Term{mono_div(t.mono, m), t.coeff});
    poly_sort(out);
    return out;
}

// --- exp-free polynomial GCD (primitive PRS) --------------------------------

// Scales p so its coefficients are coprime integers with a positive leading
// coefficient; the canonical representative of p up to rational scale.
Poly make_primitive(Poly p) {
    if (p.empty()) return p;
    Integer g = 0;
    Integer l = 1;
    for (const Term& t : p) {
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(rat_num(t.coeff)));
        l = boost::multiprecision::lcm(l, rat_den(t.coeff));
    }
    Rational factor(l, g);
    if (p.front().coeff < 0) factor = -factor;
    for (Term& t : p) t.coeff *= factor;
    return p;
}

std::vector<AtomPtr> poly_atoms(const Poly& p) {
    std::vector<AtomPtr> atoms;
    for (const Term& t : p)
        for (const auto& pw : t.mono.powers) atoms.push_back(pw.first);
    std::sort(atoms.begin(), atoms.end(),
              [](const AtomPtr& a, const AtomPtr& b) { return cmp_atom(a, b) < 0; });
    atoms.erase(std::unique(atoms.begin(), atoms.end(),
                            [](const AtomPtr& a, const AtomPtr& b) {
                                return cmp_atom(a, b) == 0;
                            }),
                atoms.end());
    return atoms;
}

bool poly_has_atom(const Poly& p, const AtomPtr& x) {
    for (const Term& t : p)
        for (const auto& pw : t.mono.powers)
            if (cmp_atom(pw.first, x) == 0) return true;
    return false;
}

Poly poly_gcd(Poly a, Poly b);

// Polynomial gcd is only a canonicalization aid; past this work budget the
// reduction falls back to gcd 1, which keeps every downstream answer sound.
struct GcdGiveUp {};
thread_local long long gcd_budget = 0;

void gcd_tick(long long cost) {
    gcd_budget -= cost;
    if (gcd_budget < 0) throw GcdGiveUp{};
}

Poly gcd_list(const std::vector<Poly>& polys) {
    Poly g;
    for (const Poly& p : polys) {
        g = poly_gcd(g, p);
        if (poly_is_one(g)) return g;
    }
    return g;
}

Poly gcd_list_guarded(const std::vector<Poly>& polys) {
    gcd_budget = 500000;
    try {
        return gcd_list(polys);
    } catch (const GcdGiveUp&) {
        return poly_one();
    }
}

// Univariate view in a chosen main atom; index = degree in that atom.
using UPoly = std::vector<Poly>;

UPoly to_upoly(const Poly& p, const AtomPtr& x) {
    UPoly up;
    for (const Term& t : p) {
        int d = 0;
        Mono rest;
        rest.exparg = t.mono.exparg;
        for (const auto& pw : t.mono.powers) {
            if (cmp_atom(pw.first, x) == 0)
                d = pw.second;
            else
                rest.powers.push_back(pw);
        }
        if (static_cast<size_t>(d) >= up.size()) up.resize(d + 1);
        up[d] = poly_add(up[d], Poly{Term{std::move(rest), t.coeff}});
    }
    return up;
}

void upoly_trim(UPoly& u) {
    while (!u.empty() && u.back().empty()) u.pop_back();
}

Poly from_upoly(const UPoly& up, const AtomPtr& x) {
    Poly out;
    for (size_t d = 0; d < up.size(); ++d) {
        if (up[d].empty()) continue;
        Poly shifted = up[d];
        if (d > 0) {
            Mono xm;
            xm.powers.emplace_back(x, static_cast<int>(d));
            Poly xp{Term{std::move(xm), Rational(1)}};
            shifted = poly_mul(shifted, xp);
        }
        out = poly_add(out, shifted);
    }
    return out;
}

UPoly upoly_content_free(const UPoly& u, Poly* content_out) {
    std::vector<Poly> coeffs;
    for (const Poly& c : u)
        if (!c.empty()) coeffs.push_back(c);
    Poly content = gcd_list(coeffs);
    if (content_out) *content_out = content;
    if (poly_is_one(content)) return u;
    UPoly out = u;
    for (Poly& c : out) {
        if (c.empty()) continue;
        // exact division by the content
        Poly q;
        Poly r = c;
        while (!r.empty()) {
            Mono qm = mono_div(r.front().mono, content.front().mono);
            Rational qc = r.front().coeff / content.front().coeff;
            Poly qt{Term{std::move(qm), std::move(qc)}};
            q = poly_add(q, qt);
            r = poly_sub(r, poly_mul(qt, content));
        }
        c = std::move(q);
    }
    return out;
}

// lcV^k * U mod V with polynomial coefficients; the classic pseudo-remainder.
UPoly upoly_prem(UPoly u, const UPoly& v) {
    upoly_trim(u);
    const Poly& lcv = v.back();
    size_t dv = v.size() - 1;
    while (u.size() > dv && !u.empty()) {
        size_t du = u.size() - 1;
        Poly lcu = u.back();
        UPoly next(du, Poly{});
        // next = lcv*u - lcu*x^(du-dv)*v, which cancels the leading term
        for (size_t i = 0; i < du; ++i) {
            gcd_tick(static_cast<long long>(lcv.size()) * u[i].size() +
                     static_cast<long long>(lcu.size()) * dv);
            Poly t = poly_mul(lcv, u[i]);
            size_t shift = du - dv;
            if (i >= shift && (i - shift) < dv) t = poly_sub(t, poly_mul(lcu, v[i - shift]));
            next[i] = std::move(t);
        }
        u = std::move(next);
        upoly_trim(u);
    }
    return u;
}

Poly poly_gcd_inner(const Poly& a1, const Poly& b1);

Poly poly_gcd(Poly a, Poly b) {
    if (a.empty()) return make_primitive(std::move(b));
    if (b.empty()) return make_primitive(std::move(a));
    gcd_tick(static_cast<long long>(a.size()) + static_cast<long long>(b.size()));
    a = make_primitive(std::move(a));
    b = make_primitive(std::move(b));
    Mono mca = poly_mono_content(a);
    Mono mcb = poly_mono_content(b);
    Mono m = mono_gcd(mca, mcb);
    Poly a1 = poly_div_mono(a, mca);
    Poly b1 = poly_div_mono(b, mcb);
    Poly inner = poly_gcd_inner(a1, b1);
    Poly mpoly{Term{std::move(m), Rational(1)}};
    return poly_mul(mpoly, inner);
}

Poly poly_gcd_inner(const Poly& a1, const Poly& b1) {
    if (poly_is_constant(a1) || poly_is_constant(b1)) return poly_one();
    // size guard: beyond this the reduction falls back to monomial factors only
    if (a1.size() * b1.size() > 40000) return poly_one();
    std::vector<AtomPtr> atoms_a = poly_atoms(a1);
    std::vector<AtomPtr> atoms_b = poly_atoms(b1);
    AtomPtr x = atoms_a.back();
    if (cmp_atom(atoms_b.back(), x) > 0) x = atoms_b.back();
    bool in_a = poly_has_atom(a1, x);
    bool in_b = poly_has_atom(b1, x);
    if (!in_a || !in_b) {
        // gcd(a, b) = gcd(a, content_x(b)) when x is missing from a
        const Poly& with_x = in_a ? a1 : b1;
        const Poly& without = in_a ? b1 : a1;
        UPoly u = to_upoly(with_x, x);
        Poly content;
        upoly_content_free(u, &content);
        return poly_gcd(content, without);
    }
    UPoly ua = to_upoly(a1, x);
    UPoly ub = to_upoly(b1, x);
    Poly cont_a, cont_b;
    UPoly pa = upoly_content_free(ua, &cont_a);
    UPoly pb = upoly_content_free(ub, &cont_b);
    Poly cgcd = poly_gcd(cont_a, cont_b);
    if (pa.size() < pb.size()) std::swap(pa, pb);
    while (true) {
        UPoly r = upoly_prem(pa, pb);
        upoly_trim(r);
        if (r.empty()) break;
        pa = std::move(pb);
        pb = upoly_content_free(r, nullptr);
        if (pb.size() == 1) break;  // degree 0 in x: gcd of prims is trivial
    }
    Poly g = (pb.size() == 1) ? poly_one() : make_primitive(from_upoly(pb, x));
    return poly_mul(cgcd, g);
}

// --- exponential components --------------------------------------------------

struct ExpComponents {
    std::map<NFPtr, Poly, NfPtrLess> by_exparg;  // stripped of exp factors
};

ExpComponents split_components(const Poly& p) {
    ExpComponents out;
    for (const Term& t : p) {
        Term stripped{Mono{t.mono.powers, nullptr}, t.coeff};
        Poly& bucket = out.by_exparg[t.mono.exparg];
        bucket.push_back(std::move(stripped));
    }
    for (auto& kv : out.by_exparg) poly_sort(kv.second);
    return out;
}

Poly merge_components(const ExpComponents& comps) {
    Poly out;
    for (const auto& kv : comps.by_exparg) {
        for (const Term& t : kv.second)
            out.push_back(Term{Mono{t.mono.powers, kv.first}, t.coeff});
    }
    poly_sort(out);
    return out;
}

Poly poly_div_exact(const Poly& p, const Poly& d) {
    if (poly_is_one(d)) return p;
    Poly q;
    Poly r = p;
    while (!r.empty()) {
        if (!mono_divides(d.front().mono, r.front().mono))
            throw Error("internal: non-exact polynomial division");
        Mono qm = mono_div(r.front().mono, d.front().mono);
        Rational qc = r.front().coeff / d.front().coeff;
        Poly qt{Term{std::move(qm), std::move(qc)}};
        q = poly_add(q, qt);
        r = poly_sub(r, poly_mul(qt, d));
    }
    return q;
}

// Divides every exponential component of p by the exp-free polynomial g.
Poly poly_div_components(const Poly& p, const Poly& g) {
    if (poly_is_one(g)) return p;
    ExpComponents comps = split_components(p);
    for (auto& kv : comps.by_exparg) kv.second = poly_div_exact(kv.second, g);
    return merge_components(comps);
}

// --- NF construction ---------------------------------------------------------

NFPtr make_nf(Poly num, Poly den) {
    auto nf = std::make_shared<NFData>();
    nf->num = std::move(num);
    nf->den = std::move(den);
    return nf;
}

const NFPtr& nf_zero() {
    static const NFPtr z = make_nf({}, poly_one());
    return z;
}

const NFPtr& nf_one() {
    static const NFPtr o = make_nf(poly_one(), poly_one());
    return o;
}

bool nf_is_zero(const NFPtr& a) { return a->num.empty(); }
bool nf_is_one(const NFPtr& a) {
    return poly_is_one(a->num) && poly_is_one(a->den);
}

Poly poly_shift_exp(const Poly& p, const NFPtr& delta) {
    Poly out;
    out.reserve(p.size());
    for (const Term& t : p) {
        NFPtr cur = t.mono.exparg;
        NFPtr shifted = cur ? nf_sub(cur, delta) : nf_scale(delta, Rational(-1));
        Mono m{t.mono.powers, cmp_nf(shifted, nf_zero()) == 0 ? nullptr : shifted};
        out.push_back(Term{std::move(m), t.coeff});
    }
    poly_sort(out);
    return out;
}

NFPtr nf_reduce(Poly num, Poly den) {
    if (den.empty()) throw Error("division by zero expression");
    if (num.empty()) return nf_zero();
    if (!poly_is_one(den)) {
        if (den.size() == 1) {
            // single-term denominator: only its monomial part can cancel
            Mono g = mono_gcd(poly_mono_content(num), Mono{den[0].mono.powers, nullptr});
            if (!g.powers.empty()) {
                num = poly_div_mono(num, g);
                den = poly_div_mono(den, g);
            }
        } else {
            // cancel the common polynomial factor of all exponential components
            ExpComponents cn = split_components(num);
            ExpComponents cd = split_components(den);
            std::vector<Poly> pieces;
            pieces.reserve(cn.by_exparg.size() + cd.by_exparg.size());
            for (const auto& kv : cn.by_exparg) pieces.push_back(kv.second);
            for (const auto& kv : cd.by_exparg) pieces.push_back(kv.second);
            Poly g = gcd_list_guarded(pieces);
            if (!poly_is_one(g) && !poly_is_constant(g)) {
                num = poly_div_components(num, g);
                den = poly_div_components(den, g);
            }
        }
        // exp factors are units: shift both sides so the denominator's mean
        // exponential argument is zero (a translation-invariant pick)
        bool den_has_exp = false;
        for (const Term& t : den)
            if (t.mono.exparg) den_has_exp = true;
        if (den_has_exp) {
            NFPtr sum = nf_zero();
            for (const Term& t : den)
                if (t.mono.exparg) sum = nf_add(sum, t.mono.exparg);
            NFPtr mean = nf_scale(sum, Rational(1, static_cast<long long>(den.size())));
            if (cmp_nf(mean, nf_zero()) != 0) {
                num = poly_shift_exp(num, mean);
                den = poly_shift_exp(den, mean);
            }
        }
    }
    const Rational& lead = den.front().coeff;
    if (lead != 1) {
        Rational inv = Rational(1) / lead;
        num = poly_scale(num, inv);
        den = poly_scale(den, inv);
    }
    return make_nf(std::move(num), std::move(den));
}

NFPtr nf_const(const Rational& c) {
    if (c == 0) return nf_zero();
    return make_nf(poly_const(c), poly_one());
}

NFPtr nf_add(const NFPtr& a, const NFPtr& b) {
    if (nf_is_zero(a)) return b;
    if (nf_is_zero(b)) return a;
    if (cmp_poly(a->den, b->den) == 0)
        return nf_reduce(poly_add(a->num, b->num), a->den);
    Poly num = poly_add(poly_mul(a->num, b->den), poly_mul(b->num, a->den));
    Poly den = poly_mul(a->den, b->den);
    return nf_reduce(std::move(num), std::move(den));
}

NFPtr nf_scale(const NFPtr& a, const Rational& c) {
    if (c == 0 || nf_is_zero(a)) return nf_zero();
    return make_nf(poly_scale(a->num, c), a->den);
}

NFPtr nf_sub(const NFPtr& a, const NFPtr& b) { return nf_add(a, nf_scale(b, Rational(-1))); }

NFPtr nf_mul(const NFPtr& a, const NFPtr& b) {
    if (nf_is_zero(a) || nf_is_zero(b)) return nf_zero();
    if (nf_is_one(a)) return b;
    if (nf_is_one(b)) return a;
    return nf_reduce(poly_mul(a->num, b->num), poly_mul(a->den, b->den));
}

NFPtr nf_powi(const NFPtr& a, long long n) {
    if (n == 0) return nf_one();
    if (n < 0) {
        if (nf_is_zero(a)) throw Error("division by zero expression");
        return nf_reduce(poly_powi(a->den, -n), poly_powi(a->num, -n));
    }
    return nf_reduce(poly_powi(a->num, n), poly_powi(a->den, n));
}

NFPtr nf_atom(AtomPtr atom) {
    Mono m;
    m.powers.emplace_back(std::move(atom), 1);
    Poly p{Term{std::move(m), Rational(1)}};
    return make_nf(std::move(p), poly_one());
}

NFPtr nf_exp(const NFPtr& u) {
    if (nf_is_zero(u)) return nf_one();
    Mono m;
    m.exparg = u;
    Poly p{Term{std::move(m), Rational(1)}};
    return make_nf(std::move(p), poly_one());
}

// The shared exponential argument of all terms, when one exists (null when
// the terms disagree); `uniform` reports whether that shared value is defined.
NFPtr common_exparg(const Poly& p, bool& uniform) {
    uniform = true;
    NFPtr first = p.empty() ? nullptr : p.front().mono.exparg;
    for (const Term& t : p) {
        if (cmp_exparg(t.mono.exparg, first) != 0) {
            uniform = false;
            return nullptr;
        }
    }
    return first;
}

Poly poly_strip_exp(const Poly& p) {
    Poly out;
    out.reserve(p.size());
    for (const Term& t : p) out.push_back(Term{Mono{t.mono.powers, nullptr}, t.coeff});
    poly_sort(out);
    return out;
}

NFPtr nf_ln(const NFPtr& u) {
    if (nf_is_zero(u)) throw Error("ln of the zero expression");
    if (nf_is_one(u)) return nf_zero();
    bool un = false, ud = false;
    NFPtr en = common_exparg(u->num, un);
    NFPtr ed = common_exparg(u->den, ud);
    if (un && ud && (en || ed)) {
        // ln(R * exp(E)) = E + ln(R): exp(E) is positive, so this split is
        // domain-safe, unlike the general ln(ab) rewrite which stays out
        NFPtr e0 = nf_sub(en ? en : nf_zero(), ed ? ed : nf_zero());
        if (cmp_nf(e0, nf_zero()) != 0) {
            NFPtr rest = make_nf(poly_strip_exp(u->num), poly_strip_exp(u->den));
            if (nf_is_one(rest)) return e0;
            auto atom = std::make_shared<Atom>();
            atom->kind = Atom::Kind::Ln;
            atom->ln_arg = rest;
            return nf_add(e0, nf_atom(std::move(atom)));
        }
    }
    auto atom = std::make_shared<Atom>();
    atom->kind = Atom::Kind::Ln;
    atom->ln_arg = u;
    return nf_atom(std::move(atom));
}

// --- Expr -> NF --------------------------------------------------------------

struct Normalizer {
    std::unordered_map<const ExprNode*, NFPtr> memo;

    NFPtr run(const Expr& e) {
        auto it = memo.find(&e.node());
        if (it != memo.end()) return it->second;
        NFPtr r = compute(e);
        memo.emplace(&e.node(), r);
        return r;
    }

    NFPtr compute(const Expr& e) {
        switch (e.kind()) {
            case NodeKind::Number:
                return nf_const(e.number());
            case NodeKind::Variable: {
                auto atom = std::make_shared<Atom>();
                atom->kind = Atom::Kind::Variable;
                atom->var = e.var();
                return nf_atom(std::move(atom));
            }
            case NodeKind::Exp:
                return nf_exp(run(e.kids()[0]));
            case NodeKind::Ln:
                return nf_ln(run(e.kids()[0]));
            case NodeKind::Sum: {
                NFPtr acc = nf_zero();
                for (const Expr& k : e.kids()) acc = nf_add(acc, run(k));
                return acc;
            }
            case NodeKind::Product: {
                NFPtr acc = nf_one();
                for (const Expr& k : e.kids()) {
                    acc = nf_mul(acc, run(k));
                    if (nf_is_zero(acc)) return acc;
                }
                return acc;
            }
            case NodeKind::Power:
                return nf_powi(run(e.kids()[0]), e.exponent());
            case NodeKind::Function: {
                auto atom = std::make_shared<Atom>();
                atom->kind = Atom::Kind::Function;
                atom->name = e.func_name();
                atom->deriv = e.func_deriv();
                atom->args.reserve(e.kids().size());
                for (const Expr& k : e.kids()) atom->args.push_back(run(k));
                return nf_atom(std::move(atom));
            }
        }
        throw Error("normalize: unreachable node kind");
    }
};

// --- NF -> Expr --------------------------------------------------------------

Expr nf_to_expr(const NFPtr& nf);

Expr atom_to_expr(const AtomPtr& a) {
    switch (a->kind) {
        case Atom::Kind::Variable:
            return var(a->var);
        case Atom::Kind::Ln:
            return ln_of(nf_to_expr(a->ln_arg));
        case Atom::Kind::Function: {
            std::vector<Expr> args;
            args.reserve(a->args.size());
            for (const NFPtr& x : a->args) args.push_back(nf_to_expr(x));
            return func(a->name, a->deriv, std::move(args));
        }
    }
    throw Error("normalize: unreachable atom kind");
}

void term_factors(const Term& t, std::vector<Expr>& factors, bool force_coeff) {
    bool wrote_coeff = false;
    if (t.coeff != 1 || force_coeff ||
        (t.mono.powers.empty() && !t.mono.exparg)) {
        factors.push_back(num(t.coeff));
        wrote_coeff = true;
    }
    (void)wrote_coeff;
    for (const auto& pw : t.mono.powers) {
        Expr a = atom_to_expr(pw.first);
        factors.push_back(pw.second == 1 ? a : power(a, pw.second));
    }
    if (t.mono.exparg) factors.push_back(exp_of(nf_to_expr(t.mono.exparg)));
}

Expr poly_to_expr(const Poly& p) {
    if (p.empty()) return num(0);
    std::vector<Expr> terms;
    terms.reserve(p.size());
    for (const Term& t : p) {
        std::vector<Expr> factors;
        term_factors(t, factors, false);
        terms.push_back(product(std::move(factors)));
    }
    return sum(std::move(terms));
}

Expr nf_to_expr(const NFPtr& nf) {
    if (poly_is_one(nf->den)) return poly_to_expr(nf->num);
    Expr den_expr = poly_to_expr(nf->den);
    if (nf->num.size() == 1) {
        std::vector<Expr> factors;
        term_factors(nf->num[0], factors, false);
        factors.push_back(power(std::move(den_expr), -1));
        return product(std::move(factors));
    }
    return div(poly_to_expr(nf->num), std::move(den_expr));
}

// --- shared entry points -----------------------------------------------------

NFPtr expr_to_nf(const Expr& e) {
    Normalizer n;
    return n.run(e);
}

}  // namespace

Expr normalize(const Expr& e) { return nf_to_expr(expr_to_nf(e)); }

bool normalizes_to_zero(const Expr& e) { return nf_is_zero(expr_to_nf(e)); }

ZeroReport is_zero(const Expr& e, const ZeroOptions& opts) {
    ZeroReport report;
    if (normalizes_to_zero(e)) {
        report.verdict = ZeroVerdict::Zero;
        report.by_normalization = true;
        return report;
    }
    ZeroSampleResult s = sample_for_zero(e, opts);
    report.samples_used = s.samples_used;
    report.max_rel = s.max_rel;
    report.max_abs = s.max_abs;
    if (s.exceeded) {
        report.verdict = ZeroVerdict::NonZero;
        return report;
    }
    report.verdict = ZeroVerdict::Inconclusive;
    report.note = s.exhausted ? "sampling budget exhausted"
                              : "normal form nonzero but all samples vanish";
    return report;
}

namespace {

// Error out when a listed variable occurs anywhere a polynomial coefficient
// cannot absorb: inside ln/function atoms, inside exp arguments, or (for the
// denominator) at all.
void scan_for_var(const NFPtr& nf, const std::set<Var>& listed, bool direct_ok,
                  const char* where);

void scan_poly_for_var(const Poly& p, const std::set<Var>& listed, bool direct_ok,
                       const char* where) {
    for (const Term& t : p) {
        for (const auto& pw : t.mono.powers) {
            const Atom& a = *pw.first;
            switch (a.kind) {
                case Atom::Kind::Variable:
                    if (listed.count(a.var) && !direct_ok)
                        throw Error(std::string("non-polynomial dependence on '") +
                                    a.var.name() + "' (" + where + ")");
                    break;
                case Atom::Kind::Ln:
                    scan_for_var(a.ln_arg, listed, false, "inside ln");
                    break;
                case Atom::Kind::Function:
                    for (const NFPtr& arg : a.args)
                        scan_for_var(arg, listed, false, "inside a function argument");
                    break;
            }
        }
        if (t.mono.exparg) scan_for_var(t.mono.exparg, listed, false, "inside exp");
    }
}

void scan_for_var(const NFPtr& nf, const std::set<Var>& listed, bool direct_ok,
                  const char* where) {
    scan_poly_for_var(nf->num, listed, direct_ok, where);
    scan_poly_for_var(nf->den, listed, false, where);
}

}  // namespace

std::vector<std::pair<Expr, Expr>> collect(const Expr& e, const std::vector<Var>& vars) {
    NFPtr nf = expr_to_nf(e);
    std::set<Var> listed(vars.begin(), vars.end());
    scan_poly_for_var(nf->num, listed, true, "numerator");
    scan_poly_for_var(nf->den, listed, false, "denominator");

    std::map<Mono, Poly, MonoLess> groups;
    for (const Term& t : nf->num) {
        Mono key;
        Mono rest;
        rest.exparg = t.mono.exparg;
        for (const auto& pw : t.mono.powers) {
            const Atom& a = *pw.first;
            if (a.kind == Atom::Kind::Variable && listed.count(a.var))
                key.powers.push_back(pw);
            else
                rest.powers.push_back(pw);
        }
        groups[key].push_back(Term{std::move(rest), t.coeff});
    }
    std::vector<std::pair<Expr, Expr>> out;
    out.reserve(groups.size());
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        Poly coeff = it->second;
        poly_sort(coeff);
        Poly key_poly{Term{it->first, Rational(1)}};
        out.emplace_back(poly_to_expr(key_poly), nf_to_expr(nf_reduce(coeff, nf->den)));
    }
    return out;
}

bool equal_up_to_rational_scale(const Expr& a, const Expr& b, Rational* scale_out) {
    NFPtr na = expr_to_nf(a);
    NFPtr nb = expr_to_nf(b);
    if (nf_is_zero(na) || nf_is_zero(nb)) {
        if (nf_is_zero(na) && nf_is_zero(nb)) {
            if (scale_out) *scale_out = 1;
            return true;
        }
        return false;
    }
    if (cmp_poly(na->den, nb->den) != 0) return false;
    if (na->num.size() != nb->num.size()) return false;
    Rational c = na->num.front().coeff / nb->num.front().coeff;
    for (size_t i = 0; i < na->num.size(); ++i) {
        if (cmp_mono(na->num[i].mono, nb->num[i].mono) != 0) return false;
        if (na->num[i].coeff != c * nb->num[i].coeff) return false;
    }
    if (scale_out) *scale_out = c;
    return true;
}

}  // namespace vortexsym
