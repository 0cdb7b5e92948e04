#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spectra/euclid.hpp"
#include "spectra/fin_module.hpp"
#include "spectra/graded.hpp"
#include "spectra/ideal.hpp"
#include "spectra/lattice.hpp"
#include "spectra/report.hpp"
#include "spectra/torsion.hpp"

namespace spectra {

// ---------------------------------------------------------------------------
// Ring homomorphisms between table rings

/// First failure of f: A -> B to be a unital ring homomorphism.
inline std::optional<std::string> ring_hom_violation(const FiniteRing& A, const FiniteRing& B,
                                                     const std::vector<Elem>& f) {
    if (f.size() != A.size()) return "map has wrong domain size";
    for (auto y : f)
        if (y >= B.size()) return "map leaves the codomain";
    if (f[A.one()] != B.one()) return "not unital";
    for (Elem a = 0; a < A.size(); ++a)
        for (Elem b = 0; b < A.size(); ++b) {
            if (f[A.add(a, b)] != B.add(f[a], f[b]))
                return "not additive at (" + A.element_label(a) + "," + A.element_label(b) + ")";
            if (f[A.mul(a, b)] != B.mul(f[a], f[b]))
                return "not multiplicative at (" + A.element_label(a) + "," + A.element_label(b) + ")";
        }
    return std::nullopt;
}

inline std::optional<std::string> ring_iso_violation(const FiniteRing& A, const FiniteRing& B,
                                                     const std::vector<Elem>& f) {
    if (A.size() != B.size()) return "sizes " + std::to_string(A.size()) + " vs " + std::to_string(B.size());
    if (auto v = ring_hom_violation(A, B, f)) return v;
    ElementSet hit(B.size());
    for (auto y : f) hit.insert(y);
    if (hit.count() != B.size()) return "not bijective";
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite backend

/// Sections over an open U: the corner ring e_U·R.
struct SectionRing {
    ElementSet open;
    Elem idempotent;
    RingPtr ring;
    std::vector<Elem> carrier;  ///< index -> element of R
    std::vector<Elem> index;    ///< r -> index of e_U·r
};

/// U ↦ End(R) in Mod R/S_U on the Hochster dual of Spec L_Serre, realized
/// as the localization e_U·R.
class StructurePresheaf {
public:
    explicit StructurePresheaf(RingPtr R, const Bounds& bounds = {})
        : R_(std::move(R)), bounds_(bounds), primes_(spec(R_)), factors_(local_decomposition(R_)) {
        auto S = serre_lattice(R_, bounds_);
        auto lprimes = prime_elements(S.lattice);
        space_ = hochster_dual(lattice_spectrum(S.lattice, lprimes));
        point_of_prime_ = serre_point_map(R_, S, lprimes, bounds_);
        prime_of_point_.assign(space_.n, npos);
        for (std::size_t i = 0; i < point_of_prime_.size(); ++i) {
            auto y = point_of_prime_[i];
            if (y == npos || prime_of_point_[y] != npos) fail("P -> S_P is not a bijection onto Spec L_Serre");
            prime_of_point_[y] = i;
        }
        for (auto x : prime_of_point_)
            if (x == npos) fail("P -> S_P is not a bijection onto Spec L_Serre");
    }

    const RingPtr& ring() const noexcept { return R_; }
    const FiniteSpace& space() const noexcept { return space_; }
    std::size_t points() const noexcept { return space_.n; }
    std::size_t point_of_prime(std::size_t i) const { return point_of_prime_.at(i); }
    std::size_t prime_of_point(std::size_t y) const { return prime_of_point_.at(y); }
    const std::vector<PrimeIdeal>& primes() const noexcept { return primes_; }
    const std::vector<LocalFactor>& factors() const noexcept { return factors_; }
    ElementSet whole() const { return ElementSet::full(space_.n); }
    ElementSet empty() const { return ElementSet(space_.n); }
    ElementSet singleton(std::size_t y) const {
        ElementSet s(space_.n);
        s.insert(y);
        return s;
    }

    std::string open_label(const ElementSet& U) const {
        std::string s = "{";
        for (auto y : U.members()) s += (s.size() > 1 ? "," : "") + primes_[prime_of_point_[y]].to_string();
        return s + "}";
    }

    SectionRing sections(const ElementSet& U) const {
        if (!space_.is_open(U)) fail("sections: " + open_label(U) + " is not open");
        Elem e = R_->zero();
        for (auto y : U.members()) e = R_->add(e, factors_[prime_of_point_[y]].idempotent);
        auto C = corner_ring(R_, e, "O(" + open_label(U) + ")");
        return {U, e, std::move(C.ring), std::move(C.carrier), std::move(C.index)};
    }

    /// Index map sections(U) -> sections(V), x ↦ e_V·x.
    std::vector<Elem> restriction(const SectionRing& U, const SectionRing& V) const {
        if (!(V.open.subset_of(U.open))) fail("restriction: " + open_label(V.open) + " ⊄ " + open_label(U.open));
        std::vector<Elem> out(U.carrier.size());
        for (std::size_t a = 0; a < out.size(); ++a) out[a] = V.index[U.carrier[a]];
        return out;
    }

    /// {y} is the smallest open around y, so it computes the colimit.
    SectionRing stalk(std::size_t y) const {
        if (y >= space_.n) fail("stalk: no such point");
        return sections(singleton(y));
    }

private:
    RingPtr R_;
    Bounds bounds_;
    std::vector<PrimeIdeal> primes_;
    std::vector<LocalFactor> factors_;
    FiniteSpace space_;
    std::vector<std::size_t> point_of_prime_, prime_of_point_;
};

/// ∏_{P ∈ f⁻¹U} R_P from the local factors, with the comparison map
/// e_U·r ↦ (e_P·r)_P.
struct ZariskiSections {
    RingPtr ring;
    std::vector<Elem> comparison;
};

inline ZariskiSections zariski_sections(const StructurePresheaf& F, const SectionRing& U) {
    std::vector<RingPtr> parts;
    std::vector<std::size_t> which;
    for (std::size_t i = 0; i < F.primes().size(); ++i)
        if (U.open.contains(F.point_of_prime(i))) {
            parts.push_back(F.factors()[i].factor_ring);
            which.push_back(i);
        }
    RingDescription d;
    d.kind = RingDescription::Kind::table;
    d.name = "∏ R_P";
    auto P = product_ring(parts, d);
    std::vector<Elem> cmp(U.carrier.size());
    for (std::size_t a = 0; a < cmp.size(); ++a) {
        std::size_t code = 0;
        for (std::size_t j = 0; j < which.size(); ++j)
            code = code * parts[j]->size() + F.factors()[which[j]].projection[U.carrier[a]];
        cmp[a] = static_cast<Elem>(code);
    }
    return {std::move(P), std::move(cmp)};
}

inline Check restriction_functoriality_check(const StructurePresheaf& F) {
    auto c = Check::make("restriction functorial", "res_{V,W}∘res_{U,V} = res_{U,W}, res_{U,U} = id, each a ring map");
    std::vector<SectionRing> secs;
    for (auto& U : F.space().opens) secs.push_back(F.sections(U));
    for (std::size_t u = 0; u < secs.size(); ++u)
        for (std::size_t v = 0; v < secs.size(); ++v) {
            if (!secs[v].open.subset_of(secs[u].open)) continue;
            auto uv = F.restriction(secs[u], secs[v]);
            if (auto bad = ring_hom_violation(*secs[u].ring, *secs[v].ring, uv))
                c.fail_with(F.open_label(secs[u].open) + " -> " + F.open_label(secs[v].open) + ": " + *bad);
            if (u == v)
                for (Elem a = 0; a < uv.size(); ++a)
                    if (uv[a] != a) c.fail_with("res on " + F.open_label(secs[u].open) + " is not the identity");
            for (std::size_t w = 0; w < secs.size(); ++w) {
                if (!secs[w].open.subset_of(secs[v].open)) continue;
                auto vw = F.restriction(secs[v], secs[w]);
                auto uw = F.restriction(secs[u], secs[w]);
                for (Elem a = 0; a < uv.size(); ++a)
                    if (vw[uv[a]] != uw[a]) {
                        c.fail_with(F.open_label(secs[u].open) + " ⊇ " + F.open_label(secs[v].open) + " ⊇ " +
                                    F.open_label(secs[w].open));
                        break;
                    }
            }
        }
    return c;
}

inline Check global_sections_check(const StructurePresheaf& F) {
    auto c = Check::make("global sections ≅ R", "r ↦ e·r is a ring isomorphism R -> O(whole)");
    auto G = F.sections(F.whole());
    std::vector<Elem> f(F.ring()->size());
    for (Elem r = 0; r < f.size(); ++r) f[r] = G.index[r];
    if (auto v = ring_iso_violation(*F.ring(), *G.ring, f)) c.fail_with(*v);
    return c;
}

/// Hom_R(R, e_U R) ≅ e_U R by evaluation at 1, and End_R(e_U R) ≅ e_U R with
/// composition matching multiplication.
inline Check endomorphism_check(const StructurePresheaf& F, const SectionRing& U, const Bounds& bounds = {}) {
    auto c = Check::make("End(R) in quotient ≅ e_U·R", "O(" + F.open_label(U.open) + ")");
    auto Rmod = free_module(F.ring(), 1, bounds);
    ElementSet carrier(F.ring()->size());
    for (auto x : U.carrier) carrier.insert(x);
    auto M = submodule(Rmod, carrier);
    auto homs = all_homs(Rmod, M, bounds);
    ElementSet values(M.size());
    for (auto& h : homs) values.insert(h[F.ring()->one()]);
    if (homs.size() != M.size() || values.count() != M.size())
        c.fail_with("|Hom(R, e_U R)| = " + std::to_string(homs.size()) + ", |e_U R| = " + std::to_string(M.size()));
    auto ends = all_homs(M, M, bounds);
    if (ends.size() != M.size()) c.fail_with("|End(e_U R)| = " + std::to_string(ends.size()));
    const auto& S = *U.ring;
    std::vector<Elem> at_one(ends.size());
    for (std::size_t i = 0; i < ends.size(); ++i) {
        at_one[i] = ends[i][S.one()];
        for (Elem x = 0; x < M.size(); ++x)
            if (ends[i][x] != S.mul(at_one[i], x)) {
                c.fail_with("endomorphism is not multiplication by its value at e_U");
                return c;
            }
    }
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = 0; j < ends.size(); ++j)
            if (ends[i][ends[j][S.one()]] != S.mul(at_one[i], at_one[j])) {
                c.fail_with("composition does not match multiplication");
                return c;
            }
    return c;
}

/// Stalk at f(P) against R_P: ring isomorphism with the local factor and
/// module isomorphism with localize_module(R, P).
inline Check stalk_check(const StructurePresheaf& F, const Bounds& bounds = {}) {
    auto c = Check::make("stalks ≅ R_P", "O_{Mod R, f(P)} ≅ O_{R,P} at every prime");
    auto Rmod = free_module(F.ring(), 1, bounds);
    for (std::size_t i = 0; i < F.primes().size(); ++i) {
        auto St = F.stalk(F.point_of_prime(i));
        const auto& LF = F.factors()[i];
        std::vector<Elem> f(St.carrier.size());
        for (std::size_t a = 0; a < f.size(); ++a) f[a] = LF.projection[St.carrier[a]];
        if (auto v = ring_iso_violation(*St.ring, *LF.factor_ring, f))
            c.fail_with(F.primes()[i].to_string() + ": " + *v);
        ElementSet carrier(F.ring()->size());
        for (auto x : St.carrier) carrier.insert(x);
        if (!is_isomorphic(submodule(Rmod, carrier), localize_module(Rmod, F.primes()[i]), bounds))
            c.fail_with(F.primes()[i].to_string() + ": stalk and R_P differ as modules");
    }
    return c;
}

/// Equalizer condition for a cover of U: every matching family has exactly
/// one gluing.
inline Check sheaf_glue_check(const StructurePresheaf& F, const ElementSet& U, const std::vector<ElementSet>& cover,
                              const Bounds& bounds = {}) {
    auto c = Check::make("sheaf gluing", "O(" + F.open_label(U) + ") is the equalizer over the cover");
    ElementSet covered(F.points());
    for (auto& V : cover) {
        if (!V.subset_of(U)) fail("sheaf_glue_check: cover member " + F.open_label(V) + " ⊄ " + F.open_label(U));
        covered = covered | V;
    }
    if (!(covered == U)) fail("sheaf_glue_check: the cover misses points of " + F.open_label(U));
    auto whole = F.sections(U);
    std::vector<SectionRing> parts;
    std::vector<std::vector<Elem>> res;
    std::size_t families = 1;
    for (auto& V : cover) {
        parts.push_back(F.sections(V));
        res.push_back(F.restriction(whole, parts.back()));
        families *= parts.back().carrier.size();
        if (families > bounds.hom_pairs) fail_bound("sheaf_glue_check: too many candidate families");
    }
    std::vector<std::vector<std::vector<Elem>>> overlap(cover.size(), std::vector<std::vector<Elem>>(cover.size()));
    std::vector<std::vector<SectionRing>> inter(cover.size());
    for (std::size_t i = 0; i < cover.size(); ++i)
        for (std::size_t j = 0; j < cover.size(); ++j) {
            inter[i].push_back(F.sections(cover[i] & cover[j]));
            overlap[i][j] = F.restriction(parts[i], inter[i].back());
        }
    std::vector<Elem> s(cover.size(), 0);
    for (std::size_t code = 0; code < families; ++code) {
        std::size_t rest = code;
        for (std::size_t i = 0; i < cover.size(); ++i) {
            s[i] = static_cast<Elem>(rest % parts[i].carrier.size());
            rest /= parts[i].carrier.size();
        }
        bool matching = true;
        for (std::size_t i = 0; i < cover.size() && matching; ++i)
            for (std::size_t j = i + 1; j < cover.size() && matching; ++j)
                matching = inter[i][j].carrier[overlap[i][j][s[i]]] == inter[j][i].carrier[overlap[j][i][s[j]]];
        if (!matching) continue;
        std::size_t gluings = 0;
        for (Elem x = 0; x < whole.carrier.size(); ++x) {
            bool ok = true;
            for (std::size_t i = 0; i < cover.size() && ok; ++i) ok = res[i][x] == s[i];
            gluings += ok;
        }
        if (gluings != 1) {
            std::string fam = "(";
            for (std::size_t i = 0; i < cover.size(); ++i)
                fam += (i ? "," : "") + parts[i].ring->element_label(s[i]);
            c.fail_with("family " + fam + ") has " + std::to_string(gluings) + " gluings");
        }
    }
    return c;
}

/// The Zariski topology on spec R: D(I) = complement of V(I) over all ideals.
inline FiniteSpace zariski_space(const RingPtr& R, const Bounds& bounds = {}) {
    auto primes = spec(R);
    std::vector<ElementSet> opens;
    std::vector<std::string> labels;
    for (auto& P : primes) labels.push_back(P.to_string());
    for (auto& I : enumerate_ideals(R, bounds)) {
        ElementSet D(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (!I.subset_of(primes[i].ideal())) D.insert(i);
        opens.push_back(D);
    }
    return FiniteSpace::from_opens(primes.size(), std::move(opens), std::move(labels));
}

/// (spec R, O_R) -> (Spec(Mod R), O_{Mod R}) is an isomorphism of ringed spaces.
inline std::vector<Check> reconstruction_check(const RingPtr& R, const Bounds& bounds = {}) {
    std::vector<Check> out;
    auto lattice_side = prrco_check(R, bounds);
    auto prrco = Check::make("dual spectrum ≅ Spec L_Serre", "P -> S_P identifies spec* R with Spec L_Serre");
    for (auto& ch : lattice_side)
        if (!ch.passed()) prrco.fail_with(ch.name + (ch.witnesses.empty() ? "" : ": " + ch.witnesses[0]));
    out.push_back(prrco);

    StructurePresheaf F(R, bounds);
    auto homeo = Check::make("underlying homeomorphism", "f: spec R -> Spec(Mod R) for the Zariski topology");
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < F.primes().size(); ++i) f.push_back(F.point_of_prime(i));
    if (auto v = homeomorphism_violation(zariski_space(R, bounds), F.space(), f)) homeo.fail_with(*v);
    out.push_back(homeo);

    auto sections = Check::make("sections ≅", "O_{Mod R}(U) ≅ O_R(f⁻¹U) on every open");
    for (auto& U : F.space().opens) {
        auto S = F.sections(U);
        auto Z = zariski_sections(F, S);
        if (auto v = ring_iso_violation(*S.ring, *Z.ring, Z.comparison)) sections.fail_with(F.open_label(U) + ": " + *v);
    }
    out.push_back(sections);
    out.push_back(stalk_check(F, bounds));
    out.push_back(restriction_functoriality_check(F));
    out.push_back(global_sections_check(F));
    return out;
}

/// Proj A at the level of basic opens D+(x_i) and stalks: O(D+(x_i)) = (A_{x_i})_0
/// is R, the D+(x_i) partition Proj, and the stalk at (P, x_j : j != i) is R_P,
/// the stalk of the structure presheaf of spec R at P.
inline std::vector<Check> graded_reconstruction_check(const GradedRing& A, const Bounds& bounds = {}) {
    auto secs = Check::make("graded sections", "(A_{x_i})_0 ≅ R on each D+(x_i)");
    auto cover = Check::make("D+(x_i) partition Proj", "V(x_i) ∩ Proj is the set of points off D+(x_i)");
    auto stalks = Check::make("graded stalks", "O_{Proj,(P,i)} ≅ R_P ≅ O_{spec R,P}");
    const auto& R = A.base();
    auto whole = twist(A, 0);
    auto free = free_module(R, 1, bounds);
    auto pts = proj_points(A);
    StructurePresheaf F(R, bounds);
    auto primes = spec(R);
    for (std::size_t i = 0; i < A.k(); ++i) {
        auto S = stable_sector(whole, i);
        if (!is_isomorphic(S, free, bounds)) secs.fail_with(A.var_name(i) + ": |(A_x)_0| = " + std::to_string(S.size()));
        auto off = graded_support(quotient_by_ideal(homog_ideal(A, {A.monomial(i, 1, R->one())})));
        for (std::size_t p = 0; p < pts.size(); ++p)
            if (off.contains(p) != (pts[p].var != i)) cover.fail_with(A.var_name(i) + " at " + proj_label(A, pts[p]));
        for (std::size_t p = 0; p < primes.size(); ++p) {
            auto local = localize_module(S, primes[p]);
            auto label = proj_label(A, {i, p});
            if (!is_isomorphic(local, localize_module(free, primes[p]), bounds)) stalks.fail_with(label);
            if (local.size() != F.stalk(F.point_of_prime(p)).ring->size()) stalks.fail_with(label + " vs spec R");
        }
    }
    return {secs, cover, stalks};
}

// ---------------------------------------------------------------------------
// Euclidean backend

inline unsigned exponent_bound(const IntegerRing&, const BigInt& s) {
    return s == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(abs(s))) + 1;
}
inline unsigned exponent_bound(const PolyGFRing&, const Poly& s) {
    return s.degree() < 0 ? 0 : static_cast<unsigned>(s.degree());
}

template <EuclideanRing E>
struct Fraction {
    typename E::value_type num, den;
    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
};

/// S⁻¹R for a multiplicative set given by a membership test on normalized
/// denominators. Fractions are stored reduced with normalized denominator.
template <EuclideanRing E>
class FractionRing {
public:
    using T = typename E::value_type;
    using Frac = Fraction<E>;

    FractionRing(E ring, std::function<bool(const T&)> admits, std::string label)
        : ring_(std::move(ring)), admits_(std::move(admits)), label_(std::move(label)) {}

    const E& base() const noexcept { return ring_; }
    const std::string& label() const noexcept { return label_; }
    bool admits(const T& s) const { return !ring_.is_zero(s) && admits_(ring_.normalize(s)); }

    std::optional<Frac> make(const T& a, const T& b) const {
        if (!admits(b)) return std::nullopt;
        return reduce(a, b);
    }
    bool contains(const T& a, const T& b) const {
        if (ring_.is_zero(b)) return false;
        return admits(reduce(a, b).den);
    }
    Frac zero() const { return {ring_.zero(), ring_.one()}; }
    Frac one() const { return {ring_.one(), ring_.one()}; }
    Frac add(const Frac& x, const Frac& y) const {
        return reduce(ring_.add(ring_.mul(x.num, y.den), ring_.mul(y.num, x.den)), ring_.mul(x.den, y.den));
    }
    Frac mul(const Frac& x, const Frac& y) const { return reduce(ring_.mul(x.num, y.num), ring_.mul(x.den, y.den)); }
    Frac neg(const Frac& x) const { return {ring_.neg(x.num), x.den}; }
    std::string to_string(const Frac& x) const {
        if (ring_.is_unit(x.den)) return ring_.to_string(x.num);
        return ring_.to_string(x.num) + "/" + ring_.to_string(x.den);
    }

    Frac reduce(const T& a, const T& b) const {
        if (ring_.is_zero(b)) fail("fraction with zero denominator");
        if (ring_.is_zero(a)) return zero();
        T g = ring_.gcd(a, b);
        T n = ring_.divmod(a, g).first, d = ring_.divmod(b, g).first;
        T u = ring_.normalizing_unit(d);
        return {ring_.mul(n, u), ring_.mul(d, u)};
    }

private:
    E ring_;
    std::function<bool(const T&)> admits_;
    std::string label_;
};

/// O_{Mod R}(D(n)): localization at the Gabriel filter of ideals (s) with
/// V(s) ∩ D(n) = ∅.
template <EuclideanRing E>
FractionRing<E> sections(const E& ring, const typename E::value_type& n) {
    if (ring.is_zero(n)) fail_bound("sections: D(0) is empty; use a nonzero element");
    auto F = filter_from_basis(ring, {n});
    return FractionRing<E>(ring, [F](const typename E::value_type& s) { return F.contains(s); },
                           ring.name() + "[1/" + ring.to_string(ring.normalize(n)) + "]");
}

/// O_R(D(n)) = R_n: denominators dividing a power of n.
template <EuclideanRing E>
FractionRing<E> zariski_sections(const E& ring, const typename E::value_type& n) {
    using T = typename E::value_type;
    if (ring.is_zero(n)) fail_bound("zariski_sections: D(0) is empty; use a nonzero element");
    return FractionRing<E>(ring, [ring, n](const T& s) {
        T power = ring.one();
        for (unsigned k = 0; k <= exponent_bound(ring, s); ++k, power = ring.mul(power, n))
            if (ring.divides(s, power)) return true;
        return false;
    }, ring.name() + "_" + ring.to_string(ring.normalize(n)));
}

/// Stalk at a closed point (p): denominators prime to p.
template <EuclideanRing E>
FractionRing<E> stalk(const E& ring, const typename E::value_type& p) {
    using T = typename E::value_type;
    if (!ring.is_irreducible(p)) fail("stalk: " + ring.to_string(p) + " is not irreducible");
    return FractionRing<E>(ring, [ring, p](const T& s) { return ring.is_unit(ring.gcd(s, p)); },
                           ring.name() + "_(" + ring.to_string(ring.normalize(p)) + ")");
}

/// D(m) ⊆ D(n) iff every prime factor of n divides m.
template <EuclideanRing E>
bool basic_open_subset(const E& ring, const typename E::value_type& m, const typename E::value_type& n) {
    return filter_from_basis(ring, {m}).contains(n);
}

/// O(D(n)) -> O(D(m)); the identity on canonical fractions.
template <EuclideanRing E>
std::function<Fraction<E>(const Fraction<E>&)> restriction(const E& ring, const typename E::value_type& n,
                                                           const typename E::value_type& m) {
    if (!basic_open_subset(ring, m, n))
        fail("restriction: D(" + ring.to_string(m) + ") ⊄ D(" + ring.to_string(n) + ")");
    auto target = sections(ring, m);
    return [target](const Fraction<E>& x) {
        auto y = target.make(x.num, x.den);
        if (!y) fail("restriction: image not in target");
        return *y;
    };
}

/// Sampled comparison of O_{Mod R} and O_R on basic opens and stalks.
template <EuclideanRing E>
std::vector<Check> reconstruction_check(const E& ring, const std::vector<typename E::value_type>& opens,
                                        const std::vector<typename E::value_type>& points,
                                        const std::vector<typename E::value_type>& samples) {
    auto homeo = Check::make("underlying homeomorphism", "bounded lattice primes match the primes of each D(n)");
    auto secs = Check::make("sections ≅", "O_{Mod R}(D(n)) = R_n on canonical fractions");
    auto rad = Check::make("radical invariance", "O(D(n)) = O(D(rad n))");
    auto res = Check::make("restriction functorial", "D(n) ⊇ D(np) ⊇ D(npq) restrictions compose");
    auto stalks = Check::make("stalks ≅ R_(p)", "colimit of O(D(n)) over p ∤ n is R_(p)");

    for (auto& n : opens) {
        auto b = euclid_lattice_primes_check(ring, n);
        if (!b.passed()) homeo.fail_with(ring.to_string(n) + ": " + (b.witnesses.empty() ? "" : b.witnesses[0]));
        auto M = sections(ring, n), Z = zariski_sections(ring, n), Rad = sections(ring, ring.radical(n));
        std::vector<Fraction<E>> elems;
        for (auto& s : samples) {
            if (ring.is_zero(s)) continue;
            for (auto& a : samples) {
                auto x = M.make(a, s), y = Z.make(a, s);
                if (x.has_value() != y.has_value() || (x && !(*x == *y))) {
                    secs.fail_with("D(" + ring.to_string(n) + "): " + ring.to_string(a) + "/" + ring.to_string(s));
                    continue;
                }
                if (M.admits(s) != Rad.admits(s)) rad.fail_with(ring.to_string(n) + " at " + ring.to_string(s));
                if (x && elems.size() < 24) elems.push_back(*x);
            }
        }
        for (auto& x : elems)
            for (auto& y : elems)
                if (!(M.add(x, y) == Z.add(x, y)) || !(M.mul(x, y) == Z.mul(x, y)))
                    secs.fail_with("D(" + ring.to_string(n) + "): operations differ at " + M.to_string(x));
        // chains n ⊇ n·p ⊇ n·p·q through the first few points
        std::size_t c = std::min<std::size_t>(points.size(), 3);
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                auto m = ring.mul(n, points[i]), k = ring.mul(m, points[j]);
                auto nm = restriction(ring, n, m), mk = restriction(ring, m, k), nk = restriction(ring, n, k);
                for (auto& x : elems)
                    if (!(mk(nm(x)) == nk(x)))
                        res.fail_with(ring.to_string(n) + " ⊇ " + ring.to_string(m) + " ⊇ " + ring.to_string(k));
            }
    }

    for (auto& p : points) {
        auto St = stalk(ring, p);
        for (auto& s : samples) {
            if (ring.is_zero(s)) continue;
            bool in_colimit = !ring.divides(p, s) && sections(ring, s).admits(s);
            if (St.admits(s) != in_colimit) stalks.fail_with(ring.to_string(p) + " at 1/" + ring.to_string(s));
        }
        if (St.admits(p)) stalks.fail_with("1/" + ring.to_string(p) + " lies in the stalk at itself");
        for (auto& n : opens)
            if (!ring.divides(p, n)) {
                auto M = sections(ring, n);
                auto x = M.make(ring.one(), n);
                if (!x || !St.make(x->num, x->den))
                    stalks.fail_with("O(D(" + ring.to_string(n) + ")) does not map to " + St.label());
            }
    }
    return {homeo, secs, rad, res, stalks};
}

}  // namespace spectra
