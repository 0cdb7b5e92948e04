#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spectra/report.hpp"
#include "spectra/thomason.hpp"

namespace spectra {

// ---------------------------------------------------------------------------
// Finite backend

/// A Gabriel filter of finite type presented by a finite basis. Membership:
/// I is the unit ideal or contains some basis ideal. The basis is kept
/// product-closed up to redundancy, minimal and sorted.
class FiniteFilter {
public:
    FiniteFilter(RingPtr ring, std::vector<Ideal> basis) : ring_(std::move(ring)), basis_(std::move(basis)) {}

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Ideal>& basis() const noexcept { return basis_; }

    bool contains(const Ideal& I) const {
        if (I.is_unit_ideal()) return true;
        for (auto& B : basis_)
            if (B.subset_of(I)) return true;
        return false;
    }

    std::vector<Ideal> members(const Bounds& bounds = {}) const {
        std::vector<Ideal> out;
        for (auto& I : enumerate_ideals(ring_, bounds))
            if (contains(I)) out.push_back(I);
        return out;
    }

    /// Membership extensionality over all ideals.
    bool same_members(const FiniteFilter& o, const Bounds& bounds = {}) const {
        for (auto& I : enumerate_ideals(ring_, bounds))
            if (contains(I) != o.contains(I)) return false;
        return true;
    }

    std::string to_string() const {
        std::string s = "<";
        for (std::size_t i = 0; i < basis_.size(); ++i) s += (i ? "," : "") + basis_[i].to_string();
        return s + ">";
    }

private:
    RingPtr ring_;
    std::vector<Ideal> basis_;
};

namespace detail {

/// Minimal elements under inclusion, sorted canonically.
inline std::vector<Ideal> minimal_ideals(std::vector<Ideal> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<Ideal> out;
    for (auto& I : v) {
        bool minimal = true;
        for (auto& J : v)
            if (!(J == I) && J.subset_of(I)) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(I);
    }
    return out;
}

inline bool v_subset(const Ideal& I, const std::vector<PrimeIdeal>& primes, const ElementSet& Y) {
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (I.subset_of(primes[i].ideal()) && !Y.contains(i)) return false;
    return true;
}

}  // namespace detail

inline FiniteFilter filter_from_basis(const RingPtr& R, std::vector<Ideal> basis) {
    for (auto& I : basis)
        if (I.ring() != R) fail("filter_from_basis: ideal over a different ring");
    auto current = detail::minimal_ideals(std::move(basis));
    while (true) {
        FiniteFilter f(R, current);
        std::vector<Ideal> added;
        for (std::size_t i = 0; i < current.size(); ++i)
            for (std::size_t j = i; j < current.size(); ++j) {
                auto P = ideal_product(current[i], current[j]);
                if (!f.contains(P)) added.push_back(P);
            }
        if (added.empty()) return f;
        current.insert(current.end(), added.begin(), added.end());
        current = detail::minimal_ideals(std::move(current));
    }
}

/// Checks the three Gabriel filter axioms for an arbitrary family of ideals
/// given by its membership predicate: R belongs, colon stability, gluing.
/// Non-exhaustive mode caps the gluing search at 4096 (J, I) pairs.
inline std::vector<Check> gabriel_axioms_check(const RingPtr& R, const std::function<bool(const Ideal&)>& member,
                                               bool exhaustive = true, const Bounds& bounds = {}) {
    auto ideals = enumerate_ideals(R, bounds);
    std::unordered_map<Ideal, std::size_t, IdealHash> index;
    for (std::size_t i = 0; i < ideals.size(); ++i) index.emplace(ideals[i], i);
    std::vector<char> in(ideals.size());
    for (std::size_t i = 0; i < ideals.size(); ++i) in[i] = member(ideals[i]);

    // colon[j][a] = index of (J_j : a)
    std::vector<std::vector<std::size_t>> colon(ideals.size(), std::vector<std::size_t>(R->size()));
    for (std::size_t j = 0; j < ideals.size(); ++j)
        for (Elem a = 0; a < R->size(); ++a) colon[j][a] = index.at(ideal_colon(ideals[j], a));

    auto unit = Check::make("filter contains R", "Gabriel filter: the ring belongs to the filter");
    if (!member(unit_ideal(R))) unit.fail_with("R not a member");

    auto colon_check = Check::make("colon stability", "Gabriel filter: (I:a) in F for I in F and a in R");
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        if (!in[i]) continue;
        for (Elem a = 0; a < R->size(); ++a)
            if (!in[colon[i][a]])
                colon_check.fail_with("I=" + ideals[i].to_string() + " a=" + R->element_label(a) +
                                      " (I:a)=" + ideals[colon[i][a]].to_string());
    }

    auto glue = Check::make("gluing", "Gabriel filter: J in F when (J:a) in F for all a in some I in F");
    std::size_t pairs = 0;
    for (std::size_t j = 0; j < ideals.size(); ++j) {
        if (in[j]) continue;
        for (std::size_t i = 0; i < ideals.size(); ++i) {
            if (!in[i]) continue;
            if (!exhaustive && ++pairs > 4096) break;
            bool all = true;
            ideals[i].members().for_each([&](std::size_t a) {
                if (all && !in[colon[j][a]]) all = false;
            });
            if (all) glue.fail_with("J=" + ideals[j].to_string() + " I=" + ideals[i].to_string());
        }
    }
    if (!exhaustive) glue.reason = "sampled";
    return {unit, colon_check, glue};
}

inline std::vector<Check> gabriel_axioms_check(const FiniteFilter& F, bool exhaustive = true,
                                               const Bounds& bounds = {}) {
    return gabriel_axioms_check(F.ring(), [&](const Ideal& I) { return F.contains(I); }, exhaustive, bounds);
}

/// F_Y = {I : V(I) ⊆ Y}, presented by its minimal members.
inline FiniteFilter open_to_filter(const FiniteThomason& Y, const Bounds& bounds = {}) {
    const auto& R = Y.ring();
    auto primes = spec(R);
    std::vector<Ideal> members;
    for (auto& I : enumerate_ideals(R, bounds))
        if (detail::v_subset(I, primes, Y.points())) members.push_back(I);
    return FiniteFilter(R, detail::minimal_ideals(std::move(members)));
}

/// Union of V(B) over the basis.
inline FiniteThomason filter_to_open(const FiniteFilter& F) {
    auto Y = FiniteThomason::empty(F.ring());
    for (auto& B : F.basis()) Y = Y.union_with(v_set(B));
    return Y;
}

template <class Set>
struct TorsionClass {
    Set open;
};

inline bool class_membership(const FinModule& M, const FiniteThomason& Y) {
    if (M.ring() != Y.ring()) fail("class_membership: module and Thomason set over different rings");
    return support_set(M).subset_of(Y);
}

inline bool class_membership(const FinModule& M, const TorsionClass<FiniteThomason>& C) {
    return class_membership(M, C.open);
}

/// ann(x) ∈ F for every x ∈ M.
inline bool annihilator_membership(const FinModule& M, const FiniteFilter& F) {
    for (Elem x = 0; x < M.size(); ++x)
        if (!F.contains(annihilator(M, x))) return false;
    return true;
}

/// Largest submodule supported in Y: e_Y·M with e_Y the sum of the
/// primitive idempotents of the points of Y.
inline ElementSet torsion_submodule(const FinModule& M, const FiniteThomason& Y) {
    if (M.ring() != Y.ring()) fail("torsion_submodule: module and Thomason set over different rings");
    const auto& R = *M.ring();
    auto factors = local_decomposition(M.ring());
    Elem e = R.zero();
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (Y.contains_point(i)) e = R.add(e, factors[i].idempotent);
    return idempotent_component(M, e);
}

/// {I : V(I) ∩ P_set = ∅}. Every subset of a finite spectrum is dual-closed.
inline FiniteFilter filter_from_prime_set(const RingPtr& R, const ElementSet& p_set, const Bounds& bounds = {}) {
    auto primes = spec(R);
    if (p_set.universe() != primes.size()) fail("filter_from_prime_set: point set does not match spec");
    std::vector<Ideal> members;
    for (auto& I : enumerate_ideals(R, bounds)) {
        bool meets = false;
        for (std::size_t i = 0; i < primes.size() && !meets; ++i)
            meets = p_set.contains(i) && I.subset_of(primes[i].ideal());
        if (!meets) members.push_back(I);
    }
    return FiniteFilter(R, detail::minimal_ideals(std::move(members)));
}

inline TorsionClass<FiniteThomason> smallest_torsion_class(const RingPtr& R, const std::vector<FinModule>& modules) {
    auto Y = FiniteThomason::empty(R);
    for (auto& M : modules) Y = Y.union_with(support_set(M));
    return {Y};
}

/// Every Thomason set strictly inside C.open misses one of the modules. It is
/// enough to test the maximal ones, Y minus a single point.
inline bool torsion_class_is_minimal(const TorsionClass<FiniteThomason>& C, const std::vector<FinModule>& modules) {
    for (auto i : C.open.points().members()) {
        auto smaller = C.open.points();
        smaller.erase(i);
        FiniteThomason Z(C.open.ring(), smaller);
        bool excludes = false;
        for (auto& M : modules) excludes = excludes || !class_membership(M, Z);
        if (!excludes) return false;
    }
    return true;
}

/// open <-> filter <-> class on every subset of spec, and class membership
/// against the annihilator criterion on the given modules.
inline std::vector<Check> torsion_roundtrip_check(const RingPtr& R, const std::vector<FinModule>& modules,
                                                  const Bounds& bounds = {}) {
    auto of = Check::make("open -> filter -> open", "filter_to_open ∘ open_to_filter = id on all subsets");
    auto fo = Check::make("filter -> open -> filter", "open_to_filter ∘ filter_to_open = id on all filters");
    auto ax = Check::make("Gabriel axioms", "open_to_filter(Y) is a Gabriel filter");
    auto ann = Check::make("class = annihilator criterion", "M ∈ S_Y iff Ann(x) ∈ F_Y for all x");
    for (auto& Y : FiniteThomason::all_subsets(R)) {
        auto F = open_to_filter(Y, bounds);
        if (!(filter_to_open(F) == Y)) of.fail_with(Y.to_string());
        if (!open_to_filter(filter_to_open(F), bounds).same_members(F, bounds)) fo.fail_with(F.to_string());
        for (auto& c : gabriel_axioms_check(F))
            if (!c.passed()) ax.fail_with(Y.to_string() + " " + c.name);
        for (auto& M : modules)
            if (class_membership(M, Y) != annihilator_membership(M, F))
                ann.fail_with(Y.to_string() + " " + M.label());
    }
    return {of, fo, ax, ann};
}

// ---------------------------------------------------------------------------
// Euclidean backend: ideals are principal, named by a generator.

template <EuclideanRing E>
class EuclidFilter {
public:
    using T = typename E::value_type;

    EuclidFilter(const E& ring, std::vector<T> basis) : ring_(ring), basis_(std::move(basis)) {
        radical_ = ring_.one();
        for (auto& b : basis_) {
            if (ring_.is_zero(b)) {
                has_zero_ = true;
                continue;
            }
            radical_ = ring_.lcm(radical_, ring_.radical(b));
        }
    }

    const E& ring() const noexcept { return ring_; }
    const std::vector<T>& basis() const noexcept { return basis_; }
    bool contains_zero() const noexcept { return has_zero_; }
    /// Square-free generator of the joint radical of the basis.
    const T& radical() const noexcept { return radical_; }

    /// (a) ∈ F iff (a) contains a product of basis ideals, i.e. every prime
    /// factor of a divides some basis generator.
    bool contains(const T& a) const {
        if (has_zero_ || ring_.is_unit(a)) return true;
        if (ring_.is_zero(a)) return false;
        T rest = ring_.normalize(a);
        while (true) {
            T g = ring_.gcd(rest, radical_);
            if (ring_.is_unit(g)) return ring_.is_unit(rest);
            rest = ring_.divmod(rest, g).first;
        }
    }

    std::string to_string() const {
        std::string s = "<";
        for (std::size_t i = 0; i < basis_.size(); ++i) s += (i ? "," : "") + std::string("(") + ring_.to_string(basis_[i]) + ")";
        return s + ">";
    }

private:
    E ring_;
    std::vector<T> basis_;
    T radical_;
    bool has_zero_ = false;
};

/// Normalizes and prunes generators that already lie in the filter of the others.
template <EuclideanRing E>
EuclidFilter<E> filter_from_basis(const E& ring, std::vector<typename E::value_type> basis) {
    using T = typename E::value_type;
    for (auto& b : basis) b = ring.normalize(b);
    std::sort(basis.begin(), basis.end(), [&](const T& x, const T& y) { return ring.less(x, y); });
    basis.erase(std::unique(basis.begin(), basis.end(), [&](const T& x, const T& y) { return ring.equal(x, y); }),
                basis.end());
    for (std::size_t i = 0; i < basis.size();) {
        std::vector<T> others = basis;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
        if (EuclidFilter<E>(ring, others).contains(basis[i]))
            basis = others;
        else
            ++i;
    }
    return EuclidFilter<E>(ring, std::move(basis));
}

template <EuclideanRing E>
EuclidFilter<E> open_to_filter(const EuclidThomason<E>& Y) {
    const auto& ring = Y.ring();
    if (Y.is_all()) return EuclidFilter<E>(ring, {ring.zero()});
    if (Y.is_empty()) return EuclidFilter<E>(ring, {});
    return EuclidFilter<E>(ring, {Y.radical()});
}

template <EuclideanRing E>
EuclidThomason<E> filter_to_open(const EuclidFilter<E>& F) {
    if (F.contains_zero()) return EuclidThomason<E>::all(F.ring());
    return EuclidThomason<E>::from_radical(F.ring(), F.radical());
}

template <EuclideanRing E>
bool class_membership(const E& ring, const FpPresentation<typename E::value_type>& p, const EuclidThomason<E>& Y) {
    return supp_fp_module(ring, p).subset_of(Y);
}

/// Annihilator criterion on the invariant-factor generators: a free summand
/// has annihilator (0), a summand R/(d) has annihilator (d).
template <EuclideanRing E>
bool annihilator_membership(const E& ring, const FpPresentation<typename E::value_type>& p, const EuclidFilter<E>& F) {
    auto inv = module_invariants(ring, p);
    if (inv.free_rank > 0 && !F.contains(ring.zero())) return false;
    for (auto& d : inv.torsion)
        if (!F.contains(d)) return false;
    return true;
}

template <EuclideanRing E>
TorsionClass<EuclidThomason<E>> smallest_torsion_class(const E& ring,
                                                       const std::vector<FpPresentation<typename E::value_type>>& ms) {
    auto Y = EuclidThomason<E>::empty(ring);
    for (auto& p : ms) Y = Y.union_with(supp_fp_module(ring, p));
    return {Y};
}

/// Sampled Gabriel axiom check over principal ideals (a) and elements x drawn
/// from `samples`. The colon of principal ideals is ((b):x) = (b / gcd(b, x)).
template <EuclideanRing E>
std::vector<Check> gabriel_axioms_check(const E& ring, const std::function<bool(const typename E::value_type&)>& member,
                                        const std::vector<typename E::value_type>& samples) {
    using T = typename E::value_type;
    auto colon = [&](const T& b, const T& x) -> T {
        if (ring.is_zero(x)) return ring.one();
        return ring.divmod(b, ring.gcd(b, x)).first;
    };
    auto name = [&](const T& a) { return "(" + ring.to_string(a) + ")"; };

    auto unit = Check::make("filter contains R", "Gabriel filter: the ring belongs to the filter");
    if (!member(ring.one())) unit.fail_with("R not a member");
    auto colon_check = Check::make("colon stability", "Gabriel filter: (I:a) in F for I in F and a in R");
    auto glue = Check::make("gluing", "Gabriel filter: J in F when (J:a) in F for all a in some I in F");
    for (auto& b : samples) {
        if (!member(b)) continue;
        for (auto& x : samples)
            if (!member(colon(b, x))) colon_check.fail_with("I=" + name(b) + " a=" + ring.to_string(x));
        for (auto& c : samples) {
            if (member(c)) continue;
            bool all = true;
            for (auto& x : samples)
                if (all && !member(colon(c, ring.mul(b, x)))) all = false;
            if (all) glue.fail_with("J=" + name(c) + " I=" + name(b));
        }
    }
    colon_check.reason = glue.reason = "sampled";
    return {unit, colon_check, glue};
}

template <EuclideanRing E>
std::vector<Check> gabriel_axioms_check(const EuclidFilter<E>& F, const std::vector<typename E::value_type>& samples) {
    return gabriel_axioms_check<E>(F.ring(), [&](const typename E::value_type& a) { return F.contains(a); }, samples);
}

/// Small elements for sampled checks: 0..n over Z.
inline std::vector<BigInt> sample_elements(const IntegerRing&, int n = 48) {
    std::vector<BigInt> out;
    for (int i = 0; i <= n; ++i) out.push_back(i);
    return out;
}

/// All polynomials of degree <= d over GF(q)[t].
inline std::vector<Poly> sample_elements(const PolyGFRing& ring, int d = 2) {
    std::vector<Poly> out{Poly{}};
    std::uint32_t q = ring.q();
    for (int deg = 0; deg <= d; ++deg) {
        std::size_t count = 1;
        for (int i = 0; i < deg; ++i) count *= q;
        for (std::size_t code = 0; code < count; ++code)
            for (Elem lead = 1; lead < q; ++lead) {
                Poly p;
                std::size_t c = code;
                for (int i = 0; i < deg; ++i) {
                    p.c.push_back(static_cast<Elem>(c % q));
                    c /= q;
                }
                p.c.push_back(lead);
                out.push_back(p);
            }
    }
    return out;
}

}  // namespace spectra
