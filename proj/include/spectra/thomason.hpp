#pragma once

#include <string>
#include <vector>

#include "spectra/euclid.hpp"
#include "spectra/fin_module.hpp"

namespace spectra {

// ---------------------------------------------------------------------------
// Finite backend: spec R is finite and discrete, so every subset is a
// Thomason subset. Sets are bitsets over the indices of spec(R).

class FiniteThomason {
public:
    FiniteThomason() = default;
    FiniteThomason(RingPtr ring, ElementSet points) : ring_(std::move(ring)), points_(std::move(points)) {}

    static FiniteThomason all(const RingPtr& R) { return {R, ElementSet::full(spec(R).size())}; }
    static FiniteThomason empty(const RingPtr& R) { return {R, ElementSet(spec(R).size())}; }

    const RingPtr& ring() const noexcept { return ring_; }
    const ElementSet& points() const noexcept { return points_; }
    std::size_t point_count() const noexcept { return points_.universe(); }
    bool is_empty() const noexcept { return points_.empty(); }
    bool is_all() const noexcept { return points_.count() == points_.universe(); }
    bool contains_point(std::size_t i) const noexcept { return points_.contains(i); }

    FiniteThomason union_with(const FiniteThomason& o) const {
        check(o);
        return {ring_, points_ | o.points_};
    }
    FiniteThomason intersection(const FiniteThomason& o) const {
        check(o);
        return {ring_, points_ & o.points_};
    }
    FiniteThomason complement() const { return {ring_, points_.complement()}; }
    bool subset_of(const FiniteThomason& o) const {
        check(o);
        return points_.subset_of(o.points_);
    }

    bool operator==(const FiniteThomason& o) const { return ring_ == o.ring_ && points_ == o.points_; }

    std::string to_string() const {
        auto primes = spec(ring_);
        std::string s = "{";
        bool first = true;
        for (auto i : points_.members()) {
            if (!first) s += ",";
            s += primes[i].to_string();
            first = false;
        }
        return s + "}";
    }

    /// Every subset of spec, in binary-counter order.
    static std::vector<FiniteThomason> all_subsets(const RingPtr& R) {
        std::size_t n = spec(R).size();
        std::vector<FiniteThomason> out;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            ElementSet s(n);
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) s.insert(i);
            out.emplace_back(R, std::move(s));
        }
        return out;
    }

private:
    void check(const FiniteThomason& o) const {
        if (ring_ != o.ring_) fail("Thomason set operation across different rings");
    }

    RingPtr ring_;
    ElementSet points_;
};

/// V(I) = {P in spec R : I ⊆ P}.
inline FiniteThomason v_set(const Ideal& I) {
    auto primes = spec(I.ring());
    ElementSet s(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (I.subset_of(primes[i].ideal())) s.insert(i);
    return {I.ring(), std::move(s)};
}

inline FiniteThomason support_set(const FinModule& M) { return {M.ring(), support_indices(M)}; }

/// Closure of a point in the dual topology: the primes contained in it.
/// All primes of a finite ring are maximal, so this is the point itself.
inline std::vector<PrimeIdeal> dual_closure(const PrimeIdeal& P) {
    std::vector<PrimeIdeal> out;
    for (auto& Q : spec(P.ring()))
        if (Q.ideal().subset_of(P.ideal())) out.push_back(Q);
    return out;
}

inline bool is_thomason(const FiniteThomason&) { return true; }

// ---------------------------------------------------------------------------
// Euclidean backend

template <EuclideanRing E>
struct SymbolicPrime {
    using T = typename E::value_type;
    bool generic = true;  ///< the zero ideal
    T generator{};        ///< normalized irreducible when not generic

    static SymbolicPrime zero() { return {}; }
    static SymbolicPrime closed(const E& ring, const T& p) {
        if (!ring.is_irreducible(p)) fail("not an irreducible element: " + ring.to_string(p));
        return {false, ring.normalize(p)};
    }

    bool operator==(const SymbolicPrime& o) const {
        return generic == o.generic && (generic || generator == o.generator);
    }
    std::string to_string(const E& ring) const { return generic ? "(0)" : "(" + ring.to_string(generator) + ")"; }
};

/// A finitely presented Thomason subset of spec of a PID: either All (the
/// zero-ideal marker) or V(r) for a normalized square-free r; ∅ is V(1).
template <EuclideanRing E>
class EuclidThomason {
public:
    using T = typename E::value_type;

    static EuclidThomason all(const E& ring) { return EuclidThomason(ring, true, ring.zero()); }
    static EuclidThomason empty(const E& ring) { return EuclidThomason(ring, false, ring.one()); }

    /// V(a); V(0) = All.
    static EuclidThomason v(const E& ring, const T& a) {
        if (ring.is_zero(a)) return all(ring);
        return EuclidThomason(ring, false, ring.radical(a));
    }
    /// V(r) for r already known to be square-free (normalized here).
    static EuclidThomason from_radical(const E& ring, const T& r) {
        if (ring.is_zero(r)) return all(ring);
        return EuclidThomason(ring, false, ring.normalize(r));
    }
    /// V(∏ points); a finite point set containing (0) is not Thomason.
    static EuclidThomason from_points(const E& ring, const std::vector<SymbolicPrime<E>>& pts) {
        T r = ring.one();
        for (auto& p : pts) {
            if (p.generic) fail("a finite point set containing the generic point is not a Thomason subset");
            r = ring.lcm(r, p.generator);
        }
        return EuclidThomason(ring, false, r);
    }

    bool is_all() const noexcept { return all_; }
    bool is_empty() const { return !all_ && ring_.is_unit(radical_); }
    const T& radical() const noexcept { return radical_; }
    const E& ring() const noexcept { return ring_; }

    EuclidThomason union_with(const EuclidThomason& o) const {
        check(o);
        if (all_ || o.all_) return all(ring_);
        return EuclidThomason(ring_, false, ring_.lcm(radical_, o.radical_));
    }
    EuclidThomason intersection(const EuclidThomason& o) const {
        check(o);
        if (all_) return o;
        if (o.all_) return *this;
        return EuclidThomason(ring_, false, ring_.gcd(radical_, o.radical_));
    }
    bool contains_point(const SymbolicPrime<E>& p) const {
        if (all_) return true;
        if (p.generic) return false;
        return ring_.divides(p.generator, radical_);
    }
    bool subset_of(const EuclidThomason& o) const {
        check(o);
        if (o.all_) return true;
        if (all_) return false;
        return ring_.divides(radical_, o.radical_);
    }
    std::vector<SymbolicPrime<E>> closed_points() const {
        if (all_) fail("All has infinitely many closed points");
        std::vector<SymbolicPrime<E>> out;
        if (ring_.is_unit(radical_)) return out;
        for (auto& [p, e] : ring_.factorize(radical_)) out.push_back({false, p});
        return out;
    }

    bool operator==(const EuclidThomason& o) const {
        return all_ == o.all_ && (all_ || radical_ == o.radical_);
    }

    std::string to_string() const {
        if (all_) return "All";
        if (ring_.is_unit(radical_)) return "{}";
        return "V(" + ring_.to_string(radical_) + ")";
    }

private:
    EuclidThomason(const E& ring, bool all, T r) : ring_(ring), all_(all), radical_(std::move(r)) {}
    void check(const EuclidThomason& o) const {
        if (ring_.name() != o.ring_.name()) fail("Thomason set operation across different backends");
    }

    E ring_;
    bool all_;
    T radical_;
};

template <EuclideanRing E>
EuclidThomason<E> v_set(const E& ring, const typename E::value_type& a) {
    return EuclidThomason<E>::v(ring, a);
}

template <EuclideanRing E>
std::vector<SymbolicPrime<E>> dual_closure(const E&, const SymbolicPrime<E>& p) {
    if (p.generic) return {p};
    return {SymbolicPrime<E>::zero(), p};
}

/// A finite explicit point set is Thomason iff it omits the generic point.
template <EuclideanRing E>
bool is_thomason(const E&, const std::vector<SymbolicPrime<E>>& pts) {
    for (auto& p : pts)
        if (p.generic) return false;
    return true;
}

/// supp of a finitely presented module: All if it has free rank, otherwise
/// V(largest invariant factor).
template <EuclideanRing E>
EuclidThomason<E> supp_fp_module(const E& ring, const FpPresentation<typename E::value_type>& p) {
    auto inv = module_invariants(ring, p);
    if (inv.free_rank > 0) return EuclidThomason<E>::all(ring);
    if (inv.torsion.empty()) return EuclidThomason<E>::empty(ring);
    return EuclidThomason<E>::v(ring, inv.torsion.back());
}

template <EuclideanRing E>
EuclidThomason<E> supp_invariants(const E& ring, const ModuleInvariants<typename E::value_type>& inv) {
    if (inv.free_rank > 0) return EuclidThomason<E>::all(ring);
    if (inv.torsion.empty()) return EuclidThomason<E>::empty(ring);
    return EuclidThomason<E>::v(ring, inv.torsion.back());
}

}  // namespace spectra
