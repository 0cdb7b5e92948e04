#pragma once

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "spectra/element_set.hpp"
#include "spectra/finite_ring.hpp"

namespace spectra {

/// An ideal of a finite ring, stored as its member bitset. Equality is
/// member-set equality; generators are informational.
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr ring, ElementSet members, std::vector<Elem> generators = {})
        : ring_(std::move(ring)), members_(std::move(members)), generators_(std::move(generators)) {}

    const RingPtr& ring() const noexcept { return ring_; }
    const ElementSet& members() const noexcept { return members_; }
    const std::vector<Elem>& generators() const noexcept { return generators_; }

    bool contains(Elem a) const noexcept { return members_.contains(a); }
    std::size_t size() const noexcept { return members_.count(); }
    bool is_unit_ideal() const noexcept { return contains(ring_->one()); }
    bool is_zero() const noexcept { return members_.count() == 1; }
    bool subset_of(const Ideal& o) const noexcept { return members_.subset_of(o.members_); }

    bool operator==(const Ideal& o) const { return members_ == o.members_; }
    std::strong_ordering operator<=>(const Ideal& o) const { return members_ <=> o.members_; }

    /// A short generating set found greedily by element index.
    std::vector<Elem> minimal_generators() const {
        std::vector<Elem> gens;
        ElementSet span(ring_->size());
        span.insert(ring_->zero());
        for (auto a : members_.members()) {
            if (span.contains(static_cast<Elem>(a))) continue;
            gens.push_back(static_cast<Elem>(a));
            ElementSet principal(ring_->size());
            for (Elem r = 0; r < ring_->size(); ++r) principal.insert(ring_->mul(r, static_cast<Elem>(a)));
            span = sum_sets(span, principal);
        }
        return gens;
    }

    std::string to_string() const {
        auto gens = minimal_generators();
        if (gens.empty()) return "(0)";
        std::string s = "(";
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (i) s += ",";
            s += ring_->element_label(gens[i]);
        }
        return s + ")";
    }

    /// {x + y : x in a, y in b}.
    ElementSet sum_sets(const ElementSet& a, const ElementSet& b) const {
        ElementSet out(ring_->size());
        a.for_each([&](std::size_t x) {
            b.for_each([&](std::size_t y) { out.insert(ring_->add(static_cast<Elem>(x), static_cast<Elem>(y))); });
        });
        return out;
    }

private:
    RingPtr ring_;
    ElementSet members_;
    std::vector<Elem> generators_;
};

struct IdealHash {
    std::size_t operator()(const Ideal& i) const noexcept { return i.members().hash(); }
};

inline void require_same_ring(const Ideal& a, const Ideal& b) {
    if (a.ring() != b.ring()) fail("ideal operation on ideals of different rings");
}

inline ElementSet principal_members(const FiniteRing& R, Elem a) {
    ElementSet s(R.size());
    for (Elem r = 0; r < R.size(); ++r) s.insert(R.mul(r, a));
    return s;
}

inline ElementSet additive_sum(const FiniteRing& R, const ElementSet& a, const ElementSet& b) {
    ElementSet out(R.size());
    a.for_each([&](std::size_t x) {
        b.for_each([&](std::size_t y) { out.insert(R.add(static_cast<Elem>(x), static_cast<Elem>(y))); });
    });
    return out;
}

/// Smallest ideal containing gens: the sum of the principal ideals Ra.
inline Ideal ideal_from_generators(const RingPtr& R, std::vector<Elem> gens) {
    ElementSet members(R->size());
    members.insert(R->zero());
    for (auto g : gens) {
        if (g >= R->size()) fail("generator outside ring");
        members = additive_sum(*R, members, principal_members(*R, g));
    }
    return Ideal(R, std::move(members), std::move(gens));
}

inline Ideal zero_ideal(const RingPtr& R) { return ideal_from_generators(R, {}); }
inline Ideal unit_ideal(const RingPtr& R) { return ideal_from_generators(R, {R->one()}); }

inline Ideal ideal_sum(const Ideal& I, const Ideal& J) {
    require_same_ring(I, J);
    return Ideal(I.ring(), additive_sum(*I.ring(), I.members(), J.members()));
}

inline Ideal ideal_intersection(const Ideal& I, const Ideal& J) {
    require_same_ring(I, J);
    return Ideal(I.ring(), I.members() & J.members());
}

inline Ideal ideal_product(const Ideal& I, const Ideal& J) {
    require_same_ring(I, J);
    const auto& R = *I.ring();
    std::vector<Elem> gens;
    ElementSet seen(R.size());
    I.members().for_each([&](std::size_t x) {
        J.members().for_each([&](std::size_t y) {
            Elem p = R.mul(static_cast<Elem>(x), static_cast<Elem>(y));
            if (!seen.contains(p)) {
                seen.insert(p);
                gens.push_back(p);
            }
        });
    });
    return ideal_from_generators(I.ring(), std::move(gens));
}

/// (I : a) = {s : a s in I}.
inline Ideal ideal_colon(const Ideal& I, Elem a) {
    const auto& R = *I.ring();
    ElementSet out(R.size());
    for (Elem s = 0; s < R.size(); ++s)
        if (I.contains(R.mul(a, s))) out.insert(s);
    return Ideal(I.ring(), std::move(out));
}

/// {x : x^n in I for some n <= |R|}.
inline Ideal ideal_radical(const Ideal& I) {
    const auto& R = *I.ring();
    ElementSet out(R.size());
    for (Elem x = 0; x < R.size(); ++x) {
        Elem p = x;
        for (std::size_t n = 1; n <= R.size(); ++n) {
            if (I.contains(p)) {
                out.insert(x);
                break;
            }
            p = R.mul(p, x);
        }
    }
    return Ideal(I.ring(), std::move(out));
}

inline Ideal ideal_power(const Ideal& I, std::size_t n) {
    Ideal out = unit_ideal(I.ring());
    for (std::size_t i = 0; i < n; ++i) out = ideal_product(out, I);
    return out;
}

/// I^n for n large: the descending chain I ⊇ I² ⊇ ... stabilizes in a finite ring.
inline Ideal stable_power(const Ideal& I) {
    Ideal cur = I;
    while (true) {
        Ideal next = ideal_product(cur, I);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

struct IdealOps {
    Ideal product, sum, colon, radical;
};

inline IdealOps ideal_ops(const Ideal& I, const Ideal& J, Elem a) {
    require_same_ring(I, J);
    return {ideal_product(I, J), ideal_sum(I, J), ideal_colon(I, a), ideal_radical(I)};
}

/// All ideals of R, each once, ascending by cardinality (ties by member order).
inline std::vector<Ideal> enumerate_ideals(const RingPtr& R, const Bounds& bounds = {}) {
    if (R->size() > bounds.ideal_enumeration)
        fail_bound("ideal enumeration bound exceeded: |R| = " + std::to_string(R->size()));
    std::unordered_set<ElementSet, ElementSetHash> seen;
    std::vector<ElementSet> all;
    for (Elem a = 0; a < R->size(); ++a) {
        auto s = principal_members(*R, a);
        if (seen.insert(s).second) all.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            auto s = additive_sum(*R, all[i], all[j]);
            if (seen.insert(s).second) all.push_back(std::move(s));
        }
    std::sort(all.begin(), all.end(), [](const ElementSet& a, const ElementSet& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
    std::vector<Ideal> out;
    out.reserve(all.size());
    for (auto& s : all) out.emplace_back(R, std::move(s));
    return out;
}

/// A prime ideal; constructible only through certify().
class PrimeIdeal {
public:
    static std::optional<PrimeIdeal> certify(const Ideal& I) {
        const auto& R = *I.ring();
        if (I.is_unit_ideal()) return std::nullopt;
        for (Elem a = 0; a < R.size(); ++a) {
            if (I.contains(a)) continue;
            for (Elem b = a; b < R.size(); ++b)
                if (!I.contains(b) && I.contains(R.mul(a, b))) return std::nullopt;
        }
        return PrimeIdeal(I);
    }

    const Ideal& ideal() const noexcept { return ideal_; }
    const RingPtr& ring() const noexcept { return ideal_.ring(); }
    bool contains(Elem a) const noexcept { return ideal_.contains(a); }
    std::string to_string() const { return ideal_.to_string(); }

    bool operator==(const PrimeIdeal& o) const { return ideal_ == o.ideal_; }
    std::strong_ordering operator<=>(const PrimeIdeal& o) const { return ideal_ <=> o.ideal_; }

private:
    explicit PrimeIdeal(Ideal I) : ideal_(std::move(I)) {}
    Ideal ideal_;
};

inline bool is_prime(const Ideal& I) { return PrimeIdeal::certify(I).has_value(); }

/// One factor eR of the decomposition R = ∏ eR into local rings.
struct LocalFactor {
    Elem idempotent;
    RingPtr factor_ring;              // carrier eR, reindexed 0..|eR|-1, one = e
    Ideal maximal_ideal;              // of factor_ring
    std::vector<Elem> embedding;      // factor index -> element of R
    std::vector<Elem> projection;     // element r of R -> index of e·r
    PrimeIdeal prime;                 // {r : e·r in maximal_ideal}
};

namespace detail {

inline std::vector<Elem> idempotents(const FiniteRing& R) {
    std::vector<Elem> out;
    for (Elem e = 0; e < R.size(); ++e)
        if (R.mul(e, e) == e) out.push_back(e);
    return out;
}

inline std::vector<Elem> primitive_idempotents(const FiniteRing& R) {
    auto all = idempotents(R);
    std::vector<Elem> out;
    for (auto e : all) {
        if (e == R.zero()) continue;
        bool primitive = true;
        for (auto f : all) {
            Elem fe = R.mul(f, e);
            if (fe != R.zero() && fe != e) {
                primitive = false;
                break;
            }
        }
        if (primitive) out.push_back(e);
    }
    return out;
}

/// The ring e·R with identity e, carrier reindexed in increasing order.
struct CornerRing {
    RingPtr ring;
    std::vector<Elem> carrier;  ///< index -> element of R
    std::vector<Elem> index;    ///< element of R -> index of e·r
};

inline CornerRing corner_ring(const RingPtr& R, Elem e, std::string name) {
    std::vector<Elem> carrier;
    std::vector<Elem> index(R->size(), 0);
    ElementSet in(R->size());
    for (Elem r = 0; r < R->size(); ++r) in.insert(R->mul(e, r));
    for (auto x : in.members()) {
        index[x] = static_cast<Elem>(carrier.size());
        carrier.push_back(static_cast<Elem>(x));
    }
    std::size_t n = carrier.size();
    std::vector<Elem> add(n * n), mul(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = R->element_label(carrier[a]);
        for (std::size_t b = 0; b < n; ++b) {
            add[a * n + b] = index[R->add(carrier[a], carrier[b])];
            mul[a * n + b] = index[R->mul(carrier[a], carrier[b])];
        }
    }
    RingDescription desc;
    desc.kind = RingDescription::Kind::table;
    desc.name = std::move(name);
    auto S = std::make_shared<const FiniteRing>(n, std::move(add), std::move(mul), index[R->zero()], index[e],
                                                desc, std::move(labels));
    for (Elem r = 0; r < R->size(); ++r) index[r] = index[R->mul(e, r)];
    return {std::move(S), std::move(carrier), std::move(index)};
}

inline LocalFactor make_local_factor(const RingPtr& R, Elem e) {
    auto C = corner_ring(R, e, R->element_label(e) + "·(" + R->label() + ")");
    const auto& S = C.ring;
    std::size_t n = S->size();
    ElementSet nonunits(n);
    for (Elem a = 0; a < n; ++a)
        if (!S->is_unit(a)) nonunits.insert(a);
    Ideal m(S, nonunits);
    std::vector<Elem> projection(R->size());
    ElementSet preimage(R->size());
    for (Elem r = 0; r < R->size(); ++r) {
        projection[r] = C.index[r];
        if (nonunits.contains(projection[r])) preimage.insert(r);
    }
    auto P = PrimeIdeal::certify(Ideal(R, preimage));
    if (!P) fail("local factor preimage is not prime (internal invariant)");
    return LocalFactor{e, S, std::move(m), std::move(C.carrier), std::move(projection), std::move(*P)};
}

}  // namespace detail

using detail::corner_ring;
using detail::CornerRing;

/// R ≅ ∏ eR over the primitive idempotents, sorted by the associated prime.
inline std::vector<LocalFactor> local_decomposition(const RingPtr& R) {
    std::vector<LocalFactor> out;
    if (R->size() == 1) return out;
    for (auto e : detail::primitive_idempotents(*R)) out.push_back(detail::make_local_factor(R, e));
    std::sort(out.begin(), out.end(), [](const LocalFactor& a, const LocalFactor& b) { return a.prime < b.prime; });
    return out;
}

/// Prime spectrum; for a finite ring every prime is maximal and corresponds
/// to exactly one local factor.
inline std::vector<PrimeIdeal> spec(const RingPtr& R) {
    std::vector<PrimeIdeal> out;
    for (auto& f : local_decomposition(R)) out.push_back(f.prime);
    return out;
}

/// Primes found by primality testing every enumerated ideal.
inline std::vector<PrimeIdeal> primes_by_enumeration(const RingPtr& R, const Bounds& bounds = {}) {
    std::vector<PrimeIdeal> out;
    for (const auto& I : enumerate_ideals(R, bounds))
        if (auto P = PrimeIdeal::certify(I)) out.push_back(std::move(*P));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t index_of_prime(const std::vector<PrimeIdeal>& primes, const PrimeIdeal& P) {
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (primes[i] == P) return i;
    fail("prime " + P.to_string() + " is not a point of this spectrum");
}

}  // namespace spectra
