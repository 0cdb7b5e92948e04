#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectra/report.hpp"
#include "spectra/torsion.hpp"

namespace spectra {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// A finite poset with a multiplication table. Joins and meets are derived
/// from the order; a missing one is stored as npos and reported by L1.
class FiniteLattice {
public:
    FiniteLattice(std::vector<std::string> labels, std::vector<char> order, std::vector<std::size_t> mul)
        : n_(labels.size()), labels_(std::move(labels)), leq_(std::move(order)), mul_(std::move(mul)) {
        if (leq_.size() != n_ * n_ || mul_.size() != n_ * n_) fail("lattice tables have the wrong size");
        for (auto m : mul_)
            if (m >= n_) fail("lattice product out of range");
        for (std::size_t a = 0; a < n_; ++a) {
            if (!leq(a, a)) fail("order is not reflexive at " + labels_[a]);
            for (std::size_t b = 0; b < n_; ++b) {
                if (a != b && leq(a, b) && leq(b, a)) fail("order is not antisymmetric");
                for (std::size_t c = 0; c < n_; ++c)
                    if (leq(a, b) && leq(b, c) && !leq(a, c)) fail("order is not transitive");
            }
        }
        join_.assign(n_ * n_, npos);
        meet_.assign(n_ * n_, npos);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) {
                join_[a * n_ + b] = extremal(a, b, true);
                meet_[a * n_ + b] = extremal(a, b, false);
            }
        top_ = bottom_ = npos;
        for (std::size_t a = 0; a < n_; ++a) {
            bool is_top = true, is_bottom = true;
            for (std::size_t b = 0; b < n_; ++b) {
                is_top = is_top && leq(b, a);
                is_bottom = is_bottom && leq(a, b);
            }
            if (is_top) top_ = a;
            if (is_bottom) bottom_ = a;
        }
    }

    /// Product = meet.
    static FiniteLattice with_meet_product(std::vector<std::string> labels, std::vector<char> leq) {
        std::size_t n = labels.size();
        FiniteLattice tmp(labels, leq, std::vector<std::size_t>(n * n, 0));
        std::vector<std::size_t> mul(n * n);
        for (std::size_t i = 0; i < n * n; ++i) {
            if (tmp.meet_[i] == npos) fail("with_meet_product: order has no meets");
            mul[i] = tmp.meet_[i];
        }
        return FiniteLattice(std::move(labels), std::move(leq), std::move(mul));
    }

    /// Chain 0 < 1 < ... < n-1 with product = meet.
    static FiniteLattice chain(std::size_t n) {
        std::vector<std::string> labels;
        std::vector<char> leq(n * n);
        for (std::size_t a = 0; a < n; ++a) {
            labels.push_back(std::to_string(a));
            for (std::size_t b = 0; b < n; ++b) leq[a * n + b] = a <= b;
        }
        return with_meet_product(std::move(labels), std::move(leq));
    }

    FiniteLattice with_product(std::vector<std::size_t> mul) const { return FiniteLattice(labels_, leq_, std::move(mul)); }

    std::size_t size() const noexcept { return n_; }
    bool leq(std::size_t a, std::size_t b) const noexcept { return leq_[a * n_ + b] != 0; }
    std::size_t join(std::size_t a, std::size_t b) const noexcept { return join_[a * n_ + b]; }
    std::size_t meet(std::size_t a, std::size_t b) const noexcept { return meet_[a * n_ + b]; }
    std::size_t mul(std::size_t a, std::size_t b) const noexcept { return mul_[a * n_ + b]; }
    std::size_t top() const noexcept { return top_; }
    std::size_t bottom() const noexcept { return bottom_; }
    const std::string& label(std::size_t a) const { return labels_.at(a); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<std::size_t>& mul_table() const noexcept { return mul_; }

    /// Covering pairs (a, b): a < b with nothing strictly between.
    std::vector<std::pair<std::size_t, std::size_t>> covers() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) {
                if (a == b || !leq(a, b)) continue;
                bool direct = true;
                for (std::size_t c = 0; c < n_ && direct; ++c)
                    direct = c == a || c == b || !(leq(a, c) && leq(c, b));
                if (direct) out.emplace_back(a, b);
            }
        return out;
    }

private:
    std::size_t extremal(std::size_t a, std::size_t b, bool upper) const {
        std::size_t best = npos;
        for (std::size_t c = 0; c < n_; ++c) {
            bool bound = upper ? (leq(a, c) && leq(b, c)) : (leq(c, a) && leq(c, b));
            if (!bound) continue;
            if (best == npos || (upper ? leq(c, best) : leq(best, c))) best = c;
        }
        if (best == npos) return npos;
        for (std::size_t c = 0; c < n_; ++c) {
            bool bound = upper ? (leq(a, c) && leq(b, c)) : (leq(c, a) && leq(c, b));
            if (bound && !(upper ? leq(best, c) : leq(c, best))) return npos;
        }
        return best;
    }

    std::size_t n_;
    std::vector<std::string> labels_;
    std::vector<char> leq_;
    std::vector<std::size_t> mul_, join_, meet_;
    std::size_t top_, bottom_;
};

/// In a finite lattice every element is compact: any covering family is finite.
inline bool is_compact(const FiniteLattice&, std::size_t) { return true; }

/// L1-L5 plus associativity, exhaustively.
inline std::vector<Check> verify_axioms(const FiniteLattice& L) {
    std::size_t n = L.size();
    auto assoc = Check::make("associative", "multiplication is associative");
    auto l1 = Check::make("L1", "complete lattice: all joins and meets exist");
    auto l2 = Check::make("L2", "compactly generated");
    auto l3 = Check::make("L3", "product distributes over joins");
    auto l4 = Check::make("L4", "top is compact and a unit");
    auto l5 = Check::make("L5", "products of compacts are compact");

    if (n == 0) l1.fail_with("empty poset has no top");
    if (n > 0 && (L.top() == npos || L.bottom() == npos)) l1.fail_with("missing top or bottom");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (L.join(a, b) == npos || L.meet(a, b) == npos) l1.fail_with("{" + L.label(a) + ", " + L.label(b) + "}");

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (L.mul(L.mul(a, b), c) != L.mul(a, L.mul(b, c)))
                    assoc.fail_with("(" + L.label(a) + ", " + L.label(b) + ", " + L.label(c) + ")");

    if (l1.passed()) {
        for (std::size_t a = 0; a < n; ++a) {
            std::size_t sup = L.bottom();
            for (std::size_t c = 0; c < n; ++c)
                if (is_compact(L, c) && L.leq(c, a)) sup = L.join(sup, c);
            if (sup != a) l2.fail_with(L.label(a));
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    if (L.mul(a, L.join(b, c)) != L.join(L.mul(a, b), L.mul(a, c)) ||
                        L.mul(L.join(a, b), c) != L.join(L.mul(a, c), L.mul(b, c)))
                        l3.fail_with("(" + L.label(a) + ", " + L.label(b) + ", " + L.label(c) + ")");
                }
        if (n > 0) {
            if (!is_compact(L, L.top())) l4.fail_with("top not compact");
            for (std::size_t a = 0; a < n; ++a)
                if (L.mul(L.top(), a) != a || L.mul(a, L.top()) != a) l4.fail_with(L.label(a));
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (!is_compact(L, L.mul(a, b))) l5.fail_with(L.label(a) + "*" + L.label(b));
    } else {
        for (auto* c : {&l2, &l3, &l4, &l5}) c->skip("requires L1");
    }
    return {assoc, l1, l2, l3, l4, l5};
}

struct LatticePrime {
    std::size_t element;
    std::string certificate;
};

/// p != 1 with ab <= p implying a <= p or b <= p.
inline std::vector<LatticePrime> prime_elements(const FiniteLattice& L) {
    std::vector<LatticePrime> out;
    for (std::size_t p = 0; p < L.size(); ++p) {
        if (p == L.top()) continue;
        bool prime = true;
        for (std::size_t a = 0; a < L.size() && prime; ++a)
            for (std::size_t b = 0; b < L.size() && prime; ++b)
                if (L.leq(L.mul(a, b), p) && !L.leq(a, p) && !L.leq(b, p)) prime = false;
        if (prime) out.push_back({p, "checked all " + std::to_string(L.size() * L.size()) + " pairs"});
    }
    return out;
}

/// Meet-irreducible: p != 1 and p = a ∧ b forces p = a or p = b.
inline bool meet_irreducible(const FiniteLattice& L, std::size_t p) {
    if (p == L.top()) return false;
    for (std::size_t a = 0; a < L.size(); ++a)
        for (std::size_t b = 0; b < L.size(); ++b)
            if (L.meet(a, b) == p && a != p && b != p) return false;
    return true;
}

/// A finite topological space given by its open sets.
struct FiniteSpace {
    std::size_t n = 0;
    std::vector<ElementSet> opens;
    std::vector<std::string> labels;

    bool is_open(const ElementSet& s) const { return std::find(opens.begin(), opens.end(), s) != opens.end(); }
    bool is_closed(const ElementSet& s) const { return is_open(s.complement()); }

    ElementSet closure(std::size_t x) const {
        ElementSet out = ElementSet::full(n);
        for (auto& U : opens)
            if (!U.contains(x)) out &= U.complement();
        return out;
    }

    std::optional<std::string> topology_violation() const {
        if (!is_open(ElementSet(n))) return "empty set not open";
        if (!is_open(ElementSet::full(n))) return "whole space not open";
        for (auto& U : opens) {
            if (U.universe() != n) return "open set over the wrong universe";
            for (auto& V : opens) {
                if (!is_open(U | V)) return "not closed under unions";
                if (!is_open(U & V)) return "not closed under intersections";
            }
        }
        return std::nullopt;
    }

    bool is_t0() const {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < x; ++y) {
                bool separated = false;
                for (auto& U : opens)
                    if (U.contains(x) != U.contains(y)) separated = true;
                if (!separated) return false;
            }
        return true;
    }

    std::string point_label(std::size_t x) const { return x < labels.size() ? labels[x] : std::to_string(x); }

    static FiniteSpace from_opens(std::size_t n, std::vector<ElementSet> opens, std::vector<std::string> labels = {}) {
        std::sort(opens.begin(), opens.end());
        opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
        FiniteSpace X{n, std::move(opens), std::move(labels)};
        if (auto v = X.topology_violation()) fail("not a topology: " + *v);
        return X;
    }

    /// The topology generated by a family of subsets (closure under unions
    /// and finite intersections).
    static FiniteSpace generated(std::size_t n, std::vector<ElementSet> sub, std::vector<std::string> labels = {}) {
        sub.push_back(ElementSet(n));
        sub.push_back(ElementSet::full(n));
        std::vector<ElementSet> opens;
        auto add = [&](const ElementSet& s) {
            if (std::find(opens.begin(), opens.end(), s) != opens.end()) return false;
            opens.push_back(s);
            return true;
        };
        for (auto& s : sub) add(s);
        bool grew = true;
        while (grew) {
            grew = false;
            auto snapshot = opens;
            for (auto& a : snapshot)
                for (auto& b : snapshot) grew = add(a | b) + add(a & b) || grew;
        }
        return from_opens(n, std::move(opens), std::move(labels));
    }
};

/// Hochster dual of a finite spectral space: the closed sets become open.
inline FiniteSpace hochster_dual(const FiniteSpace& X) {
    std::vector<ElementSet> opens;
    for (auto& U : X.opens) opens.push_back(U.complement());
    return FiniteSpace::from_opens(X.n, std::move(opens), X.labels);
}

/// Every T0 topology on n points, from the partial orders of specialization:
/// opens are the up-closed sets of x <= y iff x ∈ closure(y).
inline std::vector<FiniteSpace> all_t0_spaces(std::size_t n) {
    if (n > 5) fail_bound("all_t0_spaces: more than 5 points");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b) pairs.emplace_back(a, b);
    std::vector<FiniteSpace> out;
    std::vector<char> le(n * n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        std::fill(le.begin(), le.end(), 0);
        for (std::size_t a = 0; a < n; ++a) le[a * n + a] = 1;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (mask >> k & 1) le[pairs[k].first * n + pairs[k].second] = 1;
        bool order = true;
        for (std::size_t a = 0; a < n && order; ++a)
            for (std::size_t b = 0; b < n && order; ++b) {
                if (a != b && le[a * n + b] && le[b * n + a]) order = false;
                for (std::size_t c = 0; c < n && order; ++c)
                    if (le[a * n + b] && le[b * n + c] && !le[a * n + c]) order = false;
            }
        if (!order) continue;
        std::vector<ElementSet> opens;
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
            bool up = true;
            for (std::size_t a = 0; a < n && up; ++a)
                for (std::size_t b = 0; b < n && up; ++b)
                    if ((s >> a & 1) && le[a * n + b] && !(s >> b & 1)) up = false;
            if (!up) continue;
            ElementSet U(n);
            for (std::size_t a = 0; a < n; ++a)
                if (s >> a & 1) U.insert(a);
            opens.push_back(U);
        }
        out.push_back(FiniteSpace::from_opens(n, std::move(opens)));
    }
    return out;
}

/// L_open(X) with UV = U ∩ V; element i is X.opens[i].
inline FiniteLattice open_lattice(const FiniteSpace& X) {
    std::size_t m = X.opens.size();
    std::vector<std::string> labels;
    std::vector<char> leq(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        std::string s = "{";
        for (auto x : X.opens[a].members()) s += (s.size() > 1 ? "," : "") + X.point_label(x);
        labels.push_back(s + "}");
        for (std::size_t b = 0; b < m; ++b) leq[a * m + b] = X.opens[a].subset_of(X.opens[b]);
    }
    return FiniteLattice::with_meet_product(std::move(labels), std::move(leq));
}

/// Spec L with closed sets V(a) = {p : a <= p}.
inline FiniteSpace lattice_spectrum(const FiniteLattice& L, const std::vector<LatticePrime>& primes) {
    std::vector<ElementSet> opens;
    std::vector<std::string> labels;
    for (auto& p : primes) labels.push_back(L.label(p.element));
    for (std::size_t a = 0; a < L.size(); ++a) {
        ElementSet D(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (!L.leq(a, primes[i].element)) D.insert(i);
        opens.push_back(D);
    }
    return FiniteSpace::from_opens(primes.size(), std::move(opens), std::move(labels));
}

/// Failure witness if f: X -> Y is not a homeomorphism.
inline std::optional<std::string> homeomorphism_violation(const FiniteSpace& X, const FiniteSpace& Y,
                                                          const std::vector<std::size_t>& f) {
    if (f.size() != X.n || X.n != Y.n) return "point counts differ";
    ElementSet hit(Y.n);
    for (auto y : f) {
        if (y >= Y.n || hit.contains(y)) return "map is not a bijection";
        hit.insert(y);
    }
    for (auto& V : Y.opens) {
        ElementSet pre(X.n);
        for (std::size_t x = 0; x < X.n; ++x)
            if (V.contains(f[x])) pre.insert(x);
        if (!X.is_open(pre)) return "not continuous at an open set of the target";
    }
    for (auto& U : X.opens) {
        ElementSet img(Y.n);
        for (auto x : U.members()) img.insert(f[x]);
        if (!Y.is_open(img)) return "not open at an open set of the source";
    }
    return std::nullopt;
}

/// V(a ∨ b) = V(a) ∩ V(b) and V(ab) = V(a) ∪ V(b) for all pairs.
inline Check v_identities_check(const FiniteLattice& L) {
    auto c = Check::make("V identities", "V(a∨b) = V(a)∩V(b), V(ab) = V(a)∪V(b)");
    auto primes = prime_elements(L);
    auto V = [&](std::size_t a) {
        ElementSet s(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (L.leq(a, primes[i].element)) s.insert(i);
        return s;
    };
    for (std::size_t a = 0; a < L.size(); ++a)
        for (std::size_t b = 0; b < L.size(); ++b) {
            if (L.join(a, b) == npos) continue;
            if (V(L.join(a, b)) != (V(a) & V(b))) c.fail_with("join at " + L.label(a) + ", " + L.label(b));
            if (V(L.mul(a, b)) != (V(a) | V(b))) c.fail_with("product at " + L.label(a) + ", " + L.label(b));
        }
    return c;
}

/// X -> Spec L_open(X), x -> X minus closure(x).
inline std::vector<Check> stone_check(const FiniteSpace& X) {
    auto space = Check::make("finite spectral", "T0 topology");
    if (auto v = X.topology_violation()) space.fail_with(*v);
    if (!X.is_t0()) space.fail_with("not T0");
    auto L = open_lattice(X);
    auto axioms = verify_axioms(L);
    auto primes = prime_elements(L);
    auto specL = lattice_spectrum(L, primes);
    auto homeo = Check::make("Stone homeomorphism", "x -> X minus closure(x) onto Spec L_open(X)");
    std::vector<std::size_t> f;
    for (std::size_t x = 0; x < X.n; ++x) {
        auto U = X.closure(x).complement();
        auto it = std::find(X.opens.begin(), X.opens.end(), U);
        std::size_t elem = static_cast<std::size_t>(it - X.opens.begin());
        std::size_t idx = npos;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (primes[i].element == elem) idx = i;
        if (idx == npos) {
            homeo.fail_with("image of " + X.point_label(x) + " is not prime");
            idx = 0;
        }
        f.push_back(idx);
    }
    if (homeo.passed())
        if (auto v = homeomorphism_violation(X, specL, f)) homeo.fail_with(*v);
    std::vector<Check> out{space};
    out.insert(out.end(), axioms.begin(), axioms.end());
    out.push_back(homeo);
    out.push_back(v_identities_check(L));
    return out;
}

/// Torsion classes of finite type over a finite ring: elements are Gabriel
/// filters generated by sets of ideals, ordered by inclusion, product = meet.
struct SerreLattice {
    FiniteLattice lattice;
    std::vector<FiniteFilter> filters;
    std::vector<FiniteThomason> sets;  ///< filter_to_open of each filter
};

inline SerreLattice serre_lattice(const RingPtr& R, const Bounds& bounds = {}) {
    auto ideals = enumerate_ideals(R, bounds);
    auto key = [&](const FiniteFilter& F) {
        ElementSet s(ideals.size());
        for (std::size_t i = 0; i < ideals.size(); ++i)
            if (F.contains(ideals[i])) s.insert(i);
        return s;
    };
    std::map<ElementSet, std::vector<Ideal>> found;
    found.emplace(key(filter_from_basis(R, {unit_ideal(R)})), std::vector<Ideal>{unit_ideal(R)});
    for (auto& I : ideals) found.emplace(key(filter_from_basis(R, {I})), std::vector<Ideal>{I});
    bool grew = true;
    while (grew) {
        grew = false;
        auto snapshot = found;
        for (auto& [ka, ba] : snapshot)
            for (auto& [kb, bb] : snapshot) {
                auto basis = ba;
                basis.insert(basis.end(), bb.begin(), bb.end());
                auto F = filter_from_basis(R, basis);
                grew = found.emplace(key(F), detail::minimal_ideals(basis)).second || grew;
            }
    }
    std::vector<ElementSet> keys;
    std::vector<FiniteFilter> filters;
    std::vector<FiniteThomason> sets;
    std::vector<std::string> labels;
    for (auto& [k, basis] : found) {
        keys.push_back(k);
        filters.push_back(filter_from_basis(R, basis));
        sets.push_back(filter_to_open(filters.back()));
        labels.push_back(sets.back().to_string());
    }
    std::size_t m = keys.size();
    std::vector<char> leq(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) leq[a * m + b] = keys[a].subset_of(keys[b]);
    auto L = FiniteLattice::with_meet_product(std::move(labels), std::move(leq));
    return {std::move(L), std::move(filters), std::move(sets)};
}

/// spec* R: the Thomason subsets are open.
inline FiniteSpace dual_spectrum(const RingPtr& R) {
    auto primes = spec(R);
    std::vector<ElementSet> opens;
    std::vector<std::string> labels;
    for (auto& P : primes) labels.push_back(P.to_string());
    for (auto& Y : FiniteThomason::all_subsets(R))
        if (is_thomason(Y)) opens.push_back(Y.points());
    return FiniteSpace::from_opens(primes.size(), std::move(opens), std::move(labels));
}

/// Order isomorphism L_Serre -> L_open(spec* R) commuting with products.
inline Check serre_open_isomorphism_check(const RingPtr& R, const SerreLattice& S) {
    auto c = Check::make("L_Serre ≅ L_open(spec*)", "filter -> Thomason set is an isomorphism of multiplicative lattices");
    auto X = dual_spectrum(R);
    const auto& L = S.lattice;
    if (L.size() != X.opens.size())
        c.fail_with("sizes " + std::to_string(L.size()) + " vs " + std::to_string(X.opens.size()));
    std::vector<std::size_t> g;
    for (auto& Y : S.sets) {
        auto it = std::find(X.opens.begin(), X.opens.end(), Y.points());
        if (it == X.opens.end()) {
            c.fail_with(Y.to_string() + " is not open in spec*");
            return c;
        }
        g.push_back(static_cast<std::size_t>(it - X.opens.begin()));
    }
    for (std::size_t a = 0; a < L.size(); ++a)
        for (std::size_t b = 0; b < L.size(); ++b) {
            if (L.leq(a, b) != X.opens[g[a]].subset_of(X.opens[g[b]])) c.fail_with("order at " + L.label(a) + ", " + L.label(b));
            if (X.opens[g[L.mul(a, b)]] != (X.opens[g[a]] & X.opens[g[b]])) c.fail_with("product at " + L.label(a) + ", " + L.label(b));
        }
    return c;
}

/// P -> S_P = {M : M_P = 0}, computed from cyclic modules, as a homeomorphism
/// spec* R -> Spec L_Serre.
/// P -> S_P as indices into prime_elements(S.lattice); npos where S_P is
/// not a lattice prime.
inline std::vector<std::size_t> serre_point_map(const RingPtr& R, const SerreLattice& S,
                                                const std::vector<LatticePrime>& lprimes, const Bounds& bounds = {}) {
    auto ideals = enumerate_ideals(R, bounds);
    std::vector<std::size_t> f;
    for (auto& P : spec(R)) {
        std::vector<Ideal> basis;
        for (auto& I : ideals)
            if (localize_module(cyclic_module(I, bounds), P).is_zero()) basis.push_back(I);
        auto F = filter_from_basis(R, basis);
        std::size_t elem = npos;
        for (std::size_t i = 0; i < S.filters.size(); ++i)
            if (S.filters[i].same_members(F, bounds)) elem = i;
        std::size_t idx = npos;
        for (std::size_t i = 0; i < lprimes.size(); ++i)
            if (lprimes[i].element == elem) idx = i;
        f.push_back(idx);
    }
    return f;
}

inline std::vector<Check> prrco_check(const RingPtr& R, const Bounds& bounds = {}) {
    auto S = serre_lattice(R, bounds);
    const auto& L = S.lattice;
    auto primes = spec(R);
    auto lprimes = prime_elements(L);
    auto SpecL = lattice_spectrum(L, lprimes);
    auto X = dual_spectrum(R);

    auto lands = Check::make("S_P is a lattice prime", "P -> S_P lands in Spec L_Serre");
    auto f = serre_point_map(R, S, lprimes, bounds);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] == npos) {
            lands.fail_with("S_" + primes[i].to_string() + " is not prime");
            f[i] = 0;
        }
    auto homeo = Check::make("spec* R ≅ Spec L_Serre", "P -> S_P is a homeomorphism");
    if (lands.passed())
        if (auto v = homeomorphism_violation(X, SpecL, f)) homeo.fail_with(*v);
    auto irreducible = Check::make("primes are ∩-irreducible", "points of Spec L_Serre are the ∩-irreducible classes");
    for (std::size_t a = 0; a < L.size(); ++a) {
        bool prime = false;
        for (auto& p : lprimes) prime = prime || p.element == a;
        if (prime != meet_irreducible(L, a)) irreducible.fail_with(L.label(a));
    }
    auto axioms = verify_axioms(L);
    std::vector<Check> out = axioms;
    out.push_back(serre_open_isomorphism_check(R, S));
    out.push_back(lands);
    out.push_back(homeo);
    out.push_back(irreducible);
    out.push_back(v_identities_check(L));
    return out;
}

/// Bounded piece of L_Serre over a Euclidean ring: V(d) for square-free d
/// dividing rad(n), ordered by inclusion, product = meet.
template <EuclideanRing E>
struct EuclidSerreLattice {
    FiniteLattice lattice;
    std::vector<EuclidThomason<E>> sets;
};

template <EuclideanRing E>
EuclidSerreLattice<E> serre_lattice(const E& ring, const typename E::value_type& n) {
    using T = typename E::value_type;
    if (ring.is_zero(n)) fail_bound("serre_lattice: bound must be nonzero");
    std::vector<T> ps;
    if (!ring.is_unit(n))
        for (auto& [p, e] : ring.factorize(n)) ps.push_back(p);
    if (ps.size() > 12) fail_bound("serre_lattice: too many prime factors in the bound");
    std::vector<EuclidThomason<E>> sets;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ps.size()); ++mask) {
        T d = ring.one();
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask >> i & 1) d = ring.mul(d, ps[i]);
        sets.push_back(EuclidThomason<E>::from_radical(ring, d));
    }
    std::size_t m = sets.size();
    std::vector<std::string> labels;
    std::vector<char> leq(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        labels.push_back(sets[a].to_string());
        for (std::size_t b = 0; b < m; ++b) leq[a * m + b] = sets[a].subset_of(sets[b]);
    }
    return {FiniteLattice::with_meet_product(std::move(labels), std::move(leq)), std::move(sets)};
}

/// Within the bound, the lattice primes are exactly V(rad n) minus one prime.
template <EuclideanRing E>
Check euclid_lattice_primes_check(const E& ring, const typename E::value_type& n) {
    auto c = Check::make("bounded lattice primes", "Spec of the bounded sublattice matches the primes dividing the bound");
    auto S = serre_lattice(ring, n);
    auto top = EuclidThomason<E>::v(ring, n);
    auto lprimes = prime_elements(S.lattice);
    auto points = top.closed_points();
    if (lprimes.size() != points.size())
        c.fail_with(std::to_string(lprimes.size()) + " lattice primes vs " + std::to_string(points.size()) + " ring primes");
    for (auto& P : points) {
        auto expected = ring.divmod(top.radical(), P.generator).first;
        auto SP = EuclidThomason<E>::from_radical(ring, expected);
        bool found = false;
        for (auto& p : lprimes) found = found || (S.sets[p.element].subset_of(SP) && SP.subset_of(S.sets[p.element]));
        if (!found) c.fail_with("S_" + P.to_string(ring) + " missing");
    }
    return c;
}

}  // namespace spectra
