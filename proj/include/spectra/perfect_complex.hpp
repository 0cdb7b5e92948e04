#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "spectra/torsion.hpp"

namespace spectra {

/// Matrix arithmetic over a finite ring table.
struct FiniteRingOps {
    using value_type = Elem;
    RingPtr ring;

    Elem zero() const { return ring->zero(); }
    Elem one() const { return ring->one(); }
    Elem add(Elem a, Elem b) const { return ring->add(a, b); }
    Elem sub(Elem a, Elem b) const { return ring->sub(a, b); }
    Elem mul(Elem a, Elem b) const { return ring->mul(a, b); }
    Elem neg(Elem a) const { return ring->neg(a); }
    bool is_zero(Elem a) const { return a == ring->zero(); }
    bool equal(Elem a, Elem b) const { return a == b; }
    std::string to_string(Elem a) const { return ring->element_label(a); }
    std::string name() const { return ring->label(); }
};

/// Bounded complex of finite free modules, homologically indexed:
/// d_n : X_n -> X_{n-1} is a rank(n-1) x rank(n) matrix acting on columns.
template <RingOps E>
class PerfectComplex {
public:
    using T = typename E::value_type;

    /// ranks[k] = rank of X_{lo+k}; diffs[k] = d_{lo+k+1}.
    PerfectComplex(E ring, int lo, std::vector<std::size_t> ranks, std::vector<Matrix<T>> diffs)
        : ring_(std::move(ring)), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
        std::size_t expect = ranks_.empty() ? 0 : ranks_.size() - 1;
        if (diffs_.size() != expect)
            fail("complex: expected " + std::to_string(expect) + " differentials, got " + std::to_string(diffs_.size()));
        for (std::size_t k = 0; k < diffs_.size(); ++k)
            if (diffs_[k].rows != ranks_[k] || diffs_[k].cols != ranks_[k + 1])
                fail("complex: differential d_" + std::to_string(lo_ + static_cast<int>(k) + 1) +
                     " has the wrong shape");
        for (std::size_t k = 0; k + 1 < diffs_.size(); ++k) {
            auto dd = mat_mul(ring_, diffs_[k], diffs_[k + 1]);
            for (auto& x : dd.data)
                if (!ring_.is_zero(x))
                    fail("complex: d∘d is nonzero at degree " + std::to_string(lo_ + static_cast<int>(k) + 2));
        }
    }

    static PerfectComplex zero(const E& ring) { return PerfectComplex(ring, 0, {}, {}); }

    const E& ring() const noexcept { return ring_; }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    bool empty() const noexcept { return ranks_.empty(); }
    const std::vector<std::size_t>& ranks() const noexcept { return ranks_; }
    const std::vector<Matrix<T>>& differentials() const noexcept { return diffs_; }

    std::size_t rank(int n) const {
        if (ranks_.empty() || n < lo_ || n > hi()) return 0;
        return ranks_[static_cast<std::size_t>(n - lo_)];
    }
    /// d_n, zero outside the stored range.
    Matrix<T> d(int n) const {
        if (n > lo_ && n <= hi()) return diffs_[static_cast<std::size_t>(n - lo_ - 1)];
        return Matrix<T>(rank(n - 1), rank(n), ring_.zero());
    }

    std::string to_string() const {
        if (ranks_.empty()) return "0";
        std::string s;
        for (int n = hi(); n >= lo_; --n) {
            s += "R^" + std::to_string(rank(n)) + "[" + std::to_string(n) + "]";
            if (n > lo_) {
                s += " -";
                auto m = d(n);
                s += "(";
                for (std::size_t i = 0; i < m.rows; ++i) {
                    if (i) s += ";";
                    for (std::size_t j = 0; j < m.cols; ++j) s += (j ? " " : "") + ring_.to_string(m.at(i, j));
                }
                s += ")-> ";
            }
        }
        return s;
    }

private:
    E ring_;
    int lo_;
    std::vector<std::size_t> ranks_;
    std::vector<Matrix<T>> diffs_;
};

/// Builds a complex over [lo, hi] from a rank function and a differential function.
template <RingOps E, class RankFn, class DiffFn>
PerfectComplex<E> build_complex(const E& ring, int lo, int hi, RankFn rank, DiffFn diff) {
    using T = typename E::value_type;
    if (hi < lo) return PerfectComplex<E>::zero(ring);
    std::vector<std::size_t> ranks;
    std::vector<Matrix<T>> diffs;
    for (int n = lo; n <= hi; ++n) ranks.push_back(rank(n));
    for (int n = lo + 1; n <= hi; ++n) diffs.push_back(diff(n));
    return PerfectComplex<E>(ring, lo, std::move(ranks), std::move(diffs));
}

/// Drops zero ranks at both ends; the zero complex becomes empty.
template <RingOps E>
PerfectComplex<E> trim(const PerfectComplex<E>& X) {
    if (X.empty()) return X;
    int lo = X.lo(), hi = X.hi();
    while (lo <= hi && X.rank(lo) == 0) ++lo;
    while (hi >= lo && X.rank(hi) == 0) --hi;
    if (hi < lo) return PerfectComplex<E>::zero(X.ring());
    return build_complex(X.ring(), lo, hi, [&](int n) { return X.rank(n); }, [&](int n) { return X.d(n); });
}

/// X[k]_n = X_{n-k} with differential (-1)^k d.
template <RingOps E>
PerfectComplex<E> shift(const PerfectComplex<E>& X, int k) {
    if (X.empty()) return X;
    const auto& R = X.ring();
    return build_complex(
        R, X.lo() + k, X.hi() + k, [&](int n) { return X.rank(n - k); },
        [&](int n) {
            auto m = X.d(n - k);
            if (k % 2)
                for (auto& x : m.data) x = R.neg(x);
            return m;
        });
}

namespace detail {

template <RingOps E>
Matrix<typename E::value_type> block_matrix(const E& ring, const Matrix<typename E::value_type>& a,
                                            const Matrix<typename E::value_type>& b,
                                            const Matrix<typename E::value_type>& c,
                                            const Matrix<typename E::value_type>& d) {
    // [[a, b], [c, d]]
    Matrix<typename E::value_type> m(a.rows + c.rows, a.cols + b.cols, ring.zero());
    auto put = [&](const Matrix<typename E::value_type>& x, std::size_t r0, std::size_t c0) {
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t j = 0; j < x.cols; ++j) m.at(r0 + i, c0 + j) = x.at(i, j);
    };
    put(a, 0, 0);
    put(b, 0, a.cols);
    put(c, a.rows, 0);
    put(d, a.rows, a.cols);
    return m;
}

inline int min_lo(int a_lo, bool a_empty, int b_lo, bool b_empty) {
    if (a_empty) return b_lo;
    if (b_empty) return a_lo;
    return std::min(a_lo, b_lo);
}

}  // namespace detail

template <RingOps E>
PerfectComplex<E> direct_sum(const PerfectComplex<E>& X, const PerfectComplex<E>& Y) {
    if (X.empty()) return Y;
    if (Y.empty()) return X;
    using T = typename E::value_type;
    const auto& R = X.ring();
    int lo = std::min(X.lo(), Y.lo()), hi = std::max(X.hi(), Y.hi());
    return build_complex(
        R, lo, hi, [&](int n) { return X.rank(n) + Y.rank(n); },
        [&](int n) {
            return detail::block_matrix(R, X.d(n), Matrix<T>(X.rank(n - 1), Y.rank(n), R.zero()),
                                        Matrix<T>(Y.rank(n - 1), X.rank(n), R.zero()), Y.d(n));
        });
}

/// Chain map f : X -> Y; component(n) is rank_Y(n) x rank_X(n).
template <RingOps E>
struct ChainMap {
    PerfectComplex<E> source, target;
    std::map<int, Matrix<typename E::value_type>> components;

    Matrix<typename E::value_type> component(int n) const {
        auto it = components.find(n);
        if (it != components.end()) return it->second;
        return Matrix<typename E::value_type>(target.rank(n), source.rank(n), source.ring().zero());
    }

    /// d_Y f_n = f_{n-1} d_X at every degree.
    bool is_chain_map() const {
        const auto& R = source.ring();
        int lo = std::min(source.lo(), target.lo()), hi = std::max(source.hi(), target.hi());
        for (int n = lo; n <= hi + 1; ++n) {
            auto l = mat_mul(R, target.d(n), component(n));
            auto r = mat_mul(R, component(n - 1), source.d(n));
            for (std::size_t i = 0; i < l.data.size(); ++i)
                if (!R.is_zero(R.add(l.data[i], R.neg(r.data[i])))) return false;
        }
        return true;
    }
};

/// cone(f)_n = X_{n-1} ⊕ Y_n, d(x, y) = (-d x, f x + d y).
template <RingOps E>
PerfectComplex<E> cone(const ChainMap<E>& f) {
    if (!f.is_chain_map()) fail("cone: not a chain map");
    const auto& X = f.source;
    const auto& Y = f.target;
    const auto& R = X.ring();
    using T = typename E::value_type;
    int lo = detail::min_lo(X.lo() + 1, X.empty(), Y.lo(), Y.empty());
    int hi = std::max(X.empty() ? lo : X.hi() + 1, Y.empty() ? lo : Y.hi());
    if (X.empty() && Y.empty()) return PerfectComplex<E>::zero(R);
    return build_complex(
        R, lo, hi, [&](int n) { return X.rank(n - 1) + Y.rank(n); },
        [&](int n) {
            auto dx = X.d(n - 1);
            for (auto& x : dx.data) x = R.neg(x);
            return detail::block_matrix(R, dx, Matrix<T>(X.rank(n - 2), Y.rank(n), R.zero()), f.component(n - 1),
                                        Y.d(n));
        });
}

/// (X ⊗ Y)_n = ⊕_{i+j=n} X_i ⊗ Y_j with d(x⊗y) = dx⊗y + (-1)^i x⊗dy.
template <RingOps E>
PerfectComplex<E> tensor(const PerfectComplex<E>& X, const PerfectComplex<E>& Y) {
    const auto& R = X.ring();
    using T = typename E::value_type;
    if (X.empty() || Y.empty()) return PerfectComplex<E>::zero(R);
    int lo = X.lo() + Y.lo(), hi = X.hi() + Y.hi();
    // offset of block (i, n-i) inside degree n
    auto offset = [&](int n, int i) {
        std::size_t o = 0;
        for (int a = X.lo(); a < i; ++a) o += X.rank(a) * Y.rank(n - a);
        return o;
    };
    auto rank = [&](int n) { return offset(n, X.hi() + 1); };
    return build_complex(R, lo, hi, rank, [&](int n) {
        Matrix<T> m(rank(n - 1), rank(n), R.zero());
        for (int i = X.lo(); i <= X.hi(); ++i) {
            int j = n - i;
            std::size_t rx = X.rank(i), ry = Y.rank(j);
            if (rx == 0 || ry == 0) continue;
            std::size_t src = offset(n, i);
            auto dx = X.d(i);
            auto dy = Y.d(j);
            bool odd = ((i % 2) + 2) % 2 == 1;
            for (std::size_t a = 0; a < rx; ++a)
                for (std::size_t b = 0; b < ry; ++b) {
                    std::size_t col = src + a * ry + b;
                    if (i - 1 >= X.lo()) {
                        std::size_t dst = offset(n - 1, i - 1);
                        for (std::size_t a2 = 0; a2 < X.rank(i - 1); ++a2) {
                            auto& cell = m.at(dst + a2 * ry + b, col);
                            cell = R.add(cell, dx.at(a2, a));
                        }
                    }
                    if (j - 1 >= Y.lo()) {
                        std::size_t dst = offset(n - 1, i);
                        std::size_t ry2 = Y.rank(j - 1);
                        for (std::size_t b2 = 0; b2 < ry2; ++b2) {
                            auto v = dy.at(b2, b);
                            auto& cell = m.at(dst + a * ry2 + b2, col);
                            cell = R.add(cell, odd ? R.neg(v) : v);
                        }
                    }
                }
        }
        return m;
    });
}

/// R --a--> R in degrees 1, 0.
template <RingOps E>
PerfectComplex<E> elementary_complex(const E& ring, const typename E::value_type& a, int lo = 0) {
    return PerfectComplex<E>(ring, lo, {1, 1}, {Matrix<typename E::value_type>(1, 1, a)});
}

/// Koszul complex K(a_1, ..., a_k) = ⊗ (R --a_i--> R); K() = R in degree 0.
template <RingOps E>
PerfectComplex<E> koszul(const E& ring, const std::vector<typename E::value_type>& elements) {
    PerfectComplex<E> K(ring, 0, {1}, {});
    for (auto& a : elements) K = tensor(K, elementary_complex(ring, a));
    return K;
}

// ---------------------------------------------------------------------------
// Homology

/// H_n = ker d_n / im d_{n+1} by enumeration of R^{rank n}.
inline FinModule homology(const PerfectComplex<FiniteRingOps>& X, int n, const Bounds& bounds = {}) {
    const auto& R = X.ring().ring;
    FreeCodec codec(R, X.rank(n), bounds);
    auto dn = X.d(n);
    ElementSet ker(codec.total());
    for (std::size_t c = 0; c < codec.total(); ++c) {
        auto v = codec.decode(c);
        bool zero = true;
        for (std::size_t i = 0; i < dn.rows && zero; ++i) {
            Elem s = R->zero();
            for (std::size_t j = 0; j < dn.cols; ++j) s = R->add(s, R->mul(dn.at(i, j), v[j]));
            zero = s == R->zero();
        }
        if (zero) ker.insert(c);
    }
    auto up = X.d(n + 1);
    std::vector<std::vector<Elem>> columns(up.cols, std::vector<Elem>(up.rows));
    for (std::size_t i = 0; i < up.rows; ++i)
        for (std::size_t j = 0; j < up.cols; ++j) columns[j][i] = up.at(i, j);
    auto im = codec.span(columns);
    return free_subquotient(codec, ker, im, bounds, "H_" + std::to_string(n));
}

/// H_n from two Smith forms: free rank r_n - rk d_n - rk d_{n+1}, torsion
/// from the non-unit invariant factors of d_{n+1}.
template <EuclideanRing E>
ModuleInvariants<typename E::value_type> homology(const PerfectComplex<E>& X, int n) {
    const auto& R = X.ring();
    auto low = smith_normal_form(R, X.d(n));
    auto high = smith_normal_form(R, X.d(n + 1));
    ModuleInvariants<typename E::value_type> out;
    out.free_rank = X.rank(n) - low.diagonal.size() - high.diagonal.size();
    for (auto& d : high.diagonal)
        if (!R.is_unit(d)) out.torsion.push_back(d);
    return out;
}

inline FiniteThomason supp_complex(const PerfectComplex<FiniteRingOps>& X, const Bounds& bounds = {}) {
    auto Y = FiniteThomason::empty(X.ring().ring);
    if (X.empty()) return Y;
    for (int n = X.lo(); n <= X.hi(); ++n) Y = Y.union_with(support_set(homology(X, n, bounds)));
    return Y;
}

template <EuclideanRing E>
EuclidThomason<E> supp_complex(const PerfectComplex<E>& X) {
    auto Y = EuclidThomason<E>::empty(X.ring());
    if (X.empty()) return Y;
    for (int n = X.lo(); n <= X.hi(); ++n) Y = Y.union_with(supp_invariants(X.ring(), homology(X, n)));
    return Y;
}

/// X ⊗ R_P: every differential pushed into the local factor e_P·R.
inline PerfectComplex<FiniteRingOps> localize_complex(const PerfectComplex<FiniteRingOps>& X, const LocalFactor& f) {
    FiniteRingOps local{f.factor_ring};
    if (X.empty()) return PerfectComplex<FiniteRingOps>::zero(local);
    return build_complex(local, X.lo(), X.hi(), [&](int n) { return X.rank(n); }, [&](int n) {
        auto m = X.d(n);
        for (auto& x : m.data) x = f.projection[x];
        return m;
    });
}

/// {P : X ⊗ R_P has nonzero homology}.
inline FiniteThomason supp_by_localization(const PerfectComplex<FiniteRingOps>& X, const Bounds& bounds = {}) {
    const auto& R = X.ring().ring;
    auto factors = local_decomposition(R);
    ElementSet pts(factors.size());
    if (X.empty()) return {R, pts};
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto L = localize_complex(X, factors[i]);
        for (int n = L.lo(); n <= L.hi(); ++n)
            if (!homology(L, n, bounds).is_zero()) {
                pts.insert(i);
                break;
            }
    }
    return {R, pts};
}

// ---------------------------------------------------------------------------
// Thick subcategories, canonically their Thomason set

template <class Set>
struct ThickSubcategory {
    Set open;
};

inline bool thick_membership(const PerfectComplex<FiniteRingOps>& X, const ThickSubcategory<FiniteThomason>& T,
                             const Bounds& bounds = {}) {
    return supp_complex(X, bounds).subset_of(T.open);
}

template <EuclideanRing E>
bool thick_membership(const PerfectComplex<E>& X, const ThickSubcategory<EuclidThomason<E>>& T) {
    return supp_complex(X).subset_of(T.open);
}

/// μ: union of supports of the generators.
inline FiniteThomason thomason_mu(const RingPtr& R, const std::vector<PerfectComplex<FiniteRingOps>>& gens,
                                  const Bounds& bounds = {}) {
    auto Y = FiniteThomason::empty(R);
    for (auto& X : gens) Y = Y.union_with(supp_complex(X, bounds));
    return Y;
}

template <EuclideanRing E>
EuclidThomason<E> thomason_mu(const E& ring, const std::vector<PerfectComplex<E>>& gens) {
    auto Y = EuclidThomason<E>::empty(ring);
    for (auto& X : gens) Y = Y.union_with(supp_complex(X));
    return Y;
}

/// ν: the thick subcategory {X : supp X ⊆ Y}.
template <class Set>
ThickSubcategory<Set> thomason_nu(const Set& Y) {
    return {Y};
}

/// σ: torsion class -> thick subcategory {X : H_n(X) ∈ S for all n}.
template <class Set>
ThickSubcategory<Set> qqq_sigma(const TorsionClass<Set>& S) {
    return {S.open};
}

/// Homology-wise membership in σ(S), computed without passing through supports of X.
inline bool sigma_membership(const PerfectComplex<FiniteRingOps>& X, const TorsionClass<FiniteThomason>& S,
                             const Bounds& bounds = {}) {
    if (X.empty()) return true;
    for (int n = X.lo(); n <= X.hi(); ++n)
        if (!class_membership(homology(X, n, bounds), S)) return false;
    return true;
}

template <EuclideanRing E>
bool sigma_membership(const PerfectComplex<E>& X, const TorsionClass<EuclidThomason<E>>& S) {
    if (X.empty()) return true;
    for (int n = X.lo(); n <= X.hi(); ++n)
        if (!supp_invariants(X.ring(), homology(X, n)).subset_of(S.open)) return false;
    return true;
}

/// ρ: thick subcategory given by generators -> smallest torsion class
/// containing all their homology.
inline TorsionClass<FiniteThomason> qqq_rho(const RingPtr& R, const std::vector<PerfectComplex<FiniteRingOps>>& gens,
                                            const Bounds& bounds = {}) {
    std::vector<FinModule> hs;
    for (auto& X : gens)
        if (!X.empty())
            for (int n = X.lo(); n <= X.hi(); ++n) hs.push_back(homology(X, n, bounds));
    return smallest_torsion_class(R, hs);
}

template <EuclideanRing E>
TorsionClass<EuclidThomason<E>> qqq_rho(const E& ring, const std::vector<PerfectComplex<E>>& gens) {
    auto Y = EuclidThomason<E>::empty(ring);
    for (auto& X : gens)
        if (!X.empty())
            for (int n = X.lo(); n <= X.hi(); ++n) Y = Y.union_with(supp_invariants(ring, homology(X, n)));
    return {Y};
}

/// Generators of the thick subcategory of a Thomason set: the Koszul complex
/// of each point's generator (finite backend: of a minimal generating set of
/// each prime), a single Koszul complex per prime factor over a PID.
inline std::vector<PerfectComplex<FiniteRingOps>> thick_generators(const FiniteThomason& Y) {
    std::vector<PerfectComplex<FiniteRingOps>> out;
    auto primes = spec(Y.ring());
    FiniteRingOps ops{Y.ring()};
    for (auto i : Y.points().members()) out.push_back(koszul(ops, primes[i].ideal().minimal_generators()));
    return out;
}

template <EuclideanRing E>
std::vector<PerfectComplex<E>> thick_generators(const EuclidThomason<E>& Y) {
    const auto& R = Y.ring();
    if (Y.is_all()) return {PerfectComplex<E>(R, 0, {1}, {})};
    std::vector<PerfectComplex<E>> out;
    for (auto& p : Y.closed_points()) out.push_back(koszul(R, {p.generator}));
    return out;
}

/// μ∘ν = id and σ∘ρ = id on every subset of spec, and ν-membership
/// (by support) against σ-membership (by homology) on the given complexes.
inline std::vector<Check> thick_roundtrip_check(const RingPtr& R, const std::vector<PerfectComplex<FiniteRingOps>>& complexes,
                                                const Bounds& bounds = {}) {
    auto mn = Check::make("μ∘ν = id", "union of supports of generators of ν(Y) is Y");
    auto sr = Check::make("σ∘ρ = id", "σ of the torsion class of ν(Y) is ν(Y)");
    auto mem = Check::make("ν = σ membership", "supp X ⊆ Y iff every H_n(X) lies in S_Y");
    for (auto& Y : FiniteThomason::all_subsets(R)) {
        auto gens = thick_generators(Y);
        if (!(thomason_mu(R, gens, bounds) == Y)) mn.fail_with(Y.to_string());
        if (!(qqq_sigma(qqq_rho(R, gens, bounds)).open == Y)) sr.fail_with(Y.to_string());
        TorsionClass<FiniteThomason> S{Y};
        for (auto& X : complexes)
            if (thick_membership(X, thomason_nu(Y), bounds) != sigma_membership(X, S, bounds))
                mem.fail_with(Y.to_string() + " " + X.to_string());
    }
    return {mn, sr, mem};
}

// ---------------------------------------------------------------------------
// Random complexes with a planted support

/// Small random multiplier for basis changes.
template <class Gen>
BigInt random_small(const IntegerRing&, Gen& gen) {
    return static_cast<long>(gen() % 5) - 2;
}

template <class Gen>
Poly random_small(const PolyGFRing& ring, Gen& gen) {
    Poly p;
    p.c = {static_cast<Elem>(gen() % ring.q()), static_cast<Elem>(gen() % ring.q())};
    while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
    return p;
}

/// One elementary block R --a--> R sitting in degrees (degree + 1, degree).
/// a = 0 gives two free summands, a unit gives a contractible block.
template <class T>
struct ElementaryBlock {
    T a;
    int degree = 0;
};

template <EuclideanRing E>
struct PlantedComplex {
    PerfectComplex<E> complex;
    EuclidThomason<E> support;
};

/// ⊕ blocks, then a random unimodular change of basis in every degree:
/// d'_n = U_{n-1} d_n U_n^{-1}. Homology, hence support, is unchanged.
template <EuclideanRing E, class Gen>
PlantedComplex<E> planted_complex(const E& ring, const std::vector<ElementaryBlock<typename E::value_type>>& blocks,
                                  Gen& gen, int mixing = 6) {
    using T = typename E::value_type;
    auto X = PerfectComplex<E>::zero(ring);
    auto support = EuclidThomason<E>::empty(ring);
    for (auto& b : blocks) {
        X = direct_sum(X, elementary_complex(ring, b.a, b.degree));
        support = support.union_with(EuclidThomason<E>::v(ring, b.a));
    }
    if (X.empty()) return {X, support};
    std::map<int, Matrix<T>> U, Uinv;
    for (int n = X.lo(); n <= X.hi(); ++n) {
        std::size_t r = X.rank(n);
        Matrix<T> u = identity_matrix(ring, r), ui = identity_matrix(ring, r);
        for (int step = 0; step < mixing && r > 1; ++step) {
            std::size_t i = gen() % r, j = gen() % r;
            if (i == j) continue;
            T c = random_small(ring, gen);
            for (std::size_t k = 0; k < r; ++k) u.at(i, k) = ring.add(u.at(i, k), ring.mul(c, u.at(j, k)));
            for (std::size_t k = 0; k < r; ++k) ui.at(k, j) = ring.sub(ui.at(k, j), ring.mul(ui.at(k, i), c));
        }
        U.emplace(n, std::move(u));
        Uinv.emplace(n, std::move(ui));
    }
    auto Y = build_complex(ring, X.lo(), X.hi(), [&](int n) { return X.rank(n); },
                           [&](int n) { return mat_mul(ring, mat_mul(ring, U.at(n - 1), X.d(n)), Uinv.at(n)); });
    return {Y, support};
}

/// The roundtrip for one Thomason set over a PID, with each complex's
/// expected support supplied independently.
template <EuclideanRing E>
std::vector<Check> thick_roundtrip_check(const EuclidThomason<E>& Y, const std::vector<PlantedComplex<E>>& corpus) {
    const auto& ring = Y.ring();
    auto mn = Check::make("μ∘ν = id", "union of supports of generators of ν(Y) is Y");
    auto sr = Check::make("σ∘ρ = id", "σ of the torsion class of ν(Y) is ν(Y)");
    auto mem = Check::make("ν(Y) membership", "X ∈ ν(Y) iff its planted support lies in Y");
    auto hom = Check::make("ν = σ membership", "supp X ⊆ Y iff every H_n(X) lies in S_Y");
    auto gens = thick_generators(Y);
    if (!(thomason_mu(ring, gens) == Y)) mn.fail_with(Y.to_string());
    if (!(qqq_sigma(qqq_rho(ring, gens)).open == Y)) sr.fail_with(Y.to_string());
    auto nu = thomason_nu(Y);
    TorsionClass<EuclidThomason<E>> S{Y};
    for (auto& P : corpus) {
        bool in = thick_membership(P.complex, nu);
        if (in != P.support.subset_of(Y)) mem.fail_with(Y.to_string() + " " + P.complex.to_string());
        if (in != sigma_membership(P.complex, S)) hom.fail_with(Y.to_string() + " " + P.complex.to_string());
    }
    return {mn, sr, mem, hom};
}

/// Complexes over Z for the Thomason set V(r): Koszul complexes on every
/// divisor of r, then `random_count` planted complexes whose blocks mix
/// primes of r with primes outside it. Seeded by (seed, r).
inline std::vector<PlantedComplex<IntegerRing>> integer_thick_corpus(const IntegerRing& Z, const BigInt& r,
                                                                     std::size_t random_count, std::uint64_t seed) {
    std::vector<PlantedComplex<IntegerRing>> out;
    std::vector<BigInt> ps;
    for (auto& [p, e] : Z.factorize(r)) ps.push_back(p);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ps.size()); ++mask) {
        BigInt d = 1;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask >> i & 1) d *= ps[i];
        out.push_back({koszul(Z, {d}), EuclidThomason<IntegerRing>::v(Z, d)});
    }
    static const long others[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    std::mt19937_64 gen(seed ^ (r.convert_to<std::uint64_t>() * 0x9e3779b97f4a7c15ull));
    for (std::size_t n = 0; n < random_count; ++n) {
        std::vector<ElementaryBlock<BigInt>> blocks;
        std::size_t count = 1 + gen() % 3;
        for (std::size_t b = 0; b < count; ++b) {
            BigInt a = 1;
            switch (gen() % 8) {
                case 0: a = 0; break;
                case 1: break;
                default:
                    for (std::size_t f = 1 + gen() % 2; f > 0; --f) {
                        bool inside = !ps.empty() && gen() % 3 != 0;
                        a *= inside ? ps[gen() % ps.size()] : BigInt(others[gen() % std::size(others)]);
                    }
            }
            if (gen() % 2) a = -a;
            blocks.push_back({a, static_cast<int>(gen() % 3)});
        }
        out.push_back(planted_complex(Z, blocks, gen));
    }
    return out;
}

/// Reduction of an integer complex modulo m.
inline PerfectComplex<FiniteRingOps> reduce_mod(const PerfectComplex<IntegerRing>& X, const RingPtr& Zm) {
    FiniteRingOps ops{Zm};
    if (X.empty()) return PerfectComplex<FiniteRingOps>::zero(ops);
    BigInt m = Zm->size();
    return build_complex(ops, X.lo(), X.hi(), [&](int n) { return X.rank(n); }, [&](int n) {
        auto d = X.d(n);
        Matrix<Elem> out(d.rows, d.cols, 0);
        for (std::size_t i = 0; i < d.data.size(); ++i) {
            BigInt r = d.data[i] % m;
            if (r < 0) r += m;
            out.data[i] = r.convert_to<Elem>();
        }
        return out;
    });
}

}  // namespace spectra
