#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "spectra/finite_ring.hpp"

namespace spectra {

using BigInt = boost::multiprecision::cpp_int;

template <class T>
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<T> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const T& fill) : rows(r), cols(c), data(r * c, fill) {}

    T& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const T& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    bool operator==(const Matrix&) const = default;
};

template <class T>
using Factorization = std::vector<std::pair<T, unsigned>>;

// ---------------------------------------------------------------------------
// Z

namespace detail {

inline BigInt pollard_brent(const BigInt& n, std::uint64_t seed) {
    if (n % 2 == 0) return 2;
    std::mt19937_64 gen(seed);
    while (true) {
        BigInt y = gen() % n, c = gen() % (n - 1) + 1, m = 128;
        BigInt g = 1, r = 1, q = 1, x, ys;
        auto f = [&](const BigInt& v) { return (v * v + c) % n; };
        while (g == 1) {
            x = y;
            for (BigInt i = 0; i < r; ++i) y = f(y);
            BigInt k = 0;
            while (k < r && g == 1) {
                ys = y;
                BigInt lim = std::min<BigInt>(m, BigInt(r - k));
                for (BigInt i = 0; i < lim; ++i) {
                    y = f(y);
                    q = (q * abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(BigInt n, std::map<BigInt, unsigned>& out) {
    if (n == 1) return;
    static const std::mt19937 mr_seed(0xc0ffee);
    std::mt19937 gen = mr_seed;
    if (n < 1000000 || boost::multiprecision::miller_rabin_test(n, 30, gen)) {
        if (n < 1000000) {
            std::uint64_t v = n.convert_to<std::uint64_t>();
            for (std::uint64_t d = 2; d * d <= v; ++d)
                while (v % d == 0) {
                    ++out[d];
                    v /= d;
                }
            if (v > 1) ++out[v];
            return;
        }
        ++out[n];
        return;
    }
    BigInt d = pollard_brent(n, 0x9e3779b97f4a7c15ull);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// The integers as a Euclidean domain. Normal forms are non-negative.
class IntegerRing {
public:
    using value_type = BigInt;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    bool is_zero(const value_type& a) const { return a == 0; }
    bool is_unit(const value_type& a) const { return a == 1 || a == -1; }

    /// Truncating division; |r| < |b|.
    std::pair<value_type, value_type> divmod(const value_type& a, const value_type& b) const {
        return {a / b, a % b};
    }
    bool divides(const value_type& a, const value_type& b) const {
        if (a == 0) return b == 0;
        return b % a == 0;
    }
    bool norm_less(const value_type& a, const value_type& b) const { return abs(a) < abs(b); }
    /// Unit u with u·a in normal form.
    value_type normalizing_unit(const value_type& a) const { return a < 0 ? -1 : 1; }
    value_type normalize(const value_type& a) const { return abs(a); }
    value_type gcd(const value_type& a, const value_type& b) const {
        return boost::multiprecision::gcd(abs(a), abs(b));
    }
    value_type lcm(const value_type& a, const value_type& b) const {
        if (a == 0 || b == 0) return 0;
        return abs(a) / gcd(a, b) * abs(b);
    }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    bool less(const value_type& a, const value_type& b) const { return a < b; }

    Factorization<value_type> factorize(const value_type& a) const {
        if (a == 0) fail("factorize: zero has no factorization");
        std::map<BigInt, unsigned> m;
        BigInt n = abs(a);
        for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u})
            while (n % p == 0) {
                ++m[p];
                n /= p;
            }
        detail::factor_into(n, m);
        return {m.begin(), m.end()};
    }
    bool is_irreducible(const value_type& a) const {
        auto f = factorize(a);
        return f.size() == 1 && f[0].second == 1;
    }
    value_type radical(const value_type& a) const {
        if (a == 0) return 0;
        value_type r = 1;
        for (auto& [p, e] : factorize(a)) r *= p;
        return r;
    }
    std::string to_string(const value_type& a) const { return a.str(); }
    std::string name() const { return "Z"; }
};

// ---------------------------------------------------------------------------
// GF(q)[t]

/// Polynomial over a finite field, coefficients as field element indices,
/// lowest degree first, no trailing zeros.
struct Poly {
    std::vector<Elem> c;
    bool operator==(const Poly&) const = default;
    auto operator<=>(const Poly& o) const {
        if (c.size() != o.c.size()) return c.size() <=> o.c.size();
        return std::lexicographical_compare_three_way(c.rbegin(), c.rend(), o.c.rbegin(), o.c.rend());
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

class PolyGFRing {
public:
    using value_type = Poly;

    explicit PolyGFRing(std::uint32_t q) : q_(q) {
        std::uint32_t p = 0, k = 0;
        for (std::uint32_t d = 2; d <= q; ++d)
            if (q % d == 0) {
                p = d;
                break;
            }
        if (p == 0) fail("GF(q)[t]: q must be a prime power");
        std::uint32_t v = q;
        while (v % p == 0) {
            v /= p;
            ++k;
        }
        if (v != 1) fail("GF(q)[t]: q must be a prime power, got " + std::to_string(q));
        field_ = make_ring(RingDescription::galois_field(p, k));
        inv_.assign(q, 0);
        for (Elem a = 1; a < q; ++a) inv_[a] = *field_->inverse(a);
    }

    const RingPtr& field() const { return field_; }
    std::uint32_t q() const { return q_; }

    value_type zero() const { return {}; }
    value_type one() const { return constant(field_->one()); }
    value_type constant(Elem a) const { return a == 0 ? Poly{} : Poly{{a}}; }
    value_type t() const { return Poly{{0, field_->one()}}; }

    value_type add(const value_type& a, const value_type& b) const {
        Poly r;
        r.c.assign(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < r.c.size(); ++i)
            r.c[i] = field_->add(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
        trim(r);
        return r;
    }
    value_type neg(const value_type& a) const {
        Poly r = a;
        for (auto& x : r.c) x = field_->neg(x);
        return r;
    }
    value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }
    value_type mul(const value_type& a, const value_type& b) const {
        if (a.c.empty() || b.c.empty()) return {};
        Poly r;
        r.c.assign(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = field_->add(r.c[i + j], field_->mul(a.c[i], b.c[j]));
        trim(r);
        return r;
    }
    value_type scale(Elem s, const value_type& a) const {
        Poly r = a;
        for (auto& x : r.c) x = field_->mul(s, x);
        trim(r);
        return r;
    }
    bool is_zero(const value_type& a) const { return a.c.empty(); }
    bool is_unit(const value_type& a) const { return a.c.size() == 1; }

    std::pair<value_type, value_type> divmod(const value_type& a, const value_type& b) const {
        if (b.c.empty()) fail("polynomial division by zero");
        Poly r = a, quo;
        Elem lead_inv = inv_[b.c.back()];
        if (r.c.size() >= b.c.size()) quo.c.assign(r.c.size() - b.c.size() + 1, 0);
        while (r.c.size() >= b.c.size() && !r.c.empty()) {
            std::size_t shift = r.c.size() - b.c.size();
            Elem coef = field_->mul(r.c.back(), lead_inv);
            quo.c[shift] = coef;
            for (std::size_t i = 0; i < b.c.size(); ++i)
                r.c[shift + i] = field_->sub(r.c[shift + i], field_->mul(coef, b.c[i]));
            trim(r);
        }
        trim(quo);
        return {quo, r};
    }
    bool divides(const value_type& a, const value_type& b) const {
        if (a.c.empty()) return b.c.empty();
        return divmod(b, a).second.c.empty();
    }
    bool norm_less(const value_type& a, const value_type& b) const { return a.degree() < b.degree(); }
    value_type normalizing_unit(const value_type& a) const {
        return a.c.empty() ? one() : constant(inv_[a.c.back()]);
    }
    value_type normalize(const value_type& a) const { return a.c.empty() ? a : scale(inv_[a.c.back()], a); }
    value_type gcd(value_type a, value_type b) const {
        while (!b.c.empty()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return normalize(a);
    }
    value_type lcm(const value_type& a, const value_type& b) const {
        if (a.c.empty() || b.c.empty()) return {};
        return normalize(divmod(mul(a, b), gcd(a, b)).first);
    }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    bool less(const value_type& a, const value_type& b) const { return a < b; }

    /// Monic irreducible factors by trial division with monic polynomials of
    /// increasing degree.
    Factorization<value_type> factorize(const value_type& a) const {
        if (a.c.empty()) fail("factorize: zero has no factorization");
        Poly f = normalize(a);
        Factorization<value_type> out;
        for (int d = 1; 2 * d <= f.degree(); ++d) {
            std::uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= q_;
            for (std::uint64_t code = 0; code < count && 2 * d <= f.degree(); ++code) {
                Poly g;
                g.c.assign(static_cast<std::size_t>(d) + 1, 0);
                std::uint64_t v = code;
                for (int i = 0; i < d; ++i) {
                    g.c[static_cast<std::size_t>(i)] = static_cast<Elem>(v % q_);
                    v /= q_;
                }
                g.c[static_cast<std::size_t>(d)] = field_->one();
                unsigned e = 0;
                while (true) {
                    auto [quo, rem] = divmod(f, g);
                    if (!rem.c.empty()) break;
                    f = std::move(quo);
                    ++e;
                }
                if (e) out.emplace_back(g, e);
            }
        }
        if (f.degree() >= 1) {
            bool merged = false;
            for (auto& [g, e] : out)
                if (g == f) {
                    ++e;
                    merged = true;
                }
            if (!merged) out.emplace_back(f, 1);
        }
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }
    bool is_irreducible(const value_type& a) const {
        if (a.degree() < 1) return false;
        auto f = factorize(a);
        return f.size() == 1 && f[0].second == 1;
    }
    value_type radical(const value_type& a) const {
        if (a.c.empty()) return {};
        Poly r = one();
        for (auto& [g, e] : factorize(a)) r = mul(r, g);
        return r;
    }

    std::string to_string(const value_type& a) const {
        if (a.c.empty()) return "0";
        std::string s;
        for (std::size_t i = a.c.size(); i-- > 0;) {
            if (a.c[i] == 0) continue;
            if (!s.empty()) s += "+";
            bool show_coef = i == 0 || a.c[i] != field_->one();
            std::string coef = field_->element_label(a.c[i]);
            if (show_coef) s += coef.find('+') != std::string::npos ? "(" + coef + ")" : coef;
            if (i >= 1) s += "t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }
    std::string name() const { return "GF(" + std::to_string(q_) + ")[t]"; }

private:
    static void trim(Poly& p) {
        while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
    }

    std::uint32_t q_;
    RingPtr field_;
    std::vector<Elem> inv_;
};

template <class E>
concept EuclideanRing = requires(const E& ring, const typename E::value_type& a) {
    { ring.divmod(a, a) };
    { ring.normalize(a) } -> std::same_as<typename E::value_type>;
    { ring.factorize(a) };
    { ring.gcd(a, a) };
};

// ---------------------------------------------------------------------------
// Smith normal form

template <class T>
struct SmithForm {
    std::vector<T> diagonal;  ///< nonzero invariant factors, d_i | d_{i+1}
    Matrix<T> left, right;    ///< left · A · right = diag(diagonal) padded with zeros
};

/// What matrix arithmetic needs from a commutative ring.
template <class E>
concept RingOps = requires(const E& ring, const typename E::value_type& a) {
    { ring.zero() } -> std::same_as<typename E::value_type>;
    { ring.one() } -> std::same_as<typename E::value_type>;
    { ring.add(a, a) } -> std::same_as<typename E::value_type>;
    { ring.mul(a, a) } -> std::same_as<typename E::value_type>;
    { ring.neg(a) } -> std::same_as<typename E::value_type>;
    { ring.is_zero(a) } -> std::same_as<bool>;
};

template <RingOps E>
Matrix<typename E::value_type> identity_matrix(const E& ring, std::size_t n) {
    Matrix<typename E::value_type> m(n, n, ring.zero());
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
}

template <RingOps E>
Matrix<typename E::value_type> mat_mul(const E& ring, const Matrix<typename E::value_type>& a,
                                       const Matrix<typename E::value_type>& b) {
    if (a.cols != b.rows) fail("matrix product: dimension mismatch");
    Matrix<typename E::value_type> c(a.rows, b.cols, ring.zero());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (ring.is_zero(a.at(i, k))) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c.at(i, j) = ring.add(c.at(i, j), ring.mul(a.at(i, k), b.at(k, j)));
        }
    return c;
}

/// Determinant by fraction-free (Bareiss) elimination.
template <EuclideanRing E>
typename E::value_type determinant(const E& ring, Matrix<typename E::value_type> m) {
    if (m.rows != m.cols) fail("determinant of a non-square matrix");
    std::size_t n = m.rows;
    if (n == 0) return ring.one();
    typename E::value_type prev = ring.one();
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (ring.is_zero(m.at(k, k))) {
            std::size_t r = k + 1;
            while (r < n && ring.is_zero(m.at(r, k))) ++r;
            if (r == n) return ring.zero();
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(r, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                auto num = ring.sub(ring.mul(m.at(i, j), m.at(k, k)), ring.mul(m.at(i, k), m.at(k, j)));
                m.at(i, j) = ring.divmod(num, prev).first;
            }
        prev = m.at(k, k);
    }
    auto d = m.at(n - 1, n - 1);
    return negate ? ring.neg(d) : d;
}

/// Smith normal form. The pivot is the entry of smallest Euclidean norm in
/// the remaining block, ties broken row-major.
template <EuclideanRing E>
SmithForm<typename E::value_type> smith_normal_form(const E& ring, const Matrix<typename E::value_type>& a) {
    using T = typename E::value_type;
    std::size_t m = a.rows, n = a.cols;
    Matrix<T> d = a;
    Matrix<T> left = identity_matrix(ring, m), right = identity_matrix(ring, n);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < n; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (std::size_t c = 0; c < m; ++c) std::swap(left.at(i, c), left.at(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < m; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (std::size_t r = 0; r < n; ++r) std::swap(right.at(r, i), right.at(r, j));
    };
    // row_i += f * row_j
    auto add_row = [&](std::size_t i, std::size_t j, const T& f) {
        for (std::size_t c = 0; c < n; ++c) d.at(i, c) = ring.add(d.at(i, c), ring.mul(f, d.at(j, c)));
        for (std::size_t c = 0; c < m; ++c) left.at(i, c) = ring.add(left.at(i, c), ring.mul(f, left.at(j, c)));
    };
    auto add_col = [&](std::size_t i, std::size_t j, const T& f) {
        for (std::size_t r = 0; r < m; ++r) d.at(r, i) = ring.add(d.at(r, i), ring.mul(f, d.at(r, j)));
        for (std::size_t r = 0; r < n; ++r) right.at(r, i) = ring.add(right.at(r, i), ring.mul(f, right.at(r, j)));
    };

    std::vector<T> diagonal;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (ring.is_zero(d.at(i, j))) continue;
                    if (pi == m || ring.norm_less(d.at(i, j), d.at(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == m) return {std::move(diagonal), std::move(left), std::move(right)};
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clear = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (ring.is_zero(d.at(i, t))) continue;
                add_row(i, t, ring.neg(ring.divmod(d.at(i, t), d.at(t, t)).first));
                clear = clear && ring.is_zero(d.at(i, t));
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (ring.is_zero(d.at(t, j))) continue;
                add_col(j, t, ring.neg(ring.divmod(d.at(t, j), d.at(t, t)).first));
                clear = clear && ring.is_zero(d.at(t, j));
            }
            if (!clear) continue;
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j)
                    if (!ring.divides(d.at(t, t), d.at(i, j))) {
                        add_row(t, i, ring.one());
                        fixed = true;
                    }
            if (!fixed) break;
        }
        T u = ring.normalizing_unit(d.at(t, t));
        if (!ring.equal(u, ring.one())) {
            for (std::size_t c = 0; c < n; ++c) d.at(t, c) = ring.mul(u, d.at(t, c));
            for (std::size_t c = 0; c < m; ++c) left.at(t, c) = ring.mul(u, left.at(t, c));
        }
        diagonal.push_back(d.at(t, t));
    }
    return {std::move(diagonal), std::move(left), std::move(right)};
}

/// Checks left·A·right = diag, the divisibility chain, and unimodularity.
template <EuclideanRing E>
bool verify_smith_form(const E& ring, const Matrix<typename E::value_type>& a,
                       const SmithForm<typename E::value_type>& s) {
    auto prod = mat_mul(ring, mat_mul(ring, s.left, a), s.right);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            auto expect = (i == j && i < s.diagonal.size()) ? s.diagonal[i] : ring.zero();
            if (!ring.equal(prod.at(i, j), expect)) return false;
        }
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i)
        if (!ring.divides(s.diagonal[i], s.diagonal[i + 1])) return false;
    for (const auto& x : s.diagonal)
        if (!ring.equal(ring.normalize(x), x)) return false;
    return ring.is_unit(determinant(ring, s.left)) && ring.is_unit(determinant(ring, s.right));
}

/// Finitely presented module: rows = generators, cols = relations.
template <class T>
struct FpPresentation {
    Matrix<T> matrix;
};

template <class T>
struct ModuleInvariants {
    std::size_t free_rank = 0;
    std::vector<T> torsion;  ///< non-unit invariant factors, d_i | d_{i+1}
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
};

template <EuclideanRing E>
ModuleInvariants<typename E::value_type> module_invariants(const E& ring,
                                                           const FpPresentation<typename E::value_type>& p) {
    auto snf = smith_normal_form(ring, p.matrix);
    ModuleInvariants<typename E::value_type> out;
    out.free_rank = p.matrix.rows - snf.diagonal.size();
    for (auto& d : snf.diagonal)
        if (!ring.is_unit(d)) out.torsion.push_back(d);
    return out;
}

}  // namespace spectra
