#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spectra/error.hpp"

namespace spectra {

using Elem = std::uint32_t;

/// How a finite ring was constructed. Kept for readable output; arithmetic
/// always goes through the full tables.
struct RingDescription {
    enum class Kind { zmod, galois_field, product, table };

    Kind kind = Kind::zmod;
    std::uint32_t n = 0;                     // zmod
    std::uint32_t p = 0;                     // galois_field
    std::uint32_t k = 0;                     // galois_field
    std::vector<std::uint32_t> modulus;      // galois_field, coefficient of t^i at index i
    std::vector<RingDescription> factors;    // product
    std::vector<std::vector<std::uint32_t>> add_table, mul_table;  // table
    std::string name;                        // overrides label() when set

    static RingDescription zmod(std::uint32_t n) {
        RingDescription d;
        d.kind = Kind::zmod;
        d.n = n;
        return d;
    }
    static RingDescription galois_field(std::uint32_t p, std::uint32_t k,
                                        std::vector<std::uint32_t> modulus = {}) {
        RingDescription d;
        d.kind = Kind::galois_field;
        d.p = p;
        d.k = k;
        d.modulus = std::move(modulus);
        return d;
    }
    static RingDescription product(std::vector<RingDescription> factors) {
        RingDescription d;
        d.kind = Kind::product;
        d.factors = std::move(factors);
        return d;
    }
    static RingDescription table(std::vector<std::vector<std::uint32_t>> add,
                                 std::vector<std::vector<std::uint32_t>> mul) {
        RingDescription d;
        d.kind = Kind::table;
        d.add_table = std::move(add);
        d.mul_table = std::move(mul);
        return d;
    }

    std::string label() const {
        if (!name.empty()) return name;
        switch (kind) {
            case Kind::zmod: return "Z/" + std::to_string(n);
            case Kind::galois_field: {
                std::uint64_t q = 1;
                for (std::uint32_t i = 0; i < k; ++i) q *= p;
                return "GF(" + std::to_string(q) + ")";
            }
            case Kind::product: {
                std::string s;
                for (std::size_t i = 0; i < factors.size(); ++i) {
                    if (i) s += " x ";
                    s += factors[i].label();
                }
                return s.empty() ? "0" : s;
            }
            case Kind::table: return "table(" + std::to_string(add_table.size()) + ")";
        }
        return "?";
    }
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace detail {

// Polynomials over Z/p as coefficient vectors, lowest degree first.
using PolyZp = std::vector<std::uint32_t>;

inline void trim(PolyZp& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PolyZp poly_mod(PolyZp a, const PolyZp& m, std::uint32_t p) {
    trim(a);
    // m is monic
    while (a.size() >= m.size()) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * static_cast<std::uint64_t>(m[i])) % p);
        trim(a);
    }
    return a;
}

/// True iff the monic polynomial m over Z/p has no monic factor of degree
/// 1..deg(m)/2.
inline bool is_irreducible_zp(const PolyZp& m, std::uint32_t p) {
    std::size_t deg = m.size() - 1;
    if (deg == 0) return false;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            PolyZp f(d + 1);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                f[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            f[d] = 1;
            if (poly_mod(m, f, p).empty()) return false;
        }
    }
    return true;
}

/// Smallest (in base-p code order) monic irreducible of degree k.
inline PolyZp default_modulus(std::uint32_t p, std::uint32_t k) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        PolyZp f(k + 1);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < k; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        f[k] = 1;
        if (is_irreducible_zp(f, p)) return f;
    }
    fail("no irreducible polynomial found");
}

}  // namespace detail

/// A finite commutative unital ring stored as full addition and
/// multiplication tables over the index set 0..N-1.
class FiniteRing {
public:
    FiniteRing(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul, Elem zero, Elem one,
               RingDescription description, std::vector<std::string> labels = {})
        : n_(n), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), one_(one),
          description_(std::move(description)), labels_(std::move(labels)) {
        neg_.assign(n_, 0);
        for (Elem a = 0; a < n_; ++a)
            for (Elem b = 0; b < n_; ++b)
                if (add_[a * n_ + b] == zero_) {
                    neg_[a] = b;
                    break;
                }
    }

    std::size_t size() const noexcept { return n_; }
    Elem zero() const noexcept { return zero_; }
    Elem one() const noexcept { return one_; }

    Elem add(Elem a, Elem b) const noexcept { return add_[a * n_ + b]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[a * n_ + b]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

    Elem pow(Elem a, std::size_t e) const noexcept {
        Elem r = one_;
        for (std::size_t i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }

    /// n·a for an integer n >= 0.
    Elem times(std::uint64_t n, Elem a) const noexcept {
        Elem r = zero_;
        for (std::uint64_t i = 0; i < n % characteristic(); ++i) r = add(r, a);
        return r;
    }

    std::uint64_t characteristic() const noexcept {
        std::uint64_t c = 1;
        Elem x = one_;
        while (x != zero_) {
            x = add(x, one_);
            ++c;
        }
        return c;
    }

    std::optional<Elem> inverse(Elem a) const noexcept {
        for (Elem b = 0; b < n_; ++b)
            if (mul(a, b) == one_) return b;
        return std::nullopt;
    }
    bool is_unit(Elem a) const noexcept { return inverse(a).has_value(); }

    const RingDescription& description() const noexcept { return description_; }
    std::string label() const { return description_.label(); }
    std::string element_label(Elem a) const {
        return a < labels_.size() ? labels_[a] : std::to_string(a);
    }

    const std::vector<Elem>& add_table() const noexcept { return add_; }
    const std::vector<Elem>& mul_table() const noexcept { return mul_; }

    /// First violated ring axiom, or nullopt. Triples are exhaustive for
    /// N <= 64 and sampled (fixed seed) above.
    std::optional<std::string> axiom_violation() const {
        if (n_ == 0) return "empty carrier";
        if (n_ > 1 && zero_ == one_) return "one equals zero in a nontrivial ring";
        for (Elem a = 0; a < n_; ++a) {
            if (add(a, zero_) != a) return "zero is not additive identity at " + std::to_string(a);
            if (mul(a, one_) != a) return "one is not multiplicative identity at " + std::to_string(a);
            if (add(a, neg(a)) != zero_) return "no additive inverse for " + std::to_string(a);
            for (Elem b = 0; b < n_; ++b) {
                if (add(a, b) >= n_ || mul(a, b) >= n_) return "table entry out of range";
                if (add(a, b) != add(b, a)) return "addition not commutative";
                if (mul(a, b) != mul(b, a)) return "multiplication not commutative";
            }
        }
        auto check = [&](Elem a, Elem b, Elem c) -> std::optional<std::string> {
            if (add(add(a, b), c) != add(a, add(b, c))) return "addition not associative";
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                return "multiplication not associative at (" + std::to_string(a) + "," +
                       std::to_string(b) + "," + std::to_string(c) + ")";
            if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return "not distributive";
            return std::nullopt;
        };
        if (n_ <= 64) {
            for (Elem a = 0; a < n_; ++a)
                for (Elem b = 0; b < n_; ++b)
                    for (Elem c = 0; c < n_; ++c)
                        if (auto v = check(a, b, c)) return v;
        } else {
            std::mt19937_64 rng(0x5eed);
            std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n_ - 1));
            for (int i = 0; i < 200000; ++i)
                if (auto v = check(pick(rng), pick(rng), pick(rng))) return v;
        }
        return std::nullopt;
    }

private:
    std::size_t n_;
    std::vector<Elem> add_, mul_, neg_;
    Elem zero_, one_;
    RingDescription description_;
    std::vector<std::string> labels_;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

namespace detail {

inline FiniteRing build_zmod(std::uint32_t n) {
    if (n < 1) fail("Z/n requires n >= 1");
    std::vector<Elem> add(std::size_t{n} * n), mul(std::size_t{n} * n);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) {
            add[a * n + b] = (a + b) % n;
            mul[a * n + b] = static_cast<Elem>((std::uint64_t{a} * b) % n);
        }
    return FiniteRing(n, std::move(add), std::move(mul), 0, n == 1 ? 0 : 1, RingDescription::zmod(n));
}

inline FiniteRing build_gf(const RingDescription& d) {
    std::uint32_t p = d.p, k = d.k;
    if (!is_prime_u64(p)) fail("GF(p^k) requires p prime, got " + std::to_string(p));
    if (k < 1) fail("GF(p^k) requires k >= 1");
    PolyZp m = d.modulus;
    if (m.empty()) m = default_modulus(p, k);
    for (auto& c : m) c %= p;
    if (m.size() != k + 1 || m.back() != 1) fail("GF modulus must be monic of degree k");
    if (!is_irreducible_zp(m, p)) fail("GF modulus is reducible over Z/p");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    if (q > 65536) fail_bound("field too large for table representation");
    auto decode = [&](std::uint64_t code) {
        PolyZp f(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            f[i] = static_cast<std::uint32_t>(code % p);
            code /= p;
        }
        return f;
    };
    auto encode = [&](const PolyZp& f) {
        std::uint64_t code = 0;
        for (std::size_t i = f.size(); i-- > 0;) code = code * p + f[i];
        return static_cast<Elem>(code);
    };
    std::vector<Elem> add(q * q), mul(q * q);
    std::vector<std::string> labels(q);
    for (std::uint64_t a = 0; a < q; ++a) {
        auto fa = decode(a);
        std::string lab;
        for (std::size_t i = k; i-- > 0;) {
            if (fa[i] == 0) continue;
            if (!lab.empty()) lab += "+";
            if (i == 0 || fa[i] != 1) lab += std::to_string(fa[i]);
            if (i >= 1) lab += "t";
            if (i >= 2) lab += "^" + std::to_string(i);
        }
        labels[a] = lab.empty() ? "0" : lab;
        for (std::uint64_t b = 0; b < q; ++b) {
            auto fb = decode(b);
            PolyZp s(k);
            for (std::uint32_t i = 0; i < k; ++i) s[i] = (fa[i] + fb[i]) % p;
            add[a * q + b] = encode(s);
            PolyZp prod(2 * k, 0);
            for (std::uint32_t i = 0; i < k; ++i)
                for (std::uint32_t j = 0; j < k; ++j)
                    prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{fa[i]} * fb[j]) % p);
            auto r = poly_mod(prod, m, p);
            r.resize(k, 0);
            mul[a * q + b] = encode(r);
        }
    }
    RingDescription desc = d;
    desc.modulus = m;
    return FiniteRing(q, std::move(add), std::move(mul), 0, 1, std::move(desc), std::move(labels));
}

}  // namespace detail

/// Direct product of table rings; index = mixed radix, first factor most
/// significant. The empty product is the zero ring.
inline RingPtr product_ring(const std::vector<RingPtr>& parts, RingDescription d) {
    if (parts.empty())
        return std::make_shared<const FiniteRing>(1, std::vector<Elem>{0}, std::vector<Elem>{0}, 0, 0, std::move(d));
    std::size_t n = 1;
    for (auto& p : parts) {
        n *= p->size();
        if (n > 65536) fail_bound("product ring too large for table representation");
    }
    std::vector<std::size_t> stride(parts.size(), 1);
    for (std::size_t i = parts.size(); i-- > 1;) stride[i - 1] = stride[i] * parts[i]->size();
    auto component = [&](std::size_t x, std::size_t i) { return (x / stride[i]) % parts[i]->size(); };
    std::vector<Elem> add(n * n), mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t s = 0, m = 0;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                auto ca = static_cast<Elem>(component(a, i));
                auto cb = static_cast<Elem>(component(b, i));
                s += parts[i]->add(ca, cb) * stride[i];
                m += parts[i]->mul(ca, cb) * stride[i];
            }
            add[a * n + b] = static_cast<Elem>(s);
            mul[a * n + b] = static_cast<Elem>(m);
        }
    std::size_t one = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) one += parts[i]->one() * stride[i];
    std::vector<std::string> labels(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += parts[i]->element_label(static_cast<Elem>(component(x, i)));
        }
        labels[x] = s + ")";
    }
    return std::make_shared<const FiniteRing>(n, std::move(add), std::move(mul), 0, static_cast<Elem>(one),
                                              std::move(d), std::move(labels));
}

/// Builds a FiniteRing from a descriptor and validates the ring axioms.
inline RingPtr make_ring(const RingDescription& d) {
    using Kind = RingDescription::Kind;
    switch (d.kind) {
        case Kind::zmod: return std::make_shared<const FiniteRing>(detail::build_zmod(d.n));
        case Kind::galois_field: return std::make_shared<const FiniteRing>(detail::build_gf(d));
        case Kind::product: {
            std::vector<RingPtr> parts;
            std::size_t n = 1;
            for (const auto& f : d.factors) {
                parts.push_back(make_ring(f));
                n *= parts.back()->size();
                if (n > 65536) fail_bound("product ring too large for table representation");
            }
            return product_ring(parts, d);
        }
        case Kind::table: {
            std::size_t n = d.add_table.size();
            if (n == 0 || d.mul_table.size() != n) fail("table ring: tables must be square and non-empty");
            std::vector<Elem> add(n * n), mul(n * n);
            for (std::size_t a = 0; a < n; ++a) {
                if (d.add_table[a].size() != n || d.mul_table[a].size() != n)
                    fail("table ring: tables must be square");
                for (std::size_t b = 0; b < n; ++b) {
                    if (d.add_table[a][b] >= n || d.mul_table[a][b] >= n) fail("table ring: entry out of range");
                    add[a * n + b] = d.add_table[a][b];
                    mul[a * n + b] = d.mul_table[a][b];
                }
            }
            std::optional<Elem> zero, one;
            for (Elem z = 0; z < n && !zero; ++z) {
                bool ok = true;
                for (Elem a = 0; a < n && ok; ++a) ok = add[z * n + a] == a && add[a * n + z] == a;
                if (ok) zero = z;
            }
            for (Elem u = 0; u < n && !one; ++u) {
                bool ok = true;
                for (Elem a = 0; a < n && ok; ++a) ok = mul[u * n + a] == a && mul[a * n + u] == a;
                if (ok) one = u;
            }
            if (!zero) fail("table ring: no additive identity");
            if (!one) fail("table ring: no multiplicative identity");
            auto ring = std::make_shared<const FiniteRing>(n, std::move(add), std::move(mul), *zero, *one, d);
            if (auto v = ring->axiom_violation()) fail("table ring: " + *v);
            return ring;
        }
    }
    fail("unknown ring kind");
}

}  // namespace spectra
