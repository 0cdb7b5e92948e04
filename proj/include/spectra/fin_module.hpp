#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spectra/ideal.hpp"

namespace spectra {

/// Mixed-radix codes for vectors in R^rank, coordinate 0 most significant.
class FreeCodec {
public:
    FreeCodec(RingPtr ring, std::size_t rank, const Bounds& bounds = {})
        : ring_(std::move(ring)), rank_(rank) {
        total_ = 1;
        for (std::size_t i = 0; i < rank_; ++i) {
            total_ *= ring_->size();
            if (total_ > bounds.ambient_enumeration)
                fail_bound("free module R^" + std::to_string(rank_) + " exceeds enumeration bound");
        }
    }

    std::size_t rank() const noexcept { return rank_; }
    std::size_t total() const noexcept { return total_; }
    const RingPtr& ring() const noexcept { return ring_; }

    std::vector<Elem> decode(std::size_t code) const {
        std::vector<Elem> v(rank_);
        for (std::size_t i = rank_; i-- > 0;) {
            v[i] = static_cast<Elem>(code % ring_->size());
            code /= ring_->size();
        }
        return v;
    }
    std::size_t encode(const std::vector<Elem>& v) const {
        std::size_t code = 0;
        for (auto x : v) code = code * ring_->size() + x;
        return code;
    }
    std::size_t add(std::size_t a, std::size_t b) const {
        std::size_t out = 0, mul = 1;
        for (std::size_t i = 0; i < rank_; ++i) {
            auto x = static_cast<Elem>(a % ring_->size());
            auto y = static_cast<Elem>(b % ring_->size());
            out += ring_->add(x, y) * mul;
            mul *= ring_->size();
            a /= ring_->size();
            b /= ring_->size();
        }
        return out;
    }
    std::size_t scale(Elem r, std::size_t a) const {
        std::size_t out = 0, mul = 1;
        for (std::size_t i = 0; i < rank_; ++i) {
            auto x = static_cast<Elem>(a % ring_->size());
            out += ring_->mul(r, x) * mul;
            mul *= ring_->size();
            a /= ring_->size();
        }
        return out;
    }

    /// R-span of the given vectors, as a set of codes.
    ElementSet span(const std::vector<std::vector<Elem>>& gens) const {
        ElementSet s(total_);
        s.insert(0);
        std::vector<std::size_t> members{0};
        for (const auto& g : gens) {
            std::size_t gc = encode(g);
            std::vector<std::size_t> multiples;
            ElementSet seen(total_);
            for (Elem r = 0; r < ring_->size(); ++r) {
                auto m = scale(r, gc);
                if (!seen.contains(m)) {
                    seen.insert(m);
                    multiples.push_back(m);
                }
            }
            std::vector<std::size_t> next = members;
            for (auto x : members)
                for (auto m : multiples) {
                    auto z = add(x, m);
                    if (!s.contains(z)) {
                        s.insert(z);
                        next.push_back(z);
                    }
                }
            members = std::move(next);
        }
        return s;
    }

private:
    RingPtr ring_;
    std::size_t rank_;
    std::size_t total_;
};

/// A finite R-module given by its addition table and the R-action table.
/// Element 0 is the zero vector.
class FinModule {
public:
    FinModule(RingPtr ring, std::size_t n, std::vector<Elem> add, std::vector<Elem> action,
              std::string label = {})
        : ring_(std::move(ring)), n_(n), add_(std::move(add)), action_(std::move(action)), label_(std::move(label)) {
        neg_.assign(n_, 0);
        for (Elem a = 0; a < n_; ++a)
            for (Elem b = 0; b < n_; ++b)
                if (add_[a * n_ + b] == 0) {
                    neg_[a] = b;
                    break;
                }
    }

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t size() const noexcept { return n_; }
    bool is_zero() const noexcept { return n_ == 1; }
    Elem add(Elem a, Elem b) const noexcept { return add_[a * n_ + b]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    Elem act(Elem r, Elem x) const noexcept { return action_[r * n_ + x]; }
    const std::string& label() const noexcept { return label_; }
    FinModule with_label(std::string l) const {
        FinModule m = *this;
        m.label_ = std::move(l);
        return m;
    }

    /// First violated module axiom, or nullopt.
    std::optional<std::string> axiom_violation() const {
        const auto& R = *ring_;
        for (Elem x = 0; x < n_; ++x) {
            if (add(x, 0) != x) return "0 is not the zero element";
            if (act(R.one(), x) != x) return "action not unital";
            for (Elem y = 0; y < n_; ++y) {
                if (add(x, y) != add(y, x)) return "addition not commutative";
                for (Elem r = 0; r < R.size(); ++r)
                    if (act(r, add(x, y)) != add(act(r, x), act(r, y))) return "action not additive";
            }
            for (Elem r = 0; r < R.size(); ++r)
                for (Elem s = 0; s < R.size(); ++s) {
                    if (act(R.add(r, s), x) != add(act(r, x), act(s, x))) return "action not distributive";
                    if (act(R.mul(r, s), x) != act(r, act(s, x))) return "action not associative";
                }
        }
        return std::nullopt;
    }

private:
    RingPtr ring_;
    std::size_t n_;
    std::vector<Elem> add_, neg_, action_;
    std::string label_;
};

/// Cosets of `denominator` inside `numerator`, both R-submodules of R^rank
/// given as code sets.
inline FinModule free_subquotient(const FreeCodec& codec, const ElementSet& numerator,
                                  const ElementSet& denominator, const Bounds& bounds = {},
                                  std::string label = {}) {
    const auto& R = *codec.ring();
    std::size_t classes = numerator.count() / denominator.count();
    if (classes > bounds.module_size)
        fail_bound("module of size " + std::to_string(classes) + " exceeds module bound");
    std::unordered_map<std::size_t, Elem> cls;
    std::vector<std::size_t> reps;
    auto den = denominator.members();
    numerator.for_each([&](std::size_t v) {
        if (cls.count(v)) return;
        auto id = static_cast<Elem>(reps.size());
        reps.push_back(v);
        for (auto d : den) cls.emplace(codec.add(v, d), id);
    });
    std::size_t n = reps.size();
    std::vector<Elem> add(n * n), action(R.size() * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) add[a * n + b] = cls.at(codec.add(reps[a], reps[b]));
        for (Elem r = 0; r < R.size(); ++r) action[r * n + a] = cls.at(codec.scale(r, reps[a]));
    }
    return FinModule(codec.ring(), n, std::move(add), std::move(action), std::move(label));
}

inline FinModule free_module(const RingPtr& R, std::size_t rank, const Bounds& bounds = {}) {
    FreeCodec codec(R, rank, bounds);
    ElementSet zero(codec.total());
    zero.insert(0);
    return free_subquotient(codec, ElementSet::full(codec.total()), zero, bounds,
                            rank == 1 ? R->label() : R->label() + "^" + std::to_string(rank));
}

/// Row-major presentation matrix: `rows` generators, `cols` relations.
struct ModulePresentation {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<Elem>> entries;  // rows x cols
};

/// Cokernel of the presentation map R^cols -> R^rows.
inline FinModule make_module(const RingPtr& R, const ModulePresentation& pres, const Bounds& bounds = {}) {
    if (pres.entries.size() != pres.rows) fail("presentation: row count mismatch");
    for (const auto& row : pres.entries) {
        if (row.size() != pres.cols) fail("presentation: column count mismatch");
        for (auto e : row)
            if (e >= R->size()) fail("presentation: entry outside ring");
    }
    FreeCodec codec(R, pres.rows, bounds);
    std::vector<std::vector<Elem>> columns(pres.cols, std::vector<Elem>(pres.rows));
    for (std::size_t i = 0; i < pres.rows; ++i)
        for (std::size_t j = 0; j < pres.cols; ++j) columns[j][i] = pres.entries[i][j];
    auto image = codec.span(columns);
    return free_subquotient(codec, ElementSet::full(codec.total()), image, bounds);
}

/// R/I as a cyclic module.
inline FinModule cyclic_module(const Ideal& I, const Bounds& bounds = {}) {
    FreeCodec codec(I.ring(), 1, bounds);
    return free_subquotient(codec, ElementSet::full(codec.total()), I.members(), bounds,
                            I.ring()->label() + "/" + I.to_string());
}

/// R-submodule generated by a set of elements of M.
inline ElementSet module_span(const FinModule& M, const std::vector<Elem>& gens) {
    ElementSet s(M.size());
    s.insert(0);
    std::vector<Elem> members{0};
    for (auto g : gens) {
        std::vector<Elem> multiples;
        ElementSet seen(M.size());
        for (Elem r = 0; r < M.ring()->size(); ++r) {
            auto m = M.act(r, g);
            if (!seen.contains(m)) {
                seen.insert(m);
                multiples.push_back(m);
            }
        }
        auto next = members;
        for (auto x : members)
            for (auto m : multiples) {
                auto z = M.add(x, m);
                if (!s.contains(z)) {
                    s.insert(z);
                    next.push_back(z);
                }
            }
        members = std::move(next);
    }
    return s;
}

inline bool is_submodule(const FinModule& M, const ElementSet& S) {
    if (!S.contains(0)) return false;
    bool ok = true;
    S.for_each([&](std::size_t x) {
        if (!ok) return;
        S.for_each([&](std::size_t y) {
            if (ok && !S.contains(M.add(static_cast<Elem>(x), static_cast<Elem>(y)))) ok = false;
        });
        for (Elem r = 0; ok && r < M.ring()->size(); ++r)
            if (!S.contains(M.act(r, static_cast<Elem>(x)))) ok = false;
    });
    return ok;
}

/// The submodule S of M, reindexed (0 stays 0).
inline FinModule submodule(const FinModule& M, const ElementSet& S) {
    auto members = S.members();
    std::vector<Elem> index(M.size(), 0);
    for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<Elem>(i);
    std::size_t n = members.size();
    std::vector<Elem> add(n * n), action(M.ring()->size() * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            add[a * n + b] = index[M.add(static_cast<Elem>(members[a]), static_cast<Elem>(members[b]))];
        for (Elem r = 0; r < M.ring()->size(); ++r)
            action[r * n + a] = index[M.act(r, static_cast<Elem>(members[a]))];
    }
    return FinModule(M.ring(), n, std::move(add), std::move(action));
}

/// Coset index of every element of M modulo the submodule S, plus the
/// representative of each coset.
struct CosetMap {
    std::vector<Elem> coset;
    std::vector<Elem> reps;
};

inline CosetMap cosets(const FinModule& M, const ElementSet& S) {
    CosetMap out;
    out.coset.assign(M.size(), static_cast<Elem>(-1));
    auto members = S.members();
    for (Elem v = 0; v < M.size(); ++v) {
        if (out.coset[v] != static_cast<Elem>(-1)) continue;
        auto id = static_cast<Elem>(out.reps.size());
        out.reps.push_back(v);
        for (auto s : members) out.coset[M.add(v, static_cast<Elem>(s))] = id;
    }
    return out;
}

inline FinModule quotient(const FinModule& M, const ElementSet& S) {
    auto cm = cosets(M, S);
    std::size_t n = cm.reps.size();
    std::vector<Elem> add(n * n), action(M.ring()->size() * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) add[a * n + b] = cm.coset[M.add(cm.reps[a], cm.reps[b])];
        for (Elem r = 0; r < M.ring()->size(); ++r) action[r * n + a] = cm.coset[M.act(r, cm.reps[a])];
    }
    return FinModule(M.ring(), n, std::move(add), std::move(action));
}

inline FinModule direct_sum(const FinModule& M, const FinModule& N, const Bounds& bounds = {}) {
    if (M.ring() != N.ring()) fail("direct sum of modules over different rings");
    std::size_t n = M.size() * N.size();
    if (n > bounds.module_size) fail_bound("direct sum exceeds module bound");
    auto pair = [&](std::size_t x) { return std::pair<Elem, Elem>(static_cast<Elem>(x / N.size()), static_cast<Elem>(x % N.size())); };
    std::vector<Elem> add(n * n), action(M.ring()->size() * n);
    for (std::size_t a = 0; a < n; ++a) {
        auto [am, an] = pair(a);
        for (std::size_t b = 0; b < n; ++b) {
            auto [bm, bn] = pair(b);
            add[a * n + b] = static_cast<Elem>(M.add(am, bm) * N.size() + N.add(an, bn));
        }
        for (Elem r = 0; r < M.ring()->size(); ++r)
            action[r * n + a] = static_cast<Elem>(M.act(r, am) * N.size() + N.act(r, an));
    }
    std::string label = M.label().empty() || N.label().empty() ? std::string{} : M.label() + " + " + N.label();
    return FinModule(M.ring(), n, std::move(add), std::move(action), std::move(label));
}

/// A greedy generating set: smallest element outside the current span.
inline std::vector<Elem> generating_set(const FinModule& M) {
    std::vector<Elem> gens;
    ElementSet span(M.size());
    span.insert(0);
    for (Elem x = 0; x < M.size(); ++x) {
        if (span.contains(x)) continue;
        gens.push_back(x);
        span = module_span(M, gens);
    }
    return gens;
}

/// Calls visit(f) for every R-linear map f: M -> N (f as a table indexed by
/// elements of M). Stops early when visit returns false.
inline void for_each_hom(const FinModule& M, const FinModule& N,
                         const std::function<bool(const std::vector<Elem>&)>& visit,
                         const Bounds& bounds = {}) {
    if (M.ring() != N.ring()) fail("homomorphisms between modules over different rings");
    if (M.size() * N.size() > bounds.hom_pairs)
        fail_bound("homomorphism search |M|*|N| = " + std::to_string(M.size() * N.size()) + " exceeds bound");
    const auto& R = *M.ring();
    auto gens = generating_set(M);
    constexpr Elem unset = static_cast<Elem>(-1);
    std::vector<Elem> f(M.size(), unset);
    f[0] = 0;
    std::vector<ElementSet> spans{ElementSet(M.size())};
    spans[0].insert(0);
    for (std::size_t t = 0; t < gens.size(); ++t) {
        std::vector<Elem> prefix(gens.begin(), gens.begin() + static_cast<long>(t + 1));
        spans.push_back(module_span(M, prefix));
    }
    bool stop = false;
    std::function<void(std::size_t)> extend = [&](std::size_t t) {
        if (stop) return;
        if (t == gens.size()) {
            if (!visit(f)) stop = true;
            return;
        }
        auto base = spans[t].members();
        Elem g = gens[t];
        for (Elem y = 0; y < N.size() && !stop; ++y) {
            std::vector<Elem> saved = f;
            bool ok = true;
            for (Elem r = 0; r < R.size() && ok; ++r) {
                Elem rg = M.act(r, g);
                Elem ry = N.act(r, y);
                for (auto x : base) {
                    Elem z = M.add(static_cast<Elem>(x), rg);
                    Elem v = N.add(saved[x], ry);
                    if (f[z] == unset) {
                        f[z] = v;
                    } else if (f[z] != v) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) extend(t + 1);
            f = std::move(saved);
        }
    };
    extend(0);
}

inline std::vector<std::vector<Elem>> all_homs(const FinModule& M, const FinModule& N, const Bounds& bounds = {}) {
    std::vector<std::vector<Elem>> out;
    for_each_hom(M, N, [&](const std::vector<Elem>& f) {
        out.push_back(f);
        return true;
    }, bounds);
    return out;
}

inline bool hom_is_zero(const FinModule& M, const FinModule& N, const Bounds& bounds = {}) {
    bool nonzero = false;
    for_each_hom(M, N, [&](const std::vector<Elem>& f) {
        for (auto v : f)
            if (v != 0) {
                nonzero = true;
                return false;
            }
        return true;
    }, bounds);
    return !nonzero;
}

inline bool is_isomorphic(const FinModule& M, const FinModule& N, const Bounds& bounds = {}) {
    if (M.size() != N.size()) return false;
    bool found = false;
    for_each_hom(M, N, [&](const std::vector<Elem>& f) {
        ElementSet image(N.size());
        for (auto v : f) image.insert(v);
        if (image.count() == N.size()) {
            found = true;
            return false;
        }
        return true;
    }, bounds);
    return found;
}

/// ann_R(x) = {r : r·x = 0}.
inline Ideal annihilator(const FinModule& M, Elem x) {
    const auto& R = *M.ring();
    ElementSet out(R.size());
    for (Elem r = 0; r < R.size(); ++r)
        if (M.act(r, x) == 0) out.insert(r);
    return Ideal(M.ring(), std::move(out));
}

/// The idempotent component e·M as a code set.
inline ElementSet idempotent_component(const FinModule& M, Elem e) {
    ElementSet s(M.size());
    for (Elem x = 0; x < M.size(); ++x) s.insert(M.act(e, x));
    return s;
}

/// M_P, realized as e_P·M for the local-factor idempotent e_P.
inline FinModule localize_module(const FinModule& M, const PrimeIdeal& P) {
    if (P.ring() != M.ring()) fail("localize_module: prime of a different ring");
    for (const auto& f : local_decomposition(M.ring()))
        if (f.prime == P) return submodule(M, idempotent_component(M, f.idempotent));
    fail("localize_module: " + P.to_string() + " is not a prime of " + M.ring()->label());
}

/// supp(M) as indices into spec(R).
inline ElementSet support_indices(const FinModule& M) {
    auto factors = local_decomposition(M.ring());
    ElementSet out(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (idempotent_component(M, factors[i].idempotent).count() > 1) out.insert(i);
    return out;
}

inline std::vector<PrimeIdeal> support_module(const FinModule& M) {
    auto primes = spec(M.ring());
    std::vector<PrimeIdeal> out;
    for (auto i : support_indices(M).members()) out.push_back(primes[i]);
    return out;
}

}  // namespace spectra
