#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "spectra/report.hpp"
#include "spectra/torsion.hpp"

namespace spectra {

/// A homogeneous element of A = R[x_1..x_k]/(x_i x_j, i != j): a scalar in
/// degree 0, otherwise the coefficients of x_1^d, ..., x_k^d.
struct HomogElem {
    int deg = 0;
    std::vector<Elem> c;
    bool operator==(const HomogElem&) const = default;
};

class GradedRing {
public:
    GradedRing(RingPtr base, std::size_t k) : base_(std::move(base)), k_(k) {
        if (k_ == 0) fail("graded ring needs at least one variable");
        if (k_ > 4) fail_bound("graded ring: more than 4 variables");
    }

    const RingPtr& base() const noexcept { return base_; }
    std::size_t k() const noexcept { return k_; }
    bool operator==(const GradedRing& o) const { return base_ == o.base_ && k_ == o.k_; }

    std::size_t width(int d) const noexcept { return d < 0 ? 0 : d == 0 ? 1 : k_; }
    std::size_t component_size(int d) const {
        std::size_t s = 1;
        for (std::size_t i = 0; i < width(d); ++i) s *= base_->size();
        return s;
    }

    HomogElem zero(int d) const { return {d, std::vector<Elem>(width(d), base_->zero())}; }
    HomogElem scalar(Elem r) const { return {0, {r}}; }
    HomogElem unit() const { return scalar(base_->one()); }
    /// r · x_i^d (d >= 1).
    HomogElem monomial(std::size_t i, int d, Elem r) const {
        if (d == 0) return scalar(r);
        auto e = zero(d);
        e.c.at(i) = r;
        return e;
    }
    HomogElem variable(std::size_t i) const { return monomial(i, 1, base_->one()); }

    bool is_zero(const HomogElem& a) const {
        for (auto x : a.c)
            if (x != base_->zero()) return false;
        return true;
    }

    HomogElem add(const HomogElem& a, const HomogElem& b) const {
        if (a.deg != b.deg) fail("adding homogeneous elements of different degrees");
        HomogElem r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = base_->add(a.c[i], b.c[i]);
        return r;
    }
    HomogElem mul(const HomogElem& a, const HomogElem& b) const {
        HomogElem r = zero(a.deg + b.deg);
        if (a.deg == 0) {
            for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = base_->mul(a.c[0], b.c[i]);
        } else if (b.deg == 0) {
            for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = base_->mul(a.c[i], b.c[0]);
        } else {
            for (std::size_t i = 0; i < k_; ++i) r.c[i] = base_->mul(a.c[i], b.c[i]);
        }
        return r;
    }

    std::size_t encode(const HomogElem& a) const {
        std::size_t code = 0;
        for (auto x : a.c) code = code * base_->size() + x;
        return code;
    }
    HomogElem decode(int d, std::size_t code) const {
        auto e = zero(d);
        for (std::size_t i = e.c.size(); i-- > 0;) {
            e.c[i] = static_cast<Elem>(code % base_->size());
            code /= base_->size();
        }
        return e;
    }
    std::vector<HomogElem> elements(int d) const {
        std::vector<HomogElem> out;
        for (std::size_t code = 0; code < component_size(d); ++code) out.push_back(decode(d, code));
        return out;
    }

    std::string to_string(const HomogElem& a) const {
        if (a.deg == 0) return base_->element_label(a.c[0]);
        std::string s;
        for (std::size_t i = 0; i < k_; ++i) {
            if (a.c[i] == base_->zero()) continue;
            if (!s.empty()) s += "+";
            if (a.c[i] != base_->one()) s += base_->element_label(a.c[i]) + "*";
            s += var_name(i);
            if (a.deg > 1) s += "^" + std::to_string(a.deg);
        }
        return s.empty() ? "0" : s;
    }
    std::string var_name(std::size_t i) const { return k_ == 1 ? "x" : "x" + std::to_string(i + 1); }
    std::string label() const {
        std::string vars;
        for (std::size_t i = 0; i < k_; ++i) vars += (i ? "," : "") + var_name(i);
        return base_->label() + "[" + vars + "]" + (k_ > 1 ? "/(x_i*x_j)" : "");
    }

private:
    RingPtr base_;
    std::size_t k_;
};

// ---------------------------------------------------------------------------
// Proj

/// The homogeneous prime (P, x_j : j != var), which avoids A_+.
struct ProjPoint {
    std::size_t var = 0;
    std::size_t prime = 0;  ///< index into spec(R)
    bool operator==(const ProjPoint&) const = default;
};

inline std::vector<ProjPoint> proj_points(const GradedRing& A) {
    std::vector<ProjPoint> out;
    auto n = spec(A.base()).size();
    for (std::size_t i = 0; i < A.k(); ++i)
        for (std::size_t p = 0; p < n; ++p) out.push_back({i, p});
    return out;
}

inline std::size_t proj_index(const GradedRing& A, const ProjPoint& pt) {
    return pt.var * spec(A.base()).size() + pt.prime;
}

inline std::string proj_label(const GradedRing& A, const ProjPoint& pt) {
    auto P = spec(A.base()).at(pt.prime).to_string();
    std::string s = "(" + P.substr(1, P.size() - 2);
    for (std::size_t j = 0; j < A.k(); ++j)
        if (j != pt.var) s += "," + A.var_name(j);
    return s + ")";
}

// ---------------------------------------------------------------------------
// Homogeneous ideals

/// Components I_0..I_T as code sets; I_d = I_T coordinatewise for d >= T.
class HomogIdeal {
public:
    HomogIdeal(GradedRing A, std::vector<ElementSet> comps) : A_(std::move(A)), comps_(std::move(comps)) {
        while (comps_.size() < 3) comps_.push_back(comps_.back());
    }

    const GradedRing& ring() const noexcept { return A_; }
    int tail() const noexcept { return static_cast<int>(comps_.size()) - 1; }
    const ElementSet& component(int d) const { return comps_.at(static_cast<std::size_t>(std::min(d, tail()))); }
    bool contains(const HomogElem& a) const { return a.deg >= 0 && component(a.deg).contains(A_.encode(a)); }

    bool subset_of(const HomogIdeal& o) const {
        for (int d = 0; d <= std::max(tail(), o.tail()); ++d)
            if (!component(d).subset_of(o.component(d))) return false;
        return true;
    }
    bool operator==(const HomogIdeal& o) const { return subset_of(o) && o.subset_of(*this); }
    bool is_unit() const { return component(0).contains(A_.encode(A_.unit())); }

    /// Canonical form: trailing equal components dropped down to 3.
    HomogIdeal canonical() const {
        auto c = comps_;
        while (c.size() > 3 && c[c.size() - 1] == c[c.size() - 2]) c.pop_back();
        return HomogIdeal(A_, std::move(c));
    }
    std::vector<std::uint64_t> key() const {
        auto c = canonical();
        std::vector<std::uint64_t> k;
        for (auto& s : c.comps_) {
            k.push_back(s.universe());
            for (auto m : s.members()) k.push_back(m);
            k.push_back(~std::uint64_t{0});
        }
        return k;
    }

    /// Homogeneous generators, degree by degree.
    std::vector<HomogElem> generators() const {
        std::vector<HomogElem> gens;
        for (int d = 0; d <= tail(); ++d) {
            auto have = span_of(d, gens);
            for (auto code : component(d).members()) {
                if (have.contains(code)) continue;
                gens.push_back(A_.decode(d, code));
                have = span_of(d, gens);
            }
        }
        return gens;
    }

    std::string to_string() const {
        auto gens = generators();
        if (gens.empty()) return "(0)";
        std::string s = "(";
        for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + A_.to_string(gens[i]);
        return s + ")";
    }

    /// R-span in degree d of all monomial multiples of gens.
    ElementSet span_of(int d, const std::vector<HomogElem>& gens) const { return multiples_span(A_, d, gens); }

    static ElementSet multiples_span(const GradedRing& A, int d, const std::vector<HomogElem>& gens) {
        FreeCodec codec(A.base(), A.width(d));
        std::vector<std::vector<Elem>> vecs;
        for (auto& g : gens) {
            if (g.deg > d) continue;
            if (g.deg == d) {
                vecs.push_back(g.c);
            } else {
                for (std::size_t i = 0; i < A.k(); ++i)
                    vecs.push_back(A.mul(A.monomial(i, d - g.deg, A.base()->one()), g).c);
            }
        }
        return codec.span(vecs);
    }

private:
    GradedRing A_;
    std::vector<ElementSet> comps_;
};

inline HomogIdeal homog_ideal(const GradedRing& A, const std::vector<HomogElem>& gens) {
    int top = 1;
    for (auto& g : gens) {
        if (g.deg < 0 || g.c.size() != A.width(g.deg)) fail("malformed homogeneous generator");
        top = std::max(top, g.deg + 1);
    }
    std::vector<ElementSet> comps;
    for (int d = 0; d <= top; ++d) comps.push_back(HomogIdeal::multiples_span(A, d, gens));
    return HomogIdeal(A, std::move(comps));
}

inline HomogIdeal unit_homog_ideal(const GradedRing& A) { return homog_ideal(A, {A.unit()}); }
inline HomogIdeal zero_homog_ideal(const GradedRing& A) { return homog_ideal(A, {}); }

/// A_+ = (x_1, ..., x_k).
inline HomogIdeal irrelevant_ideal(const GradedRing& A) {
    std::vector<HomogElem> gens;
    for (std::size_t i = 0; i < A.k(); ++i) gens.push_back(A.variable(i));
    return homog_ideal(A, gens);
}

inline HomogIdeal point_ideal(const GradedRing& A, const ProjPoint& pt) {
    auto P = spec(A.base()).at(pt.prime);
    std::vector<HomogElem> gens;
    for (auto g : P.ideal().minimal_generators()) gens.push_back(A.scalar(g));
    for (std::size_t j = 0; j < A.k(); ++j)
        if (j != pt.var) gens.push_back(A.variable(j));
    return homog_ideal(A, gens);
}

inline HomogIdeal homog_sum(const HomogIdeal& I, const HomogIdeal& J) {
    std::vector<ElementSet> comps;
    const auto& A = I.ring();
    for (int d = 0; d <= std::max(I.tail(), J.tail()); ++d) {
        FreeCodec codec(A.base(), A.width(d));
        ElementSet s(codec.total());
        auto b = J.component(d).members();
        I.component(d).for_each([&](std::size_t a) {
            for (auto y : b) s.insert(codec.add(a, y));
        });
        comps.push_back(s);
    }
    return HomogIdeal(A, std::move(comps));
}

inline HomogIdeal homog_product(const HomogIdeal& I, const HomogIdeal& J) {
    const auto& A = I.ring();
    auto gi = I.generators(), gj = J.generators();
    std::vector<HomogElem> prods;
    for (auto& a : gi)
        for (auto& b : gj) prods.push_back(A.mul(a, b));
    // gens of I and J live below their tails, so the product is generated
    // below tail(I) + tail(J)
    std::vector<ElementSet> comps;
    for (int d = 0; d <= I.tail() + J.tail() + 1; ++d) comps.push_back(HomogIdeal::multiples_span(A, d, prods));
    return HomogIdeal(A, std::move(comps)).canonical();
}

inline HomogIdeal homog_power(const HomogIdeal& I, std::size_t n) {
    auto out = unit_homog_ideal(I.ring());
    for (std::size_t i = 0; i < n; ++i) out = homog_product(out, I);
    return out;
}

/// (I : a) = {m : a m ∈ I}, homogeneous a.
inline HomogIdeal homog_colon(const HomogIdeal& I, const HomogElem& a) {
    const auto& A = I.ring();
    std::vector<ElementSet> comps;
    for (int d = 0; d <= std::max(I.tail(), 2); ++d) {
        ElementSet s(A.component_size(d));
        for (std::size_t code = 0; code < A.component_size(d); ++code)
            if (I.contains(A.mul(a, A.decode(d, code)))) s.insert(code);
        comps.push_back(s);
    }
    return HomogIdeal(A, std::move(comps)).canonical();
}

/// Every homogeneous ideal generated in degrees <= bound.
inline std::vector<HomogIdeal> all_homog_ideals(const GradedRing& A, int bound, std::size_t cap = 20000) {
    std::vector<HomogElem> elems;
    for (int d = 0; d <= bound; ++d)
        for (auto& e : A.elements(d))
            if (!A.is_zero(e)) elems.push_back(e);
    std::map<std::vector<std::uint64_t>, HomogIdeal> seen;
    std::vector<HomogIdeal> frontier{zero_homog_ideal(A)};
    seen.emplace(frontier[0].key(), frontier[0]);
    std::vector<HomogIdeal> principals;
    for (auto& e : elems) principals.push_back(homog_ideal(A, {e}));
    while (!frontier.empty()) {
        std::vector<HomogIdeal> next;
        for (auto& I : frontier)
            for (auto& P : principals) {
                if (P.subset_of(I)) continue;
                auto S = homog_sum(I, P).canonical();
                if (seen.emplace(S.key(), S).second) {
                    next.push_back(S);
                    if (seen.size() > cap) fail_bound("homogeneous ideal enumeration exceeds cap");
                }
            }
        frontier = std::move(next);
    }
    std::vector<HomogIdeal> out;
    for (auto& [k, I] : seen) out.push_back(I);
    return out;
}

/// A homogeneous prime check over degrees <= max_deg.
inline bool homog_prime_upto(const HomogIdeal& I, int max_deg) {
    const auto& A = I.ring();
    if (I.is_unit()) return false;
    for (int p = 0; p <= max_deg; ++p)
        for (int q = p; p + q <= max_deg; ++q)
            for (auto& a : A.elements(p)) {
                if (I.contains(a)) continue;
                for (auto& b : A.elements(q))
                    if (!I.contains(b) && I.contains(A.mul(a, b))) return false;
            }
    return true;
}

// ---------------------------------------------------------------------------
// t-filters

/// t-filter of finite type: I ∈ F iff I contains some product of basis
/// elements, equivalently a power of their product.
class TFilter {
public:
    TFilter(GradedRing A, std::vector<HomogIdeal> basis)
        : A_(std::move(A)), basis_(std::move(basis)), product_(product_of(A_, basis_)) {}

    const GradedRing& ring() const noexcept { return A_; }
    const std::vector<HomogIdeal>& basis() const noexcept { return basis_; }

    /// The powers P^n decrease; they are compared with I until they settle
    /// on every component up to the tails involved.
    bool contains(const HomogIdeal& I) const {
        if (I.is_unit()) return true;
        auto power = product_;
        std::size_t cap = static_cast<std::size_t>(2 * (I.tail() + 2)) + 2 * A_.base()->size();
        for (std::size_t n = 1; n <= cap; ++n) {
            if (power.subset_of(I)) return true;
            auto next = homog_product(power, product_);
            if (next == power) return false;
            power = next;
        }
        return power.subset_of(I);
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < basis_.size(); ++i) s += (i ? ", " : "") + basis_[i].to_string();
        return s + "}";
    }

private:
    static HomogIdeal product_of(const GradedRing& A, const std::vector<HomogIdeal>& basis) {
        auto p = unit_homog_ideal(A);
        for (auto& B : basis) p = homog_product(p, B);
        return p;
    }

    GradedRing A_;
    std::vector<HomogIdeal> basis_;
    HomogIdeal product_;
};

inline TFilter tfilter_from_basis(const GradedRing& A, std::vector<HomogIdeal> basis) {
    for (auto& B : basis)
        if (!(B.ring() == A)) fail("t-filter basis over a different graded ring");
    return TFilter(A, std::move(basis));
}

/// The filter of Tors A: basis {A_+}.
inline TFilter tors_filter(const GradedRing& A) { return TFilter(A, {irrelevant_ideal(A)}); }

inline HomogIdeal homog_intersection(const HomogIdeal& I, const HomogIdeal& J) {
    std::vector<ElementSet> comps;
    for (int d = 0; d <= std::max(I.tail(), J.tail()); ++d) comps.push_back(I.component(d) & J.component(d));
    return HomogIdeal(I.ring(), std::move(comps));
}

/// T1-T3 restricted to the given ideals and test elements. T3 quantifies
/// over generators of J, which is equivalent to quantifying over all of J
/// once the filter is closed upward and under intersections; those two
/// closures are checked on the same ideals.
inline std::vector<Check> tfilter_axioms_check(const GradedRing& A, const std::function<bool(const HomogIdeal&)>& member,
                                               const std::vector<HomogIdeal>& ideals,
                                               const std::vector<HomogElem>& elems) {
    auto t1 = Check::make("T1", "A belongs to the filter");
    auto t2 = Check::make("T2", "homogeneous colon stability");
    auto t3 = Check::make("T3", "homogeneous gluing");
    auto up = Check::make("upward closed", "I in F and I ⊆ J imply J in F");
    auto meet = Check::make("meet closed", "I, J in F imply I ∩ J in F");
    std::map<std::vector<std::uint64_t>, bool> memo;
    auto in = [&](const HomogIdeal& I) {
        auto k = I.key();
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        return memo[k] = member(I);
    };
    if (!in(unit_homog_ideal(A))) t1.fail_with("A is not a member");
    std::vector<bool> is_in;
    for (auto& I : ideals) is_in.push_back(in(I));
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        if (!is_in[i]) continue;
        for (auto& a : elems)
            if (!in(homog_colon(ideals[i], a))) t2.fail_with("I=" + ideals[i].to_string() + " a=" + A.to_string(a));
        for (std::size_t j = 0; j < ideals.size(); ++j) {
            if (!is_in[j] && ideals[i].subset_of(ideals[j]))
                up.fail_with(ideals[i].to_string() + " ⊆ " + ideals[j].to_string());
            if (is_in[j] && j > i && !in(homog_intersection(ideals[i], ideals[j])))
                meet.fail_with(ideals[i].to_string() + " ∩ " + ideals[j].to_string());
        }
    }
    for (std::size_t j = 0; j < ideals.size(); ++j) {
        if (!is_in[j]) continue;
        auto gens = ideals[j].generators();
        for (std::size_t i = 0; i < ideals.size(); ++i) {
            if (is_in[i]) continue;
            bool all = true;
            for (auto& g : gens)
                if (!in(homog_colon(ideals[i], g))) {
                    all = false;
                    break;
                }
            if (all) t3.fail_with("I=" + ideals[i].to_string() + " J=" + ideals[j].to_string());
        }
    }
    return {t1, t2, t3, up, meet};
}

/// T1-T3 over all homogeneous ideals generated in degree <= bound.
inline std::vector<Check> tfilter_axioms_check(const GradedRing& A, const std::function<bool(const HomogIdeal&)>& member,
                                               int bound) {
    std::vector<HomogElem> elems;
    for (int d = 0; d <= bound; ++d)
        for (auto& e : A.elements(d)) elems.push_back(e);
    return tfilter_axioms_check(A, member, all_homog_ideals(A, bound), elems);
}

inline std::vector<Check> tfilter_axioms_check(const TFilter& F, int bound) {
    return tfilter_axioms_check(F.ring(), [&](const HomogIdeal& I) { return F.contains(I); }, bound);
}

/// Seeded homogeneous elements of degree <= bound: every scalar, every
/// x_i^d, and `count` random elements.
inline std::vector<HomogElem> sample_homog_elements(const GradedRing& A, int bound, std::size_t count,
                                                    std::uint64_t seed) {
    std::vector<HomogElem> out = A.elements(0);
    for (int d = 1; d <= bound; ++d)
        for (std::size_t i = 0; i < A.k(); ++i) out.push_back(A.monomial(i, d, A.base()->one()));
    std::mt19937_64 gen(seed);
    for (std::size_t n = 0; n < count; ++n) {
        int d = static_cast<int>(gen() % static_cast<std::uint64_t>(bound + 1));
        HomogElem e = A.zero(d);
        for (auto& c : e.c) c = static_cast<Elem>(gen() % A.base()->size());
        out.push_back(e);
    }
    return out;
}

/// Seeded homogeneous ideals with one or two generators of degree <= bound,
/// plus 0, A, A_+ and the Proj point ideals.
inline std::vector<HomogIdeal> sample_homog_ideals(const GradedRing& A, int bound, std::size_t count,
                                                   std::uint64_t seed) {
    std::vector<HomogIdeal> out{zero_homog_ideal(A), unit_homog_ideal(A), irrelevant_ideal(A)};
    for (auto& pt : proj_points(A)) out.push_back(point_ideal(A, pt));
    auto elems = sample_homog_elements(A, bound, 2 * count, seed);
    std::mt19937_64 gen(seed + 1);
    for (std::size_t n = 0; n < count; ++n) {
        std::vector<HomogElem> gens{elems[gen() % elems.size()]};
        if (gen() % 2) gens.push_back(elems[gen() % elems.size()]);
        out.push_back(homog_ideal(A, gens).canonical());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graded modules

struct RelTerm {
    std::size_t gen = 0;
    HomogElem coeff;
};

struct GradedRelation {
    int degree = 0;
    std::vector<RelTerm> terms;
};

struct GradedPresentation {
    std::vector<int> gens;  ///< generator degrees
    std::vector<GradedRelation> rels;
};

/// M_j as an R-module, plus the data needed to act on it.
struct GradedComponent {
    int degree = 0;
    std::vector<std::size_t> offset, width;
    std::size_t rank = 0;
    std::vector<std::uint32_t> cls;
    std::vector<std::size_t> reps;
    std::shared_ptr<const FinModule> module;
};

class GradedModule {
public:
    GradedModule(GradedRing A, GradedPresentation pres, std::string label = {}, Bounds bounds = {})
        : A_(std::move(A)), pres_(std::move(pres)), label_(std::move(label)), bounds_(bounds),
          cache_(std::make_shared<Cache>()) {
        for (auto& r : pres_.rels)
            for (auto& t : r.terms) {
                if (t.gen >= pres_.gens.size()) fail("relation refers to a missing generator");
                if (t.coeff.deg != r.degree - pres_.gens[t.gen] || t.coeff.deg < 0 ||
                    t.coeff.c.size() != A_.width(t.coeff.deg))
                    fail("relation is not homogeneous of degree " + std::to_string(r.degree));
            }
    }

    const GradedRing& ring() const noexcept { return A_; }
    const GradedPresentation& presentation() const noexcept { return pres_; }
    const std::string& label() const noexcept { return label_; }
    const Bounds& bounds() const noexcept { return bounds_; }

    int min_degree() const {
        if (pres_.gens.empty()) return 0;
        return *std::min_element(pres_.gens.begin(), pres_.gens.end());
    }
    /// Largest generator or relation degree.
    int presentation_degree() const {
        int d = min_degree();
        for (auto g : pres_.gens) d = std::max(d, g);
        for (auto& r : pres_.rels) d = std::max(d, r.degree);
        return d;
    }
    /// From here on x_1 + ... + x_k maps M_j isomorphically onto M_{j+1}.
    int stable_degree() const { return std::max(presentation_degree(), min_degree()) + 1; }

    std::shared_ptr<const GradedComponent> component(int j) const {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        auto it = cache_->comps.find(j);
        if (it != cache_->comps.end()) return it->second;
        auto c = std::make_shared<const GradedComponent>(build(j));
        cache_->comps.emplace(j, c);
        return c;
    }
    const FinModule& at(int j) const { return *component(j)->module; }
    std::size_t size_at(int j) const { return at(j).size(); }

    /// a · m for m ∈ M_j.
    Elem act(const HomogElem& a, int j, Elem m) const {
        auto src = component(j);
        auto dst = component(j + a.deg);
        FreeCodec from(A_.base(), src->rank, bounds_), to(A_.base(), dst->rank, bounds_);
        auto v = from.decode(src->reps.at(m));
        std::vector<Elem> w(dst->rank, A_.base()->zero());
        for (std::size_t s = 0; s < pres_.gens.size(); ++s) {
            if (src->width[s] == 0) continue;
            auto first = v.begin() + static_cast<long>(src->offset[s]);
            HomogElem b{j - pres_.gens[s], std::vector<Elem>(first, first + static_cast<long>(src->width[s]))};
            auto ab = A_.mul(a, b);
            for (std::size_t t = 0; t < ab.c.size(); ++t) w[dst->offset[s] + t] = ab.c[t];
        }
        return dst->cls.at(to.encode(w));
    }

    GradedModule with_label(std::string l) const {
        GradedModule m = *this;
        m.label_ = std::move(l);
        return m;
    }

private:
    struct Cache {
        std::mutex mutex;
        std::map<int, std::shared_ptr<const GradedComponent>> comps;
    };

    GradedComponent build(int j) const {
        GradedComponent c;
        c.degree = j;
        for (auto d : pres_.gens) {
            c.offset.push_back(c.rank);
            c.width.push_back(A_.width(j - d));
            c.rank += c.width.back();
        }
        FreeCodec codec(A_.base(), c.rank, bounds_);
        std::vector<std::vector<Elem>> rel_vectors;
        for (auto& r : pres_.rels) {
            if (r.degree > j) continue;
            std::vector<HomogElem> multipliers;
            if (r.degree == j)
                multipliers.push_back(A_.unit());
            else
                for (std::size_t i = 0; i < A_.k(); ++i) multipliers.push_back(A_.monomial(i, j - r.degree, A_.base()->one()));
            for (auto& mu : multipliers) {
                std::vector<Elem> v(c.rank, A_.base()->zero());
                for (auto& t : r.terms) {
                    auto p = A_.mul(mu, t.coeff);
                    for (std::size_t q = 0; q < p.c.size(); ++q)
                        v[c.offset[t.gen] + q] = A_.base()->add(v[c.offset[t.gen] + q], p.c[q]);
                }
                rel_vectors.push_back(std::move(v));
            }
        }
        auto K = codec.span(rel_vectors);
        std::size_t classes = codec.total() / K.count();
        if (classes > bounds_.module_size) fail_bound("graded component exceeds module bound");
        constexpr std::uint32_t unset = ~std::uint32_t{0};
        c.cls.assign(codec.total(), unset);
        auto ker = K.members();
        for (std::size_t v = 0; v < codec.total(); ++v) {
            if (c.cls[v] != unset) continue;
            auto id = static_cast<std::uint32_t>(c.reps.size());
            c.reps.push_back(v);
            for (auto k : ker) c.cls[codec.add(v, k)] = id;
        }
        const auto& R = *A_.base();
        std::size_t n = c.reps.size();
        std::vector<Elem> add(n * n), action(R.size() * n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) add[a * n + b] = c.cls[codec.add(c.reps[a], c.reps[b])];
            for (Elem r = 0; r < R.size(); ++r) action[r * n + a] = c.cls[codec.scale(r, c.reps[a])];
        }
        c.module = std::make_shared<const FinModule>(A_.base(), n, std::move(add), std::move(action),
                                                     label_ + "_" + std::to_string(j));
        return c;
    }

    GradedRing A_;
    GradedPresentation pres_;
    std::string label_;
    Bounds bounds_;
    std::shared_ptr<Cache> cache_;
};

/// A(n): free on one generator in degree -n.
inline GradedModule twist(const GradedRing& A, int n) {
    return GradedModule(A, {{-n}, {}}, n == 0 ? "A" : "A(" + std::to_string(n) + ")");
}

/// A / (gens), cyclic on a degree-0 generator.
inline GradedModule cyclic_graded(const GradedRing& A, const std::vector<HomogElem>& gens, std::string label = {}) {
    GradedPresentation p{{0}, {}};
    for (auto& g : gens) p.rels.push_back({g.deg, {{0, g}}});
    if (label.empty()) {
        label = "A/(";
        for (std::size_t i = 0; i < gens.size(); ++i) label += (i ? "," : "") + A.to_string(gens[i]);
        label += ")";
    }
    return GradedModule(A, std::move(p), std::move(label));
}

inline GradedModule quotient_by_ideal(const HomogIdeal& I) {
    return cyclic_graded(I.ring(), I.generators(), "A/" + I.to_string());
}

/// M(n)_j = M_{n+j}.
inline GradedModule shift(const GradedModule& M, int n) {
    auto p = M.presentation();
    for (auto& d : p.gens) d -= n;
    for (auto& r : p.rels) r.degree -= n;
    return GradedModule(M.ring(), std::move(p), M.label() + "(" + std::to_string(n) + ")", M.bounds());
}

/// M ⊗_A N from presentations: generators (s, t), relations ρ⊗t and s⊗σ.
inline GradedModule tensor(const GradedModule& M, const GradedModule& N) {
    if (!(M.ring() == N.ring())) fail("tensor of graded modules over different rings");
    const auto& pm = M.presentation();
    const auto& pn = N.presentation();
    GradedPresentation p;
    auto idx = [&](std::size_t s, std::size_t t) { return s * pn.gens.size() + t; };
    for (auto ds : pm.gens)
        for (auto dt : pn.gens) p.gens.push_back(ds + dt);
    for (auto& r : pm.rels)
        for (std::size_t t = 0; t < pn.gens.size(); ++t) {
            GradedRelation q{r.degree + pn.gens[t], {}};
            for (auto& term : r.terms) q.terms.push_back({idx(term.gen, t), term.coeff});
            p.rels.push_back(std::move(q));
        }
    for (std::size_t s = 0; s < pm.gens.size(); ++s)
        for (auto& r : pn.rels) {
            GradedRelation q{r.degree + pm.gens[s], {}};
            for (auto& term : r.terms) q.terms.push_back({idx(s, term.gen), term.coeff});
            p.rels.push_back(std::move(q));
        }
    return GradedModule(M.ring(), std::move(p), "(" + M.label() + ")⊗(" + N.label() + ")", M.bounds());
}

/// M_j vanishes for j >> 0.
inline bool is_torsion_graded(const GradedModule& M) { return M.at(M.stable_degree()).is_zero(); }

/// Component sizes from lo to hi inclusive.
inline std::vector<std::size_t> component_sizes(const GradedModule& M, int lo, int hi) {
    std::vector<std::size_t> out;
    for (int j = lo; j <= hi; ++j) out.push_back(M.size_at(j));
    return out;
}

/// M / (x_j M : j != i) as a module over R[x].
inline GradedModule sector(const GradedModule& M, std::size_t i) {
    GradedRing B(M.ring().base(), 1);
    auto p = M.presentation();
    for (auto& r : p.rels)
        for (auto& t : r.terms)
            if (t.coeff.deg > 0) t.coeff.c = {t.coeff.c.at(i)};
    return GradedModule(B, std::move(p), M.label() + "|" + M.ring().var_name(i), M.bounds());
}

/// The stable component of the x_i-sector: the degree-0 part of M_{x_i}.
inline FinModule stable_sector(const GradedModule& M, std::size_t i) {
    auto S = sector(M, i);
    return S.at(S.stable_degree());
}

/// Points of Proj where the homogeneous localization is nonzero.
inline ElementSet graded_support(const GradedModule& M) {
    const auto& A = M.ring();
    auto n = spec(A.base()).size();
    ElementSet out(A.k() * n);
    for (std::size_t i = 0; i < A.k(); ++i) {
        auto supp = support_indices(stable_sector(M, i));
        for (auto p : supp.members()) out.insert(i * n + p);
    }
    return out;
}

/// Equal in QGr A: stable sectors agree up to isomorphism, as R[x]-tails.
inline bool qgr_equivalent_sizes(const GradedModule& M, const GradedModule& N) {
    for (std::size_t i = 0; i < M.ring().k(); ++i)
        if (!is_isomorphic(stable_sector(M, i), stable_sector(N, i))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Classification over Proj

/// The tensor torsion class S_V = {M : supp M ⊆ V}.
inline bool graded_class_membership(const GradedModule& M, const ElementSet& V) {
    return graded_support(M).subset_of(V);
}

/// Generators of S_V: A/p for each point p in V.
inline std::vector<GradedModule> class_generators(const GradedRing& A, const ElementSet& V) {
    std::vector<GradedModule> out;
    auto pts = proj_points(A);
    for (auto v : V.members()) out.push_back(quotient_by_ideal(point_ideal(A, pts[v])));
    return out;
}

/// V_S: union of the supports of a class's generators.
inline ElementSet class_to_proj_set(const GradedRing& A, const std::vector<GradedModule>& gens) {
    ElementSet V(proj_points(A).size());
    for (auto& M : gens) V |= graded_support(M);
    return V;
}

/// A family of graded modules for sampling: quotients by a few ideals,
/// twists, and their shifts.
inline std::vector<GradedModule> graded_sample(const GradedRing& A, int bound = 2) {
    std::vector<GradedModule> out{twist(A, 0), twist(A, 1), GradedModule(A, {}, "0")};
    auto pts = proj_points(A);
    for (auto& pt : pts) out.push_back(quotient_by_ideal(point_ideal(A, pt)));
    out.push_back(quotient_by_ideal(irrelevant_ideal(A)));
    for (auto& e : A.elements(0))
        if (!A.is_zero(e)) out.push_back(cyclic_graded(A, {e}));
    for (int d = 1; d <= bound; ++d)
        for (std::size_t i = 0; i < A.k(); ++i) out.push_back(cyclic_graded(A, {A.monomial(i, d, A.base()->one())}));
    auto P = spec(A.base());
    for (auto& Q : P)
        for (auto g : Q.ideal().minimal_generators())
            for (std::size_t i = 0; i < A.k(); ++i)
                out.push_back(cyclic_graded(A, {A.scalar(g), A.monomial(i, 2, A.base()->one())}));
    return out;
}

/// The t-filter {I : V(I) ∩ Proj ⊆ Y}, basis A_+ and the point ideals of Y.
inline TFilter proj_filter(const GradedRing& A, const ElementSet& Y) {
    auto pts = proj_points(A);
    std::vector<HomogIdeal> basis{irrelevant_ideal(A)};
    for (auto y : Y.members()) basis.push_back(point_ideal(A, pts.at(y)));
    return TFilter(A, std::move(basis));
}

/// is_torsion_graded against the components themselves up to `degree`.
inline Check torsion_detection_check(const std::vector<GradedModule>& sample, int degree) {
    auto c = Check::make("torsion detection", "stable-degree test agrees with components up to degree " +
                                                  std::to_string(degree));
    for (auto& M : sample) {
        bool brute = M.size_at(degree) == 1 && M.size_at(degree - 1) == 1;
        if (is_torsion_graded(M) != brute) c.fail_with(M.label());
    }
    return c;
}

/// A torsion module has empty support and zero localization at every x_i.
inline Check torsion_vanishing_check(const std::vector<GradedModule>& sample) {
    auto c = Check::make("torsion vanishing", "T_P = 0 and T_f = 0 for torsion T");
    for (auto& M : sample) {
        if (!is_torsion_graded(M)) continue;
        if (graded_support(M).count() != 0) c.fail_with(M.label() + " has support");
        for (std::size_t i = 0; i < M.ring().k(); ++i) {
            auto S = stable_sector(M, i);
            if (!S.is_zero()) c.fail_with(M.label() + " survives inverting " + M.ring().var_name(i));
            for (auto& P : spec(M.ring().base()))
                if (!localize_module(S, P).is_zero()) c.fail_with(M.label() + " at " + P.to_string());
        }
    }
    return c;
}

/// Membership in the class of V is invariant under shifts.
inline Check shift_closure_check(const GradedRing& A, const ElementSet& V, const std::vector<GradedModule>& sample) {
    auto c = Check::make("shift closed", "membership(M) iff membership(M(n)) for n in [-3, 3]");
    for (auto& M : sample) {
        bool base = graded_class_membership(M, V);
        for (int n = -3; n <= 3; ++n)
            if (graded_class_membership(shift(M, n), V) != base)
                c.fail_with(M.label() + " at n=" + std::to_string(n));
    }
    (void)A;
    return c;
}

/// Bijection between subsets of Proj and tensor torsion classes, exhaustive.
inline std::vector<Check> grad_classification_check(const GradedRing& A, const std::vector<GradedModule>& sample) {
    auto n = proj_points(A).size();
    if (n > 12) fail_bound("Proj has too many points for exhaustive classification");
    auto round = Check::make("V -> S_V -> V", "roundtrip through generators is the identity");
    auto recover = Check::make("V from members", "union of supports of sampled members of S_V is V");
    auto distinct = Check::make("classes distinct", "distinct V give distinct classes on the sample");
    auto ideal = Check::make("tensor ideal", "M in S_V implies M ⊗ N in S_V");
    auto shifts = Check::make("shift closed", "membership(M) iff membership(M(n)) for n in [-3, 3]");
    std::vector<std::vector<bool>> patterns;
    std::vector<ElementSet> supports;
    for (auto& M : sample) supports.push_back(graded_support(M));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        ElementSet V(n);
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) V.insert(i);
        auto gens = class_generators(A, V);
        if (class_to_proj_set(A, gens) != V) round.fail_with("mask " + std::to_string(mask));
        for (auto& g : gens)
            if (!graded_class_membership(g, V)) round.fail_with(g.label() + " not in its own class");

        std::vector<bool> pattern;
        ElementSet from_members(n);
        for (std::size_t s = 0; s < sample.size(); ++s) {
            bool in = supports[s].subset_of(V);
            pattern.push_back(in);
            if (in) from_members |= supports[s];
        }
        for (auto& g : gens) from_members |= graded_support(g);
        if (from_members != V) recover.fail_with("mask " + std::to_string(mask));
        for (auto& p : patterns)
            if (p == pattern) distinct.fail_with("mask " + std::to_string(mask) + " repeats a class");
        patterns.push_back(pattern);

        for (auto& g : gens)
            for (auto& N : sample)
                if (!graded_class_membership(tensor(g, N), V)) ideal.fail_with(g.label() + " ⊗ " + N.label());
        auto sc = shift_closure_check(A, V, gens);
        for (auto& w : sc.witnesses) shifts.fail_with(w);
    }
    return {round, recover, distinct, ideal, shifts};
}

}  // namespace spectra
