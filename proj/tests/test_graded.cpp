#include <gtest/gtest.h>

#include <random>
#include <set>

#include "spectra/graded.hpp"

using namespace spectra;

namespace {

RingPtr zmod(std::uint32_t n) { return make_ring(RingDescription::zmod(n)); }

bool all_pass(const std::vector<Check>& cs, std::string* first = nullptr) {
    for (auto& c : cs)
        if (!c.passed()) {
            if (first) *first = c.name + (c.witnesses.empty() ? "" : ": " + c.witnesses[0]);
            return false;
        }
    return true;
}

const Check& by_name(const std::vector<Check>& cs, const std::string& name) {
    for (auto& c : cs)
        if (c.name == name) return c;
    throw std::runtime_error("no check " + name);
}

HomogElem xpow(const GradedRing& A, int d, std::size_t i = 0) { return A.monomial(i, d, A.base()->one()); }

/// All R-submodules of R^k.
std::vector<ElementSet> submodules(const RingPtr& R, std::size_t k) {
    FreeCodec codec(R, k);
    std::set<ElementSet> out;
    for (std::size_t a = 0; a < codec.total(); ++a)
        for (std::size_t b = a; b < codec.total(); ++b) out.insert(codec.span({codec.decode(a), codec.decode(b)}));
    return {out.begin(), out.end()};
}

/// Homogeneous primes avoiding A_+, truncated to (I_0, I_1), found by
/// brute force over all ideal/submodule triples and primality up to degree 2.
std::set<std::pair<ElementSet, ElementSet>> proj_by_brute_force(const GradedRing& A) {
    const auto& R = A.base();
    auto subs = submodules(R, A.k());
    std::set<std::pair<ElementSet, ElementSet>> out;
    for (auto& I0 : enumerate_ideals(R)) {
        if (I0.is_unit_ideal()) continue;
        for (auto& I1 : subs)
            for (auto& I2 : subs) {
                HomogIdeal I(A, {I0.members(), I1, I2});
                auto in = [&](const HomogElem& a) { return a.deg > 2 || I.contains(a); };
                bool closed = true;
                for (int d = 0; d <= 1 && closed; ++d)
                    for (auto& a : A.elements(d))
                        if (I.contains(a))
                            for (std::size_t i = 0; i < A.k(); ++i) closed = closed && in(A.mul(xpow(A, 1, i), a));
                if (!closed) continue;
                bool avoids = false;
                for (std::size_t i = 0; i < A.k(); ++i) avoids = avoids || !I1.contains(A.encode(xpow(A, 1, i)));
                if (!avoids) continue;
                bool prime = true;
                for (int p = 0; p <= 2 && prime; ++p)
                    for (int q = p; p + q <= 2 && prime; ++q)
                        for (auto& a : A.elements(p))
                            for (auto& b : A.elements(q))
                                if (!I.contains(a) && !I.contains(b) && I.contains(A.mul(a, b))) prime = false;
                if (prime) out.insert({I0.members(), I1});
            }
    }
    return out;
}

/// supp by formal fractions: p is in supp M iff some m ∈ M_j survives every
/// homogeneous t outside p of degree <= 2.
bool in_support_by_fractions(const GradedModule& M, const ProjPoint& pt) {
    const auto& A = M.ring();
    auto P = point_ideal(A, pt);
    std::vector<HomogElem> S;
    for (int d = 0; d <= 2; ++d)
        for (auto& t : A.elements(d))
            if (!P.contains(t)) S.push_back(t);
    int lo = M.min_degree(), hi = M.stable_degree() + 1;
    for (int j = lo; j <= hi; ++j)
        for (Elem m = 1; m < M.size_at(j); ++m) {
            bool survives = true;
            for (auto& t : S)
                if (M.act(t, j, m) == 0) {
                    survives = false;
                    break;
                }
            if (survives) return true;
        }
    return false;
}

std::vector<GradedRing> graded_corpus() {
    std::vector<GradedRing> out;
    for (std::uint32_t n : {2u, 4u, 6u, 8u, 9u, 12u}) out.emplace_back(zmod(n), 1);
    out.emplace_back(make_ring(RingDescription::galois_field(2, 2)), 1);
    for (std::uint32_t n : {2u, 4u, 6u}) out.emplace_back(zmod(n), 2);
    out.emplace_back(zmod(2), 3);
    out.emplace_back(zmod(3), 3);
    return out;
}

}  // namespace

TEST(ProjPoints, Examples) {
    GradedRing A4(zmod(4), 1);
    auto pts = proj_points(A4);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(proj_label(A4, pts[0]), "(2)");
    EXPECT_EQ(proj_points(GradedRing(zmod(6), 1)).size(), 2u);
    GradedRing B(zmod(4), 2);
    auto bp = proj_points(B);
    ASSERT_EQ(bp.size(), 2u);
    EXPECT_EQ(proj_label(B, bp[0]), "(2,x2)");
    EXPECT_EQ(proj_label(B, bp[1]), "(2,x1)");
}

TEST(ProjPoints, PrimeAndAvoidIrrelevant) {
    for (auto& A : graded_corpus())
        for (auto& pt : proj_points(A)) {
            auto P = point_ideal(A, pt);
            EXPECT_TRUE(homog_prime_upto(P, A.k() > 2 ? 2 : 3)) << A.label() << " " << P.to_string();
            EXPECT_FALSE(irrelevant_ideal(A).subset_of(P));
        }
}

TEST(ProjPoints, MatchBruteForce) {
    for (auto& A : {GradedRing(zmod(4), 1), GradedRing(zmod(6), 1), GradedRing(zmod(4), 2), GradedRing(zmod(6), 2),
                    GradedRing(make_ring(RingDescription::galois_field(2, 2)), 2)}) {
        std::set<std::pair<ElementSet, ElementSet>> ours;
        for (auto& pt : proj_points(A)) {
            auto P = point_ideal(A, pt);
            ours.insert({P.component(0), P.component(1)});
        }
        EXPECT_EQ(ours, proj_by_brute_force(A)) << A.label();
    }
}

TEST(HomogIdeals, ProductsAndColons) {
    GradedRing A(zmod(4), 1);
    auto x = homog_ideal(A, {xpow(A, 1)});
    EXPECT_EQ(homog_power(x, 3), homog_ideal(A, {xpow(A, 3)}));
    auto two = homog_ideal(A, {A.scalar(2)});
    EXPECT_EQ(homog_product(two, two), zero_homog_ideal(A));
    EXPECT_EQ(homog_colon(homog_ideal(A, {xpow(A, 3)}), xpow(A, 1)), homog_ideal(A, {xpow(A, 2)}));
    EXPECT_EQ(homog_colon(two, A.scalar(2)), unit_homog_ideal(A));
    EXPECT_TRUE(homog_ideal(A, {xpow(A, 2)}).subset_of(x));
    EXPECT_EQ(homog_ideal(A, {xpow(A, 2), A.scalar(2)}).to_string(), "(2,x^2)");
}

TEST(HomogIdeals, EnumerationCounts) {
    // (Z/4)[x], generated in degree <= 4: non-decreasing chains I_0 ⊆ ... ⊆ I_4 of
    // ideals in a 3-chain, C(7,2) = 21
    GradedRing A(zmod(4), 1);
    EXPECT_EQ(all_homog_ideals(A, 4).size(), 21u);
    GradedRing F(zmod(2), 1);
    EXPECT_EQ(all_homog_ideals(F, 3).size(), 5u);
}

TEST(TFilter, Examples) {
    GradedRing A(zmod(4), 1);
    auto F = tors_filter(A);
    EXPECT_TRUE(F.contains(homog_ideal(A, {xpow(A, 3)})));
    EXPECT_TRUE(F.contains(unit_homog_ideal(A)));
    EXPECT_FALSE(F.contains(homog_ideal(A, {A.scalar(2)})));
    EXPECT_FALSE(F.contains(zero_homog_ideal(A)));
    auto G = tfilter_from_basis(A, {homog_ideal(A, {A.scalar(2)})});
    EXPECT_TRUE(G.contains(zero_homog_ideal(A)));  // (2)^2 = 0
}

TEST(TFilter, AxiomsExamples) {
    GradedRing A(zmod(4), 1);
    EXPECT_TRUE(all_pass(tfilter_axioms_check(tors_filter(A), 4)));
    auto trivial = tfilter_from_basis(A, {unit_homog_ideal(A)});
    EXPECT_TRUE(all_pass(tfilter_axioms_check(trivial, 4)));
    // the Tors filter with (x^2) removed: (x^3 : x) = (x^2) is missing
    auto x2 = homog_ideal(A, {xpow(A, 2)});
    auto F = tors_filter(A);
    auto doctored = tfilter_axioms_check(A, [&](const HomogIdeal& I) { return F.contains(I) && !(I == x2); }, 4);
    EXPECT_FALSE(by_name(doctored, "T2").passed());
    EXPECT_FALSE(by_name(doctored, "T2").witnesses.empty());
}

TEST(TFilter, AxiomsOverRandomBases) {
    for (auto& A : {GradedRing(zmod(4), 1), GradedRing(zmod(6), 1), GradedRing(zmod(2), 2)}) {
        auto ideals = all_homog_ideals(A, 2);
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<HomogIdeal> basis;
            for (int b = 0; b < 2; ++b) basis.push_back(ideals[rng() % ideals.size()]);
            auto F = tfilter_from_basis(A, basis);
            std::string why;
            EXPECT_TRUE(all_pass(tfilter_axioms_check(F, 2), &why)) << A.label() << " " << F.to_string() << " " << why;
        }
    }
}

TEST(TFilter, RefinesTorsIffContainsIrrelevant) {
    GradedRing A(zmod(6), 1);
    auto ideals = all_homog_ideals(A, 2);
    auto T = tors_filter(A);
    for (auto& B : ideals) {
        auto F = tfilter_from_basis(A, {B});
        bool refines = true;
        for (auto& I : ideals) refines = refines && (!T.contains(I) || F.contains(I));
        EXPECT_EQ(refines, F.contains(irrelevant_ideal(A))) << B.to_string();
    }
}

TEST(TFilter, ClassifiedByProjPointsItContains) {
    // a filter refining Tors is {I : V(I) ∩ Proj ⊆ Y} with Y its member points
    for (auto& A : {GradedRing(zmod(6), 1), GradedRing(zmod(4), 2), GradedRing(zmod(2), 2)}) {
        auto ideals = all_homog_ideals(A, 2);
        auto pts = proj_points(A);
        for (auto& B : ideals) {
            auto F = tfilter_from_basis(A, {B, irrelevant_ideal(A)});
            std::vector<bool> Y;
            for (auto& pt : pts) Y.push_back(F.contains(point_ideal(A, pt)));
            for (auto& I : ideals) {
                bool inside = true;
                for (std::size_t p = 0; p < pts.size(); ++p)
                    if (I.subset_of(point_ideal(A, pts[p])) && !Y[p]) inside = false;
                EXPECT_EQ(F.contains(I), inside) << A.label() << " B=" << B.to_string() << " I=" << I.to_string();
            }
        }
    }
}

TEST(IsTorsionGraded, Examples) {
    GradedRing A(zmod(4), 1);
    auto M = cyclic_graded(A, {xpow(A, 2)});
    EXPECT_TRUE(is_torsion_graded(M));
    EXPECT_EQ(M.size_at(0), 4u);
    EXPECT_EQ(M.size_at(1), 4u);
    EXPECT_EQ(M.size_at(2), 1u);
    EXPECT_FALSE(is_torsion_graded(twist(A, 0)));
    auto two = cyclic_graded(A, {A.scalar(2)});
    EXPECT_FALSE(is_torsion_graded(two));
    EXPECT_EQ(two.size_at(two.stable_degree()), 2u);
}

TEST(GradedOps, ShiftAndTwist) {
    GradedRing A(zmod(4), 1);
    EXPECT_EQ(twist(A, 1).size_at(0), A.component_size(1));
    GradedRing B(zmod(3), 2);
    EXPECT_EQ(twist(B, 1).size_at(0), 9u);
    auto M = cyclic_graded(A, {A.scalar(2)});
    auto M3 = shift(M, 3);
    for (int j = -4; j <= 3; ++j) EXPECT_EQ(M3.size_at(j), M.size_at(j + 3));
}

TEST(GradedOps, TwistsMultiply) {
    for (auto& A : {GradedRing(zmod(4), 1), GradedRing(zmod(6), 2)})
        for (int d = -2; d <= 2; ++d)
            for (int e = -2; e <= 2; ++e) {
                auto T = tensor(twist(A, d), twist(A, e));
                auto O = twist(A, d + e);
                for (int j = -4; j <= 6; ++j) EXPECT_TRUE(is_isomorphic(T.at(j), O.at(j))) << d << " " << e << " " << j;
            }
}

TEST(GradedOps, TwistTensorIsShift) {
    for (auto& A : {GradedRing(zmod(4), 1), GradedRing(zmod(2), 2)})
        for (auto& X : graded_sample(A))
            for (int d : {-1, 1, 2}) {
                auto lhs = shift(X, d);
                auto rhs = tensor(twist(A, d), X);
                for (int j = -3; j <= 6; ++j)
                    EXPECT_TRUE(is_isomorphic(lhs.at(j), rhs.at(j))) << X.label() << " d=" << d << " j=" << j;
            }
}

TEST(GradedOps, TensorWithTorsionIsTorsion) {
    for (auto& A : graded_corpus()) {
        auto T = quotient_by_ideal(irrelevant_ideal(A));
        auto T2 = cyclic_graded(A, {xpow(A, 2, 0)});
        for (auto& M : graded_sample(A, 1)) {
            EXPECT_TRUE(is_torsion_graded(tensor(M, T))) << A.label() << " " << M.label();
            if (A.k() == 1) {
                EXPECT_TRUE(is_torsion_graded(tensor(M, T2))) << A.label() << " " << M.label();
            }
        }
    }
}

TEST(GradedSupport, Examples) {
    GradedRing A(zmod(4), 1);
    auto two = cyclic_graded(A, {A.scalar(2)});
    EXPECT_EQ(graded_support(two).count(), 1u);
    EXPECT_TRUE(graded_support(cyclic_graded(A, {xpow(A, 2)})).empty());
    for (auto& B : graded_corpus())
        EXPECT_EQ(graded_support(twist(B, 0)).count(), proj_points(B).size()) << B.label();
}

TEST(GradedSupport, MatchesFractionOracle) {
    for (auto& A : {GradedRing(zmod(4), 1), GradedRing(zmod(6), 1), GradedRing(zmod(12), 1), GradedRing(zmod(4), 2),
                    GradedRing(zmod(6), 2)}) {
        auto pts = proj_points(A);
        for (auto& M : graded_sample(A)) {
            auto supp = graded_support(M);
            for (std::size_t p = 0; p < pts.size(); ++p)
                EXPECT_EQ(supp.contains(p), in_support_by_fractions(M, pts[p])) << A.label() << " " << M.label() << " " << p;
        }
    }
}

TEST(GradedProperties, SizesStabilize) {
    for (auto& A : graded_corpus())
        for (auto& M : graded_sample(A)) {
            int s = M.stable_degree();
            auto sizes = component_sizes(M, s, s + 3);
            for (auto z : sizes) EXPECT_EQ(z, sizes[0]) << A.label() << " " << M.label();
            auto before = component_sizes(M, M.presentation_degree() + 1, s);
            for (std::size_t i = 1; i < before.size(); ++i) EXPECT_LE(before[i], before[i - 1]);
        }
}

TEST(GradedProperties, SupportShiftInvariant) {
    for (auto& A : graded_corpus())
        for (auto& M : graded_sample(A, 1))
            for (int n = -3; n <= 3; ++n) EXPECT_EQ(graded_support(shift(M, n)), graded_support(M)) << M.label();
}

TEST(GradedProperties, TensorSupport) {
    for (auto& A : {GradedRing(zmod(6), 1), GradedRing(zmod(12), 1), GradedRing(zmod(4), 2), GradedRing(zmod(6), 2)}) {
        auto sample = graded_sample(A, 1);
        for (auto& M : sample)
            for (auto& N : sample) {
                auto st = graded_support(tensor(M, N));
                auto both = graded_support(M) & graded_support(N);
                EXPECT_TRUE(st.subset_of(both)) << M.label() << " ⊗ " << N.label();
                if (M.presentation().gens.size() == 1 && N.presentation().gens.size() == 1) {
                    EXPECT_EQ(st, both) << M.label() << " ⊗ " << N.label();
                }
            }
    }
}

TEST(GradedProperties, TorsionHasNoSupport) {
    for (auto& A : graded_corpus())
        for (auto& M : graded_sample(A)) {
            if (!is_torsion_graded(M)) continue;
            EXPECT_TRUE(graded_support(M).empty()) << M.label();
            // M_{x_i} = 0: every element dies under a power of x_i
            for (std::size_t i = 0; i < A.k(); ++i)
                for (int j = M.min_degree(); j <= M.stable_degree(); ++j)
                    for (Elem m = 0; m < M.size_at(j); ++m)
                        EXPECT_EQ(M.act(xpow(A, M.stable_degree() - j + 1, i), j, m), 0u) << M.label();
        }
}

TEST(GradClassification, Z6HasFourClasses) {
    GradedRing A(zmod(6), 1);
    ASSERT_EQ(proj_points(A).size(), 2u);
    std::string why;
    EXPECT_TRUE(all_pass(grad_classification_check(A, graded_sample(A)), &why)) << why;
    ElementSet none(2);
    EXPECT_FALSE(graded_class_membership(twist(A, 0), none));
    EXPECT_TRUE(graded_class_membership(cyclic_graded(A, {xpow(A, 1)}), none));
    EXPECT_TRUE(graded_class_membership(twist(A, 3), ElementSet::full(2)));
}

TEST(GradClassification, Corpus) {
    for (auto& A : graded_corpus()) {
        if (A.k() > 2) continue;
        std::string why;
        EXPECT_TRUE(all_pass(grad_classification_check(A, graded_sample(A, 1)), &why)) << A.label() << " " << why;
    }
}

TEST(ShiftClosure, Examples) {
    GradedRing A(zmod(4), 1);
    std::vector<GradedModule> sample{cyclic_graded(A, {A.scalar(2)}), GradedModule(A, {}, "0"), twist(A, 0), twist(A, 5)};
    for (auto& V : {ElementSet(1), ElementSet::full(1)}) EXPECT_TRUE(shift_closure_check(A, V, sample).passed());
    EXPECT_TRUE(graded_class_membership(GradedModule(A, {}, "0"), ElementSet(1)));
    EXPECT_FALSE(graded_class_membership(twist(A, 5), ElementSet(1)));
}

TEST(GradedModule, RejectsInhomogeneousRelation) {
    GradedRing A(zmod(4), 1);
    GradedPresentation p{{0}, {{2, {{0, xpow(A, 1)}}}}};
    EXPECT_THROW(GradedModule(A, p), Error);
}

TEST(ProjFilter, MembershipMatchesPointCriterion) {
    for (auto& A : {GradedRing(zmod(6), 1), GradedRing(zmod(4), 2), GradedRing(zmod(2), 2)}) {
        auto pts = proj_points(A);
        auto ideals = all_homog_ideals(A, 2);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pts.size()); ++mask) {
            ElementSet Y(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (mask >> i & 1) Y.insert(i);
            auto F = proj_filter(A, Y);
            for (auto& I : ideals) {
                bool inside = true;
                for (std::size_t p = 0; p < pts.size(); ++p)
                    if (I.subset_of(point_ideal(A, pts[p])) && !Y.contains(p)) inside = false;
                EXPECT_EQ(F.contains(I), inside) << A.label() << " mask " << mask << " I=" << I.to_string();
            }
        }
    }
}

TEST(TFilter, SampledAxiomsAtHigherDegree) {
    for (auto& A : {GradedRing(zmod(4), 2), GradedRing(zmod(6), 2), GradedRing(zmod(2), 3)}) {
        auto ideals = sample_homog_ideals(A, 6, 20, 3);
        auto elems = sample_homog_elements(A, 6, 20, 3);
        ElementSet Y(proj_points(A).size());
        Y.insert(0);
        for (auto& F : {tors_filter(A), proj_filter(A, Y)}) {
            std::string why;
            EXPECT_TRUE(all_pass(tfilter_axioms_check(A, [&](const HomogIdeal& I) { return F.contains(I); }, ideals, elems), &why))
                << A.label() << " " << F.to_string() << " " << why;
        }
    }
}

TEST(TFilter, SampledAxiomsCatchDoctoredFilter) {
    GradedRing A(zmod(4), 1);
    auto F = tors_filter(A);
    auto x2 = homog_ideal(A, {xpow(A, 2)}).canonical();
    auto ideals = sample_homog_ideals(A, 6, 10, 1);
    ideals.push_back(x2);
    ideals.push_back(homog_ideal(A, {xpow(A, 3)}).canonical());
    auto elems = sample_homog_elements(A, 6, 10, 1);
    auto checks = tfilter_axioms_check(A, [&](const HomogIdeal& I) { return F.contains(I) && !(I == x2); }, ideals, elems);
    EXPECT_FALSE(by_name(checks, "T2").passed());
}

TEST(SampleHomog, DeterministicAndHomogeneous) {
    GradedRing A(zmod(6), 2);
    auto a = sample_homog_elements(A, 4, 30, 9), b = sample_homog_elements(A, 4, 30, 9);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].deg, b[i].deg);
        EXPECT_EQ(a[i].c, b[i].c);
        EXPECT_LE(a[i].deg, 4);
    }
    auto I = sample_homog_ideals(A, 4, 10, 9);
    EXPECT_EQ(I.size(), 3 + proj_points(A).size() + 10);
    EXPECT_TRUE(I[1].is_unit());
}

TEST(TorsionChecks, DetectionAndVanishing) {
    for (auto& A : {GradedRing(zmod(4), 1), GradedRing(zmod(6), 2), GradedRing(zmod(2), 2)}) {
        auto sample = graded_sample(A);
        EXPECT_TRUE(torsion_detection_check(sample, 12).passed()) << A.label();
        EXPECT_TRUE(torsion_vanishing_check(sample).passed()) << A.label();
    }
    GradedRing A(zmod(4), 1);
    auto T = cyclic_graded(A, {xpow(A, 2)});
    auto S = twist(A, 0);
    EXPECT_TRUE(torsion_detection_check({T, S}, 12).passed());
    EXPECT_TRUE(is_torsion_graded(T));
    EXPECT_FALSE(is_torsion_graded(S));
}
