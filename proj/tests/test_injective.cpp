#include <gtest/gtest.h>

#include "spectra/corpus.hpp"
#include "spectra/injective.hpp"

using namespace spectra;

namespace {

RingPtr zmod(std::uint32_t n) { return make_ring(RingDescription::zmod(n)); }

Ideal principal(const RingPtr& R, Elem a) { return ideal_from_generators(R, {a}); }

std::vector<RingPtr> corpus(std::uint32_t max) {
    std::vector<RingPtr> out;
    for (auto& d : standard_ring_corpus(max)) out.push_back(make_ring(d));
    return out;
}

std::size_t injective_with_prime(const std::vector<IndecInjective>& inj, const Ideal& P) {
    for (std::size_t i = 0; i < inj.size(); ++i)
        if (p_of_e(inj[i].module).ideal() == P) return i;
    throw std::runtime_error("no injective with P(E) = " + P.to_string());
}

}  // namespace

TEST(IndecInjectives, Z4IsSelfInjective) {
    auto R = zmod(4);
    auto inj = indec_injectives(R);
    ASSERT_EQ(inj.size(), 1u);
    EXPECT_TRUE(is_isomorphic(inj[0].module, free_module(R, 1)));
    EXPECT_TRUE(baer_check(inj[0].module).passed());
    EXPECT_TRUE(baer_check(free_module(R, 1)).passed());
}

TEST(IndecInjectives, FieldIsItsOwnInjective) {
    auto k = make_ring(RingDescription::galois_field(2, 2));
    auto inj = indec_injectives(k);
    ASSERT_EQ(inj.size(), 1u);
    EXPECT_TRUE(is_isomorphic(inj[0].module, free_module(k, 1)));
    EXPECT_TRUE(p_of_e(inj[0].module).ideal().is_zero());
}

TEST(IndecInjectives, Z12HasSizesFourAndThree) {
    auto R = zmod(12);
    auto inj = indec_injectives(R);
    ASSERT_EQ(inj.size(), 2u);
    std::vector<std::size_t> sizes{inj[0].module.size(), inj[1].module.size()};
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, (std::vector<std::size_t>{3, 4}));
    for (auto& E : inj) {
        EXPECT_TRUE(baer_check(E.module).passed()) << E.label;
        EXPECT_TRUE(indecomposable_check(E.module).passed()) << E.label;
    }
}

TEST(IndecInjectives, NonInjectiveFailsBaer) {
    // Z/2 over Z/4: the inclusion (2) -> Z/2 sending 2 to 1 does not extend
    auto R = zmod(4);
    auto M = cyclic_module(principal(R, 2));
    EXPECT_FALSE(baer_check(M).passed());
}

TEST(IndecInjectives, DecomposableCaught) {
    auto R = zmod(6);
    EXPECT_FALSE(indecomposable_check(free_module(R, 1)).passed());
}

TEST(POfE, Examples) {
    auto R4 = zmod(4);
    EXPECT_EQ(p_of_e(indec_injectives(R4)[0].module).ideal(), principal(R4, 2));

    auto R12 = zmod(12);
    auto inj = indec_injectives(R12);
    for (auto& E : inj) {
        auto P = p_of_e(E.module).ideal();
        if (E.module.size() == 3)
            EXPECT_EQ(P, principal(R12, 3));
        else
            EXPECT_EQ(P, principal(R12, 2));
    }

    auto R8 = zmod(8);
    auto inj8 = indec_injectives(R8);
    ASSERT_EQ(inj8.size(), 1u);
    EXPECT_EQ(p_of_e(inj8[0].module).ideal(), principal(R8, 2));
}

TEST(DfgMembership, Examples) {
    auto R = zmod(12);
    auto inj = indec_injectives(R);
    auto two_local = injective_with_prime(inj, principal(R, 2));
    auto three_local = injective_with_prime(inj, principal(R, 3));
    EXPECT_FALSE(dfg_membership(inj[two_local].module, principal(R, 2)));
    EXPECT_TRUE(dfg_membership(inj[three_local].module, principal(R, 2)));
    for (auto& E : inj) {
        EXPECT_TRUE(dfg_membership(E.module, unit_ideal(R)));
        // S_(0) contains every module, so nothing nonzero is (0)-torsion-free
        EXPECT_FALSE(dfg_membership(E.module, zero_ideal(R)));
    }
}

TEST(Indistinguishable, Examples) {
    auto R = zmod(12);
    auto inj = indec_injectives(R);
    EXPECT_FALSE(indistinguishable(inj[0].module, inj[1].module));
    EXPECT_TRUE(indistinguishable(inj[0].module, inj[0].module));
    EXPECT_THROW(indistinguishable(inj[0].module, indec_injectives(zmod(4))[0].module), Error);
}

TEST(InjectiveOpenLatticeMaps, Z12) {
    auto R = zmod(12);
    auto inj = indec_injectives(R);
    auto primes = spec(R);
    auto two = index_of_prime(primes, *PrimeIdeal::certify(principal(R, 2)));
    ElementSet V(primes.size());
    V.insert(two);
    auto Q = lll_phi(inj, primes, V);
    ASSERT_EQ(Q.count(), 1u);
    EXPECT_EQ(p_of_e(inj[Q.members()[0]].module).ideal(), principal(R, 2));
    EXPECT_TRUE(lll_phi(inj, primes, ElementSet(primes.size())).empty());
    auto opens = FiniteThomason::all_subsets(R);
    ASSERT_EQ(opens.size(), 4u);
    for (auto& O : opens) EXPECT_EQ(lll_psi(inj, primes, lll_phi(inj, primes, O.points())), O.points());
    EXPECT_EQ(injfg_dual_opens(inj, R).size(), 4u);
}

TEST(HomVanishing, Examples) {
    auto R = zmod(12);
    auto inj = indec_injectives(R);
    EXPECT_EQ(hom_nonvanishing_set(free_module(R, 1), inj).count(), inj.size());
    EXPECT_TRUE(hom_nonvanishing_set(free_module(R, 0), inj).empty());
    auto Z4 = cyclic_module(principal(R, 4));
    auto s = hom_nonvanishing_set(Z4, inj);
    ASSERT_EQ(s.count(), 1u);
    EXPECT_EQ(p_of_e(inj[s.members()[0]].module).ideal(), principal(R, 2));
    EXPECT_EQ(hom_vanishing_set(Z4, inj), s.complement());
}

TEST(HomVanishing, MatchesSupportOnModuleCorpus) {
    for (auto& R : corpus(24)) {
        auto inj = indec_injectives(R);
        auto primes = spec(R);
        for (auto& M : module_corpus(R, 32, 7, 2, 3)) {
            if (M.size() * R->size() > Bounds{}.hom_pairs) continue;
            EXPECT_EQ(hom_nonvanishing_set(M, inj), lll_phi(inj, primes, support_indices(M)))
                << R->label() << " " << M.label();
        }
    }
}

TEST(HomVanishing, FilterFromPrimeSetAgrees) {
    for (auto& R : corpus(36)) {
        auto inj = indec_injectives(R);
        auto primes = spec(R);
        for (auto& T : FiniteThomason::all_subsets(R)) {
            auto F = filter_from_prime_set(R, T.points());
            for (auto& I : enumerate_ideals(R))
                EXPECT_EQ(F.contains(I), hom_vanishing_filter_contains(I, inj, T.points()))
                    << R->label() << " " << T.to_string() << " " << I.to_string();
        }
    }
}

TEST(InjectiveSuite, WholeCorpusPasses) {
    for (auto& R : corpus(64)) {
        for (auto& c : injective_suite(R))
            EXPECT_TRUE(c.passed()) << R->label() << ": " << c.name << " "
                                    << (c.witnesses.empty() ? "" : c.witnesses[0]);
    }
}

TEST(InjectiveSuite, DfgRestrictsToZariskiOpens) {
    for (auto& R : corpus(48)) {
        auto inj = indec_injectives(R);
        auto primes = spec(R);
        ASSERT_EQ(inj.size(), primes.size());
        for (auto& I : enumerate_ideals(R)) {
            auto D = v_set(I).points().complement();
            EXPECT_EQ(lll_psi(inj, primes, dfg_set(inj, I)), D) << R->label() << " " << I.to_string();
        }
    }
}
