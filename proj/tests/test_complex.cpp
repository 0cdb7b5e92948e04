#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "spectra/corpus.hpp"
#include "spectra/perfect_complex.hpp"

using namespace spectra;

namespace {

using ZComplex = PerfectComplex<IntegerRing>;
using ZSet = EuclidThomason<IntegerRing>;
using FComplex = PerfectComplex<FiniteRingOps>;

ZComplex times(long a) { return elementary_complex(IntegerRing{}, BigInt(a)); }
ZComplex ring_in_degree_zero() { return ZComplex(IntegerRing{}, 0, {1}, {}); }

std::vector<RingPtr> corpus(std::uint32_t max) {
    std::vector<RingPtr> out;
    for (auto& d : standard_ring_corpus(max)) out.push_back(make_ring(d));
    return out;
}

Matrix<Elem> random_elem_matrix(std::mt19937_64& gen, const FiniteRing& R, std::size_t r, std::size_t c) {
    Matrix<Elem> m(r, c, 0);
    for (auto& x : m.data) x = static_cast<Elem>(gen() % R.size());
    return m;
}

/// R^a -> R^b -> R^c with the second map random and the first built from
/// kernel vectors of it.
FComplex random_finite_complex(std::mt19937_64& gen, const RingPtr& R) {
    FiniteRingOps ops{R};
    std::size_t a = 1 + gen() % 2, b = 1 + gen() % 2, c = gen() % 3;
    auto d1 = random_elem_matrix(gen, *R, c, b);
    FreeCodec codec(R, b);
    std::vector<std::vector<Elem>> kernel;
    for (std::size_t code = 0; code < codec.total(); ++code) {
        auto v = codec.decode(code);
        bool zero = true;
        for (std::size_t i = 0; i < c && zero; ++i) {
            Elem s = R->zero();
            for (std::size_t j = 0; j < b; ++j) s = R->add(s, R->mul(d1.at(i, j), v[j]));
            zero = s == R->zero();
        }
        if (zero) kernel.push_back(v);
    }
    Matrix<Elem> d2(b, a, 0);
    for (std::size_t j = 0; j < a; ++j) {
        auto& v = kernel[gen() % kernel.size()];
        for (std::size_t i = 0; i < b; ++i) d2.at(i, j) = v[i];
    }
    if (c == 0) return FComplex(ops, 1, {b, a}, {d2});
    return FComplex(ops, 0, {c, b, a}, {d1, d2});
}

}  // namespace

TEST(Homology, Examples) {
    IntegerRing Z;
    auto X = times(2);
    auto h0 = homology(X, 0), h1 = homology(X, 1);
    EXPECT_EQ(h0.free_rank, 0u);
    EXPECT_EQ(h0.torsion, (std::vector<BigInt>{2}));
    EXPECT_TRUE(h1.is_zero());
    EXPECT_TRUE(homology(ZComplex::zero(Z), 0).is_zero());
    auto id = times(1);
    EXPECT_TRUE(homology(id, 0).is_zero());
    EXPECT_TRUE(homology(id, 1).is_zero());

    auto R = make_ring(RingDescription::zmod(12));
    FComplex F(FiniteRingOps{R}, 0, {1, 1}, {Matrix<Elem>(1, 1, 4)});
    EXPECT_EQ(homology(F, 0).size(), 4u);
    EXPECT_EQ(homology(F, 1).size(), 4u);  // ker(·4) = (3)
}

TEST(PerfectComplex, RejectsNonComplexes) {
    IntegerRing Z;
    EXPECT_THROW(ZComplex(Z, 0, {1, 1, 1}, {Matrix<BigInt>(1, 1, BigInt(2)), Matrix<BigInt>(1, 1, BigInt(3))}), Error);
    EXPECT_THROW(ZComplex(Z, 0, {1, 2}, {Matrix<BigInt>(1, 1, BigInt(2))}), Error);
    EXPECT_THROW(ZComplex(Z, 0, {1, 1}, {}), Error);
}

TEST(SuppComplex, Examples) {
    IntegerRing Z;
    EXPECT_EQ(supp_complex(times(2)), ZSet::v(Z, 2));
    EXPECT_TRUE(supp_complex(times(-1)).is_empty());
    EXPECT_TRUE(supp_complex(ring_in_degree_zero()).is_all());
    EXPECT_TRUE(supp_complex(ZComplex::zero(Z)).is_empty());
}

TEST(ThomasonMaps, Examples) {
    IntegerRing Z;
    EXPECT_EQ(thomason_mu(Z, {times(2), times(3)}), ZSet::v(Z, 6));
    auto empty = thomason_nu(ZSet::empty(Z));
    EXPECT_TRUE(thick_membership(times(1), empty));
    EXPECT_TRUE(thick_membership(ZComplex::zero(Z), empty));
    EXPECT_FALSE(thick_membership(times(2), empty));
    auto v30 = ZSet::v(Z, 30);
    auto gens = thick_generators(v30);
    EXPECT_EQ(gens.size(), 3u);
    EXPECT_EQ(thomason_mu(Z, gens), v30);
}

TEST(ThickTorsionCorrespondence, Examples) {
    IntegerRing Z;
    auto T = qqq_sigma(TorsionClass<ZSet>{ZSet::v(Z, 2)});
    EXPECT_TRUE(thick_membership(times(2), T));
    EXPECT_FALSE(thick_membership(times(3), T));
    EXPECT_TRUE(sigma_membership(times(4), TorsionClass<ZSet>{ZSet::v(Z, 2)}));
    auto zero = qqq_sigma(TorsionClass<ZSet>{ZSet::empty(Z)});
    EXPECT_TRUE(thick_membership(times(-1), zero));
    EXPECT_FALSE(thick_membership(ring_in_degree_zero(), zero));

    auto R = make_ring(RingDescription::zmod(12));
    auto subsets = FiniteThomason::all_subsets(R);
    ASSERT_EQ(subsets.size(), 4u);
    for (auto& Y : subsets) {
        auto S = TorsionClass<FiniteThomason>{Y};
        auto sigma = qqq_sigma(S);
        EXPECT_EQ(qqq_rho(R, thick_generators(sigma.open)).open, Y);
    }
}

TEST(Koszul, SupportIsVOfTheIdeal) {
    IntegerRing Z;
    auto K = koszul(Z, {BigInt(4), BigInt(6)});
    EXPECT_EQ(K.lo(), 0);
    EXPECT_EQ(K.hi(), 2);
    auto h0 = homology(K, 0);
    EXPECT_EQ(h0.torsion, (std::vector<BigInt>{2}));
    EXPECT_EQ(supp_complex(K), ZSet::v(Z, 2));
    EXPECT_TRUE(supp_complex(koszul(Z, {BigInt(0)})).is_all());
    EXPECT_TRUE(supp_complex(koszul(Z, {BigInt(5), BigInt(7)})).is_empty());

    for (auto& R : corpus(30)) {
        FiniteRingOps ops{R};
        for (auto& I : enumerate_ideals(R)) {
            auto KI = koszul(ops, I.minimal_generators());
            EXPECT_EQ(supp_complex(KI), v_set(I)) << R->label() << " " << I.to_string();
        }
    }
}

TEST(ShiftAndTrim, Basics) {
    IntegerRing Z;
    auto X = times(6);
    auto Y = shift(X, 3);
    EXPECT_EQ(Y.lo(), 3);
    EXPECT_EQ(homology(Y, 3).torsion, (std::vector<BigInt>{6}));
    ZComplex padded(Z, -1, {0, 1, 1, 0}, {Matrix<BigInt>(0, 1, BigInt(0)), Matrix<BigInt>(1, 1, BigInt(6)),
                                          Matrix<BigInt>(1, 0, BigInt(0))});
    auto t = trim(padded);
    EXPECT_EQ(t.lo(), 0);
    EXPECT_EQ(t.hi(), 1);
    EXPECT_TRUE(trim(ZComplex(Z, 0, {0, 0}, {Matrix<BigInt>(0, 0, BigInt(0))})).empty());
}

// ---------------------------------------------------------------------------

TEST(ComplexProperties, FiniteSupportMatchesLocalization) {
    std::mt19937_64 gen(11);
    for (auto& R : corpus(24))
        for (int trial = 0; trial < 6; ++trial) {
            auto X = random_finite_complex(gen, R);
            EXPECT_EQ(supp_complex(X), supp_by_localization(X)) << R->label() << " " << X.to_string();
        }
}

TEST(ComplexProperties, ConeSupportAndShift) {
    std::mt19937_64 gen(12);
    std::uniform_int_distribution<long> v(-12, 12);
    for (int trial = 0; trial < 300; ++trial) {
        long a = v(gen), b = v(gen), s = v(gen), extra = v(gen);
        auto X = times(a), Y = times(b);
        // f_0 = b·s, f_1 = a·s satisfies b f_1 = f_0 a
        ChainMap<IntegerRing> f{X, Y, {{0, Matrix<BigInt>(1, 1, BigInt(b * s))}, {1, Matrix<BigInt>(1, 1, BigInt(a * s))}}};
        ASSERT_TRUE(f.is_chain_map());
        auto C = cone(f);
        EXPECT_TRUE(supp_complex(C).subset_of(supp_complex(X).union_with(supp_complex(Y))));
        EXPECT_EQ(supp_complex(shift(X, static_cast<int>(extra))), supp_complex(X));
    }
    auto X = times(6);
    ChainMap<IntegerRing> id{X, X, {{0, Matrix<BigInt>(1, 1, BigInt(1))}, {1, Matrix<BigInt>(1, 1, BigInt(1))}}};
    EXPECT_TRUE(supp_complex(cone(id)).is_empty());
    ChainMap<IntegerRing> bad{X, X, {{0, Matrix<BigInt>(1, 1, BigInt(1))}}};
    EXPECT_THROW(cone(bad), Error);
}

TEST(ComplexProperties, FiniteConeSupport) {
    std::mt19937_64 gen(13);
    for (auto& R : corpus(20)) {
        FiniteRingOps ops{R};
        for (int trial = 0; trial < 8; ++trial) {
            Elem a = gen() % R->size(), b = gen() % R->size(), s = gen() % R->size();
            auto X = elementary_complex(ops, a), Y = elementary_complex(ops, b);
            ChainMap<FiniteRingOps> f{X, Y, {{0, Matrix<Elem>(1, 1, R->mul(b, s))}, {1, Matrix<Elem>(1, 1, R->mul(a, s))}}};
            auto C = cone(f);
            EXPECT_TRUE(supp_complex(C).subset_of(supp_complex(X).union_with(supp_complex(Y))));
            EXPECT_EQ(supp_complex(C), supp_by_localization(C));
        }
    }
}

TEST(ComplexProperties, ThickRoundtripOverIntegers) {
    IntegerRing Z;
    for (long r = 1; r <= 1000; ++r) {
        if (Z.radical(r) != r) continue;
        auto Y = ZSet::from_radical(Z, r);
        auto gens = thick_generators(Y);
        EXPECT_EQ(thomason_mu(Z, gens), Y) << r;
        EXPECT_EQ(qqq_rho(Z, gens).open, Y);
    }
    EXPECT_EQ(thomason_mu(Z, thick_generators(ZSet::all(Z))), ZSet::all(Z));
}

TEST(ComplexProperties, ThickRoundtripFinite) {
    for (auto& R : corpus(64))
        for (auto& Y : FiniteThomason::all_subsets(R)) {
            auto gens = thick_generators(Y);
            EXPECT_EQ(thomason_mu(R, gens), Y) << R->label();
            EXPECT_EQ(qqq_rho(R, gens).open, Y);
        }
}

TEST(ComplexProperties, PlantedSupportIsRecovered) {
    IntegerRing Z;
    std::mt19937_64 gen(14);
    std::uniform_int_distribution<long> v(-30, 30);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<ElementaryBlock<BigInt>> blocks;
        for (int k = 0; k < 1 + trial % 3; ++k) blocks.push_back({BigInt(v(gen)), static_cast<int>(gen() % 3)});
        auto P = planted_complex(Z, blocks, gen);
        EXPECT_EQ(supp_complex(P.complex), P.support) << P.complex.to_string();
    }
    PolyGFRing F3t(3);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<ElementaryBlock<Poly>> blocks;
        for (int k = 0; k < 1 + trial % 3; ++k) blocks.push_back({random_small(F3t, gen), static_cast<int>(gen() % 2)});
        auto P = planted_complex(F3t, blocks, gen);
        EXPECT_EQ(supp_complex(P.complex), P.support) << P.complex.to_string();
    }
}

// H_n(X ⊗ Z/m) ≅ H_n(X) ⊗ Z/m ⊕ Tor(H_{n-1}(X), Z/m), compared through the
// counts #{x : k·x = 0} for k | m, which pin down a finite abelian group.
TEST(ComplexProperties, ReductionModPrimePowerMatchesUniversalCoefficients) {
    IntegerRing Z;
    std::mt19937_64 gen(15);
    std::uniform_int_distribution<long> v(-40, 40);
    const std::uint64_t moduli[] = {2, 3, 4, 8, 9, 5, 25, 27, 16};
    Bounds big{.module_size = 1 << 15};
    for (int trial = 0; trial < 120; ++trial) {
        std::uint64_t m = moduli[trial % 9];
        auto Zm = make_ring(RingDescription::zmod(static_cast<std::uint32_t>(m)));
        std::vector<ElementaryBlock<BigInt>> blocks;
        for (int k = 0; k < 1 + trial % 2; ++k) blocks.push_back({BigInt(v(gen)), static_cast<int>(gen() % 2)});
        auto X = planted_complex(Z, blocks, gen).complex;
        auto Xm = reduce_mod(X, Zm);
        for (int n = X.lo(); n <= X.hi() + 1; ++n) {
            std::vector<std::uint64_t> orders;
            auto h = homology(X, n), below = homology(X, n - 1);
            for (std::size_t i = 0; i < h.free_rank; ++i) orders.push_back(m);
            for (auto& e : h.torsion) orders.push_back(std::gcd(abs(e).convert_to<std::uint64_t>(), m));
            for (auto& e : below.torsion) orders.push_back(std::gcd(abs(e).convert_to<std::uint64_t>(), m));
            auto brute = homology(Xm, n, big);
            for (std::uint64_t k = 1; k <= m; ++k) {
                if (m % k) continue;
                EXPECT_EQ(oracle::killed_by(brute, k), oracle::killed_by(orders, k))
                    << X.to_string() << " mod " << m << " n=" << n;
            }
        }
    }
}

TEST(ThickCorpus, IntegerCorpusRoundtrips) {
    IntegerRing Z;
    for (long r : {1L, 2L, 6L, 30L, 77L}) {
        auto corpus = integer_thick_corpus(Z, BigInt(r), 40, 3);
        EXPECT_EQ(corpus.size(), (std::size_t{1} << Z.factorize(BigInt(r)).size()) + 40);
        auto again = integer_thick_corpus(Z, BigInt(r), 40, 3);
        for (std::size_t i = 0; i < corpus.size(); ++i) EXPECT_EQ(corpus[i].complex.to_string(), again[i].complex.to_string());
        for (auto& P : corpus) EXPECT_EQ(supp_complex(P.complex), P.support);
        auto Y = EuclidThomason<IntegerRing>::v(Z, BigInt(r));
        for (auto& c : thick_roundtrip_check(Y, corpus)) EXPECT_TRUE(c.passed()) << r << " " << c.name;
    }
}
