// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Arguments, if any, select criteria by number.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spectra/corpus.hpp"
#include "spectra/graded.hpp"
#include "spectra/injective.hpp"
#include "spectra/perfect_complex.hpp"
#include "spectra/sheaf.hpp"

using namespace spectra;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Tally {
    std::size_t cases = 0;
    std::size_t mismatches = 0;
    std::vector<std::string> witnesses;

    void record(const std::string& where, const std::vector<Check>& checks) {
        ++cases;
        for (auto& c : checks)
            if (!c.passed()) miss(where + ": " + c.name + (c.witnesses.empty() ? "" : " " + c.witnesses.front()));
    }
    void record(const std::string& where, const Check& c) { record(where, std::vector<Check>{c}); }
    void miss(std::string w) {
        ++mismatches;
        if (witnesses.size() < 5) witnesses.push_back(std::move(w));
    }
};

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;  // 0: no runtime target
    std::function<std::string(Tally&)> body;
};

std::vector<RingPtr> corpus_rings(std::uint32_t max_size = 64) {
    std::vector<RingPtr> out;
    for (auto& d : standard_ring_corpus(max_size)) out.push_back(make_ring(d));
    return out;
}

// 1
std::string classification_roundtrip(Tally& t) {
    std::size_t modules = 0;
    for (auto& R : corpus_rings()) {
        auto ms = module_corpus(R, 64, kSeed);
        modules += ms.size();
        t.record(R->label(), torsion_roundtrip_check(R, ms));
    }
    return std::to_string(t.cases) + " rings, " + std::to_string(modules) + " modules";
}

// 2
std::string thomason_roundtrip(Tally& t) {
    IntegerRing Z;
    std::size_t complexes = 0, inside = 0;
    for (long r = 1; r <= 1000; ++r) {
        if (Z.radical(BigInt(r)) != r) continue;
        auto corpus = integer_thick_corpus(Z, BigInt(r), 200, kSeed);
        complexes += corpus.size();
        for (auto& P : corpus) inside += P.support.subset_of(EuclidThomason<IntegerRing>::v(Z, BigInt(r)));
        t.record("V(" + std::to_string(r) + ")", thick_roundtrip_check(EuclidThomason<IntegerRing>::v(Z, BigInt(r)), corpus));
    }
    return std::to_string(t.cases) + " square-free radicals, " + std::to_string(complexes) + " complexes (" + std::to_string(inside) +
           " inside their V(r))";
}

// 3
std::string fg_topology(Tally& t) {
    for (auto& R : corpus_rings()) t.record(R->label(), injective_suite(R));
    return std::to_string(t.cases) + " rings";
}

// 4
std::string ideal_lattice(Tally& t) {
    std::size_t rings = 0, spaces = 0;
    for (auto& R : corpus_rings()) {
        ++rings;
        t.record(R->label() + " L1-L5", verify_axioms(serre_lattice(R).lattice));
        t.record(R->label() + " dual spectrum", prrco_check(R));
    }
    for (std::size_t n = 1; n <= 5; ++n)
        for (auto& X : all_t0_spaces(n)) {
            ++spaces;
            t.record(std::to_string(n) + "-point space with " + std::to_string(X.opens.size()) + " opens", stone_check(X));
        }
    return std::to_string(rings) + " rings, " + std::to_string(spaces) + " T0 spaces on <= 5 points";
}

// 5
std::string reconstruction(Tally& t) {
    std::size_t rings = 0;
    for (auto& R : corpus_rings()) {
        ++rings;
        t.record(R->label(), reconstruction_check(R));
    }
    IntegerRing Z;
    std::vector<BigInt> opens, points;
    for (long n = 1; n <= 1000; ++n) opens.push_back(n);
    for (long p = 2; p <= 100; ++p)
        if (Z.is_irreducible(p)) points.push_back(p);
    t.record("Z", reconstruction_check(Z, opens, points, sample_elements(Z, 40)));
    return std::to_string(rings) + " rings, Z with D(n) for n <= 1000 and " + std::to_string(points.size()) +
           " primes <= 100";
}

// 6
std::string graded_suite(Tally& t) {
    std::size_t rings = 0, filters = 0;
    for (auto& R : corpus_rings(16)) {
        ++rings;
        for (std::size_t k = 1; k <= 3; ++k) {
            GradedRing A(R, k);
            std::string where = A.label();
            auto sample = graded_sample(A);
            t.record(where + " classification", grad_classification_check(A, sample));
            t.record(where + " detection", torsion_detection_check(sample, 12));
            t.record(where + " vanishing", torsion_vanishing_check(sample));

            auto seed = kSeed + R->size() * 7 + k;
            auto ideals = sample_homog_ideals(A, 6, 24, seed);
            auto elems = sample_homog_elements(A, 6, 24, seed);
            auto pts = proj_points(A);
            std::vector<TFilter> fs{tors_filter(A)};
            ElementSet all = ElementSet::full(pts.size()), random(pts.size());
            std::mt19937_64 gen(seed);
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (gen() % 2) random.insert(i);
            fs.push_back(proj_filter(A, all));
            fs.push_back(proj_filter(A, random));
            for (auto& F : fs) {
                ++filters;
                t.record(where + " " + F.to_string(),
                         tfilter_axioms_check(A, [&](const HomogIdeal& I) { return F.contains(I); }, ideals, elems));
            }
        }
    }
    return std::to_string(rings) + " base rings x k in {1,2,3}, " + std::to_string(filters) + " t-filters at degree 6";
}

// 7
std::string cross_oracles(Tally& t) {
    auto rings = corpus_rings();
    std::mt19937_64 gen(kSeed);
    std::size_t triples = 0, proper = 0;
    while (triples < 1000) {
        auto& R = rings[gen() % rings.size()];
        std::size_t rows = 1 + gen() % 2, cols = 1 + gen() % 2;
        ModulePresentation p{rows, cols, {}};
        for (std::size_t i = 0; i < rows; ++i) {
            p.entries.emplace_back();
            for (std::size_t j = 0; j < cols; ++j) p.entries.back().push_back(static_cast<Elem>(gen() % R->size()));
        }
        if (std::pow(static_cast<double>(R->size()), static_cast<double>(cols)) > 4096) continue;
        auto M = make_module(R, p);
        if (M.size() > 64) continue;
        auto primes = spec(R);
        auto& P = primes[gen() % primes.size()];
        ++triples;
        ++t.cases;
        auto L = localize_module(M, P);
        if (!L.is_zero() && L.size() < M.size()) ++proper;
        if (!is_isomorphic(oracle::fraction_localization(M, P.ideal()), L))
            t.miss(R->label() + " " + M.label() + " at " + P.to_string());
    }

    IntegerRing Z;
    const std::uint64_t moduli[] = {2, 3, 4, 5, 8, 9, 16, 25, 27};
    std::uniform_int_distribution<long> v(-40, 40);
    Bounds big{.module_size = 1 << 15};
    for (int trial = 0; trial < 500; ++trial) {
        std::uint64_t m = moduli[gen() % std::size(moduli)];
        auto Zm = make_ring(RingDescription::zmod(static_cast<std::uint32_t>(m)));
        std::vector<ElementaryBlock<BigInt>> blocks;
        for (std::size_t b = 1 + gen() % 2; b > 0; --b) blocks.push_back({BigInt(v(gen)), static_cast<int>(gen() % 2)});
        auto X = planted_complex(Z, blocks, gen).complex;
        auto Xm = reduce_mod(X, Zm);
        ++t.cases;
        for (int n = X.lo(); n <= X.hi() + 1; ++n) {
            // universal coefficients: H_n(X ⊗ Z/m) from the SNF homology of X
            std::vector<std::uint64_t> orders;
            auto h = homology(X, n), below = homology(X, n - 1);
            for (std::size_t i = 0; i < h.free_rank; ++i) orders.push_back(m);
            for (auto& e : h.torsion) orders.push_back(std::gcd(abs(e).convert_to<std::uint64_t>(), m));
            for (auto& e : below.torsion) orders.push_back(std::gcd(abs(e).convert_to<std::uint64_t>(), m));
            auto brute = homology(Xm, n, big);
            for (std::uint64_t k = 1; k <= m; ++k)
                if (m % k == 0 && oracle::killed_by(brute, k) != oracle::killed_by(orders, k)) {
                    t.miss(X.to_string() + " mod " + std::to_string(m) + " n=" + std::to_string(n));
                    break;
                }
        }
    }
    return std::to_string(triples) + " localization triples (" + std::to_string(proper) +
           " nonzero proper quotients), 500 reduced complexes";
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    std::vector<Criterion> criteria{
        {1, "classification roundtrip", 300, classification_roundtrip},
        {2, "Thomason roundtrip over Z", 300, thomason_roundtrip},
        {3, "fg-topology suite", 0, fg_topology},
        {4, "ideal-lattice suite", 600, ideal_lattice},
        {5, "reconstruction", 0, reconstruction},
        {6, "graded suite", 0, graded_suite},
        {7, "cross-oracle checks", 0, cross_oracles},
    };
    bool all = true;
    for (auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        Tally t;
        auto start = std::chrono::steady_clock::now();
        std::string summary;
        try {
            summary = c.body(t);
        } catch (const std::exception& e) {
            t.miss(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = c.limit_seconds == 0 || secs <= c.limit_seconds;
        bool pass = t.mismatches == 0 && in_time;
        all = all && pass;
        char timing[64];
        if (c.limit_seconds > 0) std::snprintf(timing, sizeof timing, "%.1f s (limit %.0f s)", secs, c.limit_seconds);
        else std::snprintf(timing, sizeof timing, "%.1f s", secs);
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << ": " << summary << ", "
                  << t.mismatches << " mismatches, " << timing << std::endl;
        for (auto& w : t.witnesses) std::cout << "      " << w << "\n";
    }
    return all ? 0 : 1;
}
