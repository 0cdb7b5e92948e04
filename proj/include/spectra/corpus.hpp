#pragma once

#include <random>
#include <string>
#include <vector>

#include "spectra/fin_module.hpp"

namespace spectra {

/// Local rings used as building blocks: Z/p^k (p^k <= max_size) and the
/// non-prime Galois fields GF(4), GF(8), GF(9).
inline std::vector<RingDescription> corpus_local_rings(std::uint32_t max_size = 64) {
    std::vector<RingDescription> out;
    for (std::uint32_t n = 2; n <= max_size; ++n) {
        std::uint32_t p = 2;
        while (n % p) ++p;
        std::uint32_t v = n;
        while (v % p == 0) v /= p;
        if (v == 1) out.push_back(RingDescription::zmod(n));
    }
    for (auto [p, k] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
        std::uint32_t q = 1;
        for (std::uint32_t i = 0; i < k; ++i) q *= p;
        if (q <= max_size) out.push_back(RingDescription::galois_field(p, k));
    }
    return out;
}

inline std::uint64_t description_size(const RingDescription& d) {
    switch (d.kind) {
        case RingDescription::Kind::zmod: return d.n;
        case RingDescription::Kind::galois_field: {
            std::uint64_t q = 1;
            for (std::uint32_t i = 0; i < d.k; ++i) q *= d.p;
            return q;
        }
        case RingDescription::Kind::product: {
            std::uint64_t s = 1;
            for (auto& f : d.factors) s *= description_size(f);
            return s;
        }
        case RingDescription::Kind::table: return d.add_table.size();
    }
    return 0;
}

/// Z/n for 2 <= n <= 64, GF(q) for q in {2,3,4,5,7,8,9}, and every product
/// of two or three corpus local rings of total size <= max_size.
inline std::vector<RingDescription> standard_ring_corpus(std::uint32_t max_size = 64) {
    std::vector<RingDescription> out;
    for (std::uint32_t n = 2; n <= max_size; ++n) out.push_back(RingDescription::zmod(n));
    for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}})
        out.push_back(RingDescription::galois_field(p, k));
    auto locals = corpus_local_rings(max_size);
    for (std::size_t i = 0; i < locals.size(); ++i)
        for (std::size_t j = i; j < locals.size(); ++j) {
            auto s2 = description_size(locals[i]) * description_size(locals[j]);
            if (s2 > max_size) continue;
            out.push_back(RingDescription::product({locals[i], locals[j]}));
            for (std::size_t k = j; k < locals.size(); ++k)
                if (s2 * description_size(locals[k]) <= max_size)
                    out.push_back(RingDescription::product({locals[i], locals[j], locals[k]}));
        }
    return out;
}

/// Finite modules of size <= max_size: every cyclic R/I, pairwise sums of
/// cyclics, and a few seeded random 2x2 presentations.
inline std::vector<FinModule> module_corpus(const RingPtr& R, std::size_t max_size = 64, std::uint64_t seed = 1,
                                            std::size_t max_sums = 24, std::size_t random_count = 6) {
    std::vector<FinModule> out;
    std::vector<FinModule> cyclic;
    for (auto& I : enumerate_ideals(R)) {
        auto M = cyclic_module(I);
        if (M.size() <= max_size) cyclic.push_back(M);
    }
    out = cyclic;
    std::size_t sums = 0;
    for (std::size_t i = 0; i < cyclic.size() && sums < max_sums; ++i)
        for (std::size_t j = i; j < cyclic.size() && sums < max_sums; ++j) {
            if (cyclic[i].size() * cyclic[j].size() > max_size || cyclic[i].size() == 1 || cyclic[j].size() == 1)
                continue;
            out.push_back(direct_sum(cyclic[i], cyclic[j]));
            ++sums;
        }
    if (R->size() * R->size() <= Bounds{}.ambient_enumeration) {
        std::mt19937_64 gen(seed ^ (R->size() * 0x9e3779b97f4a7c15ull));
        std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(R->size() - 1));
        std::size_t made = 0;
        for (int attempt = 0; attempt < 40 && made < random_count; ++attempt) {
            ModulePresentation p{2, 2, {{pick(gen), pick(gen)}, {pick(gen), pick(gen)}}};
            auto M = make_module(R, p);
            if (M.size() > max_size) continue;
            out.push_back(M.with_label("coker random " + std::to_string(made)));
            ++made;
        }
    }
    return out;
}

}  // namespace spectra
