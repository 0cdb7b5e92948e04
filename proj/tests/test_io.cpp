#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "spectra/corpus.hpp"
#include "spectra/dot.hpp"
#include "spectra/json_io.hpp"
#include "spectra/sheaf.hpp"

using namespace spectra;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

EuclidThomason<IntegerRing> ZSetFor(const IntegerRing& Z, long n) { return EuclidThomason<IntegerRing>::v(Z, BigInt(n)); }

bool all_pass(const std::vector<Check>& cs) {
    for (auto& c : cs)
        if (!c.passed()) return false;
    return true;
}

}  // namespace

TEST(RingJson, RoundTripsCorpus) {
    for (auto& d : standard_ring_corpus(24)) {
        auto back = ring_description_from_json(parse_json(to_json(d).dump()));
        auto a = make_ring(d), b = make_ring(back);
        EXPECT_EQ(a->label(), b->label());
        EXPECT_EQ(a->add_table(), b->add_table());
        EXPECT_EQ(a->mul_table(), b->mul_table());
    }
}

TEST(RingJson, Kinds) {
    auto R = std::get<RingPtr>(ring_from_json(parse_json(R"({"kind":"zmod","n":12})")));
    EXPECT_EQ(R->size(), 12u);
    auto F = std::get<RingPtr>(ring_from_json(parse_json(R"({"kind":"gf","p":2,"k":2,"modulus":[1,1,1]})")));
    EXPECT_EQ(F->size(), 4u);
    auto T = std::get<RingPtr>(ring_from_json(parse_json(R"({"kind":"table","add":[[0,1],[1,0]],"mul":[[0,0],[0,1]]})")));
    EXPECT_EQ(T->characteristic(), 2u);
    EXPECT_TRUE(std::holds_alternative<IntegerRing>(ring_from_json(parse_json(R"({"kind":"int"})"))));
    EXPECT_EQ(std::get<PolyGFRing>(ring_from_json(parse_json(R"({"kind":"polygf","q":4})"))).q(), 4u);
}

TEST(RingJson, ErrorsAreParseErrors) {
    auto kind_of = [](const std::string& text) {
        try {
            ring_from_json(parse_json(text));
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::domain;
    };
    EXPECT_EQ(kind_of("{\"kind\":"), ErrorKind::parse);
    EXPECT_EQ(kind_of(R"({"kind":"weird"})"), ErrorKind::parse);
    EXPECT_EQ(kind_of(R"({"kind":"zmod"})"), ErrorKind::parse);
    EXPECT_EQ(kind_of(R"({"kind":"zmod","n":"twelve"})"), ErrorKind::parse);
    EXPECT_EQ(kind_of(R"({"kind":"table","add":[[0,1]],"mul":[[0,0],[0,1]]})"), ErrorKind::parse);
}

TEST(ModuleJson, Presentation) {
    auto R = make_ring(RingDescription::zmod(12));
    auto p = presentation_from_json(R, parse_json(R"({"rows":1,"cols":1,"entries":[[4]]})"));
    EXPECT_EQ(make_module(R, p).size(), 4u);
    auto back = presentation_from_json(R, parse_json(to_json(p).dump()));
    EXPECT_EQ(back.entries, p.entries);
    EXPECT_THROW(presentation_from_json(R, parse_json(R"({"rows":1,"cols":1,"entries":[[12]]})")), Error);
}

TEST(ComplexJson, IntegersAndRoundTrip) {
    IntegerRing Z;
    auto X = complex_from_json(Z, parse_json(R"({"lo":0,"ranks":[1,1],"differentials":[[[2]]]})"));
    EXPECT_EQ(supp_complex(X), ZSetFor(Z, 2));
    auto Y = complex_from_json(Z, parse_json(to_json(X).dump()));
    EXPECT_EQ(Y.to_string(), X.to_string());
    EXPECT_THROW(complex_from_json(Z, parse_json(R"({"lo":0,"ranks":[1,1,1],"differentials":[[[2]],[[3]]]})")), Error);
}

TEST(ComplexJson, PolynomialsAndFinite) {
    PolyGFRing F2(2);
    auto X = complex_from_json(F2, parse_json(R"({"lo":0,"ranks":[1,1],"differentials":[[[[1,1]]]]})"));
    EXPECT_EQ(supp_complex(X), EuclidThomason<PolyGFRing>::v(F2, Poly{{1, 1}}));
    auto R = make_ring(RingDescription::zmod(12));
    FiniteRingOps ops{R};
    auto C = complex_from_json(ops, parse_json(R"({"lo":0,"ranks":[1,1],"differentials":[[[3]]]})"));
    EXPECT_EQ(supp_complex(C).to_string(), "{(3)}");
}

TEST(ThomasonJson, Forms) {
    IntegerRing Z;
    EXPECT_TRUE(thomason_from_json(Z, parse_json(R"({"all":true})")).is_all());
    EXPECT_EQ(thomason_from_json(Z, parse_json(R"({"radical":12})")), ZSetFor(Z, 6));
    EXPECT_EQ(thomason_from_json(Z, parse_json(R"({"points":[2,5]})")), ZSetFor(Z, 10));
    EXPECT_EQ(to_json(ZSetFor(Z, 30)).dump(), R"({"radical":30})");
    EXPECT_THROW(thomason_from_json(Z, parse_json(R"({"points":[4]})")), Error);
}

TEST(GradedJson, ModuleFormat) {
    auto A = graded_ring_from_json(parse_json(R"({"base":{"kind":"zmod","n":4},"k":2})"));
    EXPECT_EQ(A.k(), 2u);
    auto p = graded_presentation_from_json(
        A, parse_json(R"({"gens":[{"deg":0}],"rels":[{"coeffs":[{"gen":0,"deg":2,"elem":[1,0]}]},{"coeffs":[{"gen":0,"deg":0,"elem":2}]}]})"));
    ASSERT_EQ(p.rels.size(), 2u);
    EXPECT_EQ(p.rels[0].degree, 2);
    GradedModule M(A, p);
    EXPECT_EQ(M.size_at(0), 2u);
    auto back = graded_presentation_from_json(A, parse_json(to_json(p).dump()));
    EXPECT_EQ(back.gens, p.gens);
    EXPECT_EQ(back.rels.size(), p.rels.size());
    EXPECT_THROW(graded_presentation_from_json(
                     A, parse_json(R"({"gens":[{"deg":0},{"deg":1}],"rels":[{"coeffs":[{"gen":0,"deg":1,"elem":[1,0]},{"gen":1,"deg":1,"elem":[1,0]}]}]})")),
                 Error);
}

TEST(ReportJson, DeterministicAndComplete) {
    Report r;
    r.command = "lattice";
    r.inputs_digest = digest("{\"kind\":\"zmod\",\"n\":12}");
    r.seed = 7;
    auto c = Check::make("L1", "lattice");
    r.add(c);
    auto f = Check::make("L2", "compact");
    f.fail_with("x");
    r.add(f);
    auto s = Check::make("L3", "distributive");
    s.skip("L1 failed");
    r.add(s);
    auto j = to_json(r);
    EXPECT_FALSE(j["passed"].get<bool>());
    EXPECT_EQ(j["checks"][2]["status"], "skipped");
    EXPECT_EQ(j["checks"][2]["reason"], "L1 failed");
    EXPECT_EQ(j["seed"], 7);
    EXPECT_EQ(j.dump(), to_json(r).dump());
    EXPECT_EQ(r.inputs_digest.size(), 16u);
    EXPECT_NE(digest("a"), digest("b"));
    EXPECT_EQ(digest(""), "cbf29ce484222325");
}

TEST(Dot, Examples) {
    auto S = serre_lattice(make_ring(RingDescription::zmod(12)));
    auto d = emit_dot(S.lattice, "L_Serre");
    EXPECT_EQ(count(d, "[label="), 4u);
    EXPECT_EQ(count(d, " -> "), 4u);
    EXPECT_EQ(d.rfind("digraph", 0), 0u);

    FiniteLattice empty({}, {}, {});
    EXPECT_EQ(emit_dot(empty, "E"), "digraph \"E\" {\n}\n");

    auto dual = dual_spectrum(make_ring(RingDescription::zmod(30)));
    auto ds = emit_dot(dual, "spec*");
    EXPECT_EQ(count(ds, "[label="), 3u);
    EXPECT_EQ(count(ds, " -> "), 0u);
    EXPECT_EQ(ds, emit_dot(dual, "spec*"));

    auto chain = emit_dot(FiniteLattice::chain(3));
    EXPECT_EQ(count(chain, " -> "), 2u);

    ElementSet one(2);
    one.insert(1);
    auto sierpinski = FiniteSpace::from_opens(2, {ElementSet(2), one, ElementSet::full(2)});
    EXPECT_EQ(count(emit_dot(sierpinski), " -> "), 1u);
    auto pair = emit_dot_pair(sierpinski, "X", hochster_dual(sierpinski), "X*");
    EXPECT_EQ(count(pair, "subgraph"), 2u);
    EXPECT_EQ(count(pair, " -> "), 2u);
}

TEST(Suites, TorsionRoundtrip) {
    for (auto& d : standard_ring_corpus(20)) {
        auto R = make_ring(d);
        EXPECT_TRUE(all_pass(torsion_roundtrip_check(R, module_corpus(R, 20, 1, 4, 2)))) << R->label();
    }
}

TEST(Suites, ThickRoundtripFinite) {
    auto R = make_ring(RingDescription::zmod(12));
    FiniteRingOps ops{R};
    std::vector<PerfectComplex<FiniteRingOps>> cs{koszul(ops, {Elem{2}}), koszul(ops, {Elem{3}}), koszul(ops, {Elem{0}}),
                                                  koszul(ops, {Elem{2}, Elem{3}})};
    EXPECT_TRUE(all_pass(thick_roundtrip_check(R, cs)));
}

TEST(Suites, ThickRoundtripIntegersDetectsWrongPlantedSupport) {
    IntegerRing Z;
    std::mt19937_64 gen(5);
    std::vector<PlantedComplex<IntegerRing>> corpus;
    for (long a : {2L, 3L, 6L, 5L, 0L, 1L}) corpus.push_back(planted_complex(Z, {{BigInt(a), 0}}, gen));
    auto Y = ZSetFor(Z, 6);
    EXPECT_TRUE(all_pass(thick_roundtrip_check(Y, corpus)));
    corpus[0].support = ZSetFor(Z, 5);
    auto checks = thick_roundtrip_check(Y, corpus);
    EXPECT_FALSE(checks[2].passed());
}

TEST(CorpusFile, MatchesGeneratedCorpus) {
    std::ifstream in(std::string(SPECTRA_CORPUS_DIR) + "/standard.json");
    ASSERT_TRUE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = parse_json(ss.str());
    auto corpus = standard_ring_corpus(64);
    ASSERT_EQ(j.size(), corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) EXPECT_EQ(j[i], to_json(corpus[i])) << i;
}
