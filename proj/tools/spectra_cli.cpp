#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spectra/corpus.hpp"
#include "spectra/dot.hpp"
#include "spectra/injective.hpp"
#include "spectra/json_io.hpp"
#include "spectra/sheaf.hpp"

#ifndef SPECTRA_DEFAULT_CORPUS_DIR
#define SPECTRA_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace fs = std::filesystem;
using namespace spectra;

namespace {

enum class Format { json, dot, text };

struct Config {
    std::string verb;
    std::string bounds_text;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string ring_path, complexes_path, space_path, module_path, support_text;
    bool exhaustive = false;
    std::size_t points = 0;
    std::size_t k = 1;
    std::uint32_t max_size = 16;
    Bounds bounds;
};

/// The command output: a report, plus optional verb-specific data or a DOT graph.
struct Outcome {
    Report report;
    json data;
    std::string dot;
};

fs::path corpus_dir() {
    if (const char* env = std::getenv("SPECTRA_CORPUS_DIR"); env && *env) return env;
    return SPECTRA_DEFAULT_CORPUS_DIR;
}

/// Reads `path`, falling back to the corpus directory for relative paths.
std::string read_input(const std::string& path) {
    fs::path p(path);
    if (!fs::exists(p) && p.is_relative() && fs::exists(corpus_dir() / p)) p = corpus_dir() / p;
    std::ifstream in(p, std::ios::binary);
    if (!in) fail_parse("cannot read input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Bounds parse_bounds(const std::string& text) {
    Bounds b;
    if (text.empty()) return b;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail_parse("--bounds expects key=value pairs, got \"" + item + "\"");
        auto key = item.substr(0, eq);
        long long v = 0;
        try {
            std::size_t used = 0;
            v = std::stoll(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            fail_parse("--bounds: \"" + item + "\" is not an integer assignment");
        }
        if (v <= 0) fail_parse("--bounds: " + key + " must be positive");
        auto u = static_cast<std::size_t>(v);
        if (key == "ideal") b.ideal_enumeration = u;
        else if (key == "module") b.module_size = u;
        else if (key == "ambient") b.ambient_enumeration = u;
        else if (key == "hom") b.hom_pairs = u;
        else if (key == "degree") b.degree = static_cast<int>(v);
        else if (key == "radical") b.radical = static_cast<long>(v);
        else fail_parse("--bounds: unknown key \"" + key + "\"");
    }
    return b;
}

struct Inputs {
    std::string bytes;  // concatenation of every input, for the digest
    json load(const std::string& path) {
        auto text = read_input(path);
        auto j = parse_json(text);
        bytes += j.dump() + "\n";
        return j;
    }
};

RingPtr require_finite(const AnyRing& ring, const std::string& verb) {
    if (auto* R = std::get_if<RingPtr>(&ring)) return *R;
    fail(verb + " needs a finite ring");
}

[[noreturn]] void no_dot(const std::string& what) { fail("DOT output is not available for " + what); }

// ---------------------------------------------------------------------------
// Verbs

Outcome classify_torsion(const Config& cfg, const RingPtr& R) {
    Outcome out;
    auto modules = module_corpus(R, 64, cfg.seed, cfg.exhaustive ? 24 : 0, cfg.exhaustive ? 6 : 0);
    if (!cfg.module_path.empty()) fail("classify-torsion takes modules from the generated corpus");
    out.report.add_all(torsion_roundtrip_check(R, modules, cfg.bounds));
    out.data["classes"] = json::array();
    for (auto& Y : FiniteThomason::all_subsets(R))
        out.data["classes"].push_back({{"open", to_json(Y)["points"]}, {"filter", open_to_filter(Y, cfg.bounds).to_string()}});
    out.data["modules_checked"] = modules.size();
    return out;
}

template <EuclideanRing E>
std::vector<PlantedComplex<E>> planted_from_file(const E& ring, const json& j) {
    if (!j.is_array()) fail_parse("complexes file must hold a JSON array");
    std::vector<PlantedComplex<E>> out;
    for (auto& c : j) {
        auto X = complex_from_json(ring, c);
        out.push_back({X, supp_complex(X)});
    }
    return out;
}

Outcome classify_thick(const Config& cfg, const AnyRing& ring, Inputs& in) {
    Outcome out;
    std::optional<json> file;
    if (!cfg.complexes_path.empty()) file = in.load(cfg.complexes_path);
    std::visit(
        [&](const auto& ring) {
            using T = std::decay_t<decltype(ring)>;
            if constexpr (std::is_same_v<T, RingPtr>) {
                FiniteRingOps ops{ring};
                std::vector<PerfectComplex<FiniteRingOps>> cs;
                if (file) {
                    if (!file->is_array()) fail_parse("complexes file must hold a JSON array");
                    for (auto& c : *file) cs.push_back(complex_from_json(ops, c));
                } else {
                    for (Elem a = 0; a < ring->size(); ++a) cs.push_back(koszul(ops, {a}));
                }
                out.report.add_all(thick_roundtrip_check(ring, cs, cfg.bounds));
                out.data["classes"] = json::array();
                for (auto& Y : FiniteThomason::all_subsets(ring)) out.data["classes"].push_back(to_json(Y));
                out.data["complexes_checked"] = cs.size();
            } else {
                auto Y = cfg.support_text.empty() ? EuclidThomason<T>::empty(ring)
                                                  : thomason_from_json(ring, parse_json(cfg.support_text));
                if (!cfg.support_text.empty()) in.bytes += cfg.support_text + "\n";
                std::vector<PlantedComplex<T>> corpus;
                if constexpr (std::is_same_v<T, IntegerRing>) {
                    if (cfg.support_text.empty()) Y = EuclidThomason<T>::v(ring, BigInt(30));
                    if (!Y.is_all()) corpus = integer_thick_corpus(ring, Y.radical(), 200, cfg.seed);
                } else {
                    if (cfg.support_text.empty()) Y = EuclidThomason<T>::v(ring, ring.t());
                    for (auto& a : sample_elements(ring, 2))
                        if (!ring.is_zero(a)) corpus.push_back({koszul(ring, {a}), EuclidThomason<T>::v(ring, a)});
                }
                if (file)
                    for (auto& P : planted_from_file(ring, *file)) corpus.push_back(P);
                out.report.add_all(thick_roundtrip_check(Y, corpus));
                out.data["support"] = to_json(Y);
                out.data["complexes_checked"] = corpus.size();
            }
        },
        ring);
    return out;
}

Outcome inj_fg(const Config& cfg, const RingPtr& R) {
    Outcome out;
    out.report.add_all(injective_suite(R, cfg.bounds));
    out.data["injectives"] = json::array();
    auto primes = spec(R);
    for (auto& E : indec_injectives(R, cfg.bounds))
        out.data["injectives"].push_back({{"label", E.label}, {"size", E.module.size()}, {"prime", primes[E.point].to_string()}});
    return out;
}

Outcome lattice(const Config& cfg, const AnyRing& ring) {
    Outcome out;
    std::visit(
        [&](const auto& ring) {
            using T = std::decay_t<decltype(ring)>;
            if constexpr (std::is_same_v<T, RingPtr>) {
                auto S = serre_lattice(ring, cfg.bounds);
                out.report.add_all(verify_axioms(S.lattice));
                out.report.add_all(prrco_check(ring, cfg.bounds));
                out.data["elements"] = S.lattice.size();
                out.data["primes"] = prime_elements(S.lattice).size();
                out.dot = emit_dot(S.lattice, "L_Serre " + ring->label());
            } else {
                std::vector<typename T::value_type> bounds_to_check;
                if constexpr (std::is_same_v<T, IntegerRing>) {
                    for (long n = 1; n <= std::min(cfg.bounds.radical, 64L); ++n) bounds_to_check.push_back(n);
                } else {
                    for (auto& a : sample_elements(ring, 2))
                        if (!ring.is_zero(a)) bounds_to_check.push_back(a);
                }
                auto axioms = Check::make("L1-L5 on bounded sublattices", "serre_lattice(R, n) satisfies the lattice axioms");
                auto primes = Check::make("bounded lattice primes", "Spec of each bounded sublattice is V(n) minus one prime");
                for (auto& n : bounds_to_check) {
                    for (auto& c : verify_axioms(serre_lattice(ring, n).lattice))
                        if (!c.passed()) axioms.fail_with(ring.to_string(n) + ": " + c.name);
                    auto c = euclid_lattice_primes_check(ring, n);
                    if (!c.passed()) primes.fail_with(ring.to_string(n) + ": " + (c.witnesses.empty() ? "" : c.witnesses[0]));
                }
                out.report.add(axioms);
                out.report.add(primes);
                out.data["bounds_checked"] = bounds_to_check.size();
            }
        },
        ring);
    return out;
}

FiniteSpace space_from_json(const json& j) {
    auto n = detail::get_field<std::size_t>(j, "n");
    if (n > 16) fail_bound("stone: spaces are limited to 16 points");
    auto opens = detail::get_field<std::vector<std::vector<std::size_t>>>(j, "opens");
    std::vector<ElementSet> sets;
    for (auto& o : opens) {
        ElementSet U(n);
        for (auto x : o) {
            if (x >= n) fail_parse("stone: point " + std::to_string(x) + " out of range");
            U.insert(x);
        }
        sets.push_back(U);
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = detail::get_field<std::vector<std::string>>(j, "labels");
    return FiniteSpace::generated(n, std::move(sets), std::move(labels));
}

Outcome stone(const Config& cfg, const std::optional<AnyRing>& ring, Inputs& in) {
    Outcome out;
    std::optional<FiniteSpace> X;
    std::string name = "X";
    if (ring) {
        auto R = require_finite(*ring, "stone --ring");
        X = zariski_space(R, cfg.bounds);
        name = "Spec " + R->label();
    } else if (!cfg.space_path.empty()) {
        X = space_from_json(in.load(cfg.space_path));
    }
    if (X) {
        if (!X->is_t0()) fail("stone: the space is not T0");
        out.report.add_all(stone_check(*X));
        out.dot = emit_dot_pair(*X, name, hochster_dual(*X), name + " (Hochster dual)", "stone");
        out.data["opens"] = X->opens.size();
        return out;
    }
    if (cfg.points == 0) fail_parse("stone needs --ring, --space or --points");
    auto spaces = all_t0_spaces(cfg.points);
    std::vector<Check> agg;
    for (auto& S : spaces) {
        auto cs = stone_check(S);
        if (agg.empty()) {
            agg = cs;
            for (auto& c : agg) c.witnesses.clear();
        }
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (!cs[i].passed()) agg[i].fail_with(std::to_string(S.opens.size()) + " opens: " + cs[i].witnesses.front());
    }
    out.report.add_all(agg);
    out.data["spaces"] = spaces.size();
    return out;
}

Outcome reconstruct(const Config& cfg, const AnyRing& ring) {
    Outcome out;
    std::visit(
        [&](const auto& ring) {
            using T = std::decay_t<decltype(ring)>;
            if constexpr (std::is_same_v<T, RingPtr>) {
                out.report.add_all(reconstruction_check(ring, cfg.bounds));
                StructurePresheaf F(ring, cfg.bounds);
                out.data["points"] = F.points();
                out.data["opens"] = F.space().opens.size();
                out.dot = emit_dot_pair(zariski_space(ring, cfg.bounds), "Spec " + ring->label(), F.space(),
                                        "Serre side", "reconstruct");
            } else if constexpr (std::is_same_v<T, IntegerRing>) {
                std::vector<BigInt> opens, points;
                for (long n = 1; n <= cfg.bounds.radical; ++n) opens.push_back(n);
                for (long p = 2; p <= 100; ++p)
                    if (ring.is_irreducible(p)) points.push_back(p);
                out.report.add_all(reconstruction_check(ring, opens, points, sample_elements(ring, 40)));
                out.data["opens"] = opens.size();
                out.data["points"] = points.size();
            } else {
                std::vector<Poly> opens, points;
                for (auto& a : sample_elements(ring, 2)) {
                    if (ring.is_zero(a)) continue;
                    opens.push_back(a);
                    if (ring.is_irreducible(a) && ring.normalize(a) == a) points.push_back(a);
                }
                out.report.add_all(reconstruction_check(ring, opens, points, sample_elements(ring, 2)));
                out.data["opens"] = opens.size();
                out.data["points"] = points.size();
            }
        },
        ring);
    return out;
}

Outcome classify_graded(const Config& cfg, const RingPtr& R, Inputs& in) {
    Outcome out;
    if (cfg.k < 1 || cfg.k > 3) fail_parse("classify-graded: --k must lie in 1..3");
    GradedRing A(R, cfg.k);
    auto sample = graded_sample(A);
    out.report.add_all(grad_classification_check(A, sample));
    int d = cfg.bounds.degree;
    auto ideals = sample_homog_ideals(A, d, 24, cfg.seed);
    auto elems = sample_homog_elements(A, d, 24, cfg.seed);
    auto pts = proj_points(A);
    std::vector<TFilter> filters{tors_filter(A)};
    ElementSet all(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) all.insert(i);
    filters.push_back(proj_filter(A, all));
    if (!pts.empty()) {
        ElementSet one(pts.size());
        one.insert(cfg.seed % pts.size());
        filters.push_back(proj_filter(A, one));
    }
    std::vector<Check> axioms;
    for (auto& F : filters) {
        auto cs = tfilter_axioms_check(A, [&](const HomogIdeal& I) { return F.contains(I); }, ideals, elems);
        if (axioms.empty()) {
            axioms = cs;
            for (auto& c : axioms) c.witnesses.clear();
        }
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (!cs[i].passed()) axioms[i].fail_with(F.to_string() + ": " + cs[i].witnesses.front());
    }
    out.report.add_all(axioms);
    out.report.add(torsion_detection_check(sample, 2 * d));
    out.report.add(torsion_vanishing_check(sample));
    out.report.add_all(graded_reconstruction_check(A, cfg.bounds));
    out.data["proj"] = json::array();
    for (auto& pt : pts) out.data["proj"].push_back(proj_label(A, pt));
    if (!cfg.module_path.empty()) {
        GradedModule M(A, graded_presentation_from_json(A, in.load(cfg.module_path)));
        json supp = json::array();
        for (auto i : graded_support(M).members()) supp.push_back(proj_label(A, pts[i]));
        out.data["module"] = {{"support", supp}, {"torsion", is_torsion_graded(M)}};
    }
    return out;
}

Outcome corpus_run(const Config& cfg, Inputs& in) {
    Outcome out;
    auto list = in.load("standard.json");
    if (!list.is_array()) fail_parse("standard.json must hold an array of rings");
    std::size_t rings = 0;
    for (auto& j : list) {
        auto R = make_ring(ring_description_from_json(j));
        if (R->size() > cfg.max_size) continue;
        ++rings;
        auto tag = [&](std::vector<Check> cs) {
            for (auto& c : cs) {
                c.name = R->label() + ": " + c.name;
                out.report.add(c);
            }
        };
        tag(torsion_roundtrip_check(R, module_corpus(R, 64, cfg.seed, 0, 0), cfg.bounds));
        tag(verify_axioms(serre_lattice(R, cfg.bounds).lattice));
        tag(prrco_check(R, cfg.bounds));
        tag(injective_suite(R, cfg.bounds));
        tag(reconstruction_check(R, cfg.bounds));
    }
    out.data["rings"] = rings;
    return out;
}

std::string render_text(const Outcome& o) {
    std::string s;
    for (auto& c : o.report.checks) {
        s += std::string(status_name(c.status)) + "  " + c.name + "  [" + c.anchor + "]";
        if (!c.reason.empty()) s += "  (" + c.reason + ")";
        s += "\n";
        for (auto& w : c.witnesses) s += "    " + w + "\n";
    }
    s += o.report.passed() ? "PASS\n" : "FAIL\n";
    return s;
}

struct Rendered {
    std::string text;
    bool passed = true;
};

Rendered run(Config& cfg) {
    cfg.bounds = parse_bounds(cfg.bounds_text);
    Format fmt = cfg.format == "dot" ? Format::dot : cfg.format == "text" ? Format::text : Format::json;
    Inputs in;
    std::optional<AnyRing> ring;
    if (!cfg.ring_path.empty()) ring = ring_from_json(in.load(cfg.ring_path));
    auto need_ring = [&]() -> const AnyRing& {
        if (!ring) fail_parse(cfg.verb + " needs --ring");
        return *ring;
    };

    Outcome out;
    if (cfg.verb == "classify-torsion") out = classify_torsion(cfg, require_finite(need_ring(), cfg.verb));
    else if (cfg.verb == "classify-thick") out = classify_thick(cfg, need_ring(), in);
    else if (cfg.verb == "inj-fg") out = inj_fg(cfg, require_finite(need_ring(), cfg.verb));
    else if (cfg.verb == "lattice") out = lattice(cfg, need_ring());
    else if (cfg.verb == "stone") out = stone(cfg, ring, in);
    else if (cfg.verb == "reconstruct") out = reconstruct(cfg, need_ring());
    else if (cfg.verb == "classify-graded") out = classify_graded(cfg, require_finite(need_ring(), cfg.verb), in);
    else if (cfg.verb == "corpus-run") out = corpus_run(cfg, in);

    out.report.command = cfg.verb;
    out.report.seed = cfg.seed;
    out.report.inputs_digest = digest(in.bytes);

    if (fmt == Format::dot) {
        if (out.dot.empty()) no_dot(cfg.verb + (ring ? "" : " without a ring"));
        return {out.dot, out.report.passed()};
    }
    if (fmt == Format::text) return {render_text(out), out.report.passed()};
    auto j = to_json(out.report);
    if (!out.data.is_null()) j["data"] = out.data;
    return {j.dump(2) + "\n", out.report.passed()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra: spectra, torsion classes and reconstruction for finite and Euclidean rings"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--bounds", cfg.bounds_text, "caps as key=value,...: ideal, module, ambient, hom, degree, radical");
    app.add_option("--seed", cfg.seed, "seed for randomized suites");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "dot", "text"}));

    auto ring_opt = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--ring", cfg.ring_path, "ring description (JSON file, looked up in the corpus too)");
        if (required) o->required();
    };
    auto* ct = app.add_subcommand("classify-torsion", "torsion classes of finite type over a finite ring");
    ring_opt(ct, true);
    ct->add_flag("--exhaustive", cfg.exhaustive, "also check direct sums and random cokernels");
    auto* th = app.add_subcommand("classify-thick", "thick subcategories of perfect complexes");
    ring_opt(th, true);
    th->add_option("--complexes", cfg.complexes_path, "JSON array of complexes");
    th->add_option("--support", cfg.support_text, "Thomason set over a Euclidean ring, e.g. {\"radical\":30}");
    auto* inj = app.add_subcommand("inj-fg", "indecomposable injectives and the fg-topology");
    ring_opt(inj, true);
    auto* lat = app.add_subcommand("lattice", "the Serre ideal lattice and its spectrum");
    ring_opt(lat, true);
    auto* st = app.add_subcommand("stone", "Stone duality for finite spectral spaces");
    ring_opt(st, false);
    st->add_option("--space", cfg.space_path, "JSON {\"n\":..,\"opens\":[[..],..]}");
    st->add_option("--points", cfg.points, "check every T0 space on this many points")->check(CLI::Range(1, 5));
    auto* rc = app.add_subcommand("reconstruct", "structure sheaf from the module category");
    ring_opt(rc, true);
    auto* gr = app.add_subcommand("classify-graded", "tensor torsion classes over R[x_1..x_k]/(x_i x_j)");
    ring_opt(gr, true);
    gr->add_option("--k", cfg.k, "number of variables")->check(CLI::Range(1, 3));
    gr->add_option("--module", cfg.module_path, "graded module presentation");
    auto* cr = app.add_subcommand("corpus-run", "suites over the standard corpus");
    cr->add_option("--max-size", cfg.max_size, "largest ring to include");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    cfg.verb = app.get_subcommands().front()->get_name();

    try {
        auto r = run(cfg);
        std::cout << r.text;
        return r.passed ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::bound ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
