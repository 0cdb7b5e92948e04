#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spectra/euclid.hpp"
#include "spectra/fin_module.hpp"
#include "spectra/graded.hpp"
#include "spectra/perfect_complex.hpp"
#include "spectra/report.hpp"
#include "spectra/thomason.hpp"

namespace spectra {

using json = nlohmann::json;

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail_parse(std::string("malformed JSON: ") + e.what());
    }
}

namespace detail {

template <class T>
T get_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail_parse(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail_parse(std::string("field \"") + key + "\": " + e.what());
    }
}

inline std::vector<std::vector<std::uint32_t>> square_table(const json& j, const char* key) {
    auto t = get_field<std::vector<std::vector<std::uint32_t>>>(j, key);
    for (auto& row : t)
        if (row.size() != t.size()) fail_parse(std::string("table \"") + key + "\" is not square");
    return t;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Rings

inline RingDescription ring_description_from_json(const json& j) {
    auto kind = detail::get_field<std::string>(j, "kind");
    RingDescription d;
    if (kind == "zmod") {
        d = RingDescription::zmod(detail::get_field<std::uint32_t>(j, "n"));
    } else if (kind == "gf") {
        std::vector<std::uint32_t> modulus;
        if (j.contains("modulus")) modulus = detail::get_field<std::vector<std::uint32_t>>(j, "modulus");
        d = RingDescription::galois_field(detail::get_field<std::uint32_t>(j, "p"), detail::get_field<std::uint32_t>(j, "k"),
                                          std::move(modulus));
    } else if (kind == "product") {
        if (!j.contains("factors") || !j["factors"].is_array()) fail_parse("product ring needs a \"factors\" array");
        std::vector<RingDescription> fs;
        for (auto& f : j["factors"]) fs.push_back(ring_description_from_json(f));
        d = RingDescription::product(std::move(fs));
    } else if (kind == "table") {
        d = RingDescription::table(detail::square_table(j, "add"), detail::square_table(j, "mul"));
    } else {
        fail_parse("unknown finite ring kind \"" + kind + "\"");
    }
    if (j.contains("name")) d.name = detail::get_field<std::string>(j, "name");
    return d;
}

inline json to_json(const RingDescription& d) {
    using Kind = RingDescription::Kind;
    json j;
    switch (d.kind) {
        case Kind::zmod: j = {{"kind", "zmod"}, {"n", d.n}}; break;
        case Kind::galois_field:
            j = {{"kind", "gf"}, {"p", d.p}, {"k", d.k}};
            if (!d.modulus.empty()) j["modulus"] = d.modulus;
            break;
        case Kind::product: {
            j = {{"kind", "product"}, {"factors", json::array()}};
            for (auto& f : d.factors) j["factors"].push_back(to_json(f));
            break;
        }
        case Kind::table: j = {{"kind", "table"}, {"add", d.add_table}, {"mul", d.mul_table}}; break;
    }
    if (!d.name.empty()) j["name"] = d.name;
    return j;
}

/// A ring input: a finite table ring, Z, or GF(q)[t].
using AnyRing = std::variant<RingPtr, IntegerRing, PolyGFRing>;

inline AnyRing ring_from_json(const json& j) {
    auto kind = detail::get_field<std::string>(j, "kind");
    if (kind == "int") return IntegerRing{};
    if (kind == "polygf") return PolyGFRing(detail::get_field<std::uint32_t>(j, "q"));
    return make_ring(ring_description_from_json(j));
}

// ---------------------------------------------------------------------------
// Elements of Euclidean rings

inline BigInt euclid_value_from_json(const IntegerRing&, const json& j) {
    try {
        if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
        if (j.is_string()) return BigInt(j.get<std::string>());
    } catch (const std::exception& e) {
        fail_parse(std::string("bad integer: ") + e.what());
    }
    fail_parse("integer expected, got " + j.dump());
}

/// Coefficient array, lowest degree first.
inline Poly euclid_value_from_json(const PolyGFRing& ring, const json& j) {
    if (!j.is_array()) fail_parse("polynomial coefficient array expected, got " + j.dump());
    Poly p;
    for (auto& c : j) {
        if (!c.is_number_unsigned()) fail_parse("polynomial coefficients must be field element indices");
        auto v = c.get<std::uint32_t>();
        if (v >= ring.q()) fail_parse("coefficient " + std::to_string(v) + " outside GF(" + std::to_string(ring.q()) + ")");
        p.c.push_back(v);
    }
    while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
    return p;
}

inline Elem euclid_value_from_json(const FiniteRingOps& ops, const json& j) {
    if (!j.is_number_unsigned()) fail_parse("element index expected, got " + j.dump());
    auto v = j.get<std::uint64_t>();
    if (v >= ops.ring->size()) fail_parse("element index " + std::to_string(v) + " out of range");
    return static_cast<Elem>(v);
}

inline json euclid_value_to_json(const IntegerRing&, const BigInt& a) {
    if (abs(a) < BigInt(1) << 53) return a.convert_to<std::int64_t>();
    return a.str();
}
inline json euclid_value_to_json(const PolyGFRing&, const Poly& a) { return a.c; }
inline json euclid_value_to_json(const FiniteRingOps&, Elem a) { return a; }

// ---------------------------------------------------------------------------
// Modules and complexes

inline ModulePresentation presentation_from_json(const RingPtr& R, const json& j) {
    ModulePresentation p;
    p.rows = detail::get_field<std::size_t>(j, "rows");
    p.cols = detail::get_field<std::size_t>(j, "cols");
    p.entries = detail::get_field<std::vector<std::vector<Elem>>>(j, "entries");
    if (p.entries.size() != p.rows) fail_parse("presentation: entries must have \"rows\" rows");
    for (auto& row : p.entries) {
        if (row.size() != p.cols) fail_parse("presentation: every row must have \"cols\" entries");
        for (auto x : row)
            if (x >= R->size()) fail_parse("presentation: element index out of range");
    }
    return p;
}

inline json to_json(const ModulePresentation& p) {
    return {{"rows", p.rows}, {"cols", p.cols}, {"entries", p.entries}};
}

/// {"lo":0,"ranks":[1,1],"differentials":[[[2]]]}; differentials[k] is d_{lo+k+1}.
template <RingOps E>
PerfectComplex<E> complex_from_json(const E& ring, const json& j) {
    int lo = j.contains("lo") ? detail::get_field<int>(j, "lo") : 0;
    auto ranks = detail::get_field<std::vector<std::size_t>>(j, "ranks");
    if (!j.contains("differentials") || !j["differentials"].is_array()) fail_parse("complex needs \"differentials\"");
    std::vector<Matrix<typename E::value_type>> diffs;
    for (auto& m : j["differentials"]) {
        if (!m.is_array()) fail_parse("differential must be an array of rows");
        std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
        std::size_t k = diffs.size();
        if (k + 1 < ranks.size() && rows == 0) cols = ranks[k + 1];
        Matrix<typename E::value_type> M(rows, cols, ring.zero());
        for (std::size_t i = 0; i < rows; ++i) {
            if (!m[i].is_array() || m[i].size() != cols) fail_parse("differential rows have unequal lengths");
            for (std::size_t c = 0; c < cols; ++c) M.at(i, c) = euclid_value_from_json(ring, m[i][c]);
        }
        diffs.push_back(std::move(M));
    }
    try {
        return PerfectComplex<E>(ring, lo, std::move(ranks), std::move(diffs));
    } catch (const Error& e) {
        fail_parse(e.what());
    }
}

template <RingOps E>
json to_json(const PerfectComplex<E>& X) {
    json j{{"lo", X.lo()}, {"ranks", X.ranks()}, {"differentials", json::array()}};
    for (auto& d : X.differentials()) {
        json m = json::array();
        for (std::size_t i = 0; i < d.rows; ++i) {
            json row = json::array();
            for (std::size_t c = 0; c < d.cols; ++c) row.push_back(euclid_value_to_json(X.ring(), d.at(i, c)));
            m.push_back(row);
        }
        j["differentials"].push_back(m);
    }
    return j;
}

// ---------------------------------------------------------------------------
// Thomason sets

inline json to_json(const FiniteThomason& Y) {
    auto primes = spec(Y.ring());
    json pts = json::array();
    for (auto i : Y.points().members()) pts.push_back(primes[i].to_string());
    return {{"points", pts}};
}

template <EuclideanRing E>
json to_json(const EuclidThomason<E>& Y) {
    if (Y.is_all()) return {{"all", true}};
    return {{"radical", euclid_value_to_json(Y.ring(), Y.radical())}};
}

template <EuclideanRing E>
EuclidThomason<E> thomason_from_json(const E& ring, const json& j) {
    if (j.contains("all") && j["all"] == true) return EuclidThomason<E>::all(ring);
    if (j.contains("radical")) {
        auto r = euclid_value_from_json(ring, j["radical"]);
        if (ring.is_zero(r)) return EuclidThomason<E>::all(ring);
        return EuclidThomason<E>::v(ring, r);
    }
    if (j.contains("points")) {
        std::vector<SymbolicPrime<E>> pts;
        for (auto& p : j["points"]) pts.push_back(SymbolicPrime<E>::closed(ring, euclid_value_from_json(ring, p)));
        return EuclidThomason<E>::from_points(ring, pts);
    }
    fail_parse("Thomason set needs \"all\", \"radical\" or \"points\"");
}

// ---------------------------------------------------------------------------
// Graded rings and modules

inline GradedRing graded_ring_from_json(const json& j) {
    if (!j.contains("base")) fail_parse("graded ring needs \"base\"");
    auto base = make_ring(ring_description_from_json(j["base"]));
    auto k = detail::get_field<std::size_t>(j, "k");
    if (k < 1 || k > 4) fail_parse("graded ring: k must lie in 1..4");
    return GradedRing(base, k);
}

/// elem: a scalar index in degree 0, an array of k indices in degree >= 1.
inline HomogElem homog_elem_from_json(const GradedRing& A, int deg, const json& j) {
    if (deg < 0) fail_parse("negative coefficient degree");
    HomogElem e = A.zero(deg);
    auto check = [&](const json& v) {
        if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= A.base()->size())
            fail_parse("coefficient " + v.dump() + " is not an element index");
        return v.get<Elem>();
    };
    if (deg == 0) {
        e.c[0] = check(j);
    } else {
        if (!j.is_array() || j.size() != A.k()) fail_parse("degree >= 1 coefficient needs k entries");
        for (std::size_t i = 0; i < A.k(); ++i) e.c[i] = check(j[i]);
    }
    return e;
}

inline GradedPresentation graded_presentation_from_json(const GradedRing& A, const json& j) {
    GradedPresentation p;
    if (!j.contains("gens") || !j["gens"].is_array()) fail_parse("graded module needs \"gens\"");
    for (auto& g : j["gens"]) p.gens.push_back(detail::get_field<int>(g, "deg"));
    if (j.contains("rels"))
        for (auto& r : j["rels"]) {
            if (!r.contains("coeffs") || !r["coeffs"].is_array() || r["coeffs"].empty())
                fail_parse("relation needs a nonempty \"coeffs\" array");
            GradedRelation rel;
            bool first = true;
            for (auto& t : r["coeffs"]) {
                auto gen = detail::get_field<std::size_t>(t, "gen");
                if (gen >= p.gens.size()) fail_parse("relation refers to a missing generator");
                int deg = detail::get_field<int>(t, "deg");
                if (!t.contains("elem")) fail_parse("relation term needs \"elem\"");
                int total = p.gens[gen] + deg;
                if (first) rel.degree = total;
                else if (total != rel.degree) fail_parse("relation is not homogeneous");
                first = false;
                rel.terms.push_back({gen, homog_elem_from_json(A, deg, t["elem"])});
            }
            p.rels.push_back(std::move(rel));
        }
    return p;
}

inline json to_json(const GradedPresentation& p) {
    json j{{"gens", json::array()}, {"rels", json::array()}};
    for (auto d : p.gens) j["gens"].push_back({{"deg", d}});
    for (auto& r : p.rels) {
        json cs = json::array();
        for (auto& t : r.terms) {
            json elem = t.coeff.deg == 0 ? json(t.coeff.c[0]) : json(t.coeff.c);
            cs.push_back({{"gen", t.gen}, {"deg", t.coeff.deg}, {"elem", elem}});
        }
        j["rels"].push_back({{"coeffs", cs}});
    }
    return j;
}

// ---------------------------------------------------------------------------
// Reports

/// FNV-1a, printed as 16 hex digits.
inline std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json to_json(const Check& c) {
    json j{{"name", c.name}, {"anchor", c.anchor}, {"status", status_name(c.status)}, {"witnesses", c.witnesses}};
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

inline json to_json(const Report& r) {
    json checks = json::array();
    for (auto& c : r.checks) checks.push_back(to_json(c));
    return {{"command", r.command}, {"inputs_digest", r.inputs_digest}, {"seed", r.seed}, {"passed", r.passed()},
            {"checks", checks}};
}

}  // namespace spectra
