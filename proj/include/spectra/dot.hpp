#pragma once

#include <string>

#include "spectra/lattice.hpp"

namespace spectra {

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

/// Edges x -> y for y a direct specialization of x (y ∈ cl{x}, nothing between).
inline std::string specialization_edges(const FiniteSpace& X, const std::string& prefix) {
    std::string out;
    auto below = [&](std::size_t x, std::size_t y) { return x != y && X.closure(x).contains(y); };
    for (std::size_t x = 0; x < X.n; ++x)
        for (std::size_t y = 0; y < X.n; ++y) {
            if (!below(x, y)) continue;
            bool direct = true;
            for (std::size_t z = 0; z < X.n && direct; ++z) direct = !(below(x, z) && below(z, y));
            if (direct) out += "  " + prefix + std::to_string(x) + " -> " + prefix + std::to_string(y) + ";\n";
        }
    return out;
}

}  // namespace detail

/// Hasse diagram, bottom to top.
inline std::string emit_dot(const FiniteLattice& L, const std::string& name = "L") {
    std::string out = "digraph " + detail::dot_quote(name) + " {\n";
    if (L.size() > 0) out += "  rankdir=BT;\n";
    for (std::size_t a = 0; a < L.size(); ++a)
        out += "  n" + std::to_string(a) + " [label=" + detail::dot_quote(L.label(a)) + "];\n";
    for (auto [a, b] : L.covers()) out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
    return out + "}\n";
}

/// Points with the specialization order of the topology.
inline std::string emit_dot(const FiniteSpace& X, const std::string& name = "X") {
    std::string out = "digraph " + detail::dot_quote(name) + " {\n";
    for (std::size_t x = 0; x < X.n; ++x)
        out += "  p" + std::to_string(x) + " [label=" + detail::dot_quote(X.point_label(x)) + "];\n";
    out += detail::specialization_edges(X, "p");
    return out + "}\n";
}

/// Two topologies on the same points, side by side.
inline std::string emit_dot_pair(const FiniteSpace& X, const std::string& x_name, const FiniteSpace& Y,
                                 const std::string& y_name, const std::string& name = "spectra") {
    std::string out = "digraph " + detail::dot_quote(name) + " {\n";
    int c = 0;
    for (auto* S : {&X, &Y}) {
        std::string prefix = c == 0 ? "a" : "b";
        out += "  subgraph cluster_" + std::to_string(c) + " {\n    label=" + detail::dot_quote(c == 0 ? x_name : y_name) + ";\n";
        for (std::size_t x = 0; x < S->n; ++x)
            out += "    " + prefix + std::to_string(x) + " [label=" + detail::dot_quote(S->point_label(x)) + "];\n";
        out += "  }\n";
        out += detail::specialization_edges(*S, prefix);
        ++c;
    }
    return out + "}\n";
}

}  // namespace spectra
