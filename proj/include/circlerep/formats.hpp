#pragma once

#include "circlerep/multimatroid.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace circlerep {

namespace detail {

// Strips a trailing comment and splits on whitespace.
inline std::vector<std::string> format_tokens(const std::string& line) {
    std::string body = line.substr(0, line.find('#'));
    std::istringstream in(body);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

} // namespace detail

// ---- graph text: `v <label>`, `e <a> <b>`, `l <a>` --------------------------

inline LoopedGraph read_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> edges, loops;
    while (std::getline(in, line)) {
        auto toks = detail::format_tokens(line);
        if (toks.empty()) continue;
        if (toks[0] == "v" && toks.size() == 2)
            labels.push_back(toks[1]);
        else if (toks[0] == "e" && toks.size() == 3)
            edges.push_back({toks[1], toks[2]});
        else if (toks[0] == "l" && toks.size() == 2)
            loops.push_back({toks[1]});
        else
            throw std::invalid_argument("bad graph line: " + line);
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw std::invalid_argument("duplicate vertex " + labels[i]);
    LoopedGraph g(labels);
    auto known = [&](const std::string& v) {
        if (!g.has_vertex(v)) throw std::invalid_argument("edge at undeclared vertex " + v);
        return v;
    };
    for (const auto& e : edges) g.add_edge(known(e[0]), known(e[1]));
    for (const auto& l : loops) g.set_loop(known(l[0]), true);
    return g;
}

inline std::string write_graph_text(const LoopedGraph& g) {
    std::ostringstream out;
    const auto& labels = g.vertex_labels();
    for (const auto& v : labels) out << "v " << v << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (g.edge_at(i, j)) out << "e " << labels[i] << " " << labels[j] << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (g.loop_at(i)) out << "l " << labels[i] << "\n";
    return out.str();
}

// ---- double occurrence words: one word per line ------------------------------

// A line with whitespace holds multi-character tokens; otherwise every
// character is its own token.
inline std::vector<std::vector<std::string>> read_dow_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> words;
    while (std::getline(in, line)) {
        auto toks = detail::format_tokens(line);
        if (toks.empty()) continue;
        if (toks.size() > 1) {
            words.push_back(toks);
            continue;
        }
        std::vector<std::string> letters;
        for (char c : toks[0]) letters.emplace_back(1, c);
        words.push_back(std::move(letters));
    }
    if (words.empty()) throw std::invalid_argument("no words in input");
    return words;
}

// ---- binary matroid representations ------------------------------------------

// `rank <r>` then one `<label> <bitstring>` line per column, highest row first.
inline BinaryMatroidRep read_matroid_rep(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int rank = -1;
    std::vector<std::string> labels;
    std::vector<std::string> bits;
    while (std::getline(in, line)) {
        auto toks = detail::format_tokens(line);
        if (toks.empty()) continue;
        if (rank < 0) {
            if (toks.size() != 2 || toks[0] != "rank")
                throw std::invalid_argument("matroid file must open with `rank <r>`");
            rank = std::stoi(toks[1]);
            if (rank < 0 || rank > 32) throw std::invalid_argument("rank out of range");
            continue;
        }
        if (toks.size() != 2) throw std::invalid_argument("bad column line: " + line);
        if (toks[1].size() != static_cast<std::size_t>(rank))
            throw std::invalid_argument("column " + toks[0] + " needs " + std::to_string(rank) + " bits");
        labels.push_back(toks[0]);
        bits.push_back(toks[1]);
    }
    if (rank < 0) throw std::invalid_argument("matroid file must open with `rank <r>`");
    std::vector<std::string> rows;
    for (int i = 1; i <= rank; ++i) rows.push_back("r" + std::to_string(i));
    ExactMatrix m(FieldSpec::gf2(), rows, labels);
    for (std::size_t j = 0; j < bits.size(); ++j)
        for (int i = 0; i < rank; ++i) {
            char c = bits[j][static_cast<std::size_t>(i)];
            if (c != '0' && c != '1') throw std::invalid_argument("bitstrings are 0/1 only");
            if (c == '1') m.set_at(static_cast<std::size_t>(i), j, 1);
        }
    return binary_matroid(std::move(m));
}

inline std::string write_matroid_rep(const BinaryMatroidRep& m) {
    std::ostringstream out;
    out << "rank " << m.rank() << "\n";
    for (std::size_t j = 0; j < m.size(); ++j) {
        out << m.elements()[j] << " ";
        for (std::size_t i = 0; i < m.rank(); ++i)
            out << (m.matrix.at_pos(i, j) != 0 ? '1' : '0');
        out << "\n";
    }
    return out.str();
}

} // namespace circlerep
