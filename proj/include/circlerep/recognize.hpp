#pragma once

#include "circlerep/multimatroid.hpp"
#include "circlerep/signed_ias.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circlerep {

// ---- the Naji system --------------------------------------------------------

// One GF(2) affine equation over the ordered-pair variables beta(v,w).
struct NajiEquation {
    int family = 0;
    std::vector<std::pair<std::string, std::string>> terms;
    int rhs = 0;
};

struct NajiSystem {
    std::vector<std::pair<std::string, std::string>> variables;
    std::vector<NajiEquation> equations;

    std::size_t var_index(const std::string& v, const std::string& w) const {
        auto it = index_.find({v, w});
        if (it == index_.end()) throw std::invalid_argument("no such variable pair");
        return it->second;
    }

    void seal() {
        for (std::size_t i = 0; i < variables.size(); ++i) index_[variables[i]] = i;
    }

private:
    std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

// Three families of equations over the variables beta(v,w), v != w:
// every edge vw gives beta(v,w)+beta(w,v)=1; a vertex x seeing neither end of
// an edge vw gives beta(x,v)+beta(x,w)=0; a path w-v-x with wx a non-edge
// gives beta(v,w)+beta(v,x)+beta(w,x)+beta(x,w)=1.
inline NajiSystem naji_system(const LoopedGraph& g) {
    if (g.loop_count() > 0) throw std::invalid_argument("naji equations need a loopless graph");
    const auto& labels = g.vertex_labels();
    const std::size_t n = g.vertex_count();
    NajiSystem sys;
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w)
            if (v != w) sys.variables.emplace_back(labels[v], labels[w]);
    sys.seal();

    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = v + 1; w < n; ++w) {
            if (!g.edge_at(v, w)) continue;
            sys.equations.push_back({1, {{labels[v], labels[w]}, {labels[w], labels[v]}}, 1});
            for (std::size_t x = 0; x < n; ++x) {
                if (x == v || x == w || g.edge_at(x, v) || g.edge_at(x, w)) continue;
                sys.equations.push_back({2, {{labels[x], labels[v]}, {labels[x], labels[w]}}, 0});
            }
        }
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w) {
            if (!g.edge_at(v, w)) continue;
            for (std::size_t x = w + 1; x < n; ++x) {
                if (!g.edge_at(v, x) || g.edge_at(w, x)) continue;
                sys.equations.push_back({3,
                                         {{labels[v], labels[w]},
                                          {labels[v], labels[x]},
                                          {labels[w], labels[x]},
                                          {labels[x], labels[w]}},
                                         1});
            }
        }
    return sys;
}

using NajiSolution = std::map<std::pair<std::string, std::string>, int>;

inline bool naji_satisfies(const NajiSystem& sys, const NajiSolution& beta) {
    for (const auto& eq : sys.equations) {
        int sum = 0;
        for (const auto& t : eq.terms) sum ^= beta.at(t);
        if (sum != eq.rhs) return false;
    }
    return true;
}

struct CircleCheck {
    bool circle = false;
    NajiSolution beta;                     // populated on yes
    std::optional<NajiEquation> conflict;  // populated on no
};

// Incremental GF(2) elimination in equation order; the certificate on failure
// is the first equation that reduces to 0 = 1.
inline CircleCheck is_circle(const LoopedGraph& g) {
    constexpr std::size_t max_vars = 16 * 15;
    NajiSystem sys = naji_system(g);
    if (sys.variables.size() > max_vars) throw std::out_of_range("naji solver bound is 16 vertices");

    using Row = std::pair<std::bitset<max_vars>, int>;
    std::vector<Row> pivots;
    std::vector<std::size_t> pivot_cols;
    for (const auto& eq : sys.equations) {
        Row row{{}, eq.rhs};
        for (const auto& t : eq.terms) row.first.flip(sys.var_index(t.first, t.second));
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (row.first.test(pivot_cols[i])) {
                row.first ^= pivots[i].first;
                row.second ^= pivots[i].second;
            }
        if (row.first.none()) {
            if (row.second) return {false, {}, eq};
            continue;
        }
        std::size_t col = 0;
        while (!row.first.test(col)) ++col;
        pivots.push_back(row);
        pivot_cols.push_back(col);
    }

    std::vector<int> value(sys.variables.size(), 0);
    for (std::size_t i = pivots.size(); i-- > 0;) {
        int v = pivots[i].second;
        for (std::size_t c = 0; c < sys.variables.size(); ++c)
            if (c != pivot_cols[i] && pivots[i].first.test(c)) v ^= value[c];
        value[pivot_cols[i]] = v;
    }
    CircleCheck out;
    out.circle = true;
    for (std::size_t i = 0; i < sys.variables.size(); ++i) out.beta[sys.variables[i]] = value[i];
    if (!naji_satisfies(sys, out.beta)) throw std::logic_error("naji elimination produced a non-solution");
    return out;
}

// ---- solutions from signed matrices -----------------------------------------

// Reads beta off a signed matrix: the sign of A on edges, the parity of B on
// non-edges.  The result is checked against the full equation system.
inline NajiSolution naji_from_signed(const SignedIas& s) {
    LoopedGraph g = interlacement(s.system);
    const auto& labels = g.vertex_labels();
    NajiSolution beta;
    for (std::size_t v = 0; v < labels.size(); ++v)
        for (std::size_t w = 0; w < labels.size(); ++w) {
            if (v == w) continue;
            int b;
            if (g.edge_at(v, w)) {
                const Rat& a = s.matrix.at(labels[v], ground_label(VarKind::chi, labels[w]));
                if (a == 1)
                    b = 0;
                else if (a == -1)
                    b = 1;
                else
                    throw std::logic_error("edge entry outside the sign table");
            } else {
                const Rat& e = s.matrix.at(labels[v], ground_label(VarKind::psi, labels[w]));
                if (e == 0)
                    b = 0;
                else if (e == 2)
                    b = 1;
                else
                    throw std::logic_error("non-edge entry outside the parity table");
            }
            beta[{labels[v], labels[w]}] = b;
        }
    if (!naji_satisfies(naji_system(g), beta))
        throw std::logic_error("signed matrix produced a non-solution");
    return beta;
}

// ---- obstructions and realization -------------------------------------------

struct Obstruction {
    std::string name;
    VertexMinorWitness witness;
};

struct ObstructionScan {
    std::optional<Obstruction> found;
    bool conclusive = true;
};

inline ObstructionScan find_obstruction(const LoopedGraph& g, std::size_t budget = 200000) {
    if (g.loop_count() > 0) throw std::invalid_argument("obstruction scan needs a loopless graph");
    ObstructionScan out;
    for (const auto& name : {"W5", "BW3", "W7"}) {
        VertexMinorResult r = has_vertex_minor(g, named_graph(name), budget);
        if (r.witness) {
            out.found = Obstruction{name, *r.witness};
            out.conclusive = true;
            return out;
        }
        out.conclusive = out.conclusive && r.conclusive;
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<std::string>> graph_components(const LoopedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::string>> comps;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::vector<std::size_t> queue{root};
        std::vector<std::string> comp;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            comp.push_back(g.vertex_labels()[queue[head]]);
            for (std::size_t w = 0; w < n; ++w)
                if (!seen[w] && g.edge_at(queue[head], w)) {
                    seen[w] = true;
                    queue.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace detail

// Smallest double occurrence word (per connected component) whose interlacement
// graph is isomorphic to that component; absence is conclusive at this size.
inline std::optional<std::vector<std::string>> realize(const LoopedGraph& g) {
    if (g.loop_count() > 0) throw std::invalid_argument("realization needs a loopless graph");
    std::vector<std::string> words;
    for (const auto& comp : detail::graph_components(g)) {
        if (comp.size() > 6) throw std::out_of_range("realization search bound is 6 vertices");
        LoopedGraph target = g.induced(comp);
        bool found = false;
        for (const auto& word : all_words_first_occurrence(static_cast<int>(comp.size()))) {
            if (!is_isomorphic(interlacement(parse_dow(word)), target)) continue;
            words.push_back(word);
            found = true;
            break;
        }
        if (!found) return std::nullopt;
    }
    return words;
}

// ---- representations and planarity ------------------------------------------

// A strict sheltering matrix for the order-3 multimatroid of a circle graph:
// realize each component, rename the letters onto the component's vertices,
// and instantiate the signed matrix over the field.  Rows and columns follow
// the vertex order of g, so the image over GF(2) is ias_matrix(g).
inline ExactMatrix represent_over(const LoopedGraph& g, const FieldSpec& field) {
    auto words = realize(g);
    if (!words) throw std::invalid_argument("not a circle graph: no realization exists");

    auto comps = detail::graph_components(g);
    std::vector<std::vector<std::string>> renamed;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        EulerSystem es = parse_dow((*words)[i]);
        auto iso = isomorphism(interlacement(es), g.induced(comps[i]));
        if (!iso) throw std::logic_error("realized word lost its isomorphism");
        std::map<std::string, std::string> to_vertex(iso->begin(), iso->end());
        std::vector<std::string> tokens;
        for (char c : (*words)[i]) tokens.push_back(to_vertex.at(std::string(1, c)));
        renamed.push_back(std::move(tokens));
    }

    EulerSystem es = parse_dow(renamed);
    ExactMatrix raw = represent_over(es, based_fundamentals(es), field);

    std::vector<std::string> cols;
    for (VarKind k : {VarKind::phi, VarKind::chi, VarKind::psi})
        for (const auto& v : g.vertex_labels()) cols.push_back(ground_label(k, v));
    ExactMatrix out(field, g.vertex_labels(), cols);
    for (const auto& v : g.vertex_labels())
        for (const auto& c : cols) out.set(v, c, raw.at(v, c));
    return out;
}

// A binary matroid is planar exactly when its fundamental graph is a circle
// graph.
inline bool matroid_is_planar(const BinaryMatroidRep& m) {
    return is_circle(fundamental_graph(m)).circle;
}

} // namespace circlerep
