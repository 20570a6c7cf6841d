#pragma once

#include "circlerep/exact_matrix.hpp"
#include "circlerep/graph.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <set>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace circlerep {

// 4-regular multigraph at half-edge resolution.  Edge e owns half-edges 2e
// and 2e+1; loops and parallel edges are fine since halves are distinct.
struct FourRegular {
    std::vector<std::string> vertex_labels;
    std::vector<int> vertex_of_half;

    int half_count() const { return static_cast<int>(vertex_of_half.size()); }
    int edge_count() const { return half_count() / 2; }
    int vertex_count() const { return static_cast<int>(vertex_labels.size()); }
    static int mate(int h) { return h ^ 1; }
    static int edge_of(int h) { return h >> 1; }
    int vertex_of(int h) const { return vertex_of_half.at(static_cast<std::size_t>(h)); }

    std::vector<int> halves_at(int v) const {
        std::vector<int> out;
        for (int h = 0; h < half_count(); ++h)
            if (vertex_of_half[h] == v) out.push_back(h);
        return out;
    }

    void validate() const {
        if (half_count() % 2 != 0) throw std::invalid_argument("odd number of half-edges");
        std::vector<int> deg(vertex_labels.size(), 0);
        for (int v : vertex_of_half) {
            if (v < 0 || v >= vertex_count()) throw std::invalid_argument("half-edge at unknown vertex");
            ++deg[v];
        }
        for (int v = 0; v < vertex_count(); ++v)
            if (deg[v] != 4) throw std::invalid_argument("vertex " + vertex_labels[v] + " is not 4-regular");
    }

    std::vector<int> component_of_vertex() const {
        std::vector<int> parent(vertex_count());
        std::iota(parent.begin(), parent.end(), 0);
        auto root = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int e = 0; e < edge_count(); ++e) {
            int a = root(vertex_of(2 * e)), b = root(vertex_of(2 * e + 1));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
        std::vector<int> comp(vertex_count());
        std::map<int, int> renumber;
        for (int v = 0; v < vertex_count(); ++v) {
            int r = root(v);
            auto [it, fresh] = renumber.emplace(r, static_cast<int>(renumber.size()));
            comp[v] = it->second;
        }
        return comp;
    }

    int component_count() const {
        auto comp = component_of_vertex();
        return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    }
};

// An Euler system: one closed trail per component, stored as the sequence of
// departing half-edges.  Step t of a circuit departs deps[t] and arrives on
// mate(deps[t]); the passage at step t pairs the previous arrival with the
// current departure.
class EulerSystem {
public:
    struct Passage {
        int circuit = -1;
        int step = -1;
        bool operator==(const Passage& o) const { return circuit == o.circuit && step == o.step; }
    };

    EulerSystem(std::shared_ptr<const FourRegular> graph, std::vector<std::vector<int>> deps)
        : graph_(std::move(graph)), deps_(std::move(deps)) {
        const FourRegular& g = *graph_;
        g.validate();
        std::vector<int> seen_edge(g.edge_count(), 0);
        passages_.assign(g.vertex_count(), {});
        std::vector<int> count(g.vertex_count(), 0);
        for (std::size_t c = 0; c < deps_.size(); ++c) {
            const auto& circuit = deps_[c];
            if (circuit.empty()) throw std::invalid_argument("empty circuit");
            for (std::size_t t = 0; t < circuit.size(); ++t) {
                int dep = circuit[t];
                int prev = circuit[(t + circuit.size() - 1) % circuit.size()];
                if (dep < 0 || dep >= g.half_count()) throw std::invalid_argument("bad half-edge id");
                if (g.vertex_of(dep) != g.vertex_of(FourRegular::mate(prev)))
                    throw std::invalid_argument("circuit is not a closed trail");
                if (++seen_edge[FourRegular::edge_of(dep)] > 1)
                    throw std::invalid_argument("edge traversed twice");
                int v = g.vertex_of(dep);
                if (count[v] == 2) throw std::invalid_argument("vertex visited more than twice");
                passages_[v][count[v]++] = Passage{static_cast<int>(c), static_cast<int>(t)};
            }
        }
        for (int e = 0; e < g.edge_count(); ++e)
            if (!seen_edge[e]) throw std::invalid_argument("edge not traversed");
        auto comp = g.component_of_vertex();
        std::set<int> comps_hit;
        for (const auto& circuit : deps_) comps_hit.insert(comp[g.vertex_of(circuit[0])]);
        if (static_cast<int>(deps_.size()) != g.component_count() ||
            static_cast<int>(comps_hit.size()) != g.component_count())
            throw std::invalid_argument("need exactly one circuit per component");
    }

    const FourRegular& graph() const { return *graph_; }
    const std::shared_ptr<const FourRegular>& graph_ptr() const { return graph_; }
    const std::vector<std::vector<int>>& circuits() const { return deps_; }
    const std::array<Passage, 2>& passages(int v) const { return passages_[v]; }

    int arrival_half(const Passage& p) const {
        const auto& c = deps_[p.circuit];
        return FourRegular::mate(c[(p.step + c.size() - 1) % c.size()]);
    }
    int departure_half(const Passage& p) const { return deps_[p.circuit][p.step]; }

private:
    std::shared_ptr<const FourRegular> graph_;
    std::vector<std::vector<int>> deps_;
    std::vector<std::array<Passage, 2>> passages_;
};

// ---- double occurrence words ----------------------------------------------

// A word with whitespace is split into tokens; otherwise every character is
// a vertex name.
inline std::vector<std::string> word_tokens(const std::string& word) {
    if (word.find_first_of(" \t") != std::string::npos) {
        std::istringstream in(word);
        std::vector<std::string> tokens;
        std::string tok;
        while (in >> tok) tokens.push_back(tok);
        return tokens;
    }
    std::vector<std::string> tokens;
    for (char ch : word) tokens.emplace_back(1, ch);
    return tokens;
}

// One word per connected component; every letter must occur exactly twice,
// within a single word.  Edge t of a word joins its t-th and (t+1)-th
// letters, wrapping at the end; the tail half of edge e is 2e.
inline EulerSystem parse_dow(const std::vector<std::vector<std::string>>& words) {
    if (words.empty()) throw std::invalid_argument("no words given");
    std::map<std::string, int> occurrences;
    std::map<std::string, std::size_t> word_of;
    for (std::size_t w = 0; w < words.size(); ++w) {
        if (words[w].empty()) throw std::invalid_argument("empty word");
        for (const auto& tok : words[w]) {
            ++occurrences[tok];
            auto [it, fresh] = word_of.emplace(tok, w);
            if (!fresh && it->second != w)
                throw std::invalid_argument("letter " + tok + " appears in two words");
        }
    }
    for (const auto& [tok, count] : occurrences)
        if (count != 2) throw std::invalid_argument("letter " + tok + " does not occur exactly twice");

    auto graph = std::make_shared<FourRegular>();
    for (const auto& [tok, count] : occurrences) graph->vertex_labels.push_back(tok);
    auto vertex_id = [&](const std::string& tok) {
        return static_cast<int>(std::lower_bound(graph->vertex_labels.begin(), graph->vertex_labels.end(), tok) -
                                graph->vertex_labels.begin());
    };
    std::vector<std::vector<int>> deps;
    for (const auto& word : words) {
        std::vector<int> circuit;
        for (std::size_t t = 0; t < word.size(); ++t) {
            int tail = vertex_id(word[t]);
            int head = vertex_id(word[(t + 1) % word.size()]);
            int e = static_cast<int>(graph->vertex_of_half.size()) / 2;
            graph->vertex_of_half.push_back(tail);
            graph->vertex_of_half.push_back(head);
            circuit.push_back(2 * e);
        }
        deps.push_back(std::move(circuit));
    }
    return EulerSystem(std::move(graph), std::move(deps));
}

inline EulerSystem parse_dow(const std::vector<std::string>& words) {
    std::vector<std::vector<std::string>> tokenized;
    for (const auto& w : words) tokenized.push_back(word_tokens(w));
    return parse_dow(tokenized);
}

inline EulerSystem parse_dow(const std::string& word) { return parse_dow(std::vector<std::string>{word}); }

inline std::vector<std::vector<std::string>> to_words(const EulerSystem& es) {
    std::vector<std::vector<std::string>> words;
    for (const auto& circuit : es.circuits()) {
        std::vector<std::string> word;
        for (int dep : circuit) word.push_back(es.graph().vertex_labels[es.graph().vertex_of(dep)]);
        words.push_back(std::move(word));
    }
    return words;
}

inline std::string join_word(const std::vector<std::string>& tokens) {
    bool single = true;
    for (const auto& t : tokens)
        if (t.size() != 1) { single = false; break; }
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i && !single) out += ' ';
        out += tokens[i];
    }
    return out;
}

// Least representative of a word's class under rotation, reflection and
// renaming.  Renaming maps letters to 'a', 'b', ... in first-occurrence
// order, which is minimal within the renaming class.
inline std::string canonical_word(const std::vector<std::string>& tokens) {
    const std::size_t L = tokens.size();
    std::string best;
    auto consider = [&](const std::vector<std::string>& w) {
        std::map<std::string, char> rename;
        std::string out;
        for (const auto& tok : w) {
            auto [it, fresh] = rename.emplace(tok, static_cast<char>('a' + rename.size()));
            out += it->second;
        }
        if (best.empty() || out < best) best = out;
    };
    std::vector<std::string> rotated(L);
    for (int reflect = 0; reflect < 2; ++reflect) {
        std::vector<std::string> base = tokens;
        if (reflect) std::reverse(base.begin(), base.end());
        for (std::size_t r = 0; r < L; ++r) {
            for (std::size_t i = 0; i < L; ++i) rotated[i] = base[(i + r) % L];
            consider(rotated);
        }
    }
    return best;
}

// All double occurrence words on n letters with letters named in
// first-occurrence order, in lexicographic order; (2n-1)!! of them.
inline std::vector<std::string> all_words_first_occurrence(int n) {
    if (n < 1 || n > 8) throw std::out_of_range("word enumeration supports 1..8 letters");
    std::vector<std::string> out;
    std::string cur;
    std::vector<int> remaining(static_cast<std::size_t>(n), 2);
    int used = 0;
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == static_cast<std::size_t>(2 * n)) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= used && v < n; ++v) {
            if (v == used) {
                cur += static_cast<char>('a' + v);
                --remaining[v];
                ++used;
                self(self);
                ++remaining[v];
                --used;
                cur.pop_back();
                break; // later letters are symmetric to this one
            }
            if (remaining[v] == 0) continue;
            cur += static_cast<char>('a' + v);
            --remaining[v];
            self(self);
            ++remaining[v];
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

// ---- transitions and circuit partitions ------------------------------------

enum class TransitionKind { phi, chi, psi };

inline char kind_letter(TransitionKind k) {
    switch (k) {
        case TransitionKind::phi: return 'p';
        case TransitionKind::chi: return 'c';
        default: return 's';
    }
}

// A pairing of the four half-edges at a vertex into two transitions.
struct Transition {
    int vertex = -1;
    std::array<std::array<int, 2>, 2> pairs{};

    static Transition make(int vertex, std::array<int, 2> a, std::array<int, 2> b) {
        if (a[0] > a[1]) std::swap(a[0], a[1]);
        if (b[0] > b[1]) std::swap(b[0], b[1]);
        if (b < a) std::swap(a, b);
        return Transition{vertex, {a, b}};
    }

    // The pair containing h: 0, 1, or -1 when absent.
    int side_of(int h) const {
        for (int s = 0; s < 2; ++s)
            if (pairs[s][0] == h || pairs[s][1] == h) return s;
        return -1;
    }

    int partner(int h) const {
        for (const auto& p : pairs) {
            if (p[0] == h) return p[1];
            if (p[1] == h) return p[0];
        }
        throw std::invalid_argument("half-edge not in transition");
    }

    bool operator==(const Transition& o) const { return vertex == o.vertex && pairs == o.pairs; }
    bool operator<(const Transition& o) const {
        return std::tie(vertex, pairs) < std::tie(o.vertex, o.pairs);
    }
};

inline Transition transition_of(const EulerSystem& es, int v, TransitionKind kind) {
    const auto& ps = es.passages(v);
    int a1 = es.arrival_half(ps[0]), d1 = es.departure_half(ps[0]);
    int a2 = es.arrival_half(ps[1]), d2 = es.departure_half(ps[1]);
    switch (kind) {
        case TransitionKind::phi: return Transition::make(v, {a1, d1}, {a2, d2});
        case TransitionKind::chi: return Transition::make(v, {a1, d2}, {a2, d1});
        default: return Transition::make(v, {a1, a2}, {d1, d2});
    }
}

inline std::optional<TransitionKind> kind_of(const EulerSystem& es, const Transition& t) {
    for (TransitionKind k : {TransitionKind::phi, TransitionKind::chi, TransitionKind::psi})
        if (transition_of(es, t.vertex, k) == t) return k;
    return std::nullopt;
}

// The circuits induced by one chosen transition per vertex.  Each edge is
// traversed once; circuit ids are assigned in order of their smallest
// starting half-edge.
struct CircuitPartition {
    std::shared_ptr<const FourRegular> graph;
    std::vector<Transition> chosen;             // indexed by vertex
    std::vector<std::vector<int>> circuits;     // departing halves in trace order
    std::map<std::array<int, 2>, int> circuit_of_single;

    std::size_t size() const { return circuits.size(); }

    int single_circuit(std::array<int, 2> pair) const {
        if (pair[0] > pair[1]) std::swap(pair[0], pair[1]);
        auto it = circuit_of_single.find(pair);
        if (it == circuit_of_single.end()) throw std::invalid_argument("not a single transition of this partition");
        return it->second;
    }
};

inline CircuitPartition circuit_partition(std::shared_ptr<const FourRegular> graph,
                                          std::vector<Transition> chosen) {
    const FourRegular& g = *graph;
    if (chosen.size() != static_cast<std::size_t>(g.vertex_count()))
        throw std::invalid_argument("need one transition per vertex");
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (chosen[v].vertex != v) throw std::invalid_argument("transition order must match vertex order");
        auto halves = g.halves_at(v);
        std::set<int> expect(halves.begin(), halves.end()), got;
        for (const auto& p : chosen[v].pairs) { got.insert(p[0]); got.insert(p[1]); }
        if (expect != got) throw std::invalid_argument("transition does not pair the halves at its vertex");
    }
    CircuitPartition part;
    part.graph = std::move(graph);
    part.chosen = std::move(chosen);
    std::vector<bool> edge_used(g.edge_count(), false);
    for (int start = 0; start < g.half_count(); ++start) {
        if (edge_used[FourRegular::edge_of(start)]) continue;
        int id = static_cast<int>(part.circuits.size());
        std::vector<int> circuit;
        int dep = start;
        do {
            edge_used[FourRegular::edge_of(dep)] = true;
            circuit.push_back(dep);
            int arr = FourRegular::mate(dep);
            int v = g.vertex_of(arr);
            int next = part.chosen[v].partner(arr);
            std::array<int, 2> single{std::min(arr, next), std::max(arr, next)};
            part.circuit_of_single[single] = id;
            dep = next;
        } while (dep != start);
        part.circuits.push_back(std::move(circuit));
    }
    return part;
}

inline CircuitPartition circuit_partition_kinds(const EulerSystem& es, const std::vector<TransitionKind>& kinds) {
    if (kinds.size() != static_cast<std::size_t>(es.graph().vertex_count()))
        throw std::invalid_argument("need one transition kind per vertex");
    std::vector<Transition> chosen;
    for (int v = 0; v < es.graph().vertex_count(); ++v) chosen.push_back(transition_of(es, v, kinds[v]));
    return circuit_partition(es.graph_ptr(), std::move(chosen));
}

// ---- touch graphs ----------------------------------------------------------

// One vertex per circuit of the partition and one edge e_v per vertex of the
// 4-regular graph; the two sides of e_v are the single transitions at v.
struct TouchGraph {
    int circuit_count = 0;
    std::vector<std::array<std::array<int, 2>, 2>> sides;  // per graph vertex; side 0 holds the lowest half
    std::vector<std::array<int, 2>> side_circuit;          // circuit id per side
    std::vector<int> initial_side;                         // -1 while undirected

    int component_count() const {
        std::vector<int> parent(circuit_count);
        std::iota(parent.begin(), parent.end(), 0);
        auto root = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& sc : side_circuit) {
            int a = root(sc[0]), b = root(sc[1]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
        std::set<int> roots;
        for (int i = 0; i < circuit_count; ++i) roots.insert(root(i));
        return static_cast<int>(roots.size());
    }

    bool directed() const {
        for (int s : initial_side)
            if (s < 0) return false;
        return !initial_side.empty();
    }
};

inline TouchGraph touch_graph(const CircuitPartition& p) {
    const FourRegular& g = *p.graph;
    TouchGraph tg;
    tg.circuit_count = static_cast<int>(p.size());
    tg.sides.resize(g.vertex_count());
    tg.side_circuit.resize(g.vertex_count());
    tg.initial_side.assign(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto pairs = p.chosen[v].pairs; // already normalised; side 0 has the lowest half
        tg.sides[v] = pairs;
        for (int s = 0; s < 2; ++s) tg.side_circuit[v][s] = p.single_circuit(pairs[s]);
    }
    return tg;
}

// ---- fundamental circuits ---------------------------------------------------

// Per-vertex choice of the closed path C_Gamma(v): it departs v at
// start_passage[v] and runs to the other passage.  reversed[v] flips the
// traversal orientation (signed constructions reject it).  When based,
// base_edges holds one edge per component avoided by every walk.
struct FundamentalCircuits {
    std::vector<int> start_passage;
    std::vector<bool> reversed;
    std::vector<int> base_edges;
};

inline std::vector<int> walk_steps(const EulerSystem& es, const FundamentalCircuits& fc, int v) {
    const auto& ps = es.passages(v);
    int s = fc.start_passage.at(static_cast<std::size_t>(v));
    const auto& circuit = es.circuits()[ps[s].circuit];
    int t1 = ps[s].step, t2 = ps[1 - s].step;
    std::vector<int> steps;
    for (int t = t1; t != t2; t = (t + 1) % static_cast<int>(circuit.size())) steps.push_back(t);
    return steps;
}

// The walk as a sequence of departing halves, honouring the reversal flag.
inline std::vector<int> walk_deps(const EulerSystem& es, const FundamentalCircuits& fc, int v) {
    const auto& ps = es.passages(v);
    int s = fc.start_passage.at(static_cast<std::size_t>(v));
    const auto& circuit = es.circuits()[ps[s].circuit];
    auto steps = walk_steps(es, fc, v);
    std::vector<int> deps;
    deps.reserve(steps.size());
    for (int t : steps) deps.push_back(circuit[t]);
    if (fc.reversed.at(static_cast<std::size_t>(v))) {
        std::reverse(deps.begin(), deps.end());
        for (int& d : deps) d = FourRegular::mate(d);
    }
    return deps;
}

// Passages strictly inside C_Gamma(v), in traversal order.
inline std::vector<EulerSystem::Passage> walk_interior(const EulerSystem& es, const FundamentalCircuits& fc,
                                                       int v) {
    if (fc.reversed.at(static_cast<std::size_t>(v)))
        throw std::invalid_argument("interior passages need the consistent orientation");
    const auto& ps = es.passages(v);
    int s = fc.start_passage.at(static_cast<std::size_t>(v));
    int circuit = ps[s].circuit;
    auto steps = walk_steps(es, fc, v);
    std::vector<EulerSystem::Passage> interior;
    for (std::size_t i = 1; i < steps.size(); ++i) interior.push_back({circuit, steps[i]});
    return interior;
}

inline FundamentalCircuits based_fundamentals(const EulerSystem& es, const std::vector<int>& base_edges) {
    const FourRegular& g = es.graph();
    if (base_edges.size() != es.circuits().size())
        throw std::invalid_argument("need one base edge per component");
    std::vector<int> base_of_circuit(es.circuits().size(), -1);
    for (int b : base_edges) {
        if (b < 0 || b >= g.edge_count()) throw std::invalid_argument("bad base edge id");
        int c = -1;
        for (std::size_t ci = 0; ci < es.circuits().size() && c < 0; ++ci)
            for (int dep : es.circuits()[ci])
                if (FourRegular::edge_of(dep) == b) { c = static_cast<int>(ci); break; }
        if (base_of_circuit[c] != -1) throw std::invalid_argument("two base edges in one component");
        base_of_circuit[c] = b;
    }
    for (int b : base_of_circuit)
        if (b == -1) throw std::invalid_argument("component without a base edge");

    FundamentalCircuits fc;
    fc.start_passage.assign(g.vertex_count(), 0);
    fc.reversed.assign(g.vertex_count(), false);
    fc.base_edges = base_edges;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int c = es.passages(v)[0].circuit;
        int base = base_of_circuit[c];
        bool ok = false;
        for (int s = 0; s < 2 && !ok; ++s) {
            fc.start_passage[v] = s;
            ok = true;
            for (int dep : walk_deps(es, fc, v))
                if (FourRegular::edge_of(dep) == base) { ok = false; break; }
        }
        if (!ok) throw std::logic_error("no walk avoids the base edge"); // cannot happen
    }
    return fc;
}

// Default base: the wrap-around edge of each circuit, i.e. the last step.
inline FundamentalCircuits based_fundamentals(const EulerSystem& es) {
    std::vector<int> base;
    for (const auto& circuit : es.circuits()) base.push_back(FourRegular::edge_of(circuit.back()));
    return based_fundamentals(es, base);
}

// ---- interlacement and the kappa transform ---------------------------------

// Two vertices are adjacent when their passages alternate along a common
// circuit.  Always a simple graph.
inline LoopedGraph interlacement(const EulerSystem& es) {
    const FourRegular& g = es.graph();
    LoopedGraph out(g.vertex_labels);
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int w = v + 1; w < g.vertex_count(); ++w) {
            const auto &pv = es.passages(v), &pw = es.passages(w);
            if (pv[0].circuit != pw[0].circuit) continue;
            int s1 = pv[0].step, s2 = pv[1].step;
            auto inside = [&](int t) {
                if (s1 < s2) return s1 < t && t < s2;
                return t > s1 || t < s2;
            };
            if (inside(pw[0].step) != inside(pw[1].step))
                out.add_edge(g.vertex_labels[v], g.vertex_labels[w]);
        }
    return out;
}

// Reverses the traversal of C_Gamma(v), leaving other components untouched.
// The result starts at the original circuit's first departure when that edge
// kept its direction, so word fixtures stay aligned.
inline EulerSystem kappa_transform(const EulerSystem& es, int v, const FundamentalCircuits& fc) {
    const auto& ps = es.passages(v);
    int s = fc.start_passage.at(static_cast<std::size_t>(v));
    int ci = ps[s].circuit;
    const auto& circuit = es.circuits()[ci];
    const int L = static_cast<int>(circuit.size());
    int t1 = ps[s].step, t2 = ps[1 - s].step;

    std::vector<int> fresh;
    fresh.reserve(L);
    for (int t = t2; t != t1; t = (t + 1) % L) fresh.push_back(circuit[t]);      // untouched part
    for (int t = (t2 - 1 + L) % L; ; t = (t - 1 + L) % L) {                       // reversed segment
        fresh.push_back(FourRegular::mate(circuit[t]));
        if (t == t1) break;
    }

    int anchor = circuit[0];
    auto where = std::find(fresh.begin(), fresh.end(), anchor);
    if (where == fresh.end()) where = std::find(fresh.begin(), fresh.end(), FourRegular::mate(anchor));
    std::rotate(fresh.begin(), where, fresh.end());

    auto deps = es.circuits();
    deps[ci] = std::move(fresh);
    return EulerSystem(es.graph_ptr(), std::move(deps));
}

inline EulerSystem kappa_transform(const EulerSystem& es, const std::string& vertex_label,
                                   const FundamentalCircuits& fc) {
    const auto& labels = es.graph().vertex_labels;
    auto it = std::find(labels.begin(), labels.end(), vertex_label);
    if (it == labels.end()) throw std::out_of_range("no such vertex: " + vertex_label);
    return kappa_transform(es, static_cast<int>(it - labels.begin()), fc);
}

// ---- shadows and transition matrices ----------------------------------------

// Directs every touch-graph edge e_v so that its initial side is the single
// transition containing the last arrival of C_Gamma(v).
inline void direct_by_fundamentals(TouchGraph& tg, const EulerSystem& es, const FundamentalCircuits& fc,
                                   const CircuitPartition& p) {
    const FourRegular& g = es.graph();
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto deps = walk_deps(es, fc, v);
        int h_in = FourRegular::mate(deps.back());
        int side = p.chosen[v].side_of(h_in);
        if (side < 0) throw std::logic_error("arrival half missing from its own transition");
        tg.initial_side[v] = side;
    }
}

// Integer tally of how the walk's shadow traverses each touch-graph edge:
// +1 with the chosen direction, -1 against it, per crossing passage.
inline std::vector<long long> shadow_vector(const FourRegular& g, const std::vector<int>& walk,
                                            const CircuitPartition& p, const TouchGraph& tg) {
    if (!tg.directed()) throw std::invalid_argument("touch graph must be directed");
    if (walk.empty()) throw std::invalid_argument("empty walk");
    const int L = static_cast<int>(walk.size());
    if (g.vertex_of(walk[0]) != g.vertex_of(FourRegular::mate(walk[L - 1])))
        throw std::invalid_argument("walk is not closed");
    std::vector<long long> z(g.vertex_count(), 0);
    for (int t = 0; t < L; ++t) {
        int arr = FourRegular::mate(walk[(t + L - 1) % L]);
        int dep = walk[t];
        int v = g.vertex_of(dep);
        if (g.vertex_of(arr) != v) throw std::invalid_argument("walk is not continuous");
        const Transition& tr = p.chosen[v];
        int side_in = tr.side_of(arr), side_out = tr.side_of(dep);
        if (side_in < 0 || side_out < 0) throw std::logic_error("walk half missing from transition");
        if (side_in == side_out) continue; // single transition of the partition: no crossing
        z[v] += side_in == tg.initial_side[v] ? 1 : -1;
    }
    return z;
}

// Row v is the shadow of C_Gamma(v) against the partition; integer entries
// over the rationals.  Columns are indexed by the touch-graph edges e_w,
// labelled by the vertices w.
inline ExactMatrix m_matrix(const EulerSystem& es, const FundamentalCircuits& fc, const CircuitPartition& p,
                            const TouchGraph& tg) {
    const FourRegular& g = es.graph();
    ExactMatrix m(FieldSpec::rational(), g.vertex_labels, g.vertex_labels);
    for (int v = 0; v < g.vertex_count(); ++v) {
        auto z = shadow_vector(g, walk_deps(es, fc, v), p, tg);
        for (int w = 0; w < g.vertex_count(); ++w) m.set_at(v, w, Rat(z[w]));
    }
    return m;
}

// Convenience: the partition C itself with the direction that makes
// m_matrix(es, fc, C, D) the identity.
inline CircuitPartition euler_partition(const EulerSystem& es) {
    std::vector<TransitionKind> kinds(es.graph().vertex_count(), TransitionKind::phi);
    return circuit_partition_kinds(es, kinds);
}

// The same Euler system with every circuit traversed backwards.
inline EulerSystem reverse_euler(const EulerSystem& es) {
    std::vector<std::vector<int>> rev;
    for (const auto& circuit : es.circuits()) {
        std::vector<int> r;
        r.reserve(circuit.size());
        for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) r.push_back(FourRegular::mate(*it));
        rev.push_back(std::move(r));
    }
    return EulerSystem(es.graph_ptr(), std::move(rev));
}

} // namespace circlerep
