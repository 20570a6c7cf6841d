#pragma once

#include "circlerep/graph.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace circlerep {

// Canonical byte encoding of a looped graph.  Equal bytes if and only if the
// graphs are isomorphic (valid through 16 vertices; intended use stays at 12
// or fewer).
struct CanonicalForm {
    std::string bytes;
    auto operator<=>(const CanonicalForm&) const = default;
};

namespace detail {

struct IdxGraph {
    int n = 0;
    std::array<std::uint32_t, 16> adj{};
    std::uint32_t loops = 0;

    static IdxGraph of(const LoopedGraph& g) {
        IdxGraph ig;
        ig.n = static_cast<int>(g.vertex_count());
        for (int i = 0; i < ig.n; ++i) {
            ig.adj[i] = g.adjacency_row(i);
            if (g.loop_at(i)) ig.loops |= 1u << i;
        }
        return ig;
    }
};

inline std::string encode_under(const IdxGraph& g, const std::vector<int>& perm) {
    std::string bytes(1, static_cast<char>(g.n));
    int bit = 0;
    char cur = 0;
    auto push = [&](bool b) {
        if (b) cur |= char(1 << bit);
        if (++bit == 8) {
            bytes.push_back(cur);
            cur = 0;
            bit = 0;
        }
    };
    for (int i = 0; i < g.n; ++i) {
        push(g.loops >> perm[i] & 1);
        for (int j = 0; j < i; ++j) push(g.adj[perm[i]] >> perm[j] & 1);
    }
    if (bit != 0) bytes.push_back(cur);
    return bytes;
}

using Partition = std::vector<std::vector<int>>;

// Colour refinement: split cells by loop flag and neighbour counts per cell
// until stable.  Cell order depends only on invariant data, so isomorphic
// graphs refine to corresponding partitions.
inline Partition refine(const IdxGraph& g, Partition cells) {
    bool changed = true;
    while (changed) {
        changed = false;
        Partition next;
        std::vector<std::uint32_t> mask(cells.size(), 0);
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (int v : cells[c]) mask[c] |= 1u << v;
        for (const auto& cell : cells) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::map<std::vector<int>, std::vector<int>> split;
            for (int v : cell) {
                std::vector<int> sig;
                sig.reserve(cells.size());
                for (std::size_t c = 0; c < cells.size(); ++c)
                    sig.push_back(__builtin_popcount(g.adj[v] & mask[c]));
                split[sig].push_back(v);
            }
            if (split.size() > 1) changed = true;
            for (auto& [sig, members] : split) next.push_back(std::move(members));
        }
        cells = std::move(next);
    }
    return cells;
}

inline Partition initial_partition(const IdxGraph& g) {
    std::map<std::pair<int, int>, std::vector<int>> by_key;
    for (int v = 0; v < g.n; ++v)
        by_key[{g.loops >> v & 1, __builtin_popcount(g.adj[v])}].push_back(v);
    Partition cells;
    for (auto& [key, members] : by_key) cells.push_back(std::move(members));
    return refine(g, cells);
}

inline bool twins(const IdxGraph& g, int u, int w) {
    if ((g.loops >> u & 1) != (g.loops >> w & 1)) return false;
    std::uint32_t mask = ~((1u << u) | (1u << w));
    return ((g.adj[u] ^ g.adj[w]) & mask) == 0;
}

// Individualisation-refinement search for the minimum encoding.  Branching
// is restricted to one representative per twin class of the first
// non-singleton cell; swapping twins is an automorphism, so the minimum is
// unaffected.
inline void canon_search(const IdxGraph& g, Partition cells, std::string& best, std::vector<int>& best_perm) {
    cells = refine(g, cells);
    bool discrete = true;
    for (const auto& cell : cells)
        if (cell.size() > 1) { discrete = false; break; }
    if (discrete) {
        std::vector<int> perm;
        perm.reserve(g.n);
        for (const auto& cell : cells) perm.push_back(cell[0]);
        std::string enc = encode_under(g, perm);
        if (best.empty() || enc < best) {
            best = std::move(enc);
            best_perm = std::move(perm);
        }
        return;
    }
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        if (cells[ci].size() == 1) continue;
        std::vector<int> reps;
        for (int v : cells[ci]) {
            bool duplicate = false;
            for (int r : reps)
                if (twins(g, r, v)) { duplicate = true; break; }
            if (!duplicate) reps.push_back(v);
        }
        for (int v : reps) {
            Partition child;
            child.reserve(cells.size() + 1);
            for (std::size_t cj = 0; cj < cells.size(); ++cj) {
                if (cj != ci) {
                    child.push_back(cells[cj]);
                    continue;
                }
                child.push_back({v});
                std::vector<int> rest;
                for (int w : cells[ci])
                    if (w != v) rest.push_back(w);
                child.push_back(std::move(rest));
            }
            canon_search(g, std::move(child), best, best_perm);
        }
        break;
    }
}

} // namespace detail

inline CanonicalForm canonical_form(const LoopedGraph& g) {
    auto ig = detail::IdxGraph::of(g);
    if (ig.n == 0) return {std::string(1, '\0')};
    std::string best;
    std::vector<int> perm;
    detail::canon_search(ig, detail::initial_partition(ig), best, perm);
    return {best};
}

// Rebuilds the canonically labelled graph from its encoding, with vertex
// labels v00, v01, ...
inline LoopedGraph canonical_to_graph(const CanonicalForm& form) {
    int n = static_cast<int>(static_cast<unsigned char>(form.bytes.at(0)));
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        std::string l = "v" + std::to_string(i);
        if (i < 10) l.insert(1, "0");
        labels.push_back(l);
    }
    LoopedGraph g(labels);
    int bit = 0;
    std::size_t byte = 1;
    auto pull = [&]() -> bool {
        bool b = form.bytes.at(byte) >> bit & 1;
        if (++bit == 8) {
            bit = 0;
            ++byte;
        }
        return b;
    };
    for (int i = 0; i < n; ++i) {
        if (pull()) g.set_loop(labels[i]);
        for (int j = 0; j < i; ++j)
            if (pull()) g.add_edge(labels[i], labels[j]);
    }
    return g;
}

// Exhaustive backtracking isomorphism, independent of canonical_form.
// Returns a vertex bijection g -> h when one exists.
inline std::optional<std::vector<std::pair<std::string, std::string>>> isomorphism(const LoopedGraph& g,
                                                                                   const LoopedGraph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() ||
        g.loop_count() != h.loop_count())
        return std::nullopt;
    const int n = static_cast<int>(g.vertex_count());
    auto ig = detail::IdxGraph::of(g), ih = detail::IdxGraph::of(h);
    auto cls = [](const detail::IdxGraph& x, int v) {
        return std::pair<int, int>(__builtin_popcount(x.adj[v]), x.loops >> v & 1);
    };
    std::map<std::pair<int, int>, int> class_sizes;
    for (int v = 0; v < n; ++v) ++class_sizes[cls(ig, v)];
    {
        std::map<std::pair<int, int>, int> hs;
        for (int v = 0; v < n; ++v) ++hs[cls(ih, v)];
        if (hs != class_sizes) return std::nullopt;
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto ka = std::pair(class_sizes[cls(ig, a)], a), kb = std::pair(class_sizes[cls(ig, b)], b);
        return ka < kb;
    });
    std::vector<int> image(n, -1);
    std::uint32_t used = 0;
    auto extend = [&](auto&& self, int depth) -> bool {
        if (depth == n) return true;
        int u = order[depth];
        for (int w = 0; w < n; ++w) {
            if (used >> w & 1) continue;
            if (cls(ig, u) != cls(ih, w)) continue;
            bool ok = true;
            for (int d = 0; d < depth && ok; ++d) {
                int prev = order[d];
                if (bool(ig.adj[u] >> prev & 1) != bool(ih.adj[w] >> image[prev] & 1)) ok = false;
            }
            if (!ok) continue;
            image[u] = w;
            used |= 1u << w;
            if (self(self, depth + 1)) return true;
            used &= ~(1u << w);
            image[u] = -1;
        }
        return false;
    };
    if (!extend(extend, 0)) return std::nullopt;
    std::vector<std::pair<std::string, std::string>> out;
    for (int v = 0; v < n; ++v) out.emplace_back(g.vertex_labels()[v], h.vertex_labels()[image[v]]);
    return out;
}

inline bool is_isomorphic(const LoopedGraph& g, const LoopedGraph& h) {
    return isomorphism(g, h).has_value();
}

struct OrbitResult {
    std::vector<CanonicalForm> forms; // discovery order, starting with the input's form
    bool complete = true;
};

// Closure of g under loop complementation and simple/nonsimple local
// complementation, deduplicated by canonical form.  Stops early once budget
// distinct forms have been collected.
inline OrbitResult local_equivalence_orbit(const LoopedGraph& g, std::size_t budget = 200000) {
    if (budget == 0) throw std::invalid_argument("orbit budget must be positive");
    if (g.vertex_count() > 12) throw std::out_of_range("orbit search bound is 12 vertices");
    OrbitResult result;
    std::set<std::string> seen;
    std::deque<LoopedGraph> queue;
    auto admit = [&](const LoopedGraph& cand) {
        CanonicalForm f = canonical_form(cand);
        if (!seen.insert(f.bytes).second) return;
        result.forms.push_back(std::move(f));
        queue.push_back(cand);
    };
    admit(g);
    while (!queue.empty()) {
        if (result.forms.size() >= budget) {
            result.complete = false;
            return result;
        }
        LoopedGraph cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& v : cur.vertex_labels()) {
            admit(cur.loop_complement(v));
            admit(cur.local_complement(v, false));
            admit(cur.local_complement(v, true));
        }
    }
    return result;
}

struct Move {
    enum class Kind { loop_complement, local_simple, local_nonsimple };
    Kind kind;
    std::string vertex;
};

struct VertexMinorWitness {
    std::vector<Move> moves;                                  // applied to g in order
    std::vector<std::string> deleted;                         // then these vertices are removed
    std::vector<std::pair<std::string, std::string>> iso;     // remaining graph -> h
};

struct VertexMinorResult {
    std::optional<VertexMinorWitness> witness;
    bool conclusive = true; // absence is meaningful only if the closure completed
};

inline LoopedGraph apply_move(const LoopedGraph& g, const Move& m) {
    switch (m.kind) {
        case Move::Kind::loop_complement: return g.loop_complement(m.vertex);
        case Move::Kind::local_simple: return g.local_complement(m.vertex, false);
        default: return g.local_complement(m.vertex, true);
    }
}

// Breadth-first search over complementation moves interleaved with vertex
// deletions.  A deletion commutes with any later move at a surviving vertex,
// so every interleaved witness rewrites to the moves-then-delete form stored
// in VertexMinorWitness.
inline VertexMinorResult has_vertex_minor(const LoopedGraph& g, const LoopedGraph& h,
                                          std::size_t budget = 200000) {
    if (budget == 0) throw std::invalid_argument("search budget must be positive");
    if (g.vertex_count() > 12) throw std::out_of_range("vertex-minor search bound is 12 vertices");
    if (h.vertex_count() > g.vertex_count()) return {std::nullopt, true};

    struct State {
        LoopedGraph graph;
        int parent;
        bool is_delete;
        Move move; // valid when !is_delete; move.vertex is the victim otherwise
    };
    const std::string target = canonical_form(h).bytes;
    std::vector<State> states;
    std::set<std::string> seen;
    std::deque<int> queue;

    auto finish = [&](int id) -> VertexMinorResult {
        std::vector<Move> all_moves;
        std::vector<std::string> deleted;
        for (int cur = id; cur > 0; cur = states[cur].parent) {
            if (states[cur].is_delete) deleted.push_back(states[cur].move.vertex);
            else all_moves.push_back(states[cur].move);
        }
        std::reverse(all_moves.begin(), all_moves.end());
        LoopedGraph replay = g;
        for (const auto& m : all_moves) replay = apply_move(replay, m);
        replay = replay.delete_vertices(std::set<std::string>(deleted.begin(), deleted.end()));
        auto iso = isomorphism(replay, h);
        if (!iso) throw std::logic_error("vertex-minor witness failed to replay");
        std::sort(deleted.begin(), deleted.end());
        return {VertexMinorWitness{std::move(all_moves), std::move(deleted), *iso}, true};
    };

    auto admit = [&](LoopedGraph cand, int parent, bool is_delete, Move move) -> int {
        CanonicalForm f = canonical_form(cand);
        if (!seen.insert(f.bytes).second) return -1;
        states.push_back({std::move(cand), parent, is_delete, std::move(move)});
        int id = static_cast<int>(states.size()) - 1;
        if (states[id].graph.vertex_count() == h.vertex_count() && f.bytes == target) return id;
        queue.push_back(id);
        return -1;
    };

    int hit = admit(g, -1, false, Move{Move::Kind::loop_complement, ""});
    if (hit >= 0) return finish(hit);
    while (!queue.empty()) {
        if (states.size() >= budget) return {std::nullopt, false};
        int cur = queue.front();
        queue.pop_front();
        LoopedGraph here = states[cur].graph; // states may reallocate below
        if (here.vertex_count() > h.vertex_count()) {
            for (const auto& v : here.vertex_labels()) {
                int id = admit(here.delete_vertices({v}), cur, true,
                               Move{Move::Kind::loop_complement, v});
                if (id >= 0) return finish(id);
            }
        }
        for (const auto& v : here.vertex_labels()) {
            for (Move::Kind k : {Move::Kind::loop_complement, Move::Kind::local_simple,
                                 Move::Kind::local_nonsimple}) {
                Move m{k, v};
                int id = admit(apply_move(here, m), cur, false, m);
                if (id >= 0) return finish(id);
            }
        }
    }
    return {std::nullopt, true};
}

} // namespace circlerep
