#pragma once

#include "circlerep/fourreg.hpp"
#include "circlerep/isotropic.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace circlerep {

inline VarKind var_kind(TransitionKind k) {
    switch (k) {
        case TransitionKind::phi: return VarKind::phi;
        case TransitionKind::chi: return VarKind::chi;
        default: return VarKind::psi;
    }
}

// Signed interlacement data of an oriented Euler system: an integer matrix
// (I | A | B) with one row per fundamental circuit.  Each vertex w has a
// departure passage w- and an arrival passage w+ on its own circuit; A
// records which of them the circuit at v covers (+1 for w+ alone, -1 for
// w- alone) and B counts how many of them it covers, with B_vv = 1.
struct SignedIas {
    ExactMatrix matrix;  // over the rationals, integer entries
    EulerSystem system;
    FundamentalCircuits circuits;
};

inline SignedIas signed_ias(const EulerSystem& es, const FundamentalCircuits& fc) {
    const FourRegular& g = es.graph();
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v)
        if (fc.reversed.at(static_cast<std::size_t>(v)))
            throw std::invalid_argument("fundamental circuits must be consistently oriented");

    std::vector<std::string> cols;
    for (auto kind : {VarKind::phi, VarKind::chi, VarKind::psi})
        for (const auto& v : g.vertex_labels) cols.push_back(ground_label(kind, v));

    std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(3 * static_cast<std::size_t>(n), Rat(0)));
    for (int v = 0; v < n; ++v) {
        rows[v][static_cast<std::size_t>(v)] = 1;
        rows[v][static_cast<std::size_t>(2 * n + v)] = 1;
        std::vector<int> covered(n, 0);  // bit 0: w- seen, bit 1: w+ seen
        for (const auto& pg : walk_interior(es, fc, v)) {
            int w = g.vertex_of(es.departure_half(pg));
            int idx = es.passages(w)[0] == pg ? 0 : 1;
            covered[w] |= idx == fc.start_passage[static_cast<std::size_t>(w)] ? 1 : 2;
        }
        for (int w = 0; w < n; ++w) {
            if (w == v) continue;
            if (covered[w] == 2) rows[v][static_cast<std::size_t>(n + w)] = 1;
            if (covered[w] == 1) rows[v][static_cast<std::size_t>(n + w)] = -1;
            if (covered[w] == 3) rows[v][static_cast<std::size_t>(2 * n + w)] = 2;
            if (covered[w] == 1 || covered[w] == 2) rows[v][static_cast<std::size_t>(2 * n + w)] = 1;
        }
    }
    return SignedIas{ExactMatrix::from_rows(FieldSpec::rational(), g.vertex_labels, cols, rows), es, fc};
}

// Selecting, for each vertex, the column named by the partition's transition
// must reproduce the crossing-count matrix of the partition under the
// directed touch graph induced by the fundamental circuits.
inline bool verify_submatrix_identity(const SignedIas& s, const CircuitPartition& p) {
    const EulerSystem& es = s.system;
    if (p.graph.get() != es.graph_ptr().get())
        throw std::invalid_argument("circuit partition lives on a different graph");
    const FourRegular& g = es.graph();
    const int n = g.vertex_count();

    TouchGraph tg = touch_graph(p);
    direct_by_fundamentals(tg, es, s.circuits, p);
    ExactMatrix m = m_matrix(es, s.circuits, p, tg);

    for (int w = 0; w < n; ++w) {
        auto kind = kind_of(es, p.chosen[static_cast<std::size_t>(w)]);
        if (!kind) throw std::invalid_argument("partition transition is not one of the system's");
        std::size_t col = s.matrix.col_index(ground_label(var_kind(*kind), g.vertex_labels[static_cast<std::size_t>(w)]));
        for (int v = 0; v < n; ++v)
            if (s.matrix.at_pos(static_cast<std::size_t>(v), col) !=
                m.at_pos(static_cast<std::size_t>(v), static_cast<std::size_t>(w)))
                return false;
    }
    return true;
}

struct TransversalDeterminants {
    // key: one letter per vertex in label order, p/c/s for phi/chi/psi
    std::map<std::string, Rat> by_kinds;
    bool transversely_unimodular = true;
};

inline TransversalDeterminants transversal_determinants(const SignedIas& s, int bound = 12) {
    const FourRegular& g = s.system.graph();
    const int n = g.vertex_count();
    if (n > bound) throw std::invalid_argument("vertex count exceeds the determinant sweep bound");

    static constexpr std::array<TransitionKind, 3> all_kinds = {TransitionKind::phi, TransitionKind::chi,
                                                                TransitionKind::psi};
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;

    TransversalDeterminants out;
    for (long code = 0; code < total; ++code) {
        long rem = code;
        std::string key;
        std::vector<std::string> cols;
        for (int v = 0; v < n; ++v) {
            TransitionKind k = all_kinds[static_cast<std::size_t>(rem % 3)];
            rem /= 3;
            key.push_back(kind_letter(k));
            cols.push_back(ground_label(var_kind(k), g.vertex_labels[static_cast<std::size_t>(v)]));
        }
        Rat det = s.matrix.submatrix_cols(cols).determinant();
        if (det != 0 && det != 1 && det != -1) out.transversely_unimodular = false;
        out.by_kinds.emplace(std::move(key), std::move(det));
    }
    return out;
}

// Product and inverse identities tying two Euler systems together: with both
// circuit sets based at the same edges, the transition matrix T taking the
// first system's rows to the second satisfies
//   m(c2, p, d) = T * m(c, p, d)     for the supplied partition and direction
//   T * m(c, c2, D_gamma2) = I.
inline bool naturality_check(const EulerSystem& c, const EulerSystem& c2, const FundamentalCircuits& gamma,
                             const FundamentalCircuits& gamma2, const CircuitPartition& p,
                             const TouchGraph& d) {
    if (c.graph_ptr().get() != c2.graph_ptr().get() || p.graph.get() != c.graph_ptr().get())
        throw std::invalid_argument("the systems and the partition must share one graph");
    if (gamma.base_edges.empty() || gamma.base_edges != gamma2.base_edges)
        throw std::invalid_argument("both circuit sets must be based at the same edges");
    const FourRegular& g = c.graph();

    CircuitPartition pc = euler_partition(c);
    TouchGraph dg = touch_graph(pc);
    direct_by_fundamentals(dg, c, gamma, pc);
    ExactMatrix trans = m_matrix(c2, gamma2, pc, dg);

    ExactMatrix lhs = m_matrix(c2, gamma2, p, d);
    if (!(lhs == trans.times(m_matrix(c, gamma, p, d)))) return false;

    CircuitPartition pc2 = euler_partition(c2);
    TouchGraph dg2 = touch_graph(pc2);
    direct_by_fundamentals(dg2, c2, gamma2, pc2);
    ExactMatrix back = m_matrix(c, gamma, pc2, dg2);
    return trans.times(back) == ExactMatrix::identity(FieldSpec::rational(), g.vertex_labels);
}

// The signed matrix carried into a field.  Needs based circuits; checks the
// strict sheltering of the interlacement system where the sweep is feasible.
inline ExactMatrix represent_over(const EulerSystem& es, const FundamentalCircuits& fc,
                                  const FieldSpec& field) {
    if (fc.base_edges.empty()) throw std::invalid_argument("representation needs based circuits");
    ExactMatrix img = signed_ias(es, fc).matrix.to_field(field);
    LoopedGraph g = interlacement(es);
    if (g.vertex_count() <= 10 && !shelters(img, g, 3, true))
        throw std::logic_error("signed matrix fails the sheltering sweep");
    return img;
}

// All 3-element minimally dependent column sets over the field: the triple
// has rank 2 and every pair inside it has rank 2.
inline std::vector<std::array<std::string, 3>> three_circuits(const SignedIas& s, const FieldSpec& field) {
    const int n = s.system.graph().vertex_count();
    if (n > 8) throw std::invalid_argument("three-circuit sweep is limited to 8 vertices");
    ExactMatrix m = s.matrix.to_field(field);
    const std::size_t cols = m.col_count();

    std::vector<bool> nonzero(cols, false);
    for (std::size_t j = 0; j < cols; ++j) nonzero[j] = m.rank_cols_pos({j}) == 1;
    std::vector<std::vector<bool>> pair_free(cols, std::vector<bool>(cols, false));
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = i + 1; j < cols; ++j)
            if (nonzero[i] && nonzero[j]) pair_free[i][j] = m.rank_cols_pos({i, j}) == 2;

    std::vector<std::array<std::string, 3>> out;
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = i + 1; j < cols; ++j) {
            if (!pair_free[i][j]) continue;
            for (std::size_t k = j + 1; k < cols; ++k) {
                if (!pair_free[i][k] || !pair_free[j][k]) continue;
                if (m.rank_cols_pos({i, j, k}) == 2)
                    out.push_back({m.col_labels()[i], m.col_labels()[j], m.col_labels()[k]});
            }
        }
    return out;
}

} // namespace circlerep
