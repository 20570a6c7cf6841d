#pragma once

#include "circlerep/exact_matrix.hpp"
#include "circlerep/graph.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace circlerep {

// Ground-set elements of the isotropic system: three per vertex.
enum class VarKind { phi = 0, chi = 1, psi = 2 };

inline const char* kind_name(VarKind k) {
    switch (k) {
        case VarKind::phi: return "phi";
        case VarKind::chi: return "chi";
        default: return "psi";
    }
}

struct GroundElement {
    std::string vertex;
    VarKind kind;
    bool operator==(const GroundElement& o) const { return vertex == o.vertex && kind == o.kind; }
    bool operator<(const GroundElement& o) const {
        return vertex != o.vertex ? vertex < o.vertex : kind < o.kind;
    }
};

inline std::string ground_label(VarKind k, const std::string& vertex) {
    return std::string(kind_name(k)) + "(" + vertex + ")";
}

inline std::string ground_label(const GroundElement& e) { return ground_label(e.kind, e.vertex); }

// (I | A | B) over GF(2), with B = I + A; columns labelled phi(v).. chi(v)..
// psi(v).. in vertex order, one block at a time.
inline ExactMatrix ias_matrix(const LoopedGraph& g) {
    const auto& vs = g.vertex_labels();
    std::vector<std::string> cols;
    for (VarKind k : {VarKind::phi, VarKind::chi, VarKind::psi})
        for (const auto& v : vs) cols.push_back(ground_label(k, v));
    ExactMatrix m(FieldSpec::gf2(), vs, cols);
    const std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
        m.set_at(i, i, 1);
        for (std::size_t j = 0; j < n; ++j) {
            int adj = i == j ? (g.loop_at(i) ? 1 : 0) : (g.edge_at(i, j) ? 1 : 0);
            m.set_at(i, n + j, adj);
            m.set_at(i, 2 * n + j, (i == j ? 1 : 0) ^ adj);
        }
    }
    return m;
}

// The restricted matrix (I | A): phi and chi columns only.
inline ExactMatrix ia_matrix(const LoopedGraph& g) {
    const auto& vs = g.vertex_labels();
    std::vector<std::string> keep;
    for (VarKind k : {VarKind::phi, VarKind::chi})
        for (const auto& v : vs) keep.push_back(ground_label(k, v));
    return ias_matrix(g).submatrix_cols(keep);
}

// A subtransversal of W(G) as one entry per vertex: -1 = absent, otherwise
// the VarKind index.  This is the working currency of all the sweeps.
using Choice = std::vector<int>;

inline Choice choice_of(const LoopedGraph& g, const std::vector<GroundElement>& elements) {
    Choice c(g.vertex_count(), -1);
    for (const auto& e : elements) {
        std::size_t i = g.index_of(e.vertex);
        if (c[i] != -1) throw std::invalid_argument("two elements at vertex " + e.vertex);
        c[i] = static_cast<int>(e.kind);
    }
    return c;
}

// Fast GF(2) rank oracle for the columns of ias_matrix(g): each column is a
// bitmask over the vertices, so subtransversal ranks reduce to eliminating
// at most n machine words.
class IsotropicSystem {
public:
    explicit IsotropicSystem(LoopedGraph g) : g_(std::move(g)) {
        const std::size_t n = g_.vertex_count();
        col_[0].resize(n);
        col_[1].resize(n);
        col_[2].resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::uint32_t adj = g_.adjacency_row(v);
            if (g_.loop_at(v)) adj |= std::uint32_t(1) << v;
            col_[0][v] = std::uint32_t(1) << v;
            col_[1][v] = adj;
            col_[2][v] = col_[0][v] ^ adj;
        }
    }

    const LoopedGraph& graph() const { return g_; }
    std::size_t vertex_count() const { return g_.vertex_count(); }

    std::uint32_t column_bits(VarKind k, std::size_t v) const {
        return col_[static_cast<int>(k)][v];
    }

    // GF(2) rank of the chosen columns; the rank function of the isotropic
    // 3-matroid (and of the 2-matroid when psi never appears).
    int rank_sub(const Choice& choice) const {
        if (choice.size() != g_.vertex_count()) throw std::invalid_argument("choice size mismatch");
        std::array<std::uint32_t, 16> pivot{};
        int rank = 0;
        for (std::size_t v = 0; v < choice.size(); ++v) {
            if (choice[v] < 0) continue;
            if (choice[v] > 2) throw std::invalid_argument("bad kind index");
            std::uint32_t x = col_[choice[v]][v];
            while (x) {
                int b = std::bit_width(x) - 1;
                if (!pivot[b]) {
                    pivot[b] = x;
                    ++rank;
                    break;
                }
                x ^= pivot[b];
            }
        }
        return rank;
    }

    int rank_sub(const std::vector<GroundElement>& elements) const {
        return rank_sub(choice_of(g_, elements));
    }

private:
    LoopedGraph g_;
    std::array<std::vector<std::uint32_t>, 3> col_;
};

// Visits every subtransversal with kinds < arity, i.e. (arity+1)^n choices
// counting absence, in mixed-radix order with vertex 0 fastest.
inline void for_each_subtransversal(std::size_t n, int arity, const std::function<void(const Choice&)>& fn) {
    Choice c(n, -1);
    while (true) {
        fn(c);
        std::size_t i = 0;
        while (i < n) {
            if (++c[i] < arity) break;
            c[i] = -1;
            ++i;
        }
        if (i == n) return;
    }
}

struct ShelterReport {
    bool ok = false;
    bool rank_matches = true;              // subtransversal sweep outcome
    bool strict_ok = true;                 // candidate rank == |V| when strict was asked
    std::optional<Choice> violation;       // first mismatching subtransversal
    int oracle_rank = -1, candidate_rank = -1;
};

// Does the candidate matrix define a sheltering matroid for the isotropic
// 2- or 3-matroid of g?  The candidate's columns must carry ground labels
// for every phi/chi (and psi when arity is 3) element.  Checks every
// subtransversal, so it is guarded against large inputs.
inline ShelterReport shelters_report(const ExactMatrix& candidate, const LoopedGraph& g, int arity,
                                     bool strict) {
    if (arity != 2 && arity != 3) throw std::invalid_argument("arity must be 2 or 3");
    const std::size_t n = g.vertex_count();
    if (n > 10) throw std::invalid_argument("subtransversal sweep bounded at 10 vertices");
    IsotropicSystem sys(g);
    std::vector<std::array<std::size_t, 3>> pos(n);
    for (std::size_t v = 0; v < n; ++v)
        for (int k = 0; k < arity; ++k)
            pos[v][k] = candidate.col_index(ground_label(static_cast<VarKind>(k), g.vertex_labels()[v]));

    ShelterReport report;
    for_each_subtransversal(n, arity, [&](const Choice& c) {
        if (report.violation) return;
        std::vector<std::size_t> cols;
        for (std::size_t v = 0; v < n; ++v)
            if (c[v] >= 0) cols.push_back(pos[v][c[v]]);
        int oracle = sys.rank_sub(c);
        int got = static_cast<int>(candidate.rank_cols_pos(cols));
        if (oracle != got) {
            report.rank_matches = false;
            report.violation = c;
            report.oracle_rank = oracle;
            report.candidate_rank = got;
        }
    });
    if (strict) report.strict_ok = candidate.rank() == n;
    report.ok = report.rank_matches && report.strict_ok;
    return report;
}

inline bool shelters(const ExactMatrix& candidate, const LoopedGraph& g, int arity, bool strict) {
    return shelters_report(candidate, g, arity, strict).ok;
}

// Restriction of a sheltering matrix to the graph without v: contract the
// phi(v) column and delete chi(v), psi(v) (and psi(v) may be absent for
// 2-matroid candidates).
inline ExactMatrix shelter_delete_vertex(const ExactMatrix& candidate, const std::string& v) {
    ExactMatrix r = candidate.contract_column(ground_label(VarKind::phi, v));
    std::vector<std::string> drop{ground_label(VarKind::chi, v)};
    if (r.has_col(ground_label(VarKind::psi, v))) drop.push_back(ground_label(VarKind::psi, v));
    return r.delete_columns(drop);
}

struct StandardForm {
    ExactMatrix matrix;        // the reduced top block, n rows
    bool tail_zero = true;     // rows below the top block vanished
    bool support_matches = true;
};

namespace detail {

inline ExactMatrix reduce_on_phi(const ExactMatrix& candidate, const LoopedGraph& g) {
    std::vector<std::size_t> pivots;
    for (const auto& v : g.vertex_labels()) pivots.push_back(candidate.col_index(ground_label(VarKind::phi, v)));
    return candidate.reduced_by_columns(pivots);
}

} // namespace detail

// Row reduction of a 2-matroid sheltering candidate to the form (I A'),
// checking that the tail rows vanish and that A' has nonzero entries
// exactly on the support of the adjacency matrix.
inline StandardForm standardize_two(const ExactMatrix& candidate, const LoopedGraph& g) {
    const std::size_t n = g.vertex_count();
    ExactMatrix red = detail::reduce_on_phi(candidate, g);
    StandardForm out{red.submatrix(std::vector<std::string>(red.row_labels().begin(),
                                                            red.row_labels().begin() + n),
                                   red.col_labels())};
    for (std::size_t i = n; i < red.row_count(); ++i)
        for (std::size_t j = 0; j < red.col_count(); ++j)
            if (red.at_pos(i, j) != 0) out.tail_zero = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& e = out.matrix.at_pos(
                i, out.matrix.col_index(ground_label(VarKind::chi, g.vertex_labels()[j])));
            bool adj = i == j ? g.loop_at(i) : g.edge_at(i, j);
            if ((e != 0) != adj) out.support_matches = false;
        }
    return out;
}

struct NormalForm {
    ExactMatrix matrix;   // n rows, psi columns rescaled to unit B diagonal
    bool tail_zero = true;
    bool support_matches = true;   // the A block
    bool diag_units = true;        // B_vv scaled to 1 (nonzero before scaling)
    bool edges_reciprocal = true;  // B_vw * B_wv = 1 on edges
};

// Lemma-style normal form for a strict 3-matroid sheltering candidate:
// reduce on the phi block, then scale each psi column by 1/B_vv.
inline NormalForm standardize_three(const ExactMatrix& candidate, const LoopedGraph& g) {
    const std::size_t n = g.vertex_count();
    ExactMatrix red = detail::reduce_on_phi(candidate, g);
    NormalForm out{red.submatrix(std::vector<std::string>(red.row_labels().begin(),
                                                          red.row_labels().begin() + n),
                                 red.col_labels())};
    for (std::size_t i = n; i < red.row_count(); ++i)
        for (std::size_t j = 0; j < red.col_count(); ++j)
            if (red.at_pos(i, j) != 0) out.tail_zero = false;

    auto chi = [&](std::size_t j) { return out.matrix.col_index(ground_label(VarKind::chi, g.vertex_labels()[j])); };
    auto psi = [&](std::size_t j) { return out.matrix.col_index(ground_label(VarKind::psi, g.vertex_labels()[j])); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool adj = i == j ? g.loop_at(i) : g.edge_at(i, j);
            if ((out.matrix.at_pos(i, chi(j)) != 0) != adj) out.support_matches = false;
        }

    for (std::size_t j = 0; j < n; ++j) {
        const Rat& d = out.matrix.at_pos(j, psi(j));
        if (d == 0) {
            out.diag_units = false;
            continue;
        }
        if (d == 1) continue;
        ExactMatrix& m = out.matrix;
        Rat inv = m.field_inverse(d);
        std::size_t cp = psi(j);
        for (std::size_t i = 0; i < n; ++i) m.set_at(i, cp, m.at_pos(i, cp) * inv);
    }
    if (out.diag_units)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && g.edge_at(i, j)) {
                    Rat prod = out.matrix.reduce(out.matrix.at_pos(i, psi(j)) *
                                                 out.matrix.at_pos(j, psi(i)));
                    if (prod != 1) out.edges_reciprocal = false;
                }
    return out;
}

} // namespace circlerep
