#pragma once

#include "canonical.hpp"
#include "isotropic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circlerep {

enum class MmClass { not_multimatroid, multimatroid, tight_multimatroid };

inline const char* mm_class_name(MmClass c) {
    switch (c) {
        case MmClass::not_multimatroid: return "not_multimatroid";
        case MmClass::multimatroid: return "multimatroid";
        default: return "tight_multimatroid";
    }
}

// A partitioned ground set carrying one matroid per transversal.  Backed by
// an explicit family of subtransversal circuits, by a rank oracle, or by
// both once circuits have been materialized from the oracle.
class SemiMultimatroid {
public:
    using Mask = std::uint64_t;

    // Explicit backing.  The circuit family is validated: every circuit must
    // be a nonempty subtransversal, and any two circuits inside a common
    // transversal must be incomparable and satisfy weak elimination.
    SemiMultimatroid(std::vector<std::vector<std::string>> classes,
                     const std::vector<std::vector<std::string>>& circuits)
        : SemiMultimatroid(Key{}, std::move(classes)) {
        std::set<Mask> seen;
        for (const auto& c : circuits) seen.insert(mask_of(c));
        circuits_ = std::vector<Mask>(seen.begin(), seen.end());
        validate_circuits();
    }

    // Oracle backing: rank takes an element bitmask that is promised to be a
    // subtransversal.  Circuits are materialized lazily when needed.
    static SemiMultimatroid from_oracle(std::vector<std::vector<std::string>> classes,
                                        std::function<int(Mask)> rank) {
        SemiMultimatroid z(Key{}, std::move(classes));
        z.oracle_ = std::move(rank);
        return z;
    }

    std::size_t order() const { return classes_.size(); }
    std::size_t element_count() const { return labels_.size(); }
    const std::vector<std::string>& element_labels() const { return labels_; }
    const std::vector<std::vector<int>>& class_members() const { return classes_; }
    Mask class_mask(std::size_t k) const { return class_mask_[k]; }
    int class_of(std::size_t e) const { return class_of_[e]; }

    std::size_t index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw std::invalid_argument("no such element: " + label);
        return it->second;
    }

    Mask mask_of(const std::vector<std::string>& labels) const {
        Mask m = 0;
        for (const auto& l : labels) m |= Mask(1) << index_of(l);
        return m;
    }

    std::vector<std::string> labels_of(Mask m) const {
        std::vector<std::string> out;
        for (std::size_t e = 0; e < labels_.size(); ++e)
            if (m >> e & 1) out.push_back(labels_[e]);
        return out;
    }

    bool is_subtransversal(Mask m) const {
        for (Mask cm : class_mask_)
            if (std::popcount(m & cm) > 1) return false;
        return true;
    }

    // Rank of a subtransversal: oracle if available, otherwise the matroid
    // greedy over the explicit circuits.
    int rank(Mask m) const {
        if (!is_subtransversal(m)) throw std::invalid_argument("rank asked of a non-subtransversal");
        if (oracle_) return oracle_(m);
        Mask ind = 0;
        int r = 0;
        for (std::size_t e = 0; e < labels_.size(); ++e) {
            if (!(m >> e & 1)) continue;
            Mask cand = ind | Mask(1) << e;
            bool dep = false;
            for (Mask c : *circuits_)
                if ((c & ~cand) == 0) {
                    dep = true;
                    break;
                }
            if (!dep) {
                ind = cand;
                ++r;
            }
        }
        return r;
    }

    int rank(const std::vector<std::string>& labels) const { return rank(mask_of(labels)); }

    bool has_explicit_circuits() const { return circuits_.has_value(); }

    // Explicit circuits, materializing them from the oracle on first use.
    const std::vector<Mask>& circuits(std::size_t max_subtransversals = 2000000) const {
        if (!circuits_) materialize(max_subtransversals);
        return *circuits_;
    }

    std::vector<std::vector<std::string>> circuit_labels() const {
        std::vector<std::vector<std::string>> out;
        for (Mask c : circuits()) out.push_back(labels_of(c));
        return out;
    }

    // Maximal independent subtransversals.
    std::vector<std::vector<std::string>> bases() const {
        std::vector<std::vector<std::string>> out;
        for_each_sub([&](Mask s) {
            if (rank(s) != std::popcount(s)) return;
            for (std::size_t k = 0; k < classes_.size(); ++k) {
                if (s & class_mask_[k]) continue;
                for (int e : classes_[k])
                    if (rank(s | Mask(1) << e) > std::popcount(s)) return;
            }
            out.push_back(labels_of(s));
        });
        return out;
    }

    // Visits every subtransversal mask (the empty one included).
    void for_each_sub(const std::function<void(Mask)>& fn) const {
        walk_sub(0, 0, fn);
    }

private:
    struct Key {};

    SemiMultimatroid(Key, std::vector<std::vector<std::string>> classes) {
        for (auto& cls : classes) {
            if (cls.empty()) throw std::invalid_argument("empty skew class");
            std::vector<int> members;
            for (auto& l : cls) {
                if (!index_.emplace(l, labels_.size()).second)
                    throw std::invalid_argument("duplicate element: " + l);
                class_of_.push_back(static_cast<int>(classes_.size()));
                members.push_back(static_cast<int>(labels_.size()));
                labels_.push_back(std::move(l));
            }
            classes_.push_back(std::move(members));
        }
        if (labels_.size() > 64) throw std::out_of_range("ground set is limited to 64 elements");
        class_mask_.resize(classes_.size());
        for (std::size_t e = 0; e < labels_.size(); ++e)
            class_mask_[class_of_[e]] |= Mask(1) << e;
    }

    void walk_sub(std::size_t k, Mask acc, const std::function<void(Mask)>& fn) const {
        if (k == classes_.size()) {
            fn(acc);
            return;
        }
        walk_sub(k + 1, acc, fn);
        for (int e : classes_[k]) walk_sub(k + 1, acc | Mask(1) << e, fn);
    }

    void validate_circuits() const {
        for (Mask c : *circuits_) {
            if (c == 0) throw std::invalid_argument("the empty set cannot be a circuit");
            if (!is_subtransversal(c)) throw std::invalid_argument("circuit is not a subtransversal");
        }
        const auto& cs = *circuits_;
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) {
                if (i == j) continue;
                Mask u = cs[i] | cs[j];
                if (!is_subtransversal(u)) continue;
                if ((cs[i] & ~cs[j]) == 0)
                    throw std::invalid_argument("nested circuits inside one transversal");
                Mask both = cs[i] & cs[j];
                for (std::size_t e = 0; e < labels_.size(); ++e) {
                    if (!(both >> e & 1)) continue;
                    Mask room = u & ~(Mask(1) << e);
                    bool found = false;
                    for (Mask c3 : cs)
                        if ((c3 & ~room) == 0) {
                            found = true;
                            break;
                        }
                    if (!found) throw std::invalid_argument("circuit elimination fails at " + labels_[e]);
                }
            }
    }

    void materialize(std::size_t max_subtransversals) const {
        std::size_t total = 1;
        for (const auto& cls : classes_) {
            total *= cls.size() + 1;
            if (total > max_subtransversals)
                throw std::out_of_range("too many subtransversals to materialize circuits");
        }
        std::vector<Mask> subs;
        subs.reserve(total);
        for_each_sub([&](Mask s) { subs.push_back(s); });
        std::sort(subs.begin(), subs.end(),
                  [](Mask a, Mask b) { return std::popcount(a) != std::popcount(b)
                                            ? std::popcount(a) < std::popcount(b)
                                            : a < b; });
        std::vector<Mask> found;
        for (Mask s : subs) {
            if (s == 0) continue;
            bool has_smaller = false;
            for (Mask c : found)
                if ((c & ~s) == 0) {
                    has_smaller = true;
                    break;
                }
            if (has_smaller) continue;
            if (rank(s) < std::popcount(s)) found.push_back(s);
        }
        circuits_ = std::move(found);
    }

    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
    std::vector<Mask> class_mask_;
    std::function<int(Mask)> oracle_;
    mutable std::optional<std::vector<Mask>> circuits_;
};

// Structural equality: same elements, same partition, same circuit family,
// ignoring the order everything is listed in.
inline bool same_structure(const SemiMultimatroid& a, const SemiMultimatroid& b) {
    auto part = [](const SemiMultimatroid& z) {
        std::set<std::vector<std::string>> out;
        for (const auto& cls : z.class_members()) {
            std::vector<std::string> names;
            for (int e : cls) names.push_back(z.element_labels()[e]);
            std::sort(names.begin(), names.end());
            out.insert(std::move(names));
        }
        return out;
    };
    auto circs = [](const SemiMultimatroid& z) {
        std::set<std::vector<std::string>> out;
        for (auto& c : z.circuit_labels()) {
            std::sort(c.begin(), c.end());
            out.insert(std::move(c));
        }
        return out;
    };
    return part(a) == part(b) && circs(a) == circs(b);
}

inline SemiMultimatroid restriction(const SemiMultimatroid& z, const std::vector<std::string>& keep) {
    std::set<std::string> want(keep.begin(), keep.end());
    std::vector<std::vector<std::string>> classes;
    std::vector<int> old_index;
    for (const auto& cls : z.class_members()) {
        std::vector<std::string> survivors;
        for (int e : cls)
            if (want.count(z.element_labels()[e])) {
                survivors.push_back(z.element_labels()[e]);
                old_index.push_back(e);
            }
        if (!survivors.empty()) classes.push_back(std::move(survivors));
    }
    if (z.has_explicit_circuits()) {
        SemiMultimatroid::Mask keep_mask = z.mask_of({want.begin(), want.end()});
        std::vector<std::vector<std::string>> circuits;
        for (SemiMultimatroid::Mask c : z.circuits())
            if ((c & ~keep_mask) == 0) circuits.push_back(z.labels_of(c));
        return SemiMultimatroid(std::move(classes), circuits);
    }
    auto widen = [old_index](SemiMultimatroid::Mask narrow) {
        SemiMultimatroid::Mask wide = 0;
        for (std::size_t e = 0; e < old_index.size(); ++e)
            if (narrow >> e & 1) wide |= SemiMultimatroid::Mask(1) << old_index[e];
        return wide;
    };
    return SemiMultimatroid::from_oracle(
        std::move(classes), [z, widen](SemiMultimatroid::Mask m) { return z.rank(widen(m)); });
}

inline SemiMultimatroid without(const SemiMultimatroid& z, const std::vector<std::string>& drop) {
    std::set<std::string> gone(drop.begin(), drop.end());
    std::vector<std::string> keep;
    for (const auto& l : z.element_labels())
        if (!gone.count(l)) keep.push_back(l);
    return restriction(z, keep);
}

// The minor induced by a subtransversal: classes meeting x disappear and the
// rank function shifts to r'(S) = r(S + x) - r(x).
inline SemiMultimatroid minor(const SemiMultimatroid& z, const std::vector<std::string>& x) {
    SemiMultimatroid::Mask xm = z.mask_of(x);
    if (!z.is_subtransversal(xm)) throw std::invalid_argument("minor needs a subtransversal");
    std::vector<std::vector<std::string>> classes;
    std::vector<int> old_index;
    for (std::size_t k = 0; k < z.class_members().size(); ++k) {
        if (z.class_mask(k) & xm) continue;
        std::vector<std::string> names;
        for (int e : z.class_members()[k]) {
            names.push_back(z.element_labels()[e]);
            old_index.push_back(e);
        }
        classes.push_back(std::move(names));
    }
    int base = z.rank(xm);
    auto widen = [old_index](SemiMultimatroid::Mask narrow) {
        SemiMultimatroid::Mask wide = 0;
        for (std::size_t e = 0; e < old_index.size(); ++e)
            if (narrow >> e & 1) wide |= SemiMultimatroid::Mask(1) << old_index[e];
        return wide;
    };
    return SemiMultimatroid::from_oracle(
        std::move(classes),
        [z, widen, xm, base](SemiMultimatroid::Mask m) { return z.rank(widen(m) | xm) - base; });
}

// Order-1 minor sweep: a multimatroid allows at most one circuit in every
// such minor, a tight multimatroid exactly one.
inline MmClass classify(const SemiMultimatroid& z, std::size_t max_transversals = 59049) {
    std::size_t total = 1;
    for (const auto& cls : z.class_members()) {
        total *= cls.size();
        if (total > max_transversals) throw std::out_of_range("too many transversals to classify");
    }
    bool gap = false;
    for (std::size_t k = 0; k < z.class_members().size(); ++k) {
        bool bad = false;
        std::function<void(std::size_t, SemiMultimatroid::Mask)> sweep =
            [&](std::size_t j, SemiMultimatroid::Mask acc) {
                if (bad) return;
                if (j == z.class_members().size()) {
                    int base = z.rank(acc);
                    int hits = 0;
                    for (int e : z.class_members()[k])
                        if (z.rank(acc | SemiMultimatroid::Mask(1) << e) == base) ++hits;
                    if (hits >= 2) bad = true;
                    if (hits == 0) gap = true;
                    return;
                }
                if (j == k) {
                    sweep(j + 1, acc);
                    return;
                }
                for (int e : z.class_members()[j]) sweep(j + 1, acc | SemiMultimatroid::Mask(1) << e);
            };
        sweep(0, 0);
        if (bad) return MmClass::not_multimatroid;
    }
    return gap ? MmClass::multimatroid : MmClass::tight_multimatroid;
}

// Semi-multimatroid cut out of a represented matroid: the classes name
// columns of the matrix, and circuits are the minimal dependent
// subtransversals of those columns.
inline SemiMultimatroid from_matrix_shelter(const ExactMatrix& m,
                                            std::vector<std::vector<std::string>> classes) {
    std::vector<std::size_t> col_of;
    for (const auto& cls : classes)
        for (const auto& l : cls) col_of.push_back(m.col_index(l));
    auto oracle = [m, col_of](SemiMultimatroid::Mask s) {
        std::vector<std::size_t> cols;
        for (std::size_t e = 0; e < col_of.size(); ++e)
            if (s >> e & 1) cols.push_back(col_of[e]);
        return static_cast<int>(m.rank_cols_pos(cols));
    };
    SemiMultimatroid lazy = SemiMultimatroid::from_oracle(classes, oracle);
    return SemiMultimatroid(std::move(classes), lazy.circuit_labels());
}

// The rank-3 ternary affine geometry, with its nine points split into a
// parallel class of three lines: a tight 3-matroid on three skew classes.
inline SemiMultimatroid h33() {
    std::vector<std::string> cols;
    std::vector<std::vector<std::string>> classes(3);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) {
            std::string label = "p" + std::to_string(x) + std::to_string(y);
            classes[y].push_back(label);
            cols.push_back(label);
        }
    ExactMatrix m(FieldSpec::gfp(3), {"one", "x", "y"}, cols);
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) {
            std::size_t j = m.col_index("p" + std::to_string(x) + std::to_string(y));
            m.set_at(0, j, 1);
            m.set_at(1, j, x);
            m.set_at(2, j, y);
        }
    return from_matrix_shelter(m, classes);
}

// The 2-matroid on three classes {i_a, i_b} whose circuits are the three
// transversals with a single a-element; it has no binary representation.
inline SemiMultimatroid s1() {
    std::vector<std::vector<std::string>> classes{{"1a", "1b"}, {"2a", "2b"}, {"3a", "3b"}};
    std::vector<std::vector<std::string>> circuits{
        {"1a", "2b", "3b"}, {"1b", "2a", "3b"}, {"1b", "2b", "3a"}};
    return SemiMultimatroid(std::move(classes), circuits);
}

// Searches the GF(2) span of the circuit family for a nonempty circuit-free
// subtransversal.  Finding one proves no binary matroid shelters z; not
// finding one proves nothing.
inline bool binary_refutation(const SemiMultimatroid& z) {
    if (z.order() > 8) throw std::out_of_range("refutation search bound is order 8");
    std::vector<SemiMultimatroid::Mask> basis;
    std::array<SemiMultimatroid::Mask, 64> pivot{};
    for (SemiMultimatroid::Mask c : z.circuits()) {
        while (c) {
            int b = std::bit_width(c) - 1;
            if (!pivot[b]) {
                pivot[b] = c;
                basis.push_back(c);
                break;
            }
            c ^= pivot[b];
        }
    }
    if (basis.size() > 20) throw std::out_of_range("refutation span is too large");
    const std::size_t n = basis.size();
    SemiMultimatroid::Mask cur = 0;
    for (std::size_t i = 1; i < (std::size_t(1) << n); ++i) {
        cur ^= basis[std::countr_zero(i)];
        if (cur == 0 || !z.is_subtransversal(cur)) continue;
        bool contains = false;
        for (SemiMultimatroid::Mask c : z.circuits())
            if ((c & ~cur) == 0) {
                contains = true;
                break;
            }
        if (!contains) return true;
    }
    return false;
}

// A binary matroid held as a standard-form GF(2) representation (I | A);
// the first rank() columns are the chosen basis.
struct BinaryMatroidRep {
    ExactMatrix matrix;

    std::size_t rank() const { return matrix.row_count(); }
    std::size_t size() const { return matrix.col_count(); }
    const std::vector<std::string>& elements() const { return matrix.col_labels(); }
    std::vector<std::string> basis() const {
        return {elements().begin(), elements().begin() + rank()};
    }
    std::vector<std::string> cobasis() const {
        return {elements().begin() + rank(), elements().end()};
    }
};

inline BinaryMatroidRep binary_matroid(ExactMatrix m) {
    if (m.field() != FieldSpec::gf2()) throw std::invalid_argument("matroid representation must be over gf2");
    if (m.col_count() < m.row_count()) throw std::invalid_argument("standard form needs at least rank many columns");
    for (std::size_t i = 0; i < m.row_count(); ++i)
        for (std::size_t j = 0; j < m.row_count(); ++j)
            if (m.at_pos(i, j) != (i == j ? 1 : 0))
                throw std::invalid_argument("leading columns are not an identity");
    return BinaryMatroidRep{std::move(m)};
}

// (A^T | I) represents the dual; reordering columns cobasis-first restores
// standard form without renaming any element.
inline BinaryMatroidRep dual(const BinaryMatroidRep& m) {
    const std::size_t r = m.rank(), n = m.size();
    std::vector<std::string> cols = m.cobasis();
    for (const auto& b : m.basis()) cols.push_back(b);
    ExactMatrix d(FieldSpec::gf2(), std::vector<std::string>(cols.begin(), cols.begin() + (n - r)), cols);
    for (std::size_t i = 0; i < n - r; ++i) {
        d.set_at(i, i, 1);
        for (std::size_t j = 0; j < r; ++j) d.set_at(i, n - r + j, m.matrix.at_pos(j, r + i));
    }
    return binary_matroid(std::move(d));
}

// Cycle matroid of a graph in standard form: spanning-forest edges give the
// identity block, and each remaining column is its fundamental cycle.
inline BinaryMatroidRep graphic_matroid(const LoopedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<int> parent(n, -1), depth(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> tree, other;
    std::vector<bool> seen(n, false);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::vector<std::size_t> queue{root};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::size_t u = queue[head];
            for (std::size_t v = 0; v < n; ++v) {
                if (!g.edge_at(u, v)) continue;
                if (!seen[v]) {
                    seen[v] = true;
                    parent[v] = static_cast<int>(u);
                    depth[v] = depth[u] + 1;
                    tree.emplace_back(u, v);
                    queue.push_back(v);
                } else if (u < v && parent[v] != static_cast<int>(u) && parent[u] != static_cast<int>(v)) {
                    other.emplace_back(u, v);
                }
            }
        }
    }
    auto edge_label = [&](std::size_t u, std::size_t v) {
        return g.vertex_labels()[u] + "-" + g.vertex_labels()[v];
    };
    std::vector<std::string> cols;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> tree_row;
    for (const auto& [u, v] : tree) {
        tree_row[{std::min(u, v), std::max(u, v)}] = cols.size();
        cols.push_back(edge_label(u, v));
    }
    const std::size_t r = cols.size();
    for (const auto& [u, v] : other) cols.push_back(edge_label(u, v));
    for (std::size_t v = 0; v < n; ++v)
        if (g.loop_at(v)) cols.push_back(edge_label(v, v));
    ExactMatrix m(FieldSpec::gf2(), std::vector<std::string>(cols.begin(), cols.begin() + r), cols);
    for (std::size_t j = 0; j < r; ++j) m.set_at(j, j, 1);
    for (std::size_t k = 0; k < other.size(); ++k) {
        auto [u, v] = other[k];
        while (u != v) {
            if (depth[u] < depth[v]) std::swap(u, v);
            std::size_t p = static_cast<std::size_t>(parent[u]);
            m.set_at(tree_row.at({std::min(u, p), std::max(u, p)}), r + k, 1);
            u = p;
        }
    }
    return binary_matroid(std::move(m));
}

// The seven nonzero binary 3-vectors as columns.
inline BinaryMatroidRep fano_matroid() {
    ExactMatrix m(FieldSpec::gf2(), {"r1", "r2", "r3"},
                  {"1", "2", "3", "4", "5", "6", "7"});
    const int bits[7][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1},
                            {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 3; ++i) m.set_at(i, j, bits[j][i]);
    return binary_matroid(std::move(m));
}

inline std::string copy_label(const std::string& element, int i) {
    return element + ":" + std::to_string(i);
}

// Block representation of the direct sum of the dual (copy 1) and the
// matroid itself (copy 2), columns grouped by skew class.
inline ExactMatrix z2_shelter_matrix(const BinaryMatroidRep& m) {
    const std::size_t r = m.rank(), n = m.size();
    std::vector<std::string> cols;
    for (const auto& e : m.elements()) {
        cols.push_back(copy_label(e, 1));
        cols.push_back(copy_label(e, 2));
    }
    std::vector<std::string> rows;
    for (const auto& e : m.basis()) rows.push_back("m." + e);
    for (const auto& e : m.cobasis()) rows.push_back("d." + e);
    ExactMatrix s(FieldSpec::gf2(), rows, cols);
    for (std::size_t j = 0; j < r; ++j) {
        s.set_at(j, s.col_index(copy_label(m.elements()[j], 2)), 1);
        for (std::size_t k = 0; k < n - r; ++k) {
            const Rat& a = m.matrix.at_pos(j, r + k);
            s.set_at(j, s.col_index(copy_label(m.elements()[r + k], 2)), a);
            s.set_at(r + k, s.col_index(copy_label(m.elements()[j], 1)), a);
        }
    }
    for (std::size_t k = 0; k < n - r; ++k)
        s.set_at(r + k, s.col_index(copy_label(m.elements()[r + k], 1)), 1);
    return s;
}

// The 2-matroid with classes {(e,1),(e,2)} sheltered by the direct sum of
// the dual on copy 1 and the matroid on copy 2.
inline SemiMultimatroid z2_of_matroid(const BinaryMatroidRep& m) {
    std::vector<std::vector<std::string>> classes;
    for (const auto& e : m.elements())
        classes.push_back({copy_label(e, 1), copy_label(e, 2)});
    return from_matrix_shelter(z2_shelter_matrix(m), classes);
}

// Bipartite graph on basis + cobasis whose biadjacency block is A.
inline LoopedGraph fundamental_graph(const BinaryMatroidRep& m) {
    LoopedGraph g(m.elements());
    for (std::size_t j = 0; j < m.rank(); ++j)
        for (std::size_t k = m.rank(); k < m.size(); ++k)
            if (m.matrix.at_pos(j, k) != 0) g.add_edge(m.elements()[j], m.elements()[k]);
    return g;
}

// Isotropic 3-matroid of a graph (arity 3) or its phi/chi restriction
// (arity 2), with the fast GF(2) rank oracle behind it; circuits are cached
// eagerly at small orders.
inline SemiMultimatroid multimatroid_view(const LoopedGraph& g, int arity) {
    if (arity != 2 && arity != 3) throw std::invalid_argument("arity must be 2 or 3");
    std::vector<std::vector<std::string>> classes;
    for (const auto& v : g.vertex_labels()) {
        std::vector<std::string> cls{ground_label(VarKind::phi, v), ground_label(VarKind::chi, v)};
        if (arity == 3) cls.push_back(ground_label(VarKind::psi, v));
        classes.push_back(std::move(cls));
    }
    auto sys = std::make_shared<IsotropicSystem>(g);
    const std::size_t n = g.vertex_count();
    auto oracle = [sys, n, arity](SemiMultimatroid::Mask m) {
        Choice choice(n, -1);
        for (std::size_t v = 0; v < n; ++v)
            for (int k = 0; k < arity; ++k)
                if (m >> (v * arity + k) & 1) choice[v] = k;
        return sys->rank_sub(choice);
    };
    SemiMultimatroid z = SemiMultimatroid::from_oracle(std::move(classes), oracle);
    if (n <= 6) z.circuits();
    return z;
}

// Renames the isotropic view of the fundamental graph into copies (e,1),
// (e,2), (e,3): on the basis side chi is copy 1 and phi copy 2, on the
// cobasis side the other way around, and psi is always copy 3.  At order
// up to 7 the construction is checked against z2_of_matroid by removing the
// copy-3 transversal.
inline SemiMultimatroid z3_of_matroid(const BinaryMatroidRep& m) {
    LoopedGraph g = fundamental_graph(m);
    SemiMultimatroid view = multimatroid_view(g, 3);
    std::map<std::string, std::string> rename;
    for (std::size_t j = 0; j < m.size(); ++j) {
        const std::string& e = m.elements()[j];
        bool is_basis = j < m.rank();
        rename[ground_label(VarKind::chi, e)] = copy_label(e, is_basis ? 1 : 2);
        rename[ground_label(VarKind::phi, e)] = copy_label(e, is_basis ? 2 : 1);
        rename[ground_label(VarKind::psi, e)] = copy_label(e, 3);
    }
    std::vector<std::vector<std::string>> classes;
    for (const auto& e : m.elements())
        classes.push_back({copy_label(e, 1), copy_label(e, 2), copy_label(e, 3)});
    std::vector<std::vector<std::string>> circuits;
    for (auto c : view.circuit_labels()) {
        for (auto& l : c) l = rename.at(l);
        circuits.push_back(std::move(c));
    }
    SemiMultimatroid lifted(std::move(classes), circuits);
    if (m.size() <= 7) {
        std::vector<std::string> third;
        for (const auto& e : m.elements()) third.push_back(copy_label(e, 3));
        if (!same_structure(without(lifted, third), z2_of_matroid(m)))
            throw std::logic_error("lift does not restrict to the two-matroid of the matroid");
    }
    return lifted;
}

// Exhaustive isomorphism search: a class bijection plus within-class
// bijections carrying the circuit family onto the other one.  Pruned by
// per-element circuit-size profiles and by counting fully-mapped circuits.
inline std::optional<std::map<std::string, std::string>> mm_isomorphic(const SemiMultimatroid& a,
                                                                       const SemiMultimatroid& b) {
    if (a.order() > 7 || b.order() > 7) throw std::out_of_range("isomorphism search bound is order 7");
    if (a.order() != b.order() || a.element_count() != b.element_count()) return std::nullopt;
    const auto& ca = a.circuits();
    const auto& cb = b.circuits();
    if (ca.size() != cb.size()) return std::nullopt;

    using Mask = SemiMultimatroid::Mask;
    auto profile = [](const SemiMultimatroid& z, std::size_t e) {
        std::map<int, int> p;
        for (Mask c : z.circuits())
            if (c >> e & 1) ++p[std::popcount(c)];
        return p;
    };
    std::vector<std::map<int, int>> pa, pb;
    for (std::size_t e = 0; e < a.element_count(); ++e) pa.push_back(profile(a, e));
    for (std::size_t e = 0; e < b.element_count(); ++e) pb.push_back(profile(b, e));
    auto class_key = [](const SemiMultimatroid& z, const std::vector<std::map<int, int>>& prof,
                        std::size_t k) {
        std::vector<std::map<int, int>> key;
        for (int e : z.class_members()[k]) key.push_back(prof[e]);
        std::sort(key.begin(), key.end());
        return key;
    };
    std::vector<std::vector<std::map<int, int>>> ka, kb;
    for (std::size_t k = 0; k < a.order(); ++k) ka.push_back(class_key(a, pa, k));
    for (std::size_t k = 0; k < b.order(); ++k) kb.push_back(class_key(b, pb, k));

    std::set<Mask> b_circuit_set(cb.begin(), cb.end());
    std::vector<std::uint32_t> a_support(ca.size()), b_support(cb.size());
    for (std::size_t i = 0; i < ca.size(); ++i)
        for (std::size_t e = 0; e < a.element_count(); ++e)
            if (ca[i] >> e & 1) a_support[i] |= std::uint32_t(1) << a.class_of(e);
    for (std::size_t i = 0; i < cb.size(); ++i)
        for (std::size_t e = 0; e < b.element_count(); ++e)
            if (cb[i] >> e & 1) b_support[i] |= std::uint32_t(1) << b.class_of(e);

    std::vector<int> elt_map(a.element_count(), -1);
    std::vector<bool> used(b.order(), false);
    std::vector<int> class_img(a.order(), -1);

    std::function<bool(std::size_t)> place = [&](std::size_t k) -> bool {
        if (k == a.order()) return true;
        std::uint32_t a_done = 0;
        for (std::size_t j = 0; j < k; ++j) a_done |= std::uint32_t(1) << j;
        for (std::size_t t = 0; t < b.order(); ++t) {
            if (used[t] || ka[k] != kb[t]) continue;
            const auto& src = a.class_members()[k];
            const auto& dst = b.class_members()[t];
            std::vector<int> perm(dst.begin(), dst.end());
            std::sort(perm.begin(), perm.end());
            do {
                bool ok = true;
                for (std::size_t i = 0; i < src.size() && ok; ++i)
                    if (pa[src[i]] != pb[perm[i]]) ok = false;
                if (!ok) continue;
                for (std::size_t i = 0; i < src.size(); ++i) elt_map[src[i]] = perm[i];
                used[t] = true;
                class_img[k] = static_cast<int>(t);

                std::uint32_t now = a_done | std::uint32_t(1) << k;
                std::uint32_t img = 0;
                for (std::size_t j = 0; j <= k; ++j) img |= std::uint32_t(1) << class_img[j];
                std::size_t covered_a = 0, covered_b = 0;
                bool consistent = true;
                for (std::size_t i = 0; i < ca.size() && consistent; ++i) {
                    if (a_support[i] & ~now) continue;
                    ++covered_a;
                    Mask image = 0;
                    for (std::size_t e = 0; e < a.element_count(); ++e)
                        if (ca[i] >> e & 1) image |= Mask(1) << elt_map[e];
                    if (!b_circuit_set.count(image)) consistent = false;
                }
                for (std::size_t i = 0; i < cb.size(); ++i)
                    if (!(b_support[i] & ~img)) ++covered_b;
                if (consistent && covered_a == covered_b && place(k + 1)) return true;

                used[t] = false;
                class_img[k] = -1;
                for (int e : src) elt_map[e] = -1;
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return false;
    };
    if (!place(0)) return std::nullopt;
    std::map<std::string, std::string> out;
    for (std::size_t e = 0; e < a.element_count(); ++e)
        out[a.element_labels()[e]] = b.element_labels()[elt_map[e]];
    return out;
}

} // namespace circlerep
