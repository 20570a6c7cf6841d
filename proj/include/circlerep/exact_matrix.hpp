#pragma once

#include "circlerep/field.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circlerep {

// Dense matrix over gf2, gf(p) or the rationals, with labelled rows and
// columns.  Row/column order is fixed at construction and every operation
// that enumerates entries does so in that order, so results are
// deterministic functions of the construction order.
class ExactMatrix {
public:
    using Label = std::string;

    ExactMatrix(FieldSpec field, std::vector<Label> row_labels, std::vector<Label> col_labels)
        : field_(field), rows_(std::move(row_labels)), cols_(std::move(col_labels)),
          a_(rows_.size() * cols_.size(), Rat(0)) {
        index_labels(rows_, row_pos_, "row");
        index_labels(cols_, col_pos_, "column");
    }

    static ExactMatrix identity(FieldSpec field, const std::vector<Label>& labels) {
        ExactMatrix m(field, labels, labels);
        for (std::size_t i = 0; i < labels.size(); ++i) m.set_at(i, i, 1);
        return m;
    }

    static ExactMatrix from_rows(FieldSpec field, std::vector<Label> row_labels, std::vector<Label> col_labels,
                                 const std::vector<std::vector<Rat>>& entries) {
        ExactMatrix m(field, std::move(row_labels), std::move(col_labels));
        if (entries.size() != m.row_count()) throw std::invalid_argument("entry row count mismatch");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].size() != m.col_count()) throw std::invalid_argument("entry column count mismatch");
            for (std::size_t j = 0; j < entries[i].size(); ++j) m.set_at(i, j, entries[i][j]);
        }
        return m;
    }

    const FieldSpec& field() const { return field_; }
    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_.size(); }
    const std::vector<Label>& row_labels() const { return rows_; }
    const std::vector<Label>& col_labels() const { return cols_; }

    std::size_t row_index(const Label& r) const { return find(row_pos_, r, "row"); }
    std::size_t col_index(const Label& c) const { return find(col_pos_, c, "column"); }
    bool has_row(const Label& r) const { return row_pos_.count(r) != 0; }
    bool has_col(const Label& c) const { return col_pos_.count(c) != 0; }

    void set_at(std::size_t i, std::size_t j, Rat v) { a_[i * cols_.size() + j] = canon(std::move(v)); }
    void set(const Label& r, const Label& c, Rat v) { set_at(row_index(r), col_index(c), std::move(v)); }
    const Rat& at_pos(std::size_t i, std::size_t j) const { return a_[i * cols_.size() + j]; }
    const Rat& at(const Label& r, const Label& c) const { return at_pos(row_index(r), col_index(c)); }

    bool operator==(const ExactMatrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    std::size_t rank() const { return rank_cols_pos(all_cols()); }

    std::size_t rank_cols(const std::vector<Label>& cols) const {
        std::vector<std::size_t> idx;
        idx.reserve(cols.size());
        for (const auto& c : cols) idx.push_back(col_index(c));
        return rank_cols_pos(idx);
    }

    std::size_t rank_cols_pos(const std::vector<std::size_t>& cols) const {
        switch (field_.kind) {
            case FieldKind::gf2: return rank_gf2(cols);
            case FieldKind::gfp: return rank_gfp(cols);
            default: return rank_rational(cols);
        }
    }

    // Columns minus rank, i.e. the dimension of the right kernel.
    std::size_t nullity() const { return col_count() - rank(); }

    Rat determinant() const {
        if (row_count() != col_count()) throw std::invalid_argument("determinant of a non-square matrix");
        switch (field_.kind) {
            case FieldKind::gf2: return rank() == row_count() ? Rat(1) : Rat(0);
            case FieldKind::gfp: return det_gfp();
            default: return det_rational();
        }
    }

    // The field's canonical representative of v (e.g. reduced mod p).
    Rat reduce(Rat v) const { return canon(std::move(v)); }

    Rat field_inverse(const Rat& x) const {
        if (x == 0) throw std::invalid_argument("inverse of zero");
        if (field_.kind == FieldKind::gfp) {
            std::int64_t a = static_cast<std::int64_t>(numerator(x)) % field_.p;
            return Rat(mod_inverse(a, field_.p));
        }
        return Rat(1) / x; // gf2 canonical entries are 0/1, so this covers it too
    }

    ExactMatrix transpose() const {
        ExactMatrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < row_count(); ++i)
            for (std::size_t j = 0; j < col_count(); ++j) t.set_at(j, i, at_pos(i, j));
        return t;
    }

    ExactMatrix times(const ExactMatrix& o) const {
        if (field_ != o.field_) throw std::invalid_argument("field mismatch in product");
        if (cols_ != o.rows_) throw std::invalid_argument("inner labels mismatch in product");
        ExactMatrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < row_count(); ++i)
            for (std::size_t j = 0; j < o.col_count(); ++j) {
                Rat s = 0;
                for (std::size_t k = 0; k < col_count(); ++k) s += at_pos(i, k) * o.at_pos(k, j);
                r.set_at(i, j, std::move(s));
            }
        return r;
    }

    ExactMatrix submatrix_cols(const std::vector<Label>& cols) const {
        ExactMatrix r(field_, rows_, cols);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            std::size_t src = col_index(cols[j]);
            for (std::size_t i = 0; i < row_count(); ++i) r.set_at(i, j, at_pos(i, src));
        }
        return r;
    }

    ExactMatrix submatrix(const std::vector<Label>& rows, const std::vector<Label>& cols) const {
        ExactMatrix r(field_, rows, cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) r.set_at(i, j, at(rows[i], cols[j]));
        return r;
    }

    // Entrywise image in another field.  Entries must be integers when the
    // target is finite.
    ExactMatrix to_field(FieldSpec target) const {
        ExactMatrix r(target, rows_, cols_);
        for (std::size_t i = 0; i < row_count(); ++i)
            for (std::size_t j = 0; j < col_count(); ++j) r.set_at(i, j, at_pos(i, j));
        return r;
    }

    // Gauss-Jordan reduction that turns the given columns, in order, into
    // the unit vectors e_1, e_2, ....  Throws when those columns are
    // dependent.  Row labels keep their positions and lose their original
    // meaning, as with any row reduction.
    ExactMatrix reduced_by_columns(const std::vector<std::size_t>& pivot_cols) const {
        ExactMatrix r = *this;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
            std::size_t c = pivot_cols[k];
            std::size_t sel = r.row_count();
            for (std::size_t i = k; i < r.row_count(); ++i)
                if (r.at_pos(i, c) != 0) { sel = i; break; }
            if (sel == r.row_count()) throw std::invalid_argument("pivot columns are dependent");
            if (sel != k)
                for (std::size_t j = 0; j < r.col_count(); ++j) {
                    Rat tmp = r.at_pos(k, j);
                    r.set_at(k, j, r.at_pos(sel, j));
                    r.set_at(sel, j, std::move(tmp));
                }
            Rat inv = field_inverse(r.at_pos(k, c));
            if (inv != 1)
                for (std::size_t j = 0; j < r.col_count(); ++j) r.set_at(k, j, r.at_pos(k, j) * inv);
            for (std::size_t i = 0; i < r.row_count(); ++i) {
                if (i == k) continue;
                Rat f = r.at_pos(i, c);
                if (f == 0) continue;
                for (std::size_t j = 0; j < r.col_count(); ++j)
                    r.set_at(i, j, r.at_pos(i, j) - f * r.at_pos(k, j));
            }
        }
        return r;
    }

    // Matroid contraction of one column: pivot on it, then drop the pivot
    // row and the column.  An all-zero column is just deleted.
    ExactMatrix contract_column(const Label& col) const {
        std::size_t c = col_index(col);
        std::size_t sel = row_count();
        for (std::size_t i = 0; i < row_count(); ++i)
            if (at_pos(i, c) != 0) { sel = i; break; }
        std::vector<Label> keep_cols;
        for (std::size_t j = 0; j < col_count(); ++j)
            if (j != c) keep_cols.push_back(cols_[j]);
        if (sel == row_count()) return submatrix_cols(keep_cols);

        ExactMatrix piv = *this;
        Rat inv = field_inverse(piv.at_pos(sel, c));
        if (inv != 1)
            for (std::size_t j = 0; j < col_count(); ++j) piv.set_at(sel, j, piv.at_pos(sel, j) * inv);
        for (std::size_t i = 0; i < row_count(); ++i) {
            if (i == sel) continue;
            Rat f = piv.at_pos(i, c);
            if (f == 0) continue;
            for (std::size_t j = 0; j < col_count(); ++j)
                piv.set_at(i, j, piv.at_pos(i, j) - f * piv.at_pos(sel, j));
        }
        std::vector<Label> keep_rows;
        for (std::size_t i = 0; i < row_count(); ++i)
            if (i != sel) keep_rows.push_back(rows_[i]);
        ExactMatrix r(field_, keep_rows, keep_cols);
        for (std::size_t i = 0, ii = 0; i < row_count(); ++i) {
            if (i == sel) continue;
            for (std::size_t j = 0, jj = 0; j < col_count(); ++j) {
                if (j == c) continue;
                r.set_at(ii, jj, piv.at_pos(i, j));
                ++jj;
            }
            ++ii;
        }
        return r;
    }

    ExactMatrix delete_columns(const std::vector<Label>& cols) const {
        std::set<Label> drop(cols.begin(), cols.end());
        for (const auto& c : cols) col_index(c);
        std::vector<Label> keep;
        for (const auto& c : cols_)
            if (!drop.count(c)) keep.push_back(c);
        return submatrix_cols(keep);
    }

    // Gauss-Jordan solution of this*x = rhs over gf2.  Pivot columns are
    // chosen left to right in construction order and free variables are set
    // to zero.  On inconsistency returns nullopt and, when bad_row is given,
    // stores the first inconsistent row slot of the eliminated system.
    std::optional<std::vector<int>> solve_gf2(const std::vector<int>& rhs, std::size_t* bad_row = nullptr) const {
        if (field_.kind != FieldKind::gf2) throw std::invalid_argument("solve_gf2 requires a gf2 matrix");
        if (rhs.size() != row_count()) throw std::invalid_argument("rhs size mismatch");
        const std::size_t n = col_count(), words = (n + 1 + 63) / 64;
        std::vector<std::vector<std::uint64_t>> m(row_count(), std::vector<std::uint64_t>(words, 0));
        for (std::size_t i = 0; i < row_count(); ++i) {
            for (std::size_t j = 0; j < n; ++j)
                if (at_pos(i, j) != 0) m[i][j / 64] |= std::uint64_t(1) << (j % 64);
            if (rhs[i] & 1) m[i][n / 64] |= std::uint64_t(1) << (n % 64);
        }
        std::vector<std::size_t> pivot_col;
        std::size_t r = 0;
        for (std::size_t c = 0; c < n && r < m.size(); ++c) {
            std::size_t sel = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c / 64] >> (c % 64) & 1) { sel = i; break; }
            if (sel == m.size()) continue;
            std::swap(m[r], m[sel]);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (i != r && (m[i][c / 64] >> (c % 64) & 1))
                    for (std::size_t w = 0; w < words; ++w) m[i][w] ^= m[r][w];
            pivot_col.push_back(c);
            ++r;
        }
        for (std::size_t i = r; i < m.size(); ++i)
            if (m[i][n / 64] >> (n % 64) & 1) {
                if (bad_row) *bad_row = i;
                return std::nullopt;
            }
        std::vector<int> x(n, 0);
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            x[pivot_col[i]] = static_cast<int>(m[i][n / 64] >> (n % 64) & 1);
        return x;
    }

private:
    FieldSpec field_;
    std::vector<Label> rows_, cols_;
    std::map<Label, std::size_t> row_pos_, col_pos_;
    std::vector<Rat> a_;

    static void index_labels(const std::vector<Label>& v, std::map<Label, std::size_t>& pos, const char* what) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!pos.emplace(v[i], i).second)
                throw std::invalid_argument(std::string("duplicate ") + what + " label: " + v[i]);
    }

    static std::size_t find(const std::map<Label, std::size_t>& pos, const Label& l, const char* what) {
        auto it = pos.find(l);
        if (it == pos.end()) throw std::out_of_range(std::string("no such ") + what + ": " + l);
        return it->second;
    }

    std::vector<std::size_t> all_cols() const {
        std::vector<std::size_t> idx(col_count());
        for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
        return idx;
    }

    Rat canon(Rat v) const {
        if (field_.kind == FieldKind::rational) return v;
        if (denominator(v) != 1) throw std::invalid_argument("finite-field entry must be an integer");
        Int n = numerator(v) % Int(field_.p);
        if (n < 0) n += field_.p;
        return Rat(n);
    }

    std::int64_t small_at(std::size_t i, std::size_t j) const {
        return static_cast<std::int64_t>(numerator(at_pos(i, j)));
    }

    std::size_t rank_gf2(const std::vector<std::size_t>& cols) const {
        const std::size_t words = (cols.size() + 63) / 64;
        std::vector<std::vector<std::uint64_t>> m(row_count(), std::vector<std::uint64_t>(words, 0));
        for (std::size_t i = 0; i < row_count(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                if (at_pos(i, cols[j]) != 0) m[i][j / 64] |= std::uint64_t(1) << (j % 64);
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols.size() && r < m.size(); ++c) {
            std::size_t sel = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c / 64] >> (c % 64) & 1) { sel = i; break; }
            if (sel == m.size()) continue;
            std::swap(m[r], m[sel]);
            for (std::size_t i = r + 1; i < m.size(); ++i)
                if (m[i][c / 64] >> (c % 64) & 1)
                    for (std::size_t w = 0; w < words; ++w) m[i][w] ^= m[r][w];
            ++r;
        }
        return r;
    }

    static std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
        std::int64_t t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            std::int64_t q = r / nr;
            t -= q * nt; std::swap(t, nt);
            r -= q * nr; std::swap(r, nr);
        }
        return t < 0 ? t + p : t;
    }

    std::size_t rank_gfp(const std::vector<std::size_t>& cols) const {
        const std::int64_t p = field_.p;
        std::vector<std::vector<std::int64_t>> m(row_count(), std::vector<std::int64_t>(cols.size()));
        for (std::size_t i = 0; i < row_count(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = small_at(i, cols[j]);
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols.size() && r < m.size(); ++c) {
            std::size_t sel = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c] % p != 0) { sel = i; break; }
            if (sel == m.size()) continue;
            std::swap(m[r], m[sel]);
            std::int64_t inv = mod_inverse(m[r][c], p);
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] % p == 0) continue;
                std::int64_t f = m[i][c] % p * inv % p;
                for (std::size_t j = c; j < cols.size(); ++j)
                    m[i][j] = ((m[i][j] - f * m[r][j]) % p + p * p) % p;
            }
            ++r;
        }
        return r;
    }

    std::size_t rank_rational(const std::vector<std::size_t>& cols) const {
        std::vector<std::vector<Rat>> m(row_count(), std::vector<Rat>(cols.size()));
        for (std::size_t i = 0; i < row_count(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = at_pos(i, cols[j]);
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols.size() && r < m.size(); ++c) {
            std::size_t sel = m.size();
            for (std::size_t i = r; i < m.size(); ++i)
                if (m[i][c] != 0) { sel = i; break; }
            if (sel == m.size()) continue;
            std::swap(m[r], m[sel]);
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                Rat f = m[i][c] / m[r][c];
                for (std::size_t j = c; j < cols.size(); ++j) m[i][j] -= f * m[r][j];
            }
            ++r;
        }
        return r;
    }

    Rat det_gfp() const {
        const std::int64_t p = field_.p;
        const std::size_t n = row_count();
        std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = small_at(i, j);
        std::int64_t det = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t sel = n;
            for (std::size_t i = c; i < n; ++i)
                if (m[i][c] % p != 0) { sel = i; break; }
            if (sel == n) return Rat(0);
            if (sel != c) { std::swap(m[sel], m[c]); det = (p - det) % p; }
            det = det * (m[c][c] % p) % p;
            std::int64_t inv = mod_inverse(m[c][c] % p, p);
            for (std::size_t i = c + 1; i < n; ++i) {
                if (m[i][c] % p == 0) continue;
                std::int64_t f = m[i][c] % p * inv % p;
                for (std::size_t j = c; j < n; ++j) m[i][j] = ((m[i][j] - f * m[c][j]) % p + p * p) % p;
            }
        }
        return Rat((det % p + p) % p);
    }

    Rat det_rational() const {
        const std::size_t n = row_count();
        bool integral = true;
        for (const auto& v : a_)
            if (denominator(v) != 1) { integral = false; break; }
        if (!integral) {
            // Plain fraction elimination; pivots multiply to the determinant.
            std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m[i][j] = at_pos(i, j);
            Rat det = 1;
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t sel = n;
                for (std::size_t i = c; i < n; ++i)
                    if (m[i][c] != 0) { sel = i; break; }
                if (sel == n) return Rat(0);
                if (sel != c) { std::swap(m[sel], m[c]); det = -det; }
                det *= m[c][c];
                for (std::size_t i = c + 1; i < n; ++i) {
                    if (m[i][c] == 0) continue;
                    Rat f = m[i][c] / m[c][c];
                    for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
                }
            }
            return det;
        }
        // Bareiss fraction-free elimination: all intermediate values are
        // minors of the input, every division is exact.
        std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = numerator(at_pos(i, j));
        Int prev = 1;
        int sign = 1;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (m[k][k] == 0) {
                std::size_t sel = n;
                for (std::size_t i = k + 1; i < n; ++i)
                    if (m[i][k] != 0) { sel = i; break; }
                if (sel == n) return Rat(0);
                std::swap(m[sel], m[k]);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            prev = m[k][k];
        }
        return n == 0 ? Rat(1) : Rat(sign * m[n - 1][n - 1]);
    }
};

} // namespace circlerep
