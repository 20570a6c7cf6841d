#include "circlerep/signed_ias.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace circlerep;

namespace {

std::string random_word(int n, std::mt19937& rng) {
    std::vector<char> letters;
    for (int i = 0; i < n; ++i) {
        letters.push_back(static_cast<char>('a' + i));
        letters.push_back(static_cast<char>('a' + i));
    }
    std::shuffle(letters.begin(), letters.end(), rng);
    return std::string(letters.begin(), letters.end());
}

std::vector<TransitionKind> kinds_from_code(long code, int n) {
    static constexpr std::array<TransitionKind, 3> all = {TransitionKind::phi, TransitionKind::chi,
                                                          TransitionKind::psi};
    std::vector<TransitionKind> kinds;
    for (int v = 0; v < n; ++v) {
        kinds.push_back(all[static_cast<std::size_t>(code % 3)]);
        code /= 3;
    }
    return kinds;
}

ExactMatrix golden(const std::vector<std::string>& row_labels, const std::vector<std::vector<int>>& entries) {
    std::vector<std::string> cols;
    for (auto kind : {VarKind::phi, VarKind::chi, VarKind::psi})
        for (const auto& v : row_labels) cols.push_back(ground_label(kind, v));
    std::vector<std::vector<Rat>> rows;
    for (const auto& r : entries) {
        std::vector<Rat> row;
        for (int e : r) row.emplace_back(e);
        rows.push_back(std::move(row));
    }
    return ExactMatrix::from_rows(FieldSpec::rational(), row_labels, cols, rows);
}

// Columns of m carry labels w.r.t. "other"; rename each to the label the same
// transition has w.r.t. "base" and return with columns in the standard order.
ExactMatrix relabel_columns(const ExactMatrix& m, const EulerSystem& base, const EulerSystem& other) {
    const FourRegular& g = base.graph();
    const int n = g.vertex_count();
    std::vector<std::string> cols;
    std::vector<std::vector<Rat>> rows(m.row_count());
    for (auto tk : {TransitionKind::phi, TransitionKind::chi, TransitionKind::psi})
        for (int w = 0; w < n; ++w) {
            auto other_kind = kind_of(other, transition_of(base, w, tk));
            REQUIRE(other_kind.has_value());
            cols.push_back(ground_label(var_kind(tk), g.vertex_labels[w]));
            std::size_t src = m.col_index(ground_label(var_kind(*other_kind), g.vertex_labels[w]));
            for (std::size_t i = 0; i < m.row_count(); ++i) rows[i].push_back(m.at_pos(i, src));
        }
    return ExactMatrix::from_rows(m.field(), m.row_labels(), cols, rows);
}

ExactMatrix subtract_last_row(const ExactMatrix& m) {
    std::size_t last = m.row_count() - 1;
    std::vector<std::vector<Rat>> rows(m.row_count(), std::vector<Rat>(m.col_count()));
    for (std::size_t i = 0; i < m.row_count(); ++i)
        for (std::size_t j = 0; j < m.col_count(); ++j)
            rows[i][j] = i == last ? m.at_pos(i, j) : m.at_pos(i, j) - m.at_pos(last, j);
    return ExactMatrix::from_rows(m.field(), m.row_labels(), m.col_labels(), rows);
}

ExactMatrix negate_last_row_and_its_columns(const ExactMatrix& m) {
    std::size_t last = m.row_count() - 1;
    std::vector<std::vector<Rat>> rows(m.row_count(), std::vector<Rat>(m.col_count()));
    for (std::size_t i = 0; i < m.row_count(); ++i)
        for (std::size_t j = 0; j < m.col_count(); ++j) {
            Rat v = i == last ? -m.at_pos(i, j) : m.at_pos(i, j);
            if (m.at_pos(last, j) != 0) v = -v;
            rows[i][j] = v;
        }
    return ExactMatrix::from_rows(m.field(), m.row_labels(), m.col_labels(), rows);
}

const std::vector<std::string> abcd = {"a", "b", "c", "d"};

} // namespace

TEST_CASE("block structure of the signed matrix") {
    std::mt19937 rng(211);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 2 + trial % 5;
        auto es = parse_dow(random_word(n, rng));
        auto fc = based_fundamentals(es);
        auto s = signed_ias(es, fc);
        auto inter = interlacement(es);
        REQUIRE(s.matrix.row_count() == static_cast<std::size_t>(n));
        REQUIRE(s.matrix.col_count() == static_cast<std::size_t>(3 * n));
        for (int v = 0; v < n; ++v) {
            for (int w = 0; w < n; ++w) {
                const Rat& i_entry = s.matrix.at_pos(v, w);
                const Rat& a_entry = s.matrix.at_pos(v, n + w);
                const Rat& b_entry = s.matrix.at_pos(v, 2 * n + w);
                CHECK(i_entry == (v == w ? 1 : 0));
                CHECK((a_entry == 0 || a_entry == 1 || a_entry == -1));
                CHECK((b_entry == 0 || b_entry == 1 || b_entry == 2));
                if (v == w) {
                    CHECK(a_entry == 0);
                    CHECK(b_entry == 1);
                } else {
                    CHECK((a_entry != 0) == inter.edge_at(v, w));
                }
            }
        }
    }
}

TEST_CASE("mod-2 reduction is the binary interlacement matrix") {
    std::mt19937 rng(223);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 2 + trial % 5;
        auto es = parse_dow(random_word(n, rng));
        auto s = signed_ias(es, based_fundamentals(es));
        CHECK(s.matrix.to_field(FieldSpec::gf2()) == ias_matrix(interlacement(es)));
    }
}

TEST_CASE("reversal flags are rejected, orientation reversal negates one block") {
    auto es = parse_dow("abcdbacd");
    auto fc = based_fundamentals(es);
    fc.reversed[2] = true;
    CHECK_THROWS_AS(signed_ias(es, fc), std::invalid_argument);

    std::mt19937 rng(227);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 2 + trial % 4;
        auto fwd = parse_dow(random_word(n, rng));
        auto bwd = reverse_euler(fwd);
        std::vector<int> base;
        for (const auto& circuit : fwd.circuits()) base.push_back(FourRegular::edge_of(circuit.back()));
        auto m1 = signed_ias(fwd, based_fundamentals(fwd, base)).matrix;
        auto m2 = signed_ias(bwd, based_fundamentals(bwd, base)).matrix;
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) {
                CHECK(m2.at_pos(v, n + w) == -m1.at_pos(v, n + w));
                CHECK(m2.at_pos(v, 2 * n + w) == m1.at_pos(v, 2 * n + w));
            }
    }
}

TEST_CASE("worked example with the first base edge") {
    auto es = parse_dow("abcdbacd");
    auto fc = based_fundamentals(es);
    REQUIRE(fc.base_edges == std::vector<int>{7});
    CHECK(signed_ias(es, fc).matrix == golden(abcd, {
        {1, 0, 0, 0,  0, 0, -1, -1,  1, 2, 1, 1},
        {0, 1, 0, 0,  0, 0, -1, -1,  0, 1, 1, 1},
        {0, 0, 1, 0,  1, 1, 0, -1,  1, 1, 1, 1},
        {0, 0, 0, 1,  1, 1, 1, 0,  1, 1, 1, 1},
    }));

    auto es2 = kappa_transform(es, "d", fc);
    CHECK(canonical_word(to_words(es2)[0]) == canonical_word(word_tokens("abcdcabd")));
    CHECK(signed_ias(es2, based_fundamentals(es2, {7})).matrix == golden(abcd, {
        {1, 0, 0, 0,  0, -1, 0, -1,  1, 1, 2, 1},
        {0, 1, 0, 0,  1, 0, 0, -1,  1, 1, 2, 1},
        {0, 0, 1, 0,  0, 0, 0, -1,  0, 0, 1, 1},
        {0, 0, 0, 1,  1, 1, 1, 0,  1, 1, 1, 1},
    }));
}

TEST_CASE("worked example with the second base edge") {
    auto es = parse_dow("abcdbacd");
    CHECK(signed_ias(es, based_fundamentals(es, {6})).matrix == golden(abcd, {
        {1, 0, 0, 0,  0, 0, -1, 1,  1, 2, 1, 1},
        {0, 1, 0, 0,  0, 0, -1, 1,  0, 1, 1, 1},
        {0, 0, 1, 0,  1, 1, 0, 1,  1, 1, 1, 1},
        {0, 0, 0, 1,  -1, -1, -1, 0,  1, 1, 1, 1},
    }));

    auto es2 = reverse_euler(kappa_transform(es, "d", based_fundamentals(es)));
    CHECK(signed_ias(es2, based_fundamentals(es2, {6})).matrix == golden(abcd, {
        {1, 0, 0, 0,  0, 1, 0, 1,  1, 1, 0, 1},
        {0, 1, 0, 0,  -1, 0, 0, 1,  1, 1, 0, 1},
        {0, 0, 1, 0,  0, 0, 0, 1,  2, 2, 1, 1},
        {0, 0, 0, 1,  -1, -1, -1, 0,  1, 1, 1, 1},
    }));
}

TEST_CASE("column relabeling and row operations connect the two systems") {
    auto es = parse_dow("abcdbacd");
    auto fc = based_fundamentals(es);
    auto first = signed_ias(es, fc).matrix;
    auto es2 = kappa_transform(es, "d", fc);
    auto second = signed_ias(es2, based_fundamentals(es2, {7})).matrix;

    auto renamed = relabel_columns(second, es, es2);
    CHECK(renamed == golden(abcd, {
        {1, 0, 0, 1,  1, 1, 2, -1,  0, -1, 0, 0},
        {0, 1, 0, 1,  1, 1, 2, -1,  1, 0, 0, 0},
        {0, 0, 1, 1,  0, 0, 1, -1,  0, 0, 0, 0},
        {0, 0, 0, 1,  1, 1, 1, 0,  1, 1, 1, 1},
    }));

    auto reduced = subtract_last_row(renamed);
    CHECK(reduced == golden(abcd, {
        {1, 0, 0, 0,  0, 0, 1, -1,  -1, -2, -1, -1},
        {0, 1, 0, 0,  0, 0, 1, -1,  0, -1, -1, -1},
        {0, 0, 1, 0,  -1, -1, 0, -1,  -1, -1, -1, -1},
        {0, 0, 0, 1,  1, 1, 1, 0,  1, 1, 1, 1},
    }));
    CHECK(negate_last_row_and_its_columns(reduced) == first);

    // the other base pair needs the same row operations but flips only two columns
    auto first_cd = signed_ias(es, based_fundamentals(es, {6})).matrix;
    auto es2r = reverse_euler(es2);
    auto second_cd = signed_ias(es2r, based_fundamentals(es2r, {6})).matrix;
    auto reduced_cd = subtract_last_row(relabel_columns(second_cd, es, es2r));

    std::vector<std::vector<Rat>> rows(4, std::vector<Rat>(12));
    std::size_t last = 3;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 12; ++j)
            rows[i][j] = i == last ? -reduced_cd.at_pos(i, j) : reduced_cd.at_pos(i, j);
    auto row_negated = ExactMatrix::from_rows(reduced_cd.field(), reduced_cd.row_labels(),
                                              reduced_cd.col_labels(), rows);

    std::vector<std::size_t> flipped;
    for (std::size_t j = 0; j < 12; ++j) {
        bool equal = true, negated = true;
        for (std::size_t i = 0; i < 4; ++i) {
            if (row_negated.at_pos(i, j) != first_cd.at_pos(i, j)) equal = false;
            if (row_negated.at_pos(i, j) != -first_cd.at_pos(i, j)) negated = false;
        }
        REQUIRE((equal || negated));
        if (!equal) flipped.push_back(j);
    }
    CHECK(flipped.size() == 2);
}

TEST_CASE("every partition's columns reproduce its crossing matrix") {
    auto es8 = parse_dow("abcdbacd");
    auto s8 = signed_ias(es8, based_fundamentals(es8));
    for (long code = 0; code < 81; ++code) {
        auto p = circuit_partition_kinds(es8, kinds_from_code(code, 4));
        CHECK(verify_submatrix_identity(s8, p));
    }

    std::mt19937 rng(233);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 2 + trial % 4;
        auto es = parse_dow(random_word(n, rng));
        auto s = signed_ias(es, based_fundamentals(es));
        long total = 1;
        for (int i = 0; i < n; ++i) total *= 3;
        for (long code = 0; code < total; ++code)
            CHECK(verify_submatrix_identity(s, circuit_partition_kinds(es, kinds_from_code(code, n))));
    }
}

TEST_CASE("triangle example with circuits that share no avoided edge") {
    auto es = parse_dow("abcabc");
    FundamentalCircuits fc{{0, 1, 0}, {false, false, false}, {}};
    auto s = signed_ias(es, fc);

    auto p = circuit_partition_kinds(es, {TransitionKind::chi, TransitionKind::chi, TransitionKind::psi});
    CHECK(verify_submatrix_identity(s, p));
    std::vector<std::string> cols = {ground_label(VarKind::chi, "a"), ground_label(VarKind::chi, "b"),
                               ground_label(VarKind::psi, "c")};
    auto sub = s.matrix.submatrix_cols(cols);
    CHECK(sub.at_pos(0, 0) == 0);
    CHECK(sub.at_pos(0, 1) == 1);
    CHECK(sub.at_pos(0, 2) == 1);
    CHECK(sub.at_pos(1, 0) == -1);
    CHECK(sub.at_pos(1, 1) == 0);
    CHECK(sub.at_pos(1, 2) == 1);
    CHECK(sub.at_pos(2, 0) == 1);
    CHECK(sub.at_pos(2, 1) == -1);
    CHECK(sub.at_pos(2, 2) == 1);

    auto dets = transversal_determinants(s);
    CHECK(dets.by_kinds.at("ccs") == 3);
    CHECK_FALSE(dets.transversely_unimodular);
}

TEST_CASE("based circuits keep every transversal determinant small") {
    for (int n = 2; n <= 3; ++n)
        for (const auto& word : all_words_first_occurrence(n)) {
            auto es = parse_dow(word);
            auto dets = transversal_determinants(signed_ias(es, based_fundamentals(es)));
            CHECK(dets.transversely_unimodular);
        }

    std::mt19937 rng(239);
    for (int trial = 0; trial < 6; ++trial) {
        auto es = parse_dow(random_word(4 + trial % 2, rng));
        auto s = signed_ias(es, based_fundamentals(es));
        auto dets = transversal_determinants(s);
        CHECK(dets.transversely_unimodular);
        long code = 0;
        for (const auto& [key, det] : dets.by_kinds) {
            (void)key;
            CHECK((det == 0 || det == 1 || det == -1));
            ++code;
        }
    }

    auto tiny = parse_dow("aa");
    auto dets = transversal_determinants(signed_ias(tiny, based_fundamentals(tiny)));
    CHECK(dets.by_kinds.at("p") == 1);
    CHECK(dets.by_kinds.at("c") == 0);
    CHECK(dets.by_kinds.at("s") == 1);
}

TEST_CASE("determinants vanish exactly off the Euler systems") {
    std::mt19937 rng(241);
    for (int trial = 0; trial < 5; ++trial) {
        int n = 3 + trial % 3;
        auto es = parse_dow(random_word(n, rng));
        auto s = signed_ias(es, based_fundamentals(es));
        auto dets = transversal_determinants(s);
        long total = 1;
        for (int i = 0; i < n; ++i) total *= 3;
        for (long code = 0; code < total; ++code) {
            auto kinds = kinds_from_code(code, n);
            std::string key;
            for (auto k : kinds) key.push_back(kind_letter(k));
            auto p = circuit_partition_kinds(es, kinds);
            bool euler = static_cast<int>(p.size()) == es.graph().component_count();
            const Rat& det = dets.by_kinds.at(key);
            CHECK((det != 0) == euler);
        }
    }
}

TEST_CASE("rank of every partition matrix counts its circuits over any field") {
    std::mt19937 rng(251);
    const std::array<FieldSpec, 4> fields = {FieldSpec::gf2(), FieldSpec::gfp(3), FieldSpec::gfp(5),
                                             FieldSpec::rational()};
    for (int trial = 0; trial < 5; ++trial) {
        int n = 2 + trial % 3;
        auto es = parse_dow(random_word(n, rng));
        const auto& g = es.graph();
        auto s = signed_ias(es, based_fundamentals(es));
        long total = 1;
        for (int i = 0; i < n; ++i) total *= 3;
        for (long code = 0; code < total; ++code) {
            auto kinds = kinds_from_code(code, n);
            auto p = circuit_partition_kinds(es, kinds);
            std::vector<std::string> cols;
            for (int v = 0; v < n; ++v)
                cols.push_back(ground_label(var_kind(kinds[v]), g.vertex_labels[v]));
            std::size_t expect = static_cast<std::size_t>(n) - (p.size() - g.component_count());
            for (const auto& f : fields)
                CHECK(s.matrix.to_field(f).rank_cols(cols) == expect);
        }
    }
}

TEST_CASE("transition matrices glue the systems together") {
    auto es = parse_dow("abcdbacd");
    auto fc_ad = based_fundamentals(es, {7});
    auto fc_cd = based_fundamentals(es, {6});
    auto es2 = kappa_transform(es, "d", fc_ad);
    auto fc2_ad = based_fundamentals(es2, {7});
    auto es2r = reverse_euler(es2);
    auto fc2r_cd = based_fundamentals(es2r, {6});
    auto fc2_cd = based_fundamentals(es2, {6});

    for (long code = 0; code < 81; ++code) {
        auto p = circuit_partition_kinds(es, kinds_from_code(code, 4));
        TouchGraph d = touch_graph(p);
        direct_by_fundamentals(d, es, fc_ad, p);
        CHECK(naturality_check(es, es2, fc_ad, fc2_ad, p, d));
        CHECK(naturality_check(es, es2r, fc_cd, fc2r_cd, p, d));
        CHECK(naturality_check(es2, es2r, fc2_cd, fc2r_cd, p, d));
        d.initial_side[code % 4] = 1 - d.initial_side[code % 4];
        CHECK(naturality_check(es, es2, fc_ad, fc2_ad, p, d));
    }

    std::mt19937 rng(257);
    for (int trial = 0; trial < 4; ++trial) {
        int n = 2 + trial;
        auto c = parse_dow(random_word(n, rng));
        auto gamma = based_fundamentals(c);
        auto c2 = kappa_transform(c, rng() % n, gamma);
        auto gamma2 = based_fundamentals(c2, gamma.base_edges);
        long total = 1;
        for (int i = 0; i < n; ++i) total *= 3;
        for (long code = 0; code < total; ++code) {
            auto p = circuit_partition_kinds(c, kinds_from_code(code, n));
            TouchGraph d = touch_graph(p);
            direct_by_fundamentals(d, c, gamma, p);
            CHECK(naturality_check(c, c2, gamma, gamma2, p, d));
        }
    }

    auto p0 = euler_partition(es);
    TouchGraph d0 = touch_graph(p0);
    direct_by_fundamentals(d0, es, fc_ad, p0);
    CHECK(naturality_check(es, es, fc_ad, fc_ad, p0, d0));
    CHECK_THROWS_AS(naturality_check(es, es2, fc_ad, fc2_cd, p0, d0), std::invalid_argument);
    auto other = parse_dow("abab");
    auto p_other = euler_partition(other);
    TouchGraph d_other = touch_graph(p_other);
    auto fc_other = based_fundamentals(other);
    direct_by_fundamentals(d_other, other, fc_other, p_other);
    CHECK_THROWS_AS(naturality_check(es, other, fc_ad, fc_other, p_other, d_other), std::invalid_argument);
}

TEST_CASE("field images stay faithful to the interlacement system") {
    std::mt19937 rng(263);
    const std::array<FieldSpec, 4> fields = {FieldSpec::gf2(), FieldSpec::gfp(3), FieldSpec::gfp(5),
                                             FieldSpec::rational()};
    for (int trial = 0; trial < 4; ++trial) {
        int n = 2 + trial % 3;
        auto es = parse_dow(random_word(n, rng));
        auto fc = based_fundamentals(es);
        for (const auto& f : fields) {
            auto img = represent_over(es, fc, f);
            CHECK(img.field() == f);
        }
        CHECK(represent_over(es, fc, FieldSpec::gf2()) == ias_matrix(interlacement(es)));
    }

    auto es = parse_dow("abcabc");
    FundamentalCircuits unbased{{0, 1, 0}, {false, false, false}, {}};
    CHECK_THROWS_AS(represent_over(es, unbased, FieldSpec::gfp(3)), std::invalid_argument);
}

TEST_CASE("small circuits of the represented matroid") {
    auto es = parse_dow("abcdbacd");
    auto s_ad = signed_ias(es, based_fundamentals(es, {7}));
    auto s_cd = signed_ias(es, based_fundamentals(es, {6}));

    auto phi = [](const std::string& v) { return ground_label(VarKind::phi, v); };
    auto chi = [](const std::string& v) { return ground_label(VarKind::chi, v); };
    auto psi = [](const std::string& v) { return ground_label(VarKind::psi, v); };

    using Triple = std::array<std::string, 3>;
    std::set<Triple> expected_ad = {
        {phi("a"), chi("a"), psi("a")}, {phi("a"), chi("b"), psi("a")},
        {phi("d"), chi("d"), psi("c")}, {phi("d"), chi("d"), psi("d")},
        {phi("a"), psi("b"), psi("c")}, {phi("a"), psi("b"), psi("d")},
        {phi("b"), psi("a"), psi("c")}, {phi("b"), psi("a"), psi("d")},
        {phi("c"), phi("d"), chi("a")}, {phi("c"), phi("d"), chi("b")},
        {chi("a"), chi("c"), chi("d")}, {chi("b"), chi("c"), chi("d")},
    };
    std::set<Triple> expected_cd = {
        {phi("a"), psi("b"), psi("c")}, {phi("a"), psi("b"), psi("d")},
        {phi("b"), psi("a"), psi("c")}, {phi("b"), psi("a"), psi("d")},
        {phi("c"), phi("d"), chi("a")}, {phi("c"), phi("d"), chi("b")},
        {phi("c"), chi("c"), psi("c")}, {phi("c"), chi("c"), psi("d")},
        {phi("d"), chi("d"), psi("c")}, {phi("d"), chi("d"), psi("d")},
        {chi("a"), chi("c"), chi("d")}, {chi("b"), chi("c"), chi("d")},
    };

    auto got_ad = three_circuits(s_ad, FieldSpec::rational());
    auto got_cd = three_circuits(s_cd, FieldSpec::rational());
    CHECK(std::set<Triple>(got_ad.begin(), got_ad.end()) == expected_ad);
    CHECK(std::set<Triple>(got_cd.begin(), got_cd.end()) == expected_cd);

    std::map<std::string, int> count_ad, count_cd;
    for (const auto& t : got_ad)
        for (const auto& l : t) ++count_ad[l];
    for (const auto& t : got_cd)
        for (const auto& l : t) ++count_cd[l];
    for (const auto& v : abcd) {
        CHECK(count_ad[chi(v)] % 2 == (v == "a" || v == "b" ? 1 : 0));
        CHECK(count_ad[psi(v)] % 2 == (v == "c" || v == "d" ? 1 : 0));
        CHECK(count_ad[phi(v)] % 2 == 0);
    }
    CHECK(count_ad[chi("a")] == 3);
    CHECK(count_ad[chi("b")] == 3);
    CHECK(count_ad[psi("c")] == 3);
    CHECK(count_ad[psi("d")] == 3);
    for (const auto& [label, c] : count_cd) {
        (void)label;
        CHECK(c % 2 == 0);
    }

    // integral dependencies survive reduction into any prime field
    for (const auto& f : {FieldSpec::gfp(3), FieldSpec::gfp(5)}) {
        auto img = s_ad.matrix.to_field(f);
        for (const auto& t : got_ad)
            CHECK(img.rank_cols({t[0], t[1], t[2]}) <= 2);
    }
}
