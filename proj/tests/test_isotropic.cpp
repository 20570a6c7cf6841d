#include "circlerep/isotropic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

using namespace circlerep;

namespace {

LoopedGraph random_graph(int n, std::mt19937& rng, bool loops = true) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
    LoopedGraph g(labels);
    std::bernoulli_distribution edge(0.5), loop(0.25);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) g.add_edge(labels[i], labels[j]);
        if (loops && loop(rng)) g.set_loop(labels[i], true);
    }
    return g;
}

// Left-multiplies by random invertible row operations and optionally stacks
// extra dependent rows, preserving the represented matroid.
ExactMatrix scramble_rows(const ExactMatrix& m, std::mt19937& rng, int extra_rows) {
    const std::size_t n = m.row_count(), cols = m.col_count();
    std::vector<std::vector<Rat>> rows(n + extra_rows, std::vector<Rat>(cols));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] = m.at_pos(i, j);

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coef(1, 4);
    for (std::size_t step = 0; step < 4 * n; ++step) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) {
            std::swap(rows[i], rows[pick(rng)]);
            continue;
        }
        Rat c(coef(rng));
        for (std::size_t k = 0; k < cols; ++k) rows[i][k] += c * rows[j][k];
    }
    for (int e = 0; e < extra_rows; ++e) {
        std::size_t i = pick(rng), j = pick(rng);
        for (std::size_t k = 0; k < cols; ++k) rows[n + e][k] = rows[i][k] + rows[j][k];
    }
    std::vector<std::string> row_labels;
    for (std::size_t i = 0; i < rows.size(); ++i) row_labels.push_back("q" + std::to_string(i));
    return ExactMatrix::from_rows(m.field(), row_labels, m.col_labels(), rows);
}

Choice random_choice(int n, int arity, std::mt19937& rng) {
    Choice c(n);
    std::uniform_int_distribution<int> pick(-1, arity - 1);
    for (int i = 0; i < n; ++i) c[i] = pick(rng);
    return c;
}

} // namespace

TEST_CASE("single vertex matrices") {
    LoopedGraph plain(std::vector<std::string>{"a"});
    auto m = ias_matrix(plain);
    CHECK(m.col_labels() == std::vector<std::string>{"phi(a)", "chi(a)", "psi(a)"});
    CHECK(m.at("a", "phi(a)") == 1);
    CHECK(m.at("a", "chi(a)") == 0);
    CHECK(m.at("a", "psi(a)") == 1);

    LoopedGraph looped = plain;
    looped.set_loop("a", true);
    auto ml = ias_matrix(looped);
    CHECK(ml.at("a", "phi(a)") == 1);
    CHECK(ml.at("a", "chi(a)") == 1);
    CHECK(ml.at("a", "psi(a)") == 0);
}

TEST_CASE("ias blocks and labels") {
    auto g = named_graph("BW3");
    auto m = ias_matrix(g);
    REQUIRE(m.row_count() == 7);
    REQUIRE(m.col_count() == 21);
    for (const auto& v : g.vertex_labels()) {
        for (const auto& w : g.vertex_labels()) {
            int a = static_cast<int>(numerator(m.at(v, ground_label(VarKind::chi, w))));
            int b = static_cast<int>(numerator(m.at(v, ground_label(VarKind::psi, w))));
            int i = v == w ? 1 : 0;
            CHECK((a ^ i) == b);
            CHECK(a == (v == w ? 0 : (g.has_edge(v, w) ? 1 : 0)));
        }
    }
    auto ia = ia_matrix(g);
    CHECK(ia.col_count() == 14);
    CHECK(ia.rank() == 7);
}

TEST_CASE("rank oracle matches the matrix") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + trial % 6;
        auto g = random_graph(n, rng);
        IsotropicSystem sys(g);
        auto m = ias_matrix(g);
        for (int k = 0; k < 40; ++k) {
            auto c = random_choice(n, 3, rng);
            std::vector<std::string> cols;
            for (int v = 0; v < n; ++v)
                if (c[v] >= 0)
                    cols.push_back(ground_label(static_cast<VarKind>(c[v]), g.vertex_labels()[v]));
            CHECK(sys.rank_sub(c) == static_cast<int>(m.rank_cols(cols)));
        }
    }
}

TEST_CASE("named transversal ranks") {
    std::mt19937 rng(103);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 2 + trial % 5;
        auto g = random_graph(n, rng, false);
        IsotropicSystem sys(g);
        Choice all_phi(n, 0);
        CHECK(sys.rank_sub(all_phi) == n);
        CHECK(sys.rank_sub(Choice(n, -1)) == 0);
        for (int v = 0; v < n; ++v) {
            Choice c(n, 0);
            c[v] = 1;
            CHECK(sys.rank_sub(c) == n - 1);
        }
    }
}

TEST_CASE("subtransversal enumeration is complete") {
    for (int arity : {2, 3}) {
        std::set<Choice> seen;
        for_each_subtransversal(3, arity, [&](const Choice& c) {
            REQUIRE(c.size() == 3);
            for (int x : c) {
                CHECK(x >= -1);
                CHECK(x < arity);
            }
            seen.insert(c);
        });
        int expect = (arity + 1) * (arity + 1) * (arity + 1);
        CHECK(static_cast<int>(seen.size()) == expect);
    }
}

TEST_CASE("ias shelters its own system") {
    std::mt19937 rng(107);
    for (int trial = 0; trial < 12; ++trial) {
        int n = 1 + trial % 5;
        auto g = random_graph(n, rng);
        CHECK(shelters(ias_matrix(g), g, 3, true));
        CHECK(shelters(ia_matrix(g), g, 2, true));
    }
    auto w5 = named_graph("W5");
    CHECK(shelters(ias_matrix(w5), w5, 3, true));

    LoopedGraph g(std::vector<std::string>{"a", "b"});
    g.add_edge("a", "b");
    ExactMatrix zero(FieldSpec::gf2(), g.vertex_labels(), ias_matrix(g).col_labels());
    auto report = shelters_report(zero, g, 3, true);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.rank_matches);
    REQUIRE(report.violation.has_value());
    CHECK(report.oracle_rank > 0);
    CHECK(report.candidate_rank == 0);
}

TEST_CASE("a corrupted candidate is caught with a certificate") {
    std::mt19937 rng(109);
    auto g = random_graph(4, rng, false);
    auto m = ias_matrix(g);
    // flip one chi entry off the adjacency support
    std::size_t row = 1, col = m.col_index(ground_label(VarKind::chi, g.vertex_labels()[3]));
    m.set_at(row, col, m.at_pos(row, col) == 0 ? 1 : 0);
    auto report = shelters_report(m, g, 3, false);
    CHECK_FALSE(report.ok);
    REQUIRE(report.violation.has_value());
    CHECK(report.oracle_rank != report.candidate_rank);

    CHECK_THROWS_AS(shelters(m, g, 4, false), std::invalid_argument);
}

TEST_CASE("phi-chi restriction of a three-shelter shelters the two-system") {
    std::mt19937 rng(113);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 2 + trial % 4;
        auto g = random_graph(n, rng);
        auto m = ias_matrix(g);
        std::vector<std::string> keep;
        for (VarKind k : {VarKind::phi, VarKind::chi})
            for (const auto& v : g.vertex_labels()) keep.push_back(ground_label(k, v));
        CHECK(shelters(m.submatrix_cols(keep), g, 2, true));
    }
}

TEST_CASE("column contraction matches matroid contraction") {
    std::mt19937 rng(127);
    for (const auto& field : {FieldSpec::gf2(), FieldSpec::gfp(5), FieldSpec::rational()}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::string> cols{"c0", "c1", "c2", "c3", "c4"};
            std::vector<std::string> rows{"r0", "r1", "r2", "r3"};
            std::vector<std::vector<Rat>> entries(4, std::vector<Rat>(5));
            std::uniform_int_distribution<int> val(0, field.kind == FieldKind::gf2 ? 1 : 4);
            for (auto& r : entries)
                for (auto& x : r) x = val(rng);
            auto m = ExactMatrix::from_rows(field, rows, cols, entries);
            auto contracted = m.contract_column("c2");
            int re = static_cast<int>(m.rank_cols({"c2"}));
            for (int mask = 0; mask < 16; ++mask) {
                std::vector<std::string> s, s_plus{"c2"};
                const char* rest[] = {"c0", "c1", "c3", "c4"};
                for (int b = 0; b < 4; ++b)
                    if (mask & (1 << b)) {
                        s.push_back(rest[b]);
                        s_plus.push_back(rest[b]);
                    }
                CHECK(static_cast<int>(contracted.rank_cols(s)) ==
                      static_cast<int>(m.rank_cols(s_plus)) - re);
            }
        }
    }
}

TEST_CASE("deleting a vertex from a shelter shelters the smaller system") {
    std::mt19937 rng(131);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + trial % 3;
        auto g = random_graph(n, rng);
        auto m = ias_matrix(g);
        for (const auto& v : g.vertex_labels()) {
            auto rest = shelter_delete_vertex(m, v);
            auto h = g.delete_vertices({v});
            CHECK(shelters(rest, h, 3, true));
        }
    }
}

TEST_CASE("standardization of a two-matroid shelter") {
    std::mt19937 rng(137);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + trial % 4;
        auto g = random_graph(n, rng, false);
        auto scrambled = scramble_rows(ia_matrix(g), rng, trial % 3);
        auto form = standardize_two(scrambled, g);
        CHECK(form.tail_zero);
        CHECK(form.support_matches);
        CHECK(form.matrix.rank() == g.vertex_count());
        for (std::size_t i = 0; i < g.vertex_count(); ++i)
            for (std::size_t j = 0; j < g.vertex_count(); ++j)
                CHECK(form.matrix.at_pos(i, form.matrix.col_index(
                          ground_label(VarKind::phi, g.vertex_labels()[j]))) == (i == j ? 1 : 0));
    }

    // support mismatch is detected when reducing against the wrong graph
    auto g = named_graph("C5");
    auto other = named_graph("path5");
    auto form = standardize_two(ia_matrix(g), other);
    CHECK_FALSE(form.support_matches);
}

TEST_CASE("normal form of a strict three-shelter") {
    std::mt19937 rng(139);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + trial % 4;
        auto g = random_graph(n, rng, false);
        auto scrambled = scramble_rows(ias_matrix(g), rng, trial % 2);
        auto form = standardize_three(scrambled, g);
        CHECK(form.tail_zero);
        CHECK(form.support_matches);
        CHECK(form.diag_units);
        CHECK(form.edges_reciprocal);
    }
}

TEST_CASE("choice validation") {
    LoopedGraph g(std::vector<std::string>{"a", "b"});
    CHECK_THROWS_AS(choice_of(g, {{"a", VarKind::phi}, {"a", VarKind::chi}}), std::invalid_argument);
    CHECK_THROWS_AS(choice_of(g, {{"z", VarKind::phi}}), std::out_of_range);
    IsotropicSystem sys(g);
    CHECK_THROWS_AS(sys.rank_sub(Choice{0}), std::invalid_argument);
    CHECK(sys.rank_sub(std::vector<GroundElement>{{"a", VarKind::phi}}) == 1);
}
