#include "circlerep/canonical.hpp"
#include "circlerep/graph.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace circlerep;

namespace {

LoopedGraph random_graph(std::mt19937& rng, std::size_t n, bool with_loops) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
    LoopedGraph g(labels);
    std::uniform_int_distribution<int> coin(0, 3);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng) < 2) g.add_edge(labels[i], labels[j]);
        if (with_loops && coin(rng) == 0) g.set_loop(labels[i]);
    }
    return g;
}

LoopedGraph relabel_randomly(const LoopedGraph& g, std::mt19937& rng) {
    std::vector<std::string> fresh;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) fresh.push_back("w" + std::to_string(i));
    std::shuffle(fresh.begin(), fresh.end(), rng);
    LoopedGraph h(fresh);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        if (g.loop_at(i)) h.set_loop(fresh[i]);
        for (std::size_t j = i + 1; j < g.vertex_count(); ++j)
            if (g.edge_at(i, j)) h.add_edge(fresh[i], fresh[j]);
    }
    return h;
}

LoopedGraph petersen() {
    std::vector<std::string> labels;
    for (int i = 0; i < 10; ++i) labels.push_back("p" + std::to_string(i));
    LoopedGraph g(labels);
    for (int i = 0; i < 5; ++i) {
        g.add_edge("p" + std::to_string(i), "p" + std::to_string((i + 1) % 5));
        g.add_edge("p" + std::to_string(5 + i), "p" + std::to_string(5 + (i + 2) % 5));
        g.add_edge("p" + std::to_string(i), "p" + std::to_string(5 + i));
    }
    return g;
}

} // namespace

TEST_CASE("named graphs have the expected shapes") {
    auto w5 = named_graph("W5");
    CHECK(w5.vertex_count() == 6);
    CHECK(w5.edge_count() == 10);
    CHECK(w5.degree("1") == 5);

    auto w7 = named_graph("W7");
    CHECK(w7.vertex_count() == 8);
    CHECK(w7.edge_count() == 14);

    auto bw3 = named_graph("BW3");
    CHECK(bw3.vertex_count() == 7);
    CHECK(bw3.edge_count() == 9);
    CHECK(bw3.degree("h") == 3);
    CHECK(bw3.degree("s1") == 3);
    CHECK(bw3.degree("r1") == 2);

    CHECK(named_graph("C3") == named_graph("K3"));
    CHECK(named_graph("path4").edge_count() == 3);
    CHECK_THROWS_AS(named_graph("Q3"), std::invalid_argument);
    CHECK_THROWS_AS(named_graph("C2"), std::invalid_argument);
}

TEST_CASE("complementation generators are involutions") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_graph(rng, 2 + trial % 6, true);
        for (const auto& v : g.vertex_labels()) {
            CHECK(g.loop_complement(v).loop_complement(v) == g);
            CHECK(g.local_complement(v, false).local_complement(v, false) == g);
            CHECK(g.local_complement(v, true).local_complement(v, true) == g);
        }
    }
}

TEST_CASE("local complement of a five-cycle adds the chord across the complemented vertex") {
    auto c5 = named_graph("C5");
    auto h = c5.local_complement("1", false);
    CHECK(h.edge_count() == 6);
    CHECK(h.has_edge("2", "5"));
    auto hn = c5.local_complement("1", true);
    CHECK(hn.has_loop("2"));
    CHECK(hn.has_loop("5"));
    CHECK_FALSE(hn.has_loop("1"));
}

TEST_CASE("local complement at an isolated or pendant vertex") {
    LoopedGraph g(std::vector<std::string>{"a", "b", "c"});
    g.add_edge("a", "b");
    CHECK(g.local_complement("c", false) == g);  // no neighbours
    CHECK(g.local_complement("a", false) == g);  // single neighbour, nothing to toggle
}

TEST_CASE("deleting the hub of a five-wheel leaves a five-cycle") {
    auto rim = named_graph("W5").delete_vertices({"1"});
    CHECK(rim.vertex_count() == 5);
    CHECK(rim.edge_count() == 5);
    CHECK(is_isomorphic(rim, named_graph("C5")));
    CHECK_FALSE(is_isomorphic(rim, named_graph("path5")));
}

TEST_CASE("isomorphism returns a checkable bijection") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = random_graph(rng, 3 + trial % 6, trial % 2 == 0);
        auto h = relabel_randomly(g, rng);
        auto iso = isomorphism(g, h);
        REQUIRE(iso.has_value());
        std::map<std::string, std::string> f(iso->begin(), iso->end());
        for (const auto& u : g.vertex_labels()) {
            CHECK(g.has_loop(u) == h.has_loop(f[u]));
            for (const auto& w : g.vertex_labels())
                if (u < w) CHECK(g.has_edge(u, w) == h.has_edge(f[u], f[w]));
        }
    }
}

TEST_CASE("canonical form equality agrees with isomorphism on a mixed corpus") {
    std::mt19937 rng(31337);
    std::vector<LoopedGraph> corpus;
    for (int trial = 0; trial < 40; ++trial) corpus.push_back(random_graph(rng, 2 + trial % 7, true));
    corpus.push_back(named_graph("K8"));
    corpus.push_back(LoopedGraph(std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g", "h"}));
    corpus.push_back(named_graph("C8"));
    corpus.push_back(named_graph("W7"));
    {
        LoopedGraph two_k4(std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g", "h"});
        const char* first[] = {"a", "b", "c", "d"};
        const char* second[] = {"e", "f", "g", "h"};
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                two_k4.add_edge(first[i], first[j]);
                two_k4.add_edge(second[i], second[j]);
            }
        corpus.push_back(two_k4);
    }
    for (const auto& g : corpus) {
        auto shuffled = relabel_randomly(g, rng);
        CHECK(canonical_form(g) == canonical_form(shuffled));
        auto rebuilt = canonical_to_graph(canonical_form(g));
        CHECK(canonical_form(rebuilt) == canonical_form(g));
        CHECK(is_isomorphic(rebuilt, g));
    }
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j)
            CHECK((canonical_form(corpus[i]) == canonical_form(corpus[j])) ==
                  is_isomorphic(corpus[i], corpus[j]));
}

TEST_CASE("canonical form handles ten-vertex graphs including the Petersen graph") {
    auto p = petersen();
    std::mt19937 rng(8);
    for (int trial = 0; trial < 5; ++trial)
        CHECK(canonical_form(relabel_randomly(p, rng)) == canonical_form(p));
}

TEST_CASE("orbit of a single vertex under loop complementation has two members") {
    LoopedGraph g(std::vector<std::string>{"a"});
    auto orbit = local_equivalence_orbit(g);
    CHECK(orbit.complete);
    CHECK(orbit.forms.size() == 2);
}

TEST_CASE("orbit members of the five-wheel all keep six vertices") {
    auto orbit = local_equivalence_orbit(named_graph("W5"));
    CHECK(orbit.complete);
    CHECK(orbit.forms.size() > 1);
    for (const auto& f : orbit.forms) CHECK(canonical_to_graph(f).vertex_count() == 6);
}

TEST_CASE("orbit truncation reports incompleteness") {
    auto orbit = local_equivalence_orbit(named_graph("W5"), 3);
    CHECK_FALSE(orbit.complete);
    CHECK(orbit.forms.size() >= 3);
    CHECK_THROWS_AS(local_equivalence_orbit(named_graph("W5"), 0), std::invalid_argument);
}

TEST_CASE("a graph is its own vertex minor") {
    auto g = named_graph("W5");
    auto r = has_vertex_minor(g, g);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->moves.empty());
    CHECK(r.witness->deleted.empty());
}

TEST_CASE("planted vertex minors are found and their witnesses replay") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 12; ++trial) {
        auto g = random_graph(rng, 6, false);
        LoopedGraph h = g;
        std::uniform_int_distribution<int> pick(0, 5);
        for (int m = 0; m < 3; ++m) {
            const auto& v = h.vertex_labels()[pick(rng) % h.vertex_count()];
            int kind = pick(rng) % 3;
            h = kind == 0 ? h.loop_complement(v) : h.local_complement(v, kind == 2);
        }
        std::set<std::string> victims{h.vertex_labels()[pick(rng) % 6]};
        victims.insert(h.vertex_labels()[pick(rng) % 6]);
        h = h.delete_vertices(victims);
        h = relabel_randomly(h, rng);

        auto r = has_vertex_minor(g, h);
        REQUIRE(r.witness.has_value());
        LoopedGraph replay = g;
        for (const auto& m : r.witness->moves) replay = apply_move(replay, m);
        replay = replay.delete_vertices(
            std::set<std::string>(r.witness->deleted.begin(), r.witness->deleted.end()));
        std::map<std::string, std::string> f(r.witness->iso.begin(), r.witness->iso.end());
        REQUIRE(replay.vertex_count() == h.vertex_count());
        for (const auto& u : replay.vertex_labels()) {
            CHECK(replay.has_loop(u) == h.has_loop(f[u]));
            for (const auto& w : replay.vertex_labels())
                if (u < w) CHECK(replay.has_edge(u, w) == h.has_edge(f[u], f[w]));
        }
    }
}

TEST_CASE("oversized targets are conclusively absent") {
    auto r = has_vertex_minor(named_graph("C5"), named_graph("W5"));
    CHECK_FALSE(r.witness.has_value());
    CHECK(r.conclusive);
}

TEST_CASE("vertex-minor search distinguishes reachable from unreachable targets") {
    // Complementing a cycle vertex creates a chord, so a triangle survives
    // two deletions.
    auto r = has_vertex_minor(named_graph("C5"), named_graph("K3"));
    CHECK(r.witness.has_value());
    // Complementations preserve connectedness and deletions only shrink the
    // graph, so a disconnected same-order target is conclusively absent.
    LoopedGraph split(std::vector<std::string>{"x", "y", "z"});
    split.add_edge("x", "y");
    auto none = has_vertex_minor(named_graph("path3"), split);
    CHECK_FALSE(none.witness.has_value());
    CHECK(none.conclusive);
}

TEST_CASE("graph mutation errors") {
    LoopedGraph g(std::vector<std::string>{"a", "b"});
    CHECK_THROWS_AS(g.add_edge("a", "a"), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge("a", "z"), std::out_of_range);
    CHECK_THROWS_AS(g.delete_vertices({"z"}), std::out_of_range);
    CHECK_THROWS_AS(LoopedGraph(std::vector<std::string>{"x", "x"}), std::invalid_argument);
}
