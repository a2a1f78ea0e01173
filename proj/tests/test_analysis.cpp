#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rsz/analysis.hpp"
#include "rsz/rng.hpp"

using namespace rsz;

namespace {

bool is_clique(const Graph& g, const VertexSet& s) {
    const auto m = s.members();
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = a + 1; b < m.size(); ++b)
            if (!g.adjacent(m[a], m[b])) return false;
    return true;
}

// gnp core plus `copies` extra vertices with exactly vertex 0's neighbourhood
Graph with_twins(const Graph& core, std::size_t copies) {
    const std::size_t n = core.order();
    GraphBuilder b(n + copies);
    for (auto [u, v] : core.edges()) b.add_edge(u, v);
    for (std::size_t j = 0; j < copies; ++j)
        for (Vertex w = 1; w < n; ++w)
            if (core.adjacent(0, w)) b.add_edge(w, static_cast<Vertex>(n + j));
    return std::move(b).build();
}

} // namespace

TEST_CASE("hom on named graphs") {
    CHECK(hom(complete_graph(7)).hom == 7);
    CHECK(hom(empty_graph(6)).hom == 6);
    const HomResult c5 = hom(cycle_graph(5));
    CHECK(c5.clique_size == 2);
    CHECK(c5.indep_size == 2);
    CHECK(c5.hom == 2);
    CHECK(hom(paley(17)).hom == 3);
    CHECK_THROWS_AS(hom(Graph(0, {})), ParameterError);
}

TEST_CASE("hom matches subset enumeration") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const double p = seed % 3 == 0 ? 0.2 : seed % 3 == 1 ? 0.5 : 0.8;
        const Graph g = gnp(6 + seed % 9, p, seed);
        const auto [c, i] = oracle::clique_indep_naive(oracle::matrix_of(g));
        const HomResult h = hom(g);
        CHECK(h.clique_size == c);
        CHECK(h.indep_size == i);
        CHECK(h.hom == std::max(c, i));
        CHECK(h.witness_clique.count() == c);
        CHECK(is_clique(g, h.witness_clique));
        CHECK(induced_edge_count(g, h.witness_indep) == 0);
        CHECK(static_cast<double>(h.hom) >= std::log2(static_cast<double>(g.order())) / 2);
    }
}

TEST_CASE("hom of the complement swaps roles") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = gnp(60, 0.5, seed);
        const HomResult a = hom(g), b = hom(g.complement());
        CHECK(a.clique_size == b.indep_size);
        CHECK(a.indep_size == b.clique_size);
        CHECK(a.hom == b.hom);
    }
}

TEST_CASE("hom budget error carries lower bounds") {
    const Graph g = gnp(200, 0.5, 3);
    try {
        hom(g, 10);
        FAIL("expected a budget error");
    } catch (const HomBudgetError& e) {
        CHECK(e.clique_lower_bound >= 1);
    }
}

TEST_CASE("C-Ramsey and density") {
    CHECK_FALSE(is_c_ramsey(complete_graph(4), 1));
    CHECK(is_c_ramsey(cycle_graph(5), 1));
    CHECK(is_c_ramsey(complete_graph(16), 4));
    CHECK(edge_density(complete_graph(4)) == 1.0);
    CHECK(edge_density(empty_graph(5)) == 0.0);
    CHECK(edge_density(cycle_graph(5)) == 0.5);
    CHECK_THROWS_AS(edge_density(empty_graph(1)), ParameterError);
    CHECK_THROWS_AS(is_c_ramsey(empty_graph(1), 1), ParameterError);
}

TEST_CASE("diversity check on small graphs") {
    const auto kn = diversity_check(complete_graph(10), 0.5, 0.5);
    CHECK_FALSE(kn.is_diverse);
    CHECK(kn.violating_vertices.size() == 10);
    CHECK(kn.violating_vertices[0].near_twins == 9);

    // Non-adjacent pairs of C_5 have symdiff 2 < 2.5, so every vertex has two
    // near-twins; the allowance floor(sqrt 5) = 2 absorbs them.
    const auto c5 = diversity_check(cycle_graph(5), 0.5, 0.5);
    CHECK(c5.allowance == 2);
    CHECK(c5.is_diverse);
    const auto nt = oracle::near_twins(oracle::matrix_of(cycle_graph(5)), 2.5);
    for (auto t : nt) CHECK(t == 2);

    const Graph twins = with_twins(gnp(30, 0.5, 1), 1);
    CHECK(symdiff_degree(twins, 0, 30, VertexSet::full(31)) == 0);
    const auto tn = oracle::near_twins(oracle::matrix_of(twins), 0.1 * 31);
    CHECK(tn[0] >= 1);
    CHECK(tn[30] >= 1);
}

TEST_CASE("diversity check agrees with the oracle and is monotone") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const Graph g = gnp(40, seed % 2 ? 0.5 : 0.15, seed);
        const auto a = oracle::matrix_of(g);
        for (double c : {0.2, 0.35, 0.5}) {
            const auto r = diversity_check(g, c, 0.3);
            const auto tn = oracle::near_twins(a, c * 40);
            const auto allow = static_cast<std::size_t>(std::floor(std::pow(40.0, 0.3)));
            std::size_t bad = 0;
            for (auto t : tn) bad += t > allow;
            CHECK(r.violating_vertices.size() == bad);
            CHECK(r.is_diverse == (bad == 0));
            if (r.is_diverse) {
                CHECK(diversity_check(g, c * 0.8, 0.3).is_diverse);
                CHECK(diversity_check(g, c, 0.5).is_diverse);
            }
        }
    }
}

TEST_CASE("power_floor is exact at integer powers") {
    CHECK(power_floor(16, 0.5) == 4);
    CHECK(power_floor(27, 1.0 / 3) == 3);
    CHECK(power_floor(1024, 0.2) == 4);
    CHECK(power_floor(5, 0.5) == 2);
}

TEST_CASE("diversity extraction") {
    const Graph core = gnp(40, 0.5, 2);
    REQUIRE(diversity_check(core, 0.3, 0.1).is_diverse);
    CHECK(diversity_extract(core, 0.3, 0.1, 0.5) == VertexSet::full(40));

    // two copies of vertex 0: three mutual twins against an allowance of 1
    const Graph g = with_twins(core, 2);
    REQUIRE_FALSE(diversity_check(g, 0.3, 0.1).is_diverse);
    const VertexSet s = diversity_extract(g, 0.3, 0.1, 0.5);
    CHECK(s.count() >= 21);
    CHECK(diversity_check(g.induced(s), 0.3, 0.1).is_diverse);
    CHECK((!s.contains(0) || !s.contains(40) || !s.contains(41)));

    CHECK_THROWS_AS(diversity_extract(complete_graph(20), 0.3, 0.2, 0.5), ExtractionError);
}

TEST_CASE("bipartite diverse split") {
    const Graph g = gnp(256, 0.5, 5);
    const DiverseSplit s = bipartite_diverse_split(g, 0.3, 0.2, 17);
    CHECK(split_postcondition_holds(g, s.X, s.Y, 0.3, 0.2));
    CHECK_FALSE(s.X.intersects(s.Y));
    CHECK(s.X.count() * 3 >= 256);
    CHECK(s.Y.count() * 3 >= 256);
    // independent recheck of the symmetric-difference condition
    const auto ys = s.Y.members();
    const auto allow = power_floor(256, 0.2);
    for (Vertex u : ys) {
        std::size_t close = 0;
        for (Vertex v : ys) {
            if (u == v) continue;
            std::size_t d = 0;
            for (Vertex x : s.X.members()) d += g.adjacent(u, x) != g.adjacent(v, x);
            close += static_cast<double>(d) < 0.1 * 256;
        }
        CHECK(close <= allow);
    }
    CHECK(bipartite_diverse_split(g, 0.3, 0.2, 17).X == s.X);
    CHECK_THROWS_AS(bipartite_diverse_split(complete_graph(30), 0.3, 0.2, 1), SplitError);
    CHECK_THROWS_AS(bipartite_diverse_split(gnp(3, 0.5, 1), 0.3, 0.2, 1), SplitError);
}

TEST_CASE("uniform density check") {
    CHECK_FALSE(uniform_dense_check(complete_graph(8), 0.2, 100).pass);
    const auto c5 = uniform_dense_check(cycle_graph(5), 0.3, 100);
    CHECK_FALSE(c5.pass);
    REQUIRE(c5.witness);
    CHECK(c5.exhaustive);

    // at n = 20 the exhaustive answer must match a direct scan
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Graph g = gnp(20, 0.5, seed);
        const auto r = uniform_dense_check(g, 0.05, 0);
        CHECK(r.exhaustive);
        bool violated = false;
        for (auto [u, v] : g.edges()) violated = violated || (u < 20 && v < 20);  // any edge has density 1
        CHECK(r.pass == !violated);
        if (r.witness) {
            const auto k = static_cast<double>(r.witness->count());
            const double d = static_cast<double>(induced_edge_count(g, *r.witness)) / (k * (k - 1) / 2);
            CHECK(d == r.witness_density);
            CHECK((d < 0.05 || d > 0.95));
        }
    }
    // a large empty graph fails through the randomized search
    const auto big = uniform_dense_check(empty_graph(40), 0.2, 50, 3);
    CHECK_FALSE(big.pass);
    CHECK_FALSE(big.exhaustive);
    CHECK_THROWS_AS(uniform_dense_check(cycle_graph(5), 0.5, 10), ParameterError);
}
