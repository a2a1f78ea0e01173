#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "rsz/errors.hpp"
#include "rsz/rng.hpp"
#include "rsz/sizes.hpp"

using namespace rsz;

namespace {

SizeSpectrum phi_of(std::vector<std::int64_t> sizes) {
    SizeSpectrum s;
    s.phi_set = std::move(sizes);
    return s;
}

std::vector<std::int64_t> random_weights(std::size_t n, std::uint64_t bound, Rng& rng) {
    std::vector<std::int64_t> w(n);
    for (auto& x : w) x = static_cast<std::int64_t>(rng.below(bound));
    return w;
}

} // namespace

TEST_CASE("exact spectra of named graphs") {
    const auto k4 = phi_psi_exact(WeightedGraph(complete_graph(4)), SpectrumMode::phi);
    CHECK(k4.phi_set == std::vector<std::int64_t>{0, 1, 3, 6});
    CHECK(k4.exactness == Exactness::exact);
    const auto e3 = phi_psi_exact(WeightedGraph(empty_graph(3)), SpectrumMode::psi);
    CHECK(e3.psi_set.size() == 4);
    const auto c5 = phi_psi_exact(WeightedGraph(cycle_graph(5)), SpectrumMode::phi);
    CHECK(c5.phi_set == std::vector<std::int64_t>{0, 1, 2, 3, 5});
    // the empty subgraph is always present
    CHECK(phi_psi_exact(WeightedGraph(gnp(10, 0.9, 1)), SpectrumMode::phi).phi_set.front() == 0);
}

TEST_CASE("Gray-code enumeration equals per-subset recount") {
    Rng rng(3);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const Graph g = gnp(4 + seed % 11, seed % 3 == 0 ? 0.2 : seed % 3 == 1 ? 0.5 : 0.8, seed);
        const auto a = oracle::matrix_of(g);
        const auto w = seed % 2 ? std::vector<std::int64_t>{} : random_weights(g.order(), 20, rng);
        const WeightedGraph wg = w.empty() ? WeightedGraph(g) : WeightedGraph(g, WeightFn(w));
        const auto expect = oracle::psi_naive(a, w);
        const auto psi = phi_psi_exact(wg, SpectrumMode::psi);
        CHECK(std::set<std::pair<std::int64_t, std::int64_t>>(psi.psi_set.begin(), psi.psi_set.end()) == expect);
        CHECK(std::is_sorted(psi.psi_set.begin(), psi.psi_set.end()));
        const auto phi = phi_psi_exact(wg, SpectrumMode::phi);
        const auto phi_expect = oracle::phi_naive(a, w);
        CHECK(std::set<std::int64_t>(phi.phi_set.begin(), phi.phi_set.end()) == phi_expect);
        CHECK(phi.phi_set.size() == phi_expect.size());
    }
}

TEST_CASE("sampled spectrum is a deterministic subset of the exact one") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const WeightedGraph wg(gnp(14, 0.5, seed));
        const auto exact = phi_psi_exact(wg, SpectrumMode::psi);
        const auto s1 = phi_sampled(wg, SpectrumMode::psi, 10000, seed, 1);
        const auto s4 = phi_sampled(wg, SpectrumMode::psi, 10000, seed, 4);
        CHECK(s1.psi_set == s4.psi_set);
        CHECK(s1.exactness == Exactness::lower_bound);
        const std::set<std::pair<std::int64_t, std::int64_t>> all(exact.psi_set.begin(), exact.psi_set.end());
        for (const auto& p : s1.psi_set) CHECK(all.count(p) == 1);
    }
    CHECK_THROWS_AS(phi_sampled(WeightedGraph(cycle_graph(5)), SpectrumMode::phi, 0, 1), ParameterError);
}

TEST_CASE("weight shift moves each level by order times shift") {
    Rng rng(8);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Graph g = gnp(10, 0.5, seed);
        auto w = random_weights(10, 30, rng);
        auto shifted = w;
        const std::int64_t t = 5;
        for (auto& x : shifted) x += t;
        const auto a = phi_psi_exact(WeightedGraph(g, WeightFn(w)), SpectrumMode::psi);
        const auto b = phi_psi_exact(WeightedGraph(g, WeightFn(shifted)), SpectrumMode::psi);
        REQUIRE(a.psi_set.size() == b.psi_set.size());
        for (std::size_t j = 0; j < a.psi_set.size(); ++j) {
            CHECK(b.psi_set[j].first == a.psi_set[j].first);
            CHECK(b.psi_set[j].second == a.psi_set[j].second + a.psi_set[j].first * t);
        }
    }
}

TEST_CASE("spectrum of an induced subgraph is contained in the whole") {
    Rng rng(4);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph g = gnp(13, 0.5, seed);
        VertexSet s(13);
        for (Vertex v = 0; v < 13; ++v)
            if (rng.bernoulli(0.6)) s.insert(v);
        const auto whole = phi_psi_exact(WeightedGraph(g), SpectrumMode::phi);
        const auto part = phi_psi_exact(WeightedGraph(g.induced(s)), SpectrumMode::phi);
        const std::set<std::int64_t> all(whole.phi_set.begin(), whole.phi_set.end());
        for (auto e : part.phi_set) CHECK(all.count(e) == 1);
    }
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(phi_psi_exact(WeightedGraph(empty_graph(31)), SpectrumMode::phi), CapError);
    CHECK_THROWS_AS(phi_psi_exact(WeightedGraph(empty_graph(12)), SpectrumMode::phi, 10), CapError);
    CHECK_NOTHROW(phi_psi_exact(WeightedGraph(empty_graph(12)), SpectrumMode::phi, 12));
}

TEST_CASE("consecutive prefix") {
    CHECK(consecutive_prefix(phi_of({0})) == 1);
    CHECK(consecutive_prefix(phi_of({0, 1, 2, 4})) == 3);
    CHECK(consecutive_prefix(phi_of({1, 2})) == 0);
    CHECK(consecutive_prefix(phi_psi_exact(WeightedGraph(complete_graph(4)), SpectrumMode::phi)) == 2);
    SizeSpectrum psi;
    psi.mode = SpectrumMode::psi;
    CHECK_THROWS_AS(consecutive_prefix(psi), ParameterError);
}

TEST_CASE("size decomposition identity") {
    const Graph small = cycle_graph(6);
    CHECK(size_decomposition_check(small, VertexSet(6, {0, 1}), VertexSet(6)));
    CHECK(size_decomposition_check(small, VertexSet(6), VertexSet(6, {2, 3, 4})));
    CHECK_THROWS_AS(size_decomposition_check(small, VertexSet(6, {0, 1}), VertexSet(6, {1, 2})), ParameterError);
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        Rng rng(seed);
        const Graph g = gnp(40, 0.5, seed);
        VertexSet u(40), z(40);
        for (Vertex v = 0; v < 40; ++v) {
            const auto r = rng.below(3);
            if (r == 0) u.insert(v);
            if (r == 1) z.insert(v);
        }
        REQUIRE(size_decomposition_check(g, u, z));
    }
}

TEST_CASE("csv export") {
    const auto k3 = phi_psi_exact(WeightedGraph(complete_graph(3)), SpectrumMode::phi);
    CHECK(spectrum_csv(k3) == "size\n0\n1\n3\n");
    const auto k2 = phi_psi_exact(WeightedGraph(complete_graph(2)), SpectrumMode::psi);
    CHECK(spectrum_csv(k2) == "order,size\n0,0\n1,0\n2,1\n");
}
