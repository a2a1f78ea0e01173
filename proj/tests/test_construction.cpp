#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "rsz/analysis.hpp"
#include "rsz/construction.hpp"
#include "rsz/rng.hpp"

using namespace rsz;

namespace {

std::int64_t recount(const oracle::Matrix& a, const std::vector<std::int64_t>& w, const VertexSet& s) {
    std::vector<std::uint32_t> ms;
    for (auto v : s.members()) ms.push_back(v);
    std::int64_t size = oracle::edges_in(a, ms);
    for (auto v : ms) size += w.empty() ? 0 : w[v];
    return size;
}

WeightedGraph permuted_weights(std::size_t n, double p, std::uint64_t seed) {
    std::vector<std::int64_t> w(n);
    std::iota(w.begin(), w.end(), 0);
    Rng rng(seed);
    rng.shuffle(w);
    return WeightedGraph(gnp(n, p, seed), WeightFn(w));
}

} // namespace

TEST_CASE("params text round trip") {
    ConstructionParams p;
    p.c = 0.25;
    p.max_scales = 7;
    const auto back = parse_params(params_to_text(p));
    CHECK(back.c == 0.25);
    CHECK(back.max_scales == 7);
    CHECK(params_to_text(back) == params_to_text(p));

    const auto q = parse_params("# tuning\nk_hi = 0.15\n\ndelta=0.1 # inline\n");
    CHECK(q.k_hi == 0.15);
    CHECK(q.delta == 0.1);
    CHECK(q.c == ConstructionParams{}.c);

    try {
        parse_params("c=0.3\nbogus=1\n");
        FAIL("unknown key accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_params("c=abc\n"), ParseError);
    CHECK_THROWS_AS(parse_params("max_scales=-1\n"), ParseError);
    CHECK_THROWS_AS(parse_params("c\n"), ParseError);
    CHECK_THROWS_AS(parse_params("c=1.5\n"), ParameterError);
    CHECK_THROWS_AS(parse_params("spacing_units=3\nslack_units=2\n"), ParameterError);
}

TEST_CASE("degree graph") {
    // pool {0..3} with anchor degrees 3,3,5,7
    GraphBuilder b(11);
    const std::pair<Vertex, int> wants[] = {{0, 3}, {1, 3}, {2, 5}, {3, 7}};
    for (auto [v, d] : wants)
        for (int j = 0; j < d; ++j) b.add_edge(v, static_cast<Vertex>(4 + j));
    const Graph g = std::move(b).build();
    const VertexSet pool(11, {0, 1, 2, 3});
    VertexSet anchor(11);
    for (Vertex v = 4; v < 11; ++v) anchor.insert(v);
    const Graph d = degree_graph(g, pool, anchor);
    CHECK(d.order() == 4);
    CHECK(d.edge_count() == 1);
    CHECK(d.adjacent(0, 1));
    CHECK_THROWS_AS(degree_graph(g, pool, VertexSet(11, {3, 4})), ParameterError);
    CHECK_THROWS_AS(degree_graph(g, VertexSet(12), anchor), DimensionError);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Graph h = gnp(40, 0.5, seed);
        VertexSet p(40), a(40);
        for (Vertex v = 0; v < 40; ++v) (v % 3 == 0 ? p : a).insert(v);
        const Graph dg = degree_graph(h, p, a);
        const auto pm = p.members();
        for (std::size_t x = 0; x < pm.size(); ++x)
            for (std::size_t y = x + 1; y < pm.size(); ++y)
                CHECK(dg.adjacent(static_cast<Vertex>(x), static_cast<Vertex>(y)) ==
                      (degree_in(h, pm[x], a) == degree_in(h, pm[y], a)));
    }
}

TEST_CASE("Turan independent set") {
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        const std::size_t n = 1 + seed % 40;
        const Graph g = gnp(n, static_cast<double>(seed % 10) / 10, seed);
        const VertexSet s = turan_independent_set(g);
        CHECK(induced_edge_count(g, s) == 0);
        const std::uint64_t e = g.edge_count();
        CHECK(s.count() * (2 * e + n) >= n * n);
    }
    CHECK(turan_independent_set(complete_graph(9)).count() == 1);
    CHECK(turan_independent_set(empty_graph(9)).count() == 9);
    CHECK_THROWS_AS(turan_independent_set(empty_graph(0)), ParameterError);
}

TEST_CASE("step 1 witness") {
    const Graph g = gnp(1024, 0.5, 3);
    const auto e = static_cast<std::int64_t>(g.edge_count());
    ConstructionParams params;
    const std::int64_t m = e * 225 / 1000;
    const auto w = step1_build(g, m, params, 11);
    CHECK(step1_invariants_hold(g, w));
    CHECK_FALSE(w.U.intersects(w.W));
    CHECK(w.W.count() >= params.min_w);
    CHECK(static_cast<std::int64_t>(induced_edge_count(g, w.U)) == w.e_U);
    CHECK(std::llabs(w.e_U - m) <= w.slack);
    std::set<std::uint64_t> degs;
    for (Vertex x : w.W.members()) {
        const auto d = static_cast<std::int64_t>(degree_in(g, x, w.U));
        CHECK(d >= w.l);
        CHECK(d <= w.l + w.degree_window);
        degs.insert(static_cast<std::uint64_t>(d));
    }
    CHECK(degs.size() == w.W.count());

    const auto again = step1_build(g, m, params, 11);
    CHECK(again.U == w.U);
    CHECK(again.W == w.W);

    Step1Witness bad = w;
    bad.e_U += 1;
    CHECK_FALSE(step1_invariants_hold(g, bad));

    CHECK_THROWS_AS(step1_build(g, e + 1, params, 1), ParameterError);
    CHECK_THROWS_AS(step1_build(g, 0, params, 1), ParameterError);
    CHECK_THROWS_AS(step1_build(g, e * 9 / 10, params, 1), ParameterError);
    CHECK_THROWS_AS(step1_build(g, VertexSet(5), m, params, 1), DimensionError);

    const Graph k = complete_graph(60);
    ConstructionParams few;
    few.retry_budget = 4;
    try {
        step1_build(k, static_cast<std::int64_t>(k.edge_count()) * 3 / 10, few, 1);
        FAIL("complete graph produced a witness");
    } catch (const Step1Error& err) {
        const auto& t = err.tallies;
        CHECK(t.e1 + t.e2 + t.e3 + t.small_w == 4);
    }
}

TEST_CASE("mu on a crafted plan") {
    // v = 0 has 10 neighbours in S = {1..40} and 20 in T = {41..80}
    GraphBuilder b(81);
    for (Vertex u = 1; u <= 10; ++u) b.add_edge(0, u);
    for (Vertex u = 41; u <= 60; ++u) b.add_edge(0, u);
    b.add_edge(80, 41);
    std::vector<std::int64_t> w(81);
    for (std::size_t j = 0; j < 81; ++j) w[j] = static_cast<std::int64_t>(j) + 100;
    w[0] = 5;
    const WeightedGraph wg(std::move(b).build(), WeightFn(w));
    Step2Plan plan;
    plan.S = VertexSet(81);
    plan.T = VertexSet(81);
    for (Vertex u = 1; u <= 40; ++u) plan.S.insert(u);
    for (Vertex u = 41; u <= 80; ++u) plan.T.insert(u);
    plan.Z = VertexSet(81, {0, 80});
    plan.m_split = 40;

    CHECK(mu_expected(plan, wg, 0, 8, 4) == 8);
    CHECK(mu_expected(plan, wg, 0, 0, 0) == 5);
    CHECK(mu_expected(plan, wg, 80, 8, 4) == Rational(180) + Rational(4, 40));
    for (std::int64_t k = 0; k <= 40; k += 5)
        for (std::int64_t i = 0; i <= k; i += 3)
            CHECK(mu_difference_delta_form(plan, wg, 0, 80, k, i) ==
                  mu_expected(plan, wg, 0, k, i) - mu_expected(plan, wg, 80, k, i));
    CHECK(compatible(plan, wg, 0, 80, 8, 4, 172.0));
    CHECK_FALSE(compatible(plan, wg, 0, 80, 8, 4, 172.2));
    CHECK(compatible(plan, wg, 0, 80, 8, 4));  // 81^0.7 is about 21.7
    CHECK_THROWS_AS(mu_expected(plan, wg, 1, 8, 4), ParameterError);
    CHECK_THROWS_AS(mu_expected(plan, wg, 0, 4, 8), ParameterError);
    CHECK_THROWS_AS(mu_expected(plan, wg, 0, 41, 1), ParameterError);

    CHECK(exact_rational(0.5) == Rational(1, 2));
    CHECK(exact_rational(-3.25) == Rational(-13, 4));
    CHECK(exact_rational(0.1) != Rational(1, 10));
}

TEST_CASE("step 2 on a weighted random graph") {
    const WeightedGraph wg = permuted_weights(512, 0.5, 8);
    const auto a = oracle::matrix_of(wg.graph);
    const std::vector<std::int64_t> w(wg.omega.values().begin(), wg.omega.values().end());
    ConstructionParams params;
    const auto res = step2_build(wg, params, 21);
    const auto& plan = res.plan;

    CHECK((plan.X | plan.Y) == VertexSet::full(512));
    CHECK_FALSE(plan.X.intersects(plan.Y));
    CHECK(static_cast<std::int64_t>(plan.S.count()) == plan.m_split);
    CHECK(static_cast<std::int64_t>(plan.T.count()) == plan.m_split);
    CHECK((plan.S - plan.X).empty());
    CHECK((plan.T - plan.X).empty());
    std::int64_t s_max = -1, t_min = 1 << 30;
    for (auto v : plan.S.members()) s_max = std::max(s_max, w[v]);
    for (auto v : plan.T.members()) t_min = std::min(t_min, w[v]);
    CHECK(t_min - s_max == plan.weight_gap);
    for (auto v : plan.X_prime.members()) {
        CHECK(w[v] > s_max);
        CHECK(w[v] < t_min);
    }
    CHECK((plan.Z - plan.Y_single).empty());
    std::int64_t z_lo = 1 << 30, z_hi = -1;
    for (auto v : plan.Z.members()) z_lo = std::min(z_lo, w[v]), z_hi = std::max(z_hi, w[v]);
    CHECK(z_hi - z_lo <= plan.z_weight_window);
    CHECK(plan.weight_gap - 2 * plan.k_hi - plan.z_weight_window > 0);

    // types, recomputed
    const double thr = plan.c_used * 512 / 8, top = static_cast<double>(plan.m_split) - thr;
    VertexType single = VertexType::problematic;
    for (auto y : plan.Y.members()) {
        const double ds = static_cast<double>(degree_in(wg.graph, y, plan.S));
        const double dt = static_cast<double>(degree_in(wg.graph, y, plan.T));
        const int hits = (ds < thr) + (ds > top) + (dt < thr) + (dt > top);
        if (hits >= 2) CHECK(plan.types[y] == VertexType::problematic);
        else CHECK(plan.types[y] != VertexType::problematic);
        if (plan.Y_single.contains(y)) single = plan.types[y];
    }
    for (auto y : plan.Y_single.members()) CHECK(plan.types[y] == single);

    REQUIRE_FALSE(res.certificates.empty());
    std::set<std::pair<std::int64_t, std::int64_t>> pairs;
    for (const auto& c : res.certificates) {
        CHECK(static_cast<std::int64_t>(c.vertices.count()) == c.order);
        CHECK(recount(a, w, c.vertices) == c.size);
        CHECK((c.vertices & plan.Z).count() == 1);
        pairs.emplace(c.order, c.size);
    }
    CHECK(pairs.size() == res.psi.size());
    CHECK(std::equal(pairs.begin(), pairs.end(), res.psi.begin()));
    std::size_t sum = 0;
    for (const auto& cell : res.cells) sum += cell.distinct;
    CHECK(sum == res.total_distinct);
    CHECK(res.psi.size() == res.total_distinct);

    const auto again = step2_build(wg, params, 21);
    CHECK(again.psi == res.psi);

    ConstructionParams empty_rect = params;
    empty_rect.i_lo = 0.9;
    empty_rect.i_hi = 0.95;
    const auto none = step2_build(wg, empty_rect, 21);
    CHECK(none.psi.empty());
    CHECK(none.total_distinct == 0);

    CHECK_THROWS_AS(step2_build(WeightedGraph(gnp(64, 0.5, 1), WeightFn::zeros(64)), params, 1), ParameterError);
    CHECK_THROWS_AS(step2_build(permuted_weights(3, 0.5, 1), params, 1), ConstructionError);
}

TEST_CASE("step 3 stitching") {
    const Graph g = gnp(512, 0.5, 2);
    const auto a = oracle::matrix_of(g);
    ConstructionParams params;
    const auto res = step3_stitch(g, params, 2);
    CHECK(res.family.scales.size() >= 2);
    REQUIRE(res.certificates.size() >= 5);
    std::set<std::int64_t> sizes;
    for (const auto& c : res.certificates) {
        CHECK(static_cast<std::int64_t>(c.vertices.count()) == c.order);
        CHECK(recount(a, {}, c.vertices) == c.size);
        sizes.insert(c.size);
    }
    CHECK(sizes.size() == res.certificates.size());
    CHECK(std::is_sorted(res.certificates.begin(), res.certificates.end(),
                         [](const auto& x, const auto& y) { return x.size < y.size; }));
    CHECK(facts_hold(res.certificates));
    CHECK(res.raw_certificates ==
          res.certificates.size() + res.discarded_fact_a + res.discarded_fact_b + res.duplicates);

    // scale windows are disjoint and ordered
    for (std::size_t j = 1; j < res.family.scales.size(); ++j)
        CHECK(res.family.scales[j].target - res.family.scales[j - 1].target == res.family.spacing);
    for (const auto& s : res.family.scales)
        if (s.ok) {
            CHECK(static_cast<std::int64_t>(induced_edge_count(g, s.U)) == s.e_U);
            CHECK(std::llabs(s.e_U - s.target) <= res.family.slack);
            CHECK_FALSE(s.U.intersects(s.W));
        }

    const auto rep = certify(g, res.certificates);
    CHECK(rep.certificates == res.certificates.size());
    CHECK(rep.distinct_sizes == sizes.size());

    const auto par = step3_stitch(g, params, 2, 4);
    REQUIRE(par.certificates.size() == res.certificates.size());
    for (std::size_t j = 0; j < par.certificates.size(); ++j) {
        CHECK(par.certificates[j].vertices == res.certificates[j].vertices);
        CHECK(par.certificates[j].size == res.certificates[j].size);
        CHECK(par.certificates[j].scale_index == res.certificates[j].scale_index);
    }

    ConstructionParams one = params;
    one.max_scales = 1;
    CHECK_THROWS_AS(step3_stitch(g, one, 2), ConstructionError);
    CHECK_THROWS_AS(step3_stitch(complete_graph(3), params, 2), ConstructionError);
}

TEST_CASE("facts checker") {
    auto cert = [](std::int64_t scale, std::int64_t order, std::int64_t size) {
        return SizeCertificate{VertexSet(1), order, size, scale};
    };
    CHECK(facts_hold({}));
    CHECK(facts_hold({cert(1, 3, 10), cert(1, 3, 12), cert(1, 4, 13), cert(2, 3, 20)}));
    CHECK_FALSE(facts_hold({cert(1, 3, 10), cert(1, 4, 10)}));
    CHECK_FALSE(facts_hold({cert(1, 3, 10), cert(1, 4, 9)}));
    CHECK_FALSE(facts_hold({cert(1, 3, 10), cert(2, 3, 10)}));
    CHECK_FALSE(facts_hold({cert(1, 3, 12), cert(2, 5, 11)}));
}

TEST_CASE("certify") {
    const Graph g = gnp(30, 0.5, 1);
    CHECK(certify(g, {}).distinct_sizes == 0);
    const auto one = certify(g, {SizeCertificate{VertexSet(30), 0, 0, 0}});
    CHECK(one.certificates == 1);
    CHECK(one.distinct_sizes == 1);

    const VertexSet s(30, {0, 1, 2, 3, 4});
    const auto e = static_cast<std::int64_t>(induced_edge_count(g, s));
    CHECK(certify(g, {SizeCertificate{s, 5, e, 1}, SizeCertificate{s, 5, e, 2}}).distinct_sizes == 1);
    CHECK_THROWS_AS(certify(g, {SizeCertificate{s, 5, e + 1, 1}}), IntegrityError);
    CHECK_THROWS_AS(certify(g, {SizeCertificate{s, 4, e, 1}}), IntegrityError);
    CHECK_THROWS_AS(certify(g, {SizeCertificate{VertexSet(31), 0, 0, 1}}), IntegrityError);
}
