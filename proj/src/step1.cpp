#include <algorithm>
#include <cmath>
#include <numeric>

#include "rsz/construction.hpp"
#include "rsz/rng.hpp"

namespace rsz {

Graph degree_graph(const Graph& g, const VertexSet& pool, const VertexSet& anchor) {
    if (pool.universe() != g.order() || anchor.universe() != g.order())
        throw DimensionError("degree_graph: universe mismatch");
    if (pool.intersects(anchor)) throw ParameterError("degree_graph: pool and anchor overlap");
    const auto members = pool.members();
    std::vector<std::pair<std::uint64_t, Vertex>> keyed;
    keyed.reserve(members.size());
    for (Vertex local = 0; local < members.size(); ++local)
        keyed.emplace_back(degree_in(g, members[local], anchor), local);
    std::sort(keyed.begin(), keyed.end());
    GraphBuilder b(members.size());
    for (std::size_t lo = 0; lo < keyed.size();) {
        std::size_t hi = lo;
        while (hi < keyed.size() && keyed[hi].first == keyed[lo].first) ++hi;
        for (std::size_t x = lo; x < hi; ++x)
            for (std::size_t y = x + 1; y < hi; ++y) b.add_edge(keyed[x].second, keyed[y].second);
        lo = hi;
    }
    return std::move(b).build();
}

VertexSet turan_independent_set(const Graph& g) {
    const std::size_t n = g.order();
    if (n == 0) throw ParameterError("turan_independent_set: empty graph");
    VertexSet alive = VertexSet::full(n), chosen(n);
    std::vector<std::size_t> deg(n);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
    while (!alive.empty()) {
        Vertex best = 0;
        bool found = false;
        for (Vertex v : alive.members())
            if (!found || deg[v] < deg[best]) best = v, found = true;
        chosen.insert(best);
        // drop best and its live neighbours, updating degrees of the survivors
        std::vector<Vertex> gone{best};
        for (Vertex u : alive.members())
            if (u != best && g.adjacent(best, u)) gone.push_back(u);
        for (Vertex u : gone) alive.erase(u);
        for (Vertex u : gone)
            for (Vertex w : alive.members())
                if (g.adjacent(u, w)) --deg[w];
    }
    if (induced_edge_count(g, chosen) != 0) throw IntegrityError("turan_independent_set: result is not independent");
    const std::uint64_t num = static_cast<std::uint64_t>(n) * n, den = 2 * g.edge_count() + n;
    if (chosen.count() * den < num) throw IntegrityError("turan_independent_set: below the Turan bound");
    return chosen;
}

namespace {

struct DegreeBucket {
    VertexSet w1;
    std::int64_t l0 = 0;
    std::int64_t width = 0;
};

// Narrowest run of `size` consecutive vertices in degree order among the
// vertices of degree at least half the mean.
DegreeBucket pick_w1(const Graph& g, const VertexSet& domain, std::size_t size) {
    const auto members = domain.members();
    std::vector<std::pair<std::int64_t, Vertex>> pool;
    double mean = 0;
    std::vector<std::int64_t> deg(g.order(), 0);
    for (Vertex v : members) {
        deg[v] = static_cast<std::int64_t>(degree_in(g, v, domain));
        mean += static_cast<double>(deg[v]);
    }
    mean /= static_cast<double>(members.size());
    for (Vertex v : members)
        if (static_cast<double>(deg[v]) >= mean / 2) pool.emplace_back(deg[v], v);
    if (pool.size() < size)
        throw ConstructionError("step1: stage W1 has " + std::to_string(pool.size()) + " high-degree vertices, need " +
                                std::to_string(size));
    std::sort(pool.begin(), pool.end());
    std::size_t best = 0;
    for (std::size_t j = 1; j + size <= pool.size(); ++j)
        if (pool[j + size - 1].first - pool[j].first < pool[best + size - 1].first - pool[best].first) best = j;
    DegreeBucket out{VertexSet(g.order()), pool[best].first, pool[best + size - 1].first - pool[best].first};
    for (std::size_t j = best; j < best + size; ++j) out.w1.insert(pool[j].second);
    return out;
}

} // namespace

bool step1_invariants_hold(const Graph& g, const Step1Witness& w) {
    if (w.U.universe() != g.order() || w.W.universe() != g.order()) return false;
    if (w.U.intersects(w.W)) return false;
    if (static_cast<std::int64_t>(induced_edge_count(g, w.U)) != w.e_U) return false;
    if (std::llabs(w.e_U - w.m) > w.slack) return false;
    std::vector<std::int64_t> seen;
    for (Vertex x : w.W.members()) {
        const auto d = static_cast<std::int64_t>(degree_in(g, x, w.U));
        if (d < w.l || d > w.l + w.degree_window) return false;
        seen.push_back(d);
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

Step1Witness step1_build(const Graph& g, const VertexSet& domain, std::int64_t m, const ConstructionParams& params,
                         std::uint64_t seed, std::int64_t slack) {
    params.validate();
    if (domain.universe() != g.order()) throw DimensionError("step1: domain universe mismatch");
    const std::size_t n = domain.count();
    if (n < 4) throw ParameterError("step1: domain needs at least 4 vertices");
    const auto e_dom = static_cast<std::int64_t>(induced_edge_count(g, domain));
    if (m < 1 || m > e_dom) throw ParameterError("step1: target m = " + std::to_string(m) + " outside [1, e(G)]");
    if (static_cast<double>(m) < params.m_lo * static_cast<double>(e_dom) ||
        static_cast<double>(m) > params.m_hi * static_cast<double>(e_dom))
        throw ParameterError("step1: target m = " + std::to_string(m) + " outside the feasible window");

    const double nd = static_cast<double>(n);
    const std::size_t w1_size =
        params.w1_size ? params.w1_size : static_cast<std::size_t>(std::ceil(std::sqrt(nd)));
    const DegreeBucket bucket = pick_w1(g, domain, w1_size);
    const VertexSet rest = domain - bucket.w1;
    const auto s = static_cast<std::int64_t>(induced_edge_count(g, rest));
    if (m > s) throw ParameterError("step1: target m exceeds e(G[V' \\ W1]) = " + std::to_string(s));

    Step1Witness w;
    w.m = m;
    w.W1 = bucket.w1;
    w.l0 = bucket.l0;
    w.w1_degree_width = bucket.width;
    w.s = s;
    w.p = std::sqrt(static_cast<double>(m) / static_cast<double>(s));
    w.slack = slack > 0 ? slack : static_cast<std::int64_t>(std::ceil(params.slack_units * params.scale_unit * nd));

    const double t = std::pow(nd, 0.5 + params.delta) / 4;
    const double e3_cap = 8 * std::pow(nd, params.delta) * static_cast<double>(w1_size);
    const std::int64_t l = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(w.p * w.l0 - 2 * t)));
    const std::int64_t window = static_cast<std::int64_t>(std::ceil(4 * t));
    const auto rest_members = rest.members();
    const auto w1_members = bucket.w1.members();

    Step1Tallies tallies;
    for (std::size_t attempt = 0; attempt < params.retry_budget; ++attempt) {
        Rng rng = Rng::stream(seed, "step1", attempt);
        VertexSet U(g.order());
        for (Vertex v : rest_members)
            if (rng.bernoulli(w.p)) U.insert(v);

        const auto e_U = static_cast<std::int64_t>(induced_edge_count(g, U));
        const bool e1 = std::llabs(e_U - m) <= w.slack;
        bool e2 = true;
        for (Vertex x : w1_members) {
            const auto d = static_cast<std::int64_t>(degree_in(g, x, U));
            if (std::fabs(static_cast<double>(d) - w.p * static_cast<double>(w.l0)) > 2 * t || d < l ||
                d > l + window)
                e2 = false;
        }
        const Graph D = degree_graph(g, bucket.w1, U);
        const bool e3 = static_cast<double>(D.edge_count()) <= e3_cap;
        tallies.e1 += !e1;
        tallies.e2 += !e2;
        tallies.e3 += !e3;
        if (!(e1 && e2 && e3)) continue;

        VertexSet W(g.order());
        for (Vertex local : turan_independent_set(D).members()) W.insert(w1_members[local]);
        if (W.count() < params.min_w) {
            ++tallies.small_w;
            continue;
        }
        w.U = std::move(U);
        w.W = std::move(W);
        w.l = l;
        w.e_U = e_U;
        w.degree_window = window;
        w.attempts = attempt + 1;
        if (!step1_invariants_hold(g, w)) throw IntegrityError("step1: witness failed its exact recheck");
        return w;
    }
    throw Step1Error("step1: retries exhausted (E1 failures " + std::to_string(tallies.e1) + ", E2 failures " +
                         std::to_string(tallies.e2) + ", E3 failures " + std::to_string(tallies.e3) +
                         ", |W| too small " + std::to_string(tallies.small_w) + ")",
                     tallies);
}

Step1Witness step1_build(const Graph& g, std::int64_t m, const ConstructionParams& params, std::uint64_t seed,
                         std::int64_t slack) {
    return step1_build(g, VertexSet::full(g.order()), m, params, seed, slack);
}

} // namespace rsz
