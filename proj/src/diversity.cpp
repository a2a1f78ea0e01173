#include <algorithm>
#include <cmath>

#include "rsz/analysis.hpp"
#include "rsz/rng.hpp"

namespace rsz {

namespace {

void check_unit_interval(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) throw ParameterError(std::string(name) + " must lie in (0, 1)");
}

} // namespace

std::size_t power_floor(std::size_t n, double delta) {
    if (n == 0) return 0;
    const double raw = std::pow(static_cast<double>(n), delta);
    return static_cast<std::size_t>(std::floor(raw * (1.0 + 1e-12)));
}

DiversityReport diversity_check(const Graph& g, double c, double delta) {
    check_unit_interval(c, "c");
    check_unit_interval(delta, "delta");
    const std::size_t n = g.order();
    DiversityReport r;
    r.c = c;
    r.delta = delta;
    r.threshold = c * static_cast<double>(n);
    r.allowance = power_floor(n, delta);

    const auto all = VertexSet::full(n);
    std::vector<std::size_t> twins(n, 0);
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            if (static_cast<double>(symdiff_degree(g, x, y, all)) < r.threshold) {
                ++twins[x];
                ++twins[y];
            }
    for (Vertex x = 0; x < n; ++x)
        if (twins[x] > r.allowance) r.violating_vertices.push_back({x, twins[x]});
    r.is_diverse = r.violating_vertices.empty();
    return r;
}

VertexSet diversity_extract(const Graph& g, double c, double delta, double min_frac) {
    check_unit_interval(c, "c");
    check_unit_interval(delta, "delta");
    check_unit_interval(min_frac, "min_frac");
    const std::size_t n = g.order();
    const double floor_size = min_frac * static_cast<double>(n);

    // Pairwise symmetric differences restricted to the surviving set,
    // updated incrementally as vertices are removed.
    std::vector<std::uint32_t> sd(n * n, 0);
    const auto all = VertexSet::full(n);
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            sd[x * n + y] = sd[y * n + x] = static_cast<std::uint32_t>(symdiff_degree(g, x, y, all));

    VertexSet alive = all;
    std::vector<Vertex> members = alive.members();
    for (;;) {
        const std::size_t size = members.size();
        if (static_cast<double>(size) < floor_size)
            throw ExtractionError("diversity_extract: no (c, delta)-diverse subgraph on at least min_frac * n "
                                  "vertices found; try a smaller c");

        const double threshold = c * static_cast<double>(size);
        const std::size_t allowance = power_floor(size, delta);
        std::vector<std::size_t> twins(n, 0);
        bool diverse = true;
        for (std::size_t a = 0; a < size; ++a)
            for (std::size_t b = a + 1; b < size; ++b)
                if (sd[members[a] * n + members[b]] < threshold) {
                    ++twins[members[a]];
                    ++twins[members[b]];
                }
        for (Vertex x : members)
            if (twins[x] > allowance) diverse = false;
        if (diverse) {
            // The certified result must pass the independent check.
            const Graph sub = g.induced(alive);
            if (!diversity_check(sub, c, delta).is_diverse)
                throw IntegrityError("diversity_extract: result failed diversity_check");
            return alive;
        }

        // Worst pair: smallest symmetric difference, ties to lower ids.
        Vertex bu = 0, bv = 0;
        std::uint32_t best = UINT32_MAX;
        for (std::size_t a = 0; a < size; ++a)
            for (std::size_t b = a + 1; b < size; ++b)
                if (sd[members[a] * n + members[b]] < best) {
                    best = sd[members[a] * n + members[b]];
                    bu = members[a];
                    bv = members[b];
                }
        // Drop the endpoint with more near-twins; on a tie keep the lower id.
        const Vertex drop = twins[bu] > twins[bv] ? bu : bv;

        alive.erase(drop);
        members = alive.members();
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const Vertex x = members[a], y = members[b];
                if (g.adjacent(drop, x) != g.adjacent(drop, y)) {
                    --sd[x * n + y];
                    --sd[y * n + x];
                }
            }
    }
}

bool split_postcondition_holds(const Graph& g, const VertexSet& X, const VertexSet& Y, double c, double delta) {
    const std::size_t n = g.order();
    if (X.intersects(Y)) return false;
    const std::size_t min_part = std::max<std::size_t>(2, (n + 2) / 3);
    if (X.count() < min_part || Y.count() < min_part) return false;
    const double threshold = c / 3.0 * static_cast<double>(n);
    const std::size_t allowance = power_floor(n, delta);
    const auto ys = Y.members();
    std::vector<std::size_t> twins(ys.size(), 0);
    for (std::size_t a = 0; a < ys.size(); ++a)
        for (std::size_t b = a + 1; b < ys.size(); ++b)
            if (static_cast<double>(symdiff_degree(g, ys[a], ys[b], X)) < threshold) {
                ++twins[a];
                ++twins[b];
            }
    return std::all_of(twins.begin(), twins.end(), [&](std::size_t t) { return t <= allowance; });
}

DiverseSplit bipartite_diverse_split(const Graph& g, double c, double delta, std::uint64_t seed,
                                     std::size_t budget) {
    check_unit_interval(c, "c");
    check_unit_interval(delta, "delta");
    const std::size_t n = g.order();
    if (n < 4) throw SplitError("bipartite_diverse_split: need at least 4 vertices for two parts of size >= 2");
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        Rng rng = Rng::stream(seed, "bipartite_split", attempt);
        DiverseSplit s{VertexSet(n), VertexSet(n), attempt + 1};
        for (Vertex v = 0; v < n; ++v) (rng.bernoulli(0.5) ? s.X : s.Y).insert(v);
        if (split_postcondition_holds(g, s.X, s.Y, c, delta)) return s;
    }
    throw SplitError("bipartite_diverse_split: no valid split within " + std::to_string(budget) + " draws");
}

UniformDenseResult uniform_dense_check(const Graph& g, double eps, std::size_t sample_budget, std::uint64_t seed) {
    if (!(eps > 0.0 && eps < 0.5)) throw ParameterError("uniform_dense_check: eps must lie in (0, 1/2)");
    const std::size_t n = g.order();
    UniformDenseResult r;
    const std::size_t min_size =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), eps) - 1e-12)));
    if (n < min_size) {
        r.exhaustive = true;
        return r;
    }
    auto violates = [&](std::uint64_t edges, std::size_t k, double& density) {
        density = static_cast<double>(edges) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
        return density < eps || density > 1.0 - eps;
    };

    if (n <= kUniformDenseExhaustiveCap) {
        r.exhaustive = true;
        std::uint32_t rows[kUniformDenseExhaustiveCap] = {};
        for (Vertex v = 0; v < n; ++v)
            for (Vertex u = 0; u < n; ++u)
                if (g.adjacent(v, u)) rows[v] |= 1u << u;
        std::uint32_t mask = 0;
        std::uint64_t edges = 0;
        for (std::uint64_t step = 1; step < (1ULL << n); ++step) {
            const unsigned v = static_cast<unsigned>(std::countr_zero(step));
            const auto d = static_cast<std::uint64_t>(std::popcount(rows[v] & mask));
            if (mask & (1u << v)) {
                mask &= ~(1u << v);
                edges -= d;
            } else {
                mask |= 1u << v;
                edges += d;
            }
            ++r.subsets_examined;
            const auto k = static_cast<std::size_t>(std::popcount(mask));
            double density = 0;
            if (k >= min_size && violates(edges, k, density)) {
                r.pass = false;
                VertexSet w(n);
                for (Vertex u = 0; u < n; ++u)
                    if (mask & (1u << u)) w.insert(u);
                r.witness = std::move(w);
                r.witness_density = density;
                return r;
            }
        }
        return r;
    }

    // Randomized search: half uniform subsets, half greedy dense/sparse
    // growth from a random seed vertex.
    for (std::size_t trial = 0; trial < sample_budget; ++trial) {
        Rng rng = Rng::stream(seed, "uniform_dense", trial);
        const auto k = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(min_size),
                                                            static_cast<std::int64_t>(n)));
        VertexSet s(n);
        if (trial % 2 == 0) {
            for (auto v : rng.sample_without_replacement(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k)))
                s.insert(v);
        } else {
            const bool dense = (trial / 2) % 2 == 0;
            s.insert(static_cast<Vertex>(rng.below(n)));
            while (s.count() < k) {
                Vertex pick = 0;
                long best = -1;
                for (Vertex v = 0; v < n; ++v) {
                    if (s.contains(v)) continue;
                    const auto d = static_cast<long>(degree_in(g, v, s));
                    const long score = dense ? d : static_cast<long>(n) - d;
                    if (score > best) {
                        best = score;
                        pick = v;
                    }
                }
                s.insert(pick);
            }
        }
        ++r.subsets_examined;
        double density = 0;
        if (violates(induced_edge_count(g, s), k, density)) {
            r.pass = false;
            r.witness = std::move(s);
            r.witness_density = density;
            return r;
        }
    }
    return r;
}

} // namespace rsz
