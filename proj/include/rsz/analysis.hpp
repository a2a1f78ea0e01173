#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rsz/errors.hpp"
#include "rsz/graph.hpp"

namespace rsz {

inline constexpr std::uint64_t kDefaultHomNodeCap = 100'000'000;

struct CliqueSearch {
    std::vector<Vertex> clique;
    std::uint64_t nodes = 0;
};

/// Exact maximum clique by bitset branch-and-bound with greedy colouring
/// bounds over a degeneracy ordering. Throws HomBudgetError when the node
/// count exceeds node_cap.
CliqueSearch max_clique(const Graph& g, std::uint64_t node_cap = kDefaultHomNodeCap);

class HomBudgetError : public ConstructionError {
public:
    HomBudgetError(std::size_t clique_lb, std::size_t indep_lb)
        : ConstructionError("hom: search budget exceeded (best clique " + std::to_string(clique_lb) +
                            ", best independent set " + std::to_string(indep_lb) + ")"),
          clique_lower_bound(clique_lb), indep_lower_bound(indep_lb) {}
    std::size_t clique_lower_bound;
    std::size_t indep_lower_bound;
};

struct HomResult {
    std::size_t clique_size = 0;
    std::size_t indep_size = 0;
    std::size_t hom = 0;
    VertexSet witness_clique;
    VertexSet witness_indep;
    std::uint64_t search_nodes = 0;
};

/// Largest homogeneous set. Witnesses and the log2(n)/2 lower bound are
/// re-verified before returning; a failure there is an IntegrityError.
HomResult hom(const Graph& g, std::uint64_t node_cap = kDefaultHomNodeCap);

/// hom(g) <= C * log2(n).
bool is_c_ramsey(const Graph& g, double C, std::uint64_t node_cap = kDefaultHomNodeCap);
bool is_c_ramsey(const HomResult& h, std::size_t n, double C);

double edge_density(const Graph& g);

struct NearTwinCount {
    Vertex vertex;
    std::size_t near_twins;
    friend bool operator==(const NearTwinCount&, const NearTwinCount&) = default;
};

struct DiversityReport {
    double c = 0;
    double delta = 0;
    /// A pair is near-twin when its neighbourhood symmetric difference is
    /// strictly below this.
    double threshold = 0;
    /// floor(n^delta): near-twins tolerated per vertex.
    std::size_t allowance = 0;
    std::vector<NearTwinCount> violating_vertices;
    bool is_diverse = true;
};

DiversityReport diversity_check(const Graph& g, double c, double delta);

/// floor(n^delta) computed robustly against floating-point round-off at
/// exact integer powers.
std::size_t power_floor(std::size_t n, double delta);

/// Greedy worst-pair removal until G[S] is (c, delta)-diverse. Throws
/// ExtractionError when |S| would fall below min_frac * n.
VertexSet diversity_extract(const Graph& g, double c, double delta, double min_frac);

class ExtractionError : public ConstructionError {
public:
    using ConstructionError::ConstructionError;
};

class SplitError : public ConstructionError {
public:
    using ConstructionError::ConstructionError;
};

struct DiverseSplit {
    VertexSet X;
    VertexSet Y;
    std::size_t attempts = 0;
};

/// Random bipartition X, Y of V(g) such that both parts have at least
/// max(2, ceil(n/3)) vertices and every u in Y has at most floor(n^delta)
/// partners v in Y with |Gamma_X(u) ^ Gamma_X(v)| < (c/3) n. Retries up to
/// budget draws; the returned split has been rechecked exactly.
DiverseSplit bipartite_diverse_split(const Graph& g, double c, double delta, std::uint64_t seed,
                                     std::size_t budget = 64);

/// Exact recheck of the split postcondition.
bool split_postcondition_holds(const Graph& g, const VertexSet& X, const VertexSet& Y, double c, double delta);

struct UniformDenseResult {
    bool pass = true;
    bool exhaustive = false;
    std::optional<VertexSet> witness;
    double witness_density = 0;
    std::size_t subsets_examined = 0;
};

inline constexpr std::size_t kUniformDenseExhaustiveCap = 20;

/// Every induced subgraph on >= max(2, ceil(n^eps)) vertices has density in
/// [eps, 1 - eps]? Exhaustive for n <= 20, randomized search otherwise (a
/// pass then means no violation was found).
UniformDenseResult uniform_dense_check(const Graph& g, double eps, std::size_t sample_budget,
                                       std::uint64_t seed = 0);

} // namespace rsz
