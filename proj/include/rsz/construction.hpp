#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rsz/errors.hpp"
#include "rsz/graph.hpp"
#include "rsz/prob.hpp"

namespace rsz {

/// Tunable constants of the three-step pipeline. Defaults are sized so that
/// every stage is non-degenerate for gnp graphs with a few hundred to a few
/// thousand vertices; every output is rechecked exactly regardless.
struct ConstructionParams {
    double c = 0.3;             // diversity constant; step 2 probes downward on split failure
    double c_min = 0.05;        // lowest c tried by the probe
    double c_step = 0.75;       // multiplicative probe step
    double delta = 0.2;
    double extract_min_frac = 0.5;

    double m_lo = 0.1;          // feasible targets are [m_lo e, m_hi e]
    double m_hi = 0.75;
    std::size_t w1_size = 0;    // 0: ceil(sqrt n)
    std::size_t min_w = 2;      // smallest acceptable |W| after the Turan step
    std::size_t retry_budget = 64;
    std::size_t split_budget = 64;

    double scale_unit = 1.5;    // u = scale_unit * n
    double slack_units = 2;     // |e(G[U_i]) - m_i| <= slack_units * u
    double spacing_units = 5;   // m_{i+1} - m_i = spacing_units * u
    std::size_t max_scales = 0; // 0: as many as fit
    std::size_t scale_retries = 8;
    double w_keep = 0.75;       // |W_i| = min(|W'_i|, ceil(w_keep sqrt n))

    double z_window_frac = 0.25;
    double k_lo = 0.1, k_hi = 0.2;         // k in [ceil(k_lo m'), ceil(k_hi m')]
    double i_lo = 0.04, i_hi = 1.0 / 12;   // i in [ceil(i_lo m'), ceil(i_hi m')]

    void validate() const;
};

/// key=value lines; '#' starts a comment. Unknown keys are a ParseError.
ConstructionParams parse_params(std::string_view text, ConstructionParams base = {});
std::string params_to_text(const ConstructionParams& p);

// ---------------------------------------------------------------- step 1

struct Step1Witness {
    VertexSet U;
    VertexSet W;
    std::int64_t l = 0;
    std::int64_t m = 0;
    std::int64_t e_U = 0;
    std::int64_t slack = 0;
    std::int64_t degree_window = 0;

    // sampler internals, kept for reporting
    VertexSet W1;
    std::int64_t l0 = 0;
    std::int64_t w1_degree_width = 0;
    std::int64_t s = 0;
    double p = 0;
    std::size_t attempts = 0;
};

struct Step1Tallies {
    std::size_t e1 = 0, e2 = 0, e3 = 0, small_w = 0;
};

class Step1Error : public ConstructionError {
public:
    Step1Error(const std::string& what, Step1Tallies t) : ConstructionError(what), tallies(t) {}
    Step1Tallies tallies;
};

/// Runs the (U, W) sampler inside `domain`. slack <= 0 selects the default
/// slack_units * scale_unit * |domain|.
Step1Witness step1_build(const Graph& g, const VertexSet& domain, std::int64_t m, const ConstructionParams& params,
                         std::uint64_t seed, std::int64_t slack = 0);
Step1Witness step1_build(const Graph& g, std::int64_t m, const ConstructionParams& params, std::uint64_t seed,
                         std::int64_t slack = 0);

/// Exact recheck of the four witness conditions.
bool step1_invariants_hold(const Graph& g, const Step1Witness& w);

/// Graph on the members of pool (in id order); xy is an edge iff x and y
/// have the same number of neighbours in anchor.
Graph degree_graph(const Graph& g, const VertexSet& pool, const VertexSet& anchor);

/// Greedy minimum-degree independent set; at least ceil(n^2 / (2e + n)).
VertexSet turan_independent_set(const Graph& g);

// ---------------------------------------------------------------- step 2

enum class VertexType : std::int8_t { in_x = -1, t0 = 0, t1 = 1, t2 = 2, t3 = 3, t4 = 4, problematic = 5 };

struct IndexPair {
    std::int64_t k = 0;
    std::int64_t i = 0;
    friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

struct Step2Plan {
    VertexSet X, Y;
    VertexSet S, T, X_prime;
    VertexSet Y_single;  // largest single-type class of non-problematic vertices
    VertexSet Z;
    std::int64_t m_split = 0;
    double c_used = 0;
    std::size_t split_attempts = 0;
    std::int64_t weight_gap = 0;
    std::int64_t z_weight_window = 0;
    std::vector<VertexType> types;
    std::int64_t k_lo = 0, k_hi = 0, i_lo = 0, i_hi = 0;  // realized rectangle (k_hi after clamping)
    std::int64_t k_separation_cap = 0;
};

struct SizeCertificate {
    VertexSet vertices;
    std::int64_t order = 0;
    std::int64_t size = 0;
    std::int64_t scale_index = 0;
};

struct CellRecord {
    IndexPair index;
    std::size_t distinct = 0;  // N(k, i)
};

struct Step2Result {
    Step2Plan plan;
    std::vector<SizeCertificate> certificates;          // vertices in wg's ids, size is the omega-size
    std::vector<std::pair<std::int64_t, std::int64_t>> psi;  // sorted (order, omega-size)
    std::vector<CellRecord> cells;
    std::size_t total_distinct = 0;                      // sum of N(k, i)
};

Step2Result step2_build(const WeightedGraph& wg, const ConstructionParams& params, std::uint64_t seed);

/// omega(v) + ((k - i) / m') Deg_S(v) + (i / m') Deg_T(v), exactly.
Rational mu_expected(const Step2Plan& plan, const WeightedGraph& wg, Vertex v, std::int64_t k, std::int64_t i);

/// mu(u) - mu(v) as D1 + (k/m') D2 + (i/m') D3 with D1 the weight gap,
/// D2 the S-degree gap and D3 the T-degree gap minus the S-degree gap.
Rational mu_difference_delta_form(const Step2Plan& plan, const WeightedGraph& wg, Vertex u, Vertex v, std::int64_t k,
                                  std::int64_t i);

/// |mu(u) - mu(v)| >= threshold. A negative threshold means |V|^(1/2 + delta).
bool compatible(const Step2Plan& plan, const WeightedGraph& wg, Vertex u, Vertex v, std::int64_t k, std::int64_t i,
                double threshold = -1, double delta = 0.2);

/// Exact value of a finite double.
Rational exact_rational(double x);

// ---------------------------------------------------------------- step 3

struct ScaleRecord {
    std::int64_t index = 0;  // 1-based
    std::int64_t target = 0;
    bool ok = false;
    std::string failure;     // last error when !ok
    std::size_t attempts = 0;
    VertexSet U;
    VertexSet W;             // after truncation, global ids
    std::int64_t e_U = 0;
    std::int64_t l = 0;
    std::size_t w_prime_size = 0;
    std::vector<std::int64_t> omega;  // omega_i over W in id order
    std::size_t psi_size = 0;
    std::size_t sum_distinct = 0;
    double c_used = 0;
    std::size_t emitted = 0;           // certificates surviving the fact checks
};

struct ScaleFamily {
    std::vector<ScaleRecord> scales;
    std::size_t s = 0;
    std::int64_t scale_unit = 0;
    std::int64_t slack = 0;
    std::int64_t spacing = 0;
};

struct Step3Result {
    ScaleFamily family;
    std::vector<SizeCertificate> certificates;  // deduplicated, sorted by size
    VertexSet domain;
    bool domain_extracted = false;
    std::size_t raw_certificates = 0;
    std::size_t discarded_fact_a = 0;
    std::size_t discarded_fact_b = 0;
    std::size_t duplicates = 0;
};

Step3Result step3_stitch(const Graph& g, const ConstructionParams& params, std::uint64_t seed, unsigned threads = 1);

/// Exact recheck of facts (A) and (B) on an emitted family.
bool facts_hold(const std::vector<SizeCertificate>& certs);

struct CertifyReport {
    std::size_t certificates = 0;
    std::size_t distinct_sizes = 0;  // certified lower bound on |Phi(G)|
};

/// Recounts every certificate; a mismatch is an IntegrityError naming it.
CertifyReport certify(const Graph& g, const std::vector<SizeCertificate>& certs);

} // namespace rsz
