#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rsz/graph.hpp"

namespace rsz {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class TailFamily { hoeffding, hypergeometric, markov, chebyshev };

/// Parameters of one closed-form tail bound. Use the named constructors.
struct TailBoundQuery {
    TailFamily family = TailFamily::hoeffding;
    double t = 0;
    // hoeffding: number of [0,1]-bounded summands
    std::uint64_t summands = 0;
    // hypergeometric: population, successes, draws
    std::uint64_t population = 0, successes = 0, draws = 0;
    // markov / chebyshev
    double mean = 0, variance = 0;

    static TailBoundQuery hoeffding(std::uint64_t summands, double t);
    static TailBoundQuery hypergeometric(std::uint64_t population, std::uint64_t successes, std::uint64_t draws,
                                         double t);
    static TailBoundQuery markov(double mean, double t);
    static TailBoundQuery chebyshev(double variance, double t);
};

/// Closed-form bound, clamped to 1:
///   hoeffding       P(|X - EX| >= t)       <= 2 exp(-2 t^2 / n)
///   hypergeometric  P(|X - (M/N) D| >= tD) <= 2 exp(-2 t^2 D)
///   markov          P(X > t)               <  mu / t
///   chebyshev       P(|X - mu| > t)        <  sigma^2 / t^2
double tail_bound(const TailBoundQuery& q);

/// U is a uniform k-subset of an n-set; A and B are disjoint with |A| = a,
/// |B| = b. Distribution of |U n B| - |U n A|.
struct PointMassQuery {
    std::uint64_t n = 0, a = 0, b = 0, k = 0;
};

inline constexpr std::uint64_t kPointMassExactCap = 4000;

struct PointMassDistribution {
    std::int64_t min_r = 0;              // r of numerators[0]
    std::vector<BigInt> numerators;      // over the common denominator
    BigInt denominator;                  // C(n, k)
    Rational max_prob;
    std::int64_t argmax = 0;             // smallest r attaining max_prob
    bool sums_to_one = false;            // exact check of sum(numerators) == denominator

    Rational probability(std::int64_t r) const;
};

/// Exact distribution by summing products of binomials over
/// (|U n A|, |U n B|). Throws CapError when n > cap.
PointMassDistribution pointmass_exact(const PointMassQuery& q, std::uint64_t cap = kPointMassExactCap);

/// Right-hand side 10 sqrt(s^3 / (x (s - x) a b)) of the Stirling point-mass
/// estimate. Domain: a, b >= 1, s = a + b, 0 < x < s, 0 <= y <= x.
double stirling_pointmass_bound(std::uint64_t a, std::uint64_t b, std::uint64_t s, std::uint64_t x,
                                std::uint64_t y);

/// C(a, y) C(b, x - y) / C(s, x), exactly.
Rational stirling_pointmass_lhs(std::uint64_t a, std::uint64_t b, std::uint64_t s, std::uint64_t x, std::uint64_t y);

/// LHS <= RHS decided in exact integer arithmetic (squared form).
bool stirling_pointmass_holds(std::uint64_t a, std::uint64_t b, std::uint64_t x, std::uint64_t y);

struct StirlingSweep {
    std::uint64_t points = 0;
    std::uint64_t violations = 0;
    double max_ratio = 0;  // max LHS / RHS seen
};

/// Every domain point with 1 <= a, b <= max_ab.
StirlingSweep stirling_sweep(std::uint64_t max_ab);

/// Split of P(X_b - X_a = r) used in the anti-concentration argument: T1 over
/// t with |E[X] - (2t + r)| >= delta s / 10 and T2 over the rest, where
/// X = |U n (A u B)| and s = a + b.
struct PointMassDecomposition {
    Rational total;          // P(X_b - X_a = r)
    Rational t1;
    Rational t2;
    Rational t1_tail;        // exact P(|X - E[X]| >= delta s / 10)
    double t1_tail_bound;    // hypergeometric tail bound for the same event
    Rational t2_ratio_max;   // max over T2 of C(a,t) C(b,t+r) / C(s,2t+r)
};

PointMassDecomposition decompose_pointmass(const PointMassQuery& q, double delta, std::int64_t r);

struct EdgeVarianceReport {
    std::uint64_t vertices = 0;    // order of the host graph
    std::uint64_t edges = 0;       // |F|, edges of G[V \ exclude]
    std::uint64_t path_pairs = 0;  // ordered pairs of distinct edges of F sharing a vertex
    double p = 0;
    double sigma2_closed = 0;
    std::optional<double> sigma2_naive;
    double mc_mean = 0;
    double mc_variance = 0;
    double mc_stderr = 0;
    std::uint64_t trials = 0;
    bool closed_below_n3 = false;
    bool mc_within_5se = false;
    bool naive_matches = true;
};

inline constexpr std::uint64_t kNaiveCovarianceEdgeCap = 200;

/// Variance of e(G[U]) for U a p-random subset of V \ exclude: closed form
/// from path and edge counts, a naive covariance sum when |F| is small, and
/// a Monte Carlo estimate.
EdgeVarianceReport edge_variance_check(const Graph& g, const VertexSet& exclude, double p, std::uint64_t trials,
                                       std::uint64_t seed);

/// O(|F|^2) sum of Cov(I_a, I_b) over ordered edge pairs.
double edge_variance_naive(const Graph& g, const VertexSet& exclude, double p);

struct ProbeRow {
    std::uint64_t n = 0, a = 0, b = 0, k = 0;
    Rational max_prob;
    bool sums_to_one = false;
    double max_prob_double() const;
    double scaled() const;  // max_prob * sqrt(n)
};

/// For each n: a = round(a_frac n), b = round(b_frac n), k = round(k_frac n)
/// and the exact maximum point mass.
std::vector<ProbeRow> pointmass_scaling_probe(double a_frac, double b_frac, double k_frac,
                                              const std::vector<std::uint64_t>& n_grid,
                                              std::uint64_t cap = kPointMassExactCap);

/// x * sqrt(n_x) <= factor * y * sqrt(n_y), decided exactly by squaring.
bool scaled_within(const ProbeRow& x, const ProbeRow& y, const Rational& factor);

std::string probe_csv(const std::vector<ProbeRow>& rows);

BigInt binomial(std::uint64_t n, std::uint64_t k);

} // namespace rsz
