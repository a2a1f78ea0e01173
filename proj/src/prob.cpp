#include "rsz/prob.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "rsz/errors.hpp"
#include "rsz/rng.hpp"
#include "rsz/text.hpp"

namespace rsz {

namespace mp = boost::multiprecision;

namespace {

std::vector<BigInt> binomial_row(std::uint64_t n) {
    std::vector<BigInt> row(n + 1);
    row[0] = 1;
    for (std::uint64_t k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
    return row;
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

} // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// ------------------------------------------------------------- tail bounds

TailBoundQuery TailBoundQuery::hoeffding(std::uint64_t summands, double t) {
    TailBoundQuery q;
    q.family = TailFamily::hoeffding;
    q.summands = summands;
    q.t = t;
    return q;
}

TailBoundQuery TailBoundQuery::hypergeometric(std::uint64_t population, std::uint64_t successes,
                                              std::uint64_t draws, double t) {
    TailBoundQuery q;
    q.family = TailFamily::hypergeometric;
    q.population = population;
    q.successes = successes;
    q.draws = draws;
    q.t = t;
    return q;
}

TailBoundQuery TailBoundQuery::markov(double mean, double t) {
    TailBoundQuery q;
    q.family = TailFamily::markov;
    q.mean = mean;
    q.t = t;
    return q;
}

TailBoundQuery TailBoundQuery::chebyshev(double variance, double t) {
    TailBoundQuery q;
    q.family = TailFamily::chebyshev;
    q.variance = variance;
    q.t = t;
    return q;
}

double tail_bound(const TailBoundQuery& q) {
    if (!(q.t >= 0) || !std::isfinite(q.t)) throw ParameterError("tail_bound: t must be a finite value >= 0");
    switch (q.family) {
    case TailFamily::hoeffding:
        if (q.summands == 0) throw ParameterError("tail_bound: hoeffding needs at least one summand");
        return clamp01(2.0 * std::exp(-2.0 * q.t * q.t / static_cast<double>(q.summands)));
    case TailFamily::hypergeometric:
        if (q.successes > q.population || q.draws > q.population)
            throw ParameterError("tail_bound: hypergeometric needs M <= N and D <= N");
        if (q.draws == 0) return 1.0;
        return clamp01(2.0 * std::exp(-2.0 * q.t * q.t * static_cast<double>(q.draws)));
    case TailFamily::markov:
        if (!(q.mean >= 0)) throw ParameterError("tail_bound: markov needs a non-negative mean");
        if (q.t == 0) return 1.0;
        return clamp01(q.mean / q.t);
    case TailFamily::chebyshev:
        if (!(q.variance >= 0)) throw ParameterError("tail_bound: chebyshev needs a non-negative variance");
        if (q.t == 0) return 1.0;
        return clamp01(q.variance / (q.t * q.t));
    }
    throw ParameterError("tail_bound: unknown family");
}

// ------------------------------------------------------ exact point masses

Rational PointMassDistribution::probability(std::int64_t r) const {
    if (r < min_r || r >= min_r + static_cast<std::int64_t>(numerators.size())) return Rational(0);
    return Rational(numerators[static_cast<std::size_t>(r - min_r)], denominator);
}

namespace {

void validate(const PointMassQuery& q) {
    if (q.a + q.b > q.n) throw ParameterError("point mass query: need a + b <= n");
    if (q.k > q.n) throw ParameterError("point mass query: need k <= n");
}

} // namespace

PointMassDistribution pointmass_exact(const PointMassQuery& q, std::uint64_t cap) {
    validate(q);
    if (q.n > cap) throw CapError("pointmass_exact: n = " + std::to_string(q.n) + " exceeds cap " + std::to_string(cap));
    const std::uint64_t rest = q.n - q.a - q.b;
    const auto ca = binomial_row(q.a), cb = binomial_row(q.b), cr = binomial_row(rest);

    PointMassDistribution d;
    d.min_r = -static_cast<std::int64_t>(q.a);
    d.numerators.assign(q.a + q.b + 1, BigInt(0));
    d.denominator = binomial(q.n, q.k);
    for (std::uint64_t ta = 0; ta <= std::min(q.a, q.k); ++ta) {
        for (std::uint64_t tb = 0; tb <= std::min(q.b, q.k - ta); ++tb) {
            const std::uint64_t other = q.k - ta - tb;
            if (other > rest) continue;
            d.numerators[tb - ta + q.a] += ca[ta] * cb[tb] * cr[other];
        }
    }
    BigInt total = 0, best = -1;
    for (std::size_t i = 0; i < d.numerators.size(); ++i) {
        total += d.numerators[i];
        if (d.numerators[i] > best) {
            best = d.numerators[i];
            d.argmax = d.min_r + static_cast<std::int64_t>(i);
        }
    }
    d.sums_to_one = total == d.denominator;
    d.max_prob = Rational(best, d.denominator);
    return d;
}

// -------------------------------------------------------- Stirling estimate

namespace {

void check_stirling_domain(std::uint64_t a, std::uint64_t b, std::uint64_t s, std::uint64_t x, std::uint64_t y) {
    if (a < 1 || b < 1) throw ParameterError("stirling bound: a and b must be >= 1");
    if (s != a + b) throw ParameterError("stirling bound: s must equal a + b");
    if (!(x > 0 && x < s)) throw ParameterError("stirling bound: need 0 < x < s");
    if (y > x) throw ParameterError("stirling bound: need 0 <= y <= x");
}

using Fixed = mp::uint512_t;

const std::vector<std::vector<Fixed>>& pascal_fixed(std::size_t rows) {
    static std::vector<std::vector<Fixed>> table;
    if (table.size() < rows + 1) {
        table.assign(rows + 1, {});
        for (std::size_t n = 0; n <= rows; ++n) {
            table[n].assign(n + 1, Fixed(1));
            for (std::size_t k = 1; k < n; ++k) table[n][k] = table[n - 1][k - 1] + table[n - 1][k];
        }
    }
    return table;
}

// Squared comparison on fixed-width integers; valid while s <= 240.
bool holds_fixed(const std::vector<std::vector<Fixed>>& pas, std::uint64_t a, std::uint64_t b, std::uint64_t x,
                 std::uint64_t y) {
    const std::uint64_t s = a + b;
    if (y > a || x - y > b) return true;  // LHS = 0
    const Fixed num = pas[a][y] * pas[b][x - y];
    const Fixed& den = pas[s][x];
    const Fixed lhs = num * num * Fixed(x * (s - x)) * Fixed(a * b);
    const Fixed rhs = den * den * Fixed(100) * Fixed(s) * Fixed(s) * Fixed(s);
    return lhs <= rhs;
}

} // namespace

double stirling_pointmass_bound(std::uint64_t a, std::uint64_t b, std::uint64_t s, std::uint64_t x, std::uint64_t y) {
    check_stirling_domain(a, b, s, x, y);
    const double sd = static_cast<double>(s);
    return 10.0 * std::sqrt(sd * sd * sd /
                            (static_cast<double>(x) * static_cast<double>(s - x) * static_cast<double>(a) *
                             static_cast<double>(b)));
}

Rational stirling_pointmass_lhs(std::uint64_t a, std::uint64_t b, std::uint64_t s, std::uint64_t x, std::uint64_t y) {
    check_stirling_domain(a, b, s, x, y);
    return Rational(binomial(a, y) * binomial(b, x - y), binomial(s, x));
}

bool stirling_pointmass_holds(std::uint64_t a, std::uint64_t b, std::uint64_t x, std::uint64_t y) {
    const std::uint64_t s = a + b;
    check_stirling_domain(a, b, s, x, y);
    const BigInt num = binomial(a, y) * binomial(b, x - y);
    const BigInt den = binomial(s, x);
    return num * num * BigInt(x * (s - x)) * BigInt(a * b) <= den * den * BigInt(100) * BigInt(s * s * s);
}

StirlingSweep stirling_sweep(std::uint64_t max_ab) {
    if (max_ab > 120) throw CapError("stirling_sweep: max_ab must be <= 120");
    const auto& pas = pascal_fixed(2 * max_ab);
    StirlingSweep sw;
    for (std::uint64_t a = 1; a <= max_ab; ++a)
        for (std::uint64_t b = 1; b <= max_ab; ++b) {
            const std::uint64_t s = a + b;
            for (std::uint64_t x = 1; x < s; ++x)
                for (std::uint64_t y = 0; y <= x; ++y) {
                    ++sw.points;
                    if (!holds_fixed(pas, a, b, x, y)) ++sw.violations;
                    if (y <= a && x - y <= b) {
                        const double lhs = static_cast<double>(pas[a][y] * pas[b][x - y]) /
                                           static_cast<double>(pas[s][x]);
                        sw.max_ratio = std::max(sw.max_ratio, lhs / stirling_pointmass_bound(a, b, s, x, y));
                    }
                }
        }
    return sw;
}

// ----------------------------------------------------------- decomposition

PointMassDecomposition decompose_pointmass(const PointMassQuery& q, double delta, std::int64_t r) {
    validate(q);
    if (!(delta > 0 && delta < 1)) throw ParameterError("decompose_pointmass: delta must lie in (0, 1)");
    const std::uint64_t s = q.a + q.b;
    const std::uint64_t rest = q.n - s;
    const Rational mean = Rational(BigInt(q.k) * s, BigInt(q.n));
    const double radius = delta * static_cast<double>(s) / 10.0;
    const BigInt den = binomial(q.n, q.k);
    const auto ca = binomial_row(q.a), cb = binomial_row(q.b), cr = binomial_row(rest), cs = binomial_row(s);

    auto far = [&](const Rational& centre_gap) {
        return std::fabs(static_cast<double>(centre_gap)) >= radius;
    };

    PointMassDecomposition d;
    BigInt t1 = 0, t2 = 0;
    bool any_t2 = false;
    for (std::int64_t t = 0; t <= static_cast<std::int64_t>(q.a); ++t) {
        const std::int64_t tb = t + r;
        if (tb < 0 || tb > static_cast<std::int64_t>(q.b)) continue;
        const auto x = static_cast<std::uint64_t>(t + tb);
        BigInt term = 0;
        if (x <= q.k && q.k - x <= rest) term = ca[static_cast<std::size_t>(t)] * cb[static_cast<std::size_t>(tb)] * cr[q.k - x];
        if (far(mean - Rational(2 * t + r))) {
            t1 += term;
        } else {
            t2 += term;
            const Rational ratio(ca[static_cast<std::size_t>(t)] * cb[static_cast<std::size_t>(tb)], cs[x]);
            if (!any_t2 || ratio > d.t2_ratio_max) d.t2_ratio_max = ratio;
            any_t2 = true;
        }
    }
    d.t1 = Rational(t1, den);
    d.t2 = Rational(t2, den);
    d.total = d.t1 + d.t2;

    // X = |U n (A u B)| is hypergeometric(n, s, k).
    BigInt tail = 0;
    for (std::uint64_t x = 0; x <= std::min<std::uint64_t>(s, q.k); ++x) {
        if (q.k - x > rest) continue;
        if (far(mean - Rational(x))) tail += cs[x] * cr[q.k - x];
    }
    d.t1_tail = Rational(tail, den);
    d.t1_tail_bound = q.k == 0 ? 1.0
                               : tail_bound(TailBoundQuery::hypergeometric(q.n, s, q.k,
                                                                           radius / static_cast<double>(q.k)));
    return d;
}

// ---------------------------------------------------------- edge variance

namespace {

struct ActiveEdges {
    std::vector<Vertex> active;
    std::vector<std::pair<Vertex, Vertex>> edges;
};

ActiveEdges active_edges(const Graph& g, const VertexSet& exclude) {
    if (exclude.universe() != g.order()) throw DimensionError("edge_variance: exclude set universe mismatch");
    ActiveEdges out;
    for (Vertex v = 0; v < g.order(); ++v)
        if (!exclude.contains(v)) out.active.push_back(v);
    for (auto [u, v] : g.edges())
        if (!exclude.contains(u) && !exclude.contains(v)) out.edges.emplace_back(u, v);
    return out;
}

} // namespace

double edge_variance_naive(const Graph& g, const VertexSet& exclude, double p) {
    const auto ae = active_edges(g, exclude);
    const double p4 = std::pow(p, 4);
    double total = 0;
    for (auto [a0, a1] : ae.edges)
        for (auto [b0, b1] : ae.edges) {
            int shared = (a0 == b0) + (a0 == b1) + (a1 == b0) + (a1 == b1);
            const int union_size = 4 - shared;
            total += std::pow(p, union_size) - p4;
        }
    return total;
}

EdgeVarianceReport edge_variance_check(const Graph& g, const VertexSet& exclude, double p, std::uint64_t trials,
                                       std::uint64_t seed) {
    if (!(p >= 0 && p <= 1)) throw ParameterError("edge_variance_check: p must lie in [0, 1]");
    if (trials < 2) throw ParameterError("edge_variance_check: trials must be >= 2");
    const auto ae = active_edges(g, exclude);
    EdgeVarianceReport r;
    r.vertices = g.order();
    r.edges = ae.edges.size();
    r.p = p;
    r.trials = trials;

    std::vector<std::uint64_t> deg(g.order(), 0);
    for (auto [u, v] : ae.edges) {
        ++deg[u];
        ++deg[v];
    }
    for (auto d : deg) r.path_pairs += d * (d > 0 ? d - 1 : 0);
    const double p2 = p * p, p3 = p2 * p, p4 = p2 * p2;
    r.sigma2_closed = static_cast<double>(r.path_pairs) * (p3 - p4) + static_cast<double>(r.edges) * (p2 - p4);
    const double n = static_cast<double>(g.order());
    r.closed_below_n3 = r.sigma2_closed <= n * n * n;

    if (r.edges <= kNaiveCovarianceEdgeCap) {
        r.sigma2_naive = edge_variance_naive(g, exclude, p);
        r.naive_matches = std::fabs(*r.sigma2_naive - r.sigma2_closed) <= 1e-9 * std::max(1.0, r.sigma2_closed);
    }

    std::vector<double> samples(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(seed, "edge_variance", t);
        VertexSet u(g.order());
        for (Vertex v : ae.active)
            if (rng.bernoulli(p)) u.insert(v);
        samples[t] = static_cast<double>(induced_edge_count(g, u));
    }
    double mean = 0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(trials);
    double m2 = 0, m4 = 0;
    for (double x : samples) {
        const double d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    const double tn = static_cast<double>(trials);
    r.mc_mean = mean;
    r.mc_variance = m2 / (tn - 1);
    const double mu2 = m2 / tn, mu4 = m4 / tn;
    r.mc_stderr = std::sqrt(std::max(0.0, mu4 - mu2 * mu2) / tn);
    r.mc_within_5se = std::fabs(r.mc_variance - r.sigma2_closed) <= 5.0 * r.mc_stderr + 1e-9;
    return r;
}

// ------------------------------------------------------------ scaling probe

double ProbeRow::max_prob_double() const { return static_cast<double>(max_prob); }
double ProbeRow::scaled() const { return max_prob_double() * std::sqrt(static_cast<double>(n)); }

std::vector<ProbeRow> pointmass_scaling_probe(double a_frac, double b_frac, double k_frac,
                                              const std::vector<std::uint64_t>& n_grid, std::uint64_t cap) {
    for (double f : {a_frac, b_frac, k_frac})
        if (!(f > 0 && f < 1)) throw ParameterError("pointmass_scaling_probe: fractions must lie in (0, 1)");
    if (a_frac + b_frac > 1) throw ParameterError("pointmass_scaling_probe: a_frac + b_frac must be <= 1");
    std::vector<ProbeRow> rows;
    for (auto n : n_grid) {
        ProbeRow row;
        row.n = n;
        row.a = static_cast<std::uint64_t>(std::llround(a_frac * static_cast<double>(n)));
        row.b = static_cast<std::uint64_t>(std::llround(b_frac * static_cast<double>(n)));
        row.k = static_cast<std::uint64_t>(std::llround(k_frac * static_cast<double>(n)));
        if (row.a + row.b > n) row.b = n - row.a;
        const auto d = pointmass_exact({n, row.a, row.b, row.k}, cap);
        row.max_prob = d.max_prob;
        row.sums_to_one = d.sums_to_one;
        rows.push_back(std::move(row));
    }
    return rows;
}

bool scaled_within(const ProbeRow& x, const ProbeRow& y, const Rational& factor) {
    // (px^2 nx) <= factor^2 (py^2 ny)
    return x.max_prob * x.max_prob * Rational(x.n) <= factor * factor * y.max_prob * y.max_prob * Rational(y.n);
}

std::string probe_csv(const std::vector<ProbeRow>& rows) {
    std::ostringstream out;
    out << "n,max_prob,max_prob_times_sqrt_n\n";
    for (const auto& r : rows) out << r.n << ',' << format_double(r.max_prob_double()) << ',' << format_double(r.scaled()) << '\n';
    return out.str();
}

} // namespace rsz
