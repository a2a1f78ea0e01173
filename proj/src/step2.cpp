#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "rsz/analysis.hpp"
#include "rsz/construction.hpp"
#include "rsz/rng.hpp"

namespace rsz {

Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw ParameterError("exact_rational: non-finite value");
    int exp = 0;
    const double frac = std::frexp(x, &exp);
    // frac * 2^53 is an integer for every finite double
    BigInt mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
    exp -= 53;
    if (exp >= 0) return Rational(mant << exp);
    return Rational(mant, BigInt(1) << -exp);
}

namespace {

std::int64_t weight(const WeightedGraph& wg, Vertex v) { return wg.omega[v]; }

void require_in_z(const Step2Plan& plan, Vertex v) {
    if (!plan.Z.contains(v)) throw ParameterError("mu: vertex " + std::to_string(v) + " is not in Z");
}

void require_index(const Step2Plan& plan, std::int64_t k, std::int64_t i) {
    if (!(0 <= i && i <= k && k <= plan.m_split))
        throw ParameterError("mu: need 0 <= i <= k <= m' (got k=" + std::to_string(k) + ", i=" + std::to_string(i) + ")");
    if (plan.m_split < 1) throw ParameterError("mu: split size must be positive");
}

} // namespace

Rational mu_expected(const Step2Plan& plan, const WeightedGraph& wg, Vertex v, std::int64_t k, std::int64_t i) {
    require_in_z(plan, v);
    require_index(plan, k, i);
    const auto ds = static_cast<std::int64_t>(degree_in(wg.graph, v, plan.S));
    const auto dt = static_cast<std::int64_t>(degree_in(wg.graph, v, plan.T));
    return Rational(weight(wg, v)) + Rational(BigInt(k - i) * ds, plan.m_split) + Rational(BigInt(i) * dt, plan.m_split);
}

Rational mu_difference_delta_form(const Step2Plan& plan, const WeightedGraph& wg, Vertex u, Vertex v, std::int64_t k,
                                  std::int64_t i) {
    require_in_z(plan, u);
    require_in_z(plan, v);
    require_index(plan, k, i);
    auto ds = [&](Vertex x) { return static_cast<std::int64_t>(degree_in(wg.graph, x, plan.S)); };
    auto dt = [&](Vertex x) { return static_cast<std::int64_t>(degree_in(wg.graph, x, plan.T)); };
    const std::int64_t d1 = weight(wg, u) - weight(wg, v);
    const std::int64_t d2 = ds(u) - ds(v);
    const std::int64_t d3 = (dt(u) - dt(v)) - d2;
    return Rational(d1) + Rational(BigInt(k) * d2, plan.m_split) + Rational(BigInt(i) * d3, plan.m_split);
}

bool compatible(const Step2Plan& plan, const WeightedGraph& wg, Vertex u, Vertex v, std::int64_t k, std::int64_t i,
                double threshold, double delta) {
    if (threshold < 0) threshold = std::pow(static_cast<double>(wg.graph.order()), 0.5 + delta);
    Rational diff = mu_expected(plan, wg, u, k, i) - mu_expected(plan, wg, v, k, i);
    if (diff < 0) diff = -diff;
    return diff >= exact_rational(threshold);
}

namespace {

VertexSet from_list(std::size_t n, const std::vector<Vertex>& vs) {
    VertexSet s(n);
    for (Vertex v : vs) s.insert(v);
    return s;
}

std::int64_t ceil_frac(double frac, std::int64_t m) {
    return static_cast<std::int64_t>(std::ceil(frac * static_cast<double>(m) - 1e-12));
}

} // namespace

Step2Result step2_build(const WeightedGraph& wg, const ConstructionParams& params, std::uint64_t seed) {
    params.validate();
    const Graph& g = wg.graph;
    const std::size_t n = g.order();
    if (!wg.omega.is_injective()) throw ParameterError("step2: weight function is not injective");
    if (n < 4) throw ConstructionError("step2: stage split needs at least 4 vertices, have " + std::to_string(n));

    Step2Result out;
    Step2Plan& plan = out.plan;

    // (a) bipartite split, probing c downward
    {
        double c = params.c;
        std::size_t probe = 0;
        std::string last;
        for (;; ++probe) {
            try {
                auto split = bipartite_diverse_split(g, c, params.delta, Rng::stream(seed, "step2_split", probe).next_u64(),
                                                     params.split_budget);
                plan.X = std::move(split.X);
                plan.Y = std::move(split.Y);
                plan.split_attempts = split.attempts;
                plan.c_used = c;
                break;
            } catch (const SplitError& e) {
                last = e.what();
            }
            c *= params.c_step;
            if (c < params.c_min) throw ConstructionError("step2: stage split failed down to c_min (" + last + ")");
        }
    }
    const double c = plan.c_used;

    // (b) S and T: the lightest and heaviest m' vertices of X
    auto xs = plan.X.members();
    std::sort(xs.begin(), xs.end(), [&](Vertex a, Vertex b) {
        return wg.omega[a] != wg.omega[b] ? wg.omega[a] < wg.omega[b] : a < b;
    });
    const double xsize = static_cast<double>(xs.size());
    plan.m_split = static_cast<std::int64_t>(std::floor(xsize / 2 - (c / 4) * xsize));
    if (plan.m_split < 1) throw ConstructionError("step2: stage S/T has split size " + std::to_string(plan.m_split));
    const auto msz = static_cast<std::size_t>(plan.m_split);
    const std::vector<Vertex> s_list(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(msz));
    const std::vector<Vertex> t_list(xs.end() - static_cast<std::ptrdiff_t>(msz), xs.end());
    plan.S = from_list(n, s_list);
    plan.T = from_list(n, t_list);
    plan.X_prime = plan.X - plan.S - plan.T;
    plan.weight_gap = wg.omega[t_list.front()] - wg.omega[s_list.back()];
    if (plan.weight_gap <= 0) throw IntegrityError("step2: S/T weight gap is not positive");

    // (c) types of Y, then the single-type class and the weight window Z
    plan.types.assign(n, VertexType::in_x);
    const double thr = c * static_cast<double>(n) / 8;
    const double top = static_cast<double>(plan.m_split) - thr;
    std::map<int, std::vector<Vertex>> classes;
    for (Vertex y : plan.Y.members()) {
        const auto ds = static_cast<double>(degree_in(g, y, plan.S));
        const auto dt = static_cast<double>(degree_in(g, y, plan.T));
        const bool flags[4] = {ds < thr, ds > top, dt < thr, dt > top};
        int type = 0, hits = 0;
        for (int f = 0; f < 4; ++f)
            if (flags[f]) type = f + 1, ++hits;
        if (hits >= 2) {
            plan.types[y] = VertexType::problematic;
            continue;
        }
        plan.types[y] = static_cast<VertexType>(type);
        classes[type].push_back(y);
    }
    if (classes.empty()) throw ConstructionError("step2: stage Y' is empty (every vertex of Y is problematic)");
    const std::vector<Vertex>* single = nullptr;
    for (const auto& [type, members] : classes)
        if (!single || members.size() > single->size()) single = &members;
    plan.Y_single = from_list(n, *single);

    plan.z_weight_window = static_cast<std::int64_t>(std::floor(params.z_window_frac * static_cast<double>(plan.weight_gap)));
    {
        auto ys = *single;
        std::sort(ys.begin(), ys.end(), [&](Vertex a, Vertex b) { return wg.omega[a] < wg.omega[b]; });
        std::size_t best_lo = 0, best_len = 0;
        for (std::size_t lo = 0, hi = 0; lo < ys.size(); ++lo) {
            hi = std::max(hi, lo);
            while (hi < ys.size() && wg.omega[ys[hi]] - wg.omega[ys[lo]] <= plan.z_weight_window) ++hi;
            if (hi - lo > best_len) best_lo = lo, best_len = hi - lo;
        }
        plan.Z = from_list(n, std::vector<Vertex>(ys.begin() + static_cast<std::ptrdiff_t>(best_lo),
                                                  ys.begin() + static_cast<std::ptrdiff_t>(best_lo + best_len)));
    }
    if (plan.Z.empty()) throw ConstructionError("step2: stage Z is empty");

    // (d) index rectangle; k is capped so that sizes from different i
    // cannot meet: gap - 2k - zwin > 0.
    plan.k_lo = std::max<std::int64_t>(1, ceil_frac(params.k_lo, plan.m_split));
    plan.k_hi = std::min<std::int64_t>(plan.m_split, ceil_frac(params.k_hi, plan.m_split));
    plan.i_lo = std::max<std::int64_t>(1, ceil_frac(params.i_lo, plan.m_split));
    plan.i_hi = ceil_frac(params.i_hi, plan.m_split);
    plan.k_separation_cap = (plan.weight_gap - plan.z_weight_window - 1) / 2;
    plan.k_hi = std::min(plan.k_hi, plan.k_separation_cap);

    const auto zs = plan.Z.members();
    std::set<std::pair<std::int64_t, std::int64_t>> psi;
    for (std::int64_t k = plan.k_lo; k <= plan.k_hi; ++k) {
        if (plan.i_lo > std::min(plan.i_hi, k)) continue;
        Rng rng = Rng::stream(seed, "step2_order", static_cast<std::uint64_t>(k));
        const auto kk = static_cast<std::uint32_t>(k);
        std::vector<Vertex> x;  // x_{k,1..2k}
        for (auto j : rng.sample_without_replacement(static_cast<std::uint32_t>(msz), kk)) x.push_back(s_list[j]);
        for (auto j : rng.sample_without_replacement(static_cast<std::uint32_t>(msz), kk)) x.push_back(t_list[j]);
        for (std::int64_t i = plan.i_lo; i <= std::min(plan.i_hi, k); ++i) {
            VertexSet L(n);
            for (std::int64_t j = i; j < i + k; ++j) L.insert(x[static_cast<std::size_t>(j)]);
            std::map<std::int64_t, Vertex> classes_by_degree;  // omega-degree -> lowest z
            for (Vertex z : zs) classes_by_degree.try_emplace(omega_degree_in(wg, z, L), z);
            out.cells.push_back({{k, i}, classes_by_degree.size()});
            out.total_distinct += classes_by_degree.size();
            for (const auto& [wdeg, z] : classes_by_degree) {
                VertexSet cert = L;
                cert.insert(z);
                SizeCertificate sc{cert, k + 1, omega_size(wg, cert), 0};
                psi.emplace(sc.order, sc.size);
                out.certificates.push_back(std::move(sc));
            }
        }
    }
    out.psi.assign(psi.begin(), psi.end());

    // (e) the separation argument makes every emitted pair distinct
    if (out.psi.size() != out.total_distinct)
        throw IntegrityError("step2: |psi| = " + std::to_string(out.psi.size()) + " but sum N(k,i) = " +
                             std::to_string(out.total_distinct));
    for (const auto& sc : out.certificates)
        if (omega_size(wg, sc.vertices) != sc.size || static_cast<std::int64_t>(sc.vertices.count()) != sc.order)
            throw IntegrityError("step2: certificate recount mismatch");
    return out;
}

} // namespace rsz
