#include "rsz/sizes.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "rsz/errors.hpp"
#include "rsz/parallel.hpp"
#include "rsz/rng.hpp"

namespace rsz {

namespace {

inline constexpr std::size_t kEnumerationHardLimit = 40;
inline constexpr std::uint64_t kSampleChunk = 4096;

// Dense presence table indexed by (order, size).
class PresenceTable {
public:
    PresenceTable(std::size_t n, std::int64_t max_size)
        : width_(static_cast<std::size_t>(max_size) + 1), bits_((n + 1) * width_, false) {}
    void mark(std::size_t order, std::int64_t size) { bits_[order * width_ + static_cast<std::size_t>(size)] = true; }
    bool at(std::size_t order, std::int64_t size) const {
        return bits_[order * width_ + static_cast<std::size_t>(size)];
    }
    std::size_t width() const { return width_; }

private:
    std::size_t width_;
    std::vector<bool> bits_;
};

SizeSpectrum from_pairs(SpectrumMode mode, Exactness ex, std::string source,
                        std::vector<std::pair<std::int64_t, std::int64_t>> pairs) {
    SizeSpectrum s;
    s.mode = mode;
    s.exactness = ex;
    s.source = std::move(source);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    if (mode == SpectrumMode::psi) {
        s.psi_set = std::move(pairs);
    } else {
        for (auto& [order, size] : pairs) s.phi_set.push_back(size);
        std::sort(s.phi_set.begin(), s.phi_set.end());
        s.phi_set.erase(std::unique(s.phi_set.begin(), s.phi_set.end()), s.phi_set.end());
    }
    return s;
}

} // namespace

SizeSpectrum phi_psi_exact(const WeightedGraph& wg, SpectrumMode mode, std::size_t cap) {
    const std::size_t n = wg.graph.order();
    if (n > cap || n > kEnumerationHardLimit)
        throw CapError("exact enumeration supports n <= " + std::to_string(std::min(cap, kEnumerationHardLimit)) +
                       " (got n = " + std::to_string(n) + "); use the sampled estimator");

    std::vector<std::uint64_t> rows(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u = 0; u < n; ++u)
            if (wg.graph.adjacent(v, u)) rows[v] |= 1ULL << u;

    const std::int64_t max_size = static_cast<std::int64_t>(wg.graph.edge_count()) + wg.omega.total();
    if (static_cast<double>(max_size + 1) * static_cast<double>(n + 1) > 4.0e9)
        throw CapError("exact enumeration: (order, size) table too large; reduce the weights");
    PresenceTable seen(n, max_size);
    seen.mark(0, 0);

    std::uint64_t mask = 0;
    std::int64_t size = 0;
    std::size_t order = 0;
    const std::uint64_t steps = n == 0 ? 0 : (1ULL << n);
    for (std::uint64_t step = 1; step < steps; ++step) {
        const unsigned v = static_cast<unsigned>(std::countr_zero(step));
        const std::int64_t delta = std::popcount(rows[v] & mask) + wg.omega[v];
        if (mask & (1ULL << v)) {
            mask &= ~(1ULL << v);
            size -= delta;
            --order;
        } else {
            mask |= 1ULL << v;
            size += delta;
            ++order;
        }
        seen.mark(order, size);
    }

    SizeSpectrum s;
    s.mode = mode;
    s.exactness = Exactness::exact;
    s.source = "enumeration";
    if (mode == SpectrumMode::psi) {
        for (std::size_t k = 0; k <= n; ++k)
            for (std::int64_t e = 0; e <= max_size; ++e)
                if (seen.at(k, e)) s.psi_set.emplace_back(static_cast<std::int64_t>(k), e);
    } else {
        for (std::int64_t e = 0; e <= max_size; ++e)
            for (std::size_t k = 0; k <= n; ++k)
                if (seen.at(k, e)) {
                    s.phi_set.push_back(e);
                    break;
                }
    }
    return s;
}

SizeSpectrum phi_sampled(const WeightedGraph& wg, SpectrumMode mode, std::uint64_t trials, std::uint64_t seed,
                         unsigned threads) {
    if (trials < 1) throw ParameterError("phi_sampled: trials must be at least 1");
    const std::size_t n = wg.graph.order();
    const std::uint64_t chunks = (trials + kSampleChunk - 1) / kSampleChunk;

    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> found(chunks);
    parallel_for(chunks, threads, [&](std::size_t chunk) {
        Rng rng = Rng::stream(seed, "phi_sampled", chunk);
        const std::uint64_t begin = chunk * kSampleChunk;
        const std::uint64_t end = std::min(trials, begin + kSampleChunk);
        std::set<std::pair<std::int64_t, std::int64_t>> local;
        for (std::uint64_t t = begin; t < end; ++t) {
            const auto k = static_cast<std::uint32_t>(rng.below(n + 1));
            VertexSet s(n);
            for (auto v : rng.sample_without_replacement(static_cast<std::uint32_t>(n), k)) s.insert(v);
            local.emplace(static_cast<std::int64_t>(k), omega_size(wg, s));
        }
        found[chunk].assign(local.begin(), local.end());
    });

    std::vector<std::pair<std::int64_t, std::int64_t>> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    return from_pairs(mode, Exactness::lower_bound, "sampling", std::move(all));
}

std::size_t consecutive_prefix(const SizeSpectrum& spec) {
    if (spec.mode != SpectrumMode::phi) throw ParameterError("consecutive_prefix requires a phi spectrum");
    std::size_t len = 0;
    for (auto e : spec.phi_set) {
        if (e != static_cast<std::int64_t>(len)) break;
        ++len;
    }
    return len;
}

bool size_decomposition_check(const Graph& g, const VertexSet& u, const VertexSet& z) {
    if (u.intersects(z)) throw ParameterError("size_decomposition_check: U and Z must be disjoint");
    const auto lhs = induced_edge_count(g, u | z);
    std::vector<std::int64_t> w(g.order(), 0);
    for (Vertex v : z.members()) w[v] = static_cast<std::int64_t>(degree_in(g, v, u));
    const WeightedGraph wg(g, WeightFn(std::move(w)));
    const auto rhs = static_cast<std::int64_t>(induced_edge_count(g, u)) + omega_size(wg, z);
    return static_cast<std::int64_t>(lhs) == rhs;
}

std::string spectrum_csv(const SizeSpectrum& spec) {
    std::ostringstream out;
    if (spec.mode == SpectrumMode::phi) {
        out << "size\n";
        for (auto e : spec.phi_set) out << e << '\n';
    } else {
        out << "order,size\n";
        for (auto [k, e] : spec.psi_set) out << k << ',' << e << '\n';
    }
    return out.str();
}

} // namespace rsz
