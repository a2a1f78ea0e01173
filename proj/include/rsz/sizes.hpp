#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rsz/graph.hpp"

namespace rsz {

enum class SpectrumMode { phi, psi };
enum class Exactness { exact, lower_bound };

/// Achieved induced-subgraph sizes: Phi (sizes) or Psi ((order, size)
/// pairs), weighted by omega when one is attached.
struct SizeSpectrum {
    SpectrumMode mode = SpectrumMode::phi;
    Exactness exactness = Exactness::exact;
    std::vector<std::int64_t> phi_set;                          // strictly increasing
    std::vector<std::pair<std::int64_t, std::int64_t>> psi_set; // lexicographically increasing
    std::string source;

    std::size_t cardinality() const { return mode == SpectrumMode::phi ? phi_set.size() : psi_set.size(); }
};

inline constexpr std::size_t kDefaultEnumerationCap = 30;

/// Walks all 2^n subsets in Gray-code order with an incremental omega-size.
/// The empty subgraph is included. Throws CapError above cap (hard limit 40).
SizeSpectrum phi_psi_exact(const WeightedGraph& wg, SpectrumMode mode,
                           std::size_t cap = kDefaultEnumerationCap);

/// Lower-bound spectrum from stratified samples: a uniform subset order in
/// 0..n, then a uniform subset of that order. Deterministic in (seed, trials)
/// for any thread count.
SizeSpectrum phi_sampled(const WeightedGraph& wg, SpectrumMode mode, std::uint64_t trials, std::uint64_t seed,
                         unsigned threads = 1);

/// Largest m + 1 with {0, ..., m} contained in phi_set; 0 if 0 is missing.
std::size_t consecutive_prefix(const SizeSpectrum& spec);

/// e(G[U u Z]) == e(G[U]) + e^w(G[Z]) with w(v) = Deg_U(v), both sides
/// counted independently.
bool size_decomposition_check(const Graph& g, const VertexSet& u, const VertexSet& z);

std::string spectrum_csv(const SizeSpectrum& spec);

} // namespace rsz
