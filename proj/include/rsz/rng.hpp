#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace rsz {

/// Deterministic random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions below are written out by hand because the
/// standard library distributions are implementation-defined; together this
/// makes every experiment bit-reproducible across platforms and ports.
///
/// Stream derivation: a unit of work identified by (stage_tag, unit_index)
/// under a master seed gets the engine seeded with
///
///     mix(master_seed ^ mix(fnv1a64(stage_tag) + unit_index))
///
/// where mix is one SplitMix64 step (add the golden-ratio increment, then finalize) and fnv1a64 is 64-bit FNV-1a over
/// the tag bytes.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng stream(std::uint64_t master_seed, std::string_view stage_tag,
                      std::uint64_t unit_index);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, bound) by rejection; bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi);

    /// Fisher-Yates shuffle driven by below().
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// k distinct values of [0, n) in random order (partial Fisher-Yates).
    std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64_mix(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace rsz
