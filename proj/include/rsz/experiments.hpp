#pragma once

#include <cstdint>
#include <vector>

#include "rsz/construction.hpp"
#include "rsz/report.hpp"

namespace rsz {

struct ConjectureRow {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t phi = 0;
    std::size_t prefix = 0;
    std::size_t psi = 0;
};

/// Exact |Phi|, consecutive prefix and |Psi| of gnp(n, 1/2, seed).
ConjectureRow conjecture_row(std::size_t n, std::uint64_t seed);

struct ScalingRow {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t scales = 0;
    std::size_t scales_ok = 0;
    std::size_t raw = 0;
    std::size_t discarded_a = 0;
    std::size_t discarded_b = 0;
    std::size_t duplicates = 0;
    std::size_t certificates = 0;
};

ScalingRow scaling_row(std::size_t n, std::uint64_t seed, const ConstructionParams& params, unsigned threads);

/// Median of an odd or even sample (lower middle for even sizes, so the
/// result is always an observed value).
std::size_t median_of(std::vector<std::size_t> v);

/// Each suite returns its tables: a per-run table and the table that is
/// plotted. Rows are emitted in grid order, then seed order.
struct SuiteOutput {
    Table runs;
    Table plotted;
    std::size_t x_col = 0;
    std::vector<std::size_t> y_cols;
    std::string title;
};

SuiteOutput suite_conjecture_probe(const std::vector<std::size_t>& n_grid, const std::vector<std::uint64_t>& seeds,
                                   unsigned threads);
SuiteOutput suite_scaling(const std::vector<std::size_t>& n_grid, const std::vector<std::uint64_t>& seeds,
                          const ConstructionParams& params, unsigned threads);
SuiteOutput suite_antconc(const std::vector<std::uint64_t>& n_grid, double a_frac, double b_frac, double k_frac);

} // namespace rsz
