#include "rsz/experiments.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rsz/parallel.hpp"
#include "rsz/sizes.hpp"
#include "rsz/text.hpp"

namespace rsz {

ConjectureRow conjecture_row(std::size_t n, std::uint64_t seed) {
    const WeightedGraph wg(gnp(n, 0.5, seed));
    const SizeSpectrum psi = phi_psi_exact(wg, SpectrumMode::psi);
    SizeSpectrum phi;
    phi.mode = SpectrumMode::phi;
    std::set<std::int64_t> sizes;
    for (auto [o, s] : psi.psi_set) sizes.insert(s);
    phi.phi_set.assign(sizes.begin(), sizes.end());
    return {n, seed, phi.phi_set.size(), consecutive_prefix(phi), psi.psi_set.size()};
}

ScalingRow scaling_row(std::size_t n, std::uint64_t seed, const ConstructionParams& params, unsigned threads) {
    const Graph g = gnp(n, 0.5, seed);
    const Step3Result r = step3_stitch(g, params, seed, threads);
    ScalingRow row{n, seed, r.family.s, 0, r.raw_certificates, r.discarded_fact_a, r.discarded_fact_b, r.duplicates,
                   r.certificates.size()};
    for (const auto& s : r.family.scales) row.scales_ok += s.ok;
    return row;
}

std::size_t median_of(std::vector<std::size_t> v) {
    if (v.empty()) throw ParameterError("median_of: empty sample");
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

SuiteOutput suite_conjecture_probe(const std::vector<std::size_t>& n_grid, const std::vector<std::uint64_t>& seeds,
                                   unsigned threads) {
    SuiteOutput out;
    out.runs.columns = {"n", "seed", "phi", "prefix_len", "psi"};
    out.plotted.columns = {"n", "median_phi", "median_prefix_len", "median_psi"};
    out.title = "exact spectra of gnp(n, 1/2)";
    out.x_col = 0;
    out.y_cols = {1, 2};

    std::vector<ConjectureRow> rows(n_grid.size() * seeds.size());
    parallel_for(rows.size(), threads, [&](std::size_t j) {
        rows[j] = conjecture_row(n_grid[j / seeds.size()], seeds[j % seeds.size()]);
    });
    for (std::size_t a = 0; a < n_grid.size(); ++a) {
        std::vector<std::size_t> phi, prefix, psi;
        for (std::size_t b = 0; b < seeds.size(); ++b) {
            const auto& r = rows[a * seeds.size() + b];
            out.runs.add({std::to_string(r.n), std::to_string(r.seed), std::to_string(r.phi), std::to_string(r.prefix),
                          std::to_string(r.psi)});
            phi.push_back(r.phi);
            prefix.push_back(r.prefix);
            psi.push_back(r.psi);
        }
        if (!seeds.empty())
            out.plotted.add({std::to_string(n_grid[a]), std::to_string(median_of(phi)),
                             std::to_string(median_of(prefix)), std::to_string(median_of(psi))});
    }
    return out;
}

SuiteOutput suite_scaling(const std::vector<std::size_t>& n_grid, const std::vector<std::uint64_t>& seeds,
                          const ConstructionParams& params, unsigned threads) {
    SuiteOutput out;
    out.runs.columns = {"n", "seed", "scales", "scales_ok", "raw", "discarded_a", "discarded_b", "duplicates",
                        "certificates"};
    out.plotted.columns = {"n", "median_certificates"};
    out.title = "certified distinct sizes from the stitched construction";
    out.x_col = 0;
    out.y_cols = {1};
    for (auto n : n_grid) {
        std::vector<std::size_t> counts;
        for (auto seed : seeds) {
            const auto r = scaling_row(n, seed, params, threads);
            out.runs.add({std::to_string(r.n), std::to_string(r.seed), std::to_string(r.scales),
                          std::to_string(r.scales_ok), std::to_string(r.raw), std::to_string(r.discarded_a),
                          std::to_string(r.discarded_b), std::to_string(r.duplicates),
                          std::to_string(r.certificates)});
            counts.push_back(r.certificates);
        }
        if (!seeds.empty()) out.plotted.add({std::to_string(n), std::to_string(median_of(counts))});
    }
    return out;
}

SuiteOutput suite_antconc(const std::vector<std::uint64_t>& n_grid, double a_frac, double b_frac, double k_frac) {
    SuiteOutput out;
    out.runs.columns = {"n", "max_prob", "max_prob_times_sqrt_n"};
    out.title = "maximum point mass of |U n B| - |U n A|, scaled by sqrt(n)";
    out.x_col = 0;
    out.y_cols = {2};
    for (const auto& r : pointmass_scaling_probe(a_frac, b_frac, k_frac, n_grid))
        out.runs.add({std::to_string(r.n), format_double(r.max_prob_double()), format_double(r.scaled())});
    out.plotted = out.runs;
    return out;
}

} // namespace rsz
