#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "rsz/analysis.hpp"
#include "rsz/construction.hpp"
#include "rsz/parallel.hpp"
#include "rsz/rng.hpp"

namespace rsz {

namespace {

struct ScaleOutput {
    ScaleRecord record;
    std::vector<SizeCertificate> certs;  // global ids, absolute sizes
};

ScaleOutput run_scale(const Graph& g, const VertexSet& domain, std::int64_t index, std::int64_t target,
                      std::int64_t slack, const ConstructionParams& params, std::uint64_t seed) {
    ScaleOutput out;
    ScaleRecord& rec = out.record;
    rec.index = index;
    rec.target = target;
    const double nd = static_cast<double>(domain.count());
    const auto keep = static_cast<std::size_t>(std::ceil(params.w_keep * std::sqrt(nd)));

    for (std::size_t attempt = 0; attempt < params.scale_retries; ++attempt) {
        ++rec.attempts;
        const std::uint64_t unit = (static_cast<std::uint64_t>(index) << 16) | attempt;
        try {
            Step1Witness w = step1_build(g, domain, target, params, Rng::stream(seed, "step1_scale", unit).next_u64(), slack);

            // W_i: a uniformly random subset of W'_i of the configured size
            auto wm = w.W.members();
            if (wm.size() > keep) {
                Rng rng = Rng::stream(seed, "truncate", unit);
                std::vector<Vertex> picked;
                for (auto j : rng.sample_without_replacement(static_cast<std::uint32_t>(wm.size()),
                                                             static_cast<std::uint32_t>(keep)))
                    picked.push_back(wm[j]);
                std::sort(picked.begin(), picked.end());
                wm = std::move(picked);
            }
            VertexSet W(g.order());
            for (Vertex v : wm) W.insert(v);

            std::vector<std::int64_t> omega;
            for (Vertex v : wm) omega.push_back(static_cast<std::int64_t>(degree_in(g, v, w.U)) - w.l);
            WeightedGraph wg(g.induced(W), WeightFn(omega));
            Step2Result s2 = step2_build(wg, params, Rng::stream(seed, "step2_scale", unit).next_u64());

            rec.ok = true;
            rec.failure.clear();
            rec.U = w.U;
            rec.W = W;
            rec.e_U = w.e_U;
            rec.l = w.l;
            rec.w_prime_size = w.W.count();
            rec.omega = omega;
            rec.psi_size = s2.psi.size();
            rec.sum_distinct = s2.total_distinct;
            rec.c_used = s2.plan.c_used;

            for (const auto& local : s2.certificates) {
                VertexSet global = w.U;
                for (Vertex v : local.vertices.members()) global.insert(wm[v]);
                const auto recount = static_cast<std::int64_t>(induced_edge_count(g, global));
                const std::int64_t decomposed = w.e_U + w.l * local.order + local.size;
                if (recount != decomposed)
                    throw IntegrityError("step3: scale " + std::to_string(index) + " decomposition mismatch (" +
                                         std::to_string(recount) + " vs " + std::to_string(decomposed) + ")");
                out.certs.push_back({std::move(global), static_cast<std::int64_t>(w.U.count()) + local.order, recount, index});
            }
            return out;
        } catch (const ConstructionError& e) {
            rec.failure = e.what();
        }
    }
    return out;
}

} // namespace

bool facts_hold(const std::vector<SizeCertificate>& certs) {
    // (A): every size at scale i is below every size at scale j > i.
    // (B): within a scale, a larger |Z| gives a strictly larger size; |Z|
    // differences are order differences since U_i is shared.
    std::map<std::int64_t, std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>>> range;
    for (const auto& c : certs) {
        auto [it, fresh] = range[c.scale_index].try_emplace(c.order, c.size, c.size);
        if (!fresh) {
            it->second.first = std::min(it->second.first, c.size);
            it->second.second = std::max(it->second.second, c.size);
        }
    }
    bool have_prev = false;
    std::int64_t prev_max = 0;
    for (const auto& [scale, by_order] : range) {
        std::int64_t lo = by_order.begin()->second.first, hi = lo;
        bool have_lower = false;
        std::int64_t lower_max = 0;
        for (const auto& [order, mm] : by_order) {
            if (have_lower && mm.first <= lower_max) return false;
            lower_max = have_lower ? std::max(lower_max, mm.second) : mm.second;
            have_lower = true;
            lo = std::min(lo, mm.first);
            hi = std::max(hi, mm.second);
        }
        if (have_prev && lo <= prev_max) return false;
        prev_max = have_prev ? std::max(prev_max, hi) : hi;
        have_prev = true;
    }
    return true;
}

Step3Result step3_stitch(const Graph& g, const ConstructionParams& params, std::uint64_t seed, unsigned threads) {
    params.validate();
    Step3Result res;
    if (g.order() < 4) throw ConstructionError("step3: graph too small");

    const auto report = diversity_check(g, params.c, params.delta);
    if (report.is_diverse) {
        res.domain = VertexSet::full(g.order());
    } else {
        res.domain = diversity_extract(g, params.c, params.delta, params.extract_min_frac);
        res.domain_extracted = true;
    }

    const double nd = static_cast<double>(res.domain.count());
    const double e_dom = static_cast<double>(induced_edge_count(g, res.domain));
    ScaleFamily& fam = res.family;
    const double unit = params.scale_unit * nd;
    fam.scale_unit = static_cast<std::int64_t>(std::ceil(unit));
    fam.slack = static_cast<std::int64_t>(std::ceil(params.slack_units * unit));
    fam.spacing = static_cast<std::int64_t>(std::ceil(params.spacing_units * unit));
    const auto base = static_cast<std::int64_t>(std::ceil(params.m_lo * e_dom));
    const auto top = static_cast<std::int64_t>(std::floor(params.m_hi * e_dom));
    std::size_t count = top >= base ? static_cast<std::size_t>((top - base) / fam.spacing) + 1 : 0;
    if (params.max_scales) count = std::min(count, params.max_scales);
    if (count < 2)
        throw ConstructionError("step3: only " + std::to_string(count) + " scale(s) fit the feasible window");
    fam.s = count;

    std::vector<ScaleOutput> outputs(count);
    parallel_for(count, threads, [&](std::size_t j) {
        const auto index = static_cast<std::int64_t>(j + 1);
        outputs[j] = run_scale(g, res.domain, index, base + static_cast<std::int64_t>(j) * fam.spacing, fam.slack,
                               params, seed);
    });

    // Merge in scale order. Fact (B) is enforced per scale by order, fact
    // (A) across scales by a running maximum; violators are discarded.
    bool have_prev = false;
    std::int64_t prev_max = 0;
    std::set<std::int64_t> seen;
    for (auto& so : outputs) {
        res.raw_certificates += so.certs.size();
        std::stable_sort(so.certs.begin(), so.certs.end(), [](const SizeCertificate& a, const SizeCertificate& b) {
            return a.order != b.order ? a.order < b.order : a.size < b.size;
        });
        std::vector<SizeCertificate> kept;
        bool have_lower = false;
        std::int64_t lower_max = 0;
        for (std::size_t lo = 0; lo < so.certs.size();) {
            std::size_t hi = lo;
            while (hi < so.certs.size() && so.certs[hi].order == so.certs[lo].order) ++hi;
            bool group_kept = false;
            std::int64_t group_max = 0;
            for (std::size_t j = lo; j < hi; ++j) {
                auto& c = so.certs[j];
                if (have_lower && c.size <= lower_max) {
                    ++res.discarded_fact_b;
                } else if (have_prev && c.size <= prev_max) {
                    ++res.discarded_fact_a;
                } else {
                    group_max = group_kept ? std::max(group_max, c.size) : c.size;
                    group_kept = true;
                    kept.push_back(std::move(c));
                }
            }
            if (group_kept) {
                lower_max = have_lower ? std::max(lower_max, group_max) : group_max;
                have_lower = true;
            }
            lo = hi;
        }
        for (auto& c : kept) {
            if (!seen.insert(c.size).second) {
                ++res.duplicates;
                continue;
            }
            prev_max = have_prev ? std::max(prev_max, c.size) : c.size;
            have_prev = true;
            ++so.record.emitted;
            res.certificates.push_back(std::move(c));
        }
        fam.scales.push_back(std::move(so.record));
    }
    if (!facts_hold(res.certificates)) throw IntegrityError("step3: facts (A)/(B) fail on the emitted family");
    std::sort(res.certificates.begin(), res.certificates.end(),
              [](const SizeCertificate& a, const SizeCertificate& b) { return a.size < b.size; });
    certify(g, res.certificates);
    return res;
}

CertifyReport certify(const Graph& g, const std::vector<SizeCertificate>& certs) {
    CertifyReport r;
    std::set<std::int64_t> sizes;
    for (std::size_t j = 0; j < certs.size(); ++j) {
        const auto& c = certs[j];
        if (c.vertices.universe() != g.order())
            throw IntegrityError("certify: certificate " + std::to_string(j) + " has the wrong vertex universe");
        const auto recount = static_cast<std::int64_t>(induced_edge_count(g, c.vertices));
        if (recount != c.size || static_cast<std::int64_t>(c.vertices.count()) != c.order)
            throw IntegrityError("certify: certificate " + std::to_string(j) + " (scale " +
                                 std::to_string(c.scale_index) + ") claims size " + std::to_string(c.size) +
                                 ", recount gives " + std::to_string(recount));
        sizes.insert(c.size);
    }
    r.certificates = certs.size();
    r.distinct_sizes = sizes.size();
    return r;
}

} // namespace rsz
