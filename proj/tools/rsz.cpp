// Command-line front end: graph generation, analysis, spectra, the stitched
// construction, certificate audits and the experiment suites.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsz/analysis.hpp"
#include "rsz/construction.hpp"
#include "rsz/experiments.hpp"
#include "rsz/prob.hpp"
#include "rsz/report.hpp"
#include "rsz/sizes.hpp"
#include "rsz/text.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using namespace rsz;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Global {
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string params_file;
    std::string out_dir;
    std::string format = "json";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + path.string());
    out << text;
    if (!out) throw ParameterError("write failed for " + path.string());
}

fs::path out_path(const Global& g, const std::string& name) {
    fs::path dir = g.out_dir.empty() ? fs::path(".") : fs::path(g.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ParameterError("cannot create output directory " + dir.string());
    return dir / name;
}

// Single-document outputs go to -o, else to stdout.
void emit(const std::string& target, const std::string& text) {
    if (target.empty() || target == "-")
        std::cout << text;
    else
        write_file(target, text);
}

std::uint64_t require_seed(const Global& g, const std::string& what) {
    if (!g.seed) throw ParameterError(what + " is randomized and needs --seed");
    return *g.seed;
}

ConstructionParams load_params(const Global& g) {
    if (g.params_file.empty()) return {};
    return parse_params(read_file(g.params_file));
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            const auto v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(static_cast<T>(v));
        } catch (const std::exception&) {
            throw ParameterError(flag + ": bad list entry '" + item + "'");
        }
    }
    return out;
}

std::vector<std::uint64_t> seed_list(std::uint64_t base, std::size_t count) {
    std::vector<std::uint64_t> seeds;
    for (std::size_t j = 0; j < count; ++j) seeds.push_back(base + j);
    return seeds;
}

WeightedGraph load_weighted(const std::string& graph_file, const std::string& weights_file) {
    Graph g = parse_graph(read_file(graph_file));
    if (weights_file.empty()) return WeightedGraph(std::move(g));
    std::vector<std::int64_t> w;
    std::istringstream in(read_file(weights_file));
    std::int64_t x = 0;
    while (in >> x) w.push_back(x);
    if (!in.eof()) throw ParameterError("weights: expected whitespace-separated integers");
    return WeightedGraph(std::move(g), WeightFn(std::move(w)));
}

void write_suite(const Global& g, const std::string& name, const SuiteOutput& s) {
    write_file(out_path(g, name + ".csv"), s.runs.csv());
    write_file(out_path(g, name + "_plot.csv"), s.plotted.csv());
    write_file(out_path(g, name + "_plot.dat"), s.plotted.dat());
    write_file(out_path(g, name + ".svg"), svg_chart(s.plotted, s.x_col, s.y_cols, s.title));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Induced-subgraph size spectra and certified size constructions"};
    app.require_subcommand(1);
    app.fallthrough();
    Global glob;
    app.add_option("--seed", glob.seed, "master seed for randomized commands");
    app.add_option("--threads", glob.threads, "worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--params", glob.params_file, "construction parameter file (key=value lines)");
    app.add_option("--out-dir", glob.out_dir, "directory for multi-file outputs");
    app.add_option("--format", glob.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.set_version_flag("--version", kVersion);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph");
    std::string kind = "gnp", gen_out;
    std::size_t gen_n = 0, gen_q = 0;
    double gen_p = 0.5;
    gen->add_option("--kind", kind)->check(CLI::IsMember({"gnp", "paley", "complete", "empty", "cycle"}));
    gen->add_option("--n", gen_n);
    gen->add_option("--p", gen_p);
    gen->add_option("--q", gen_q);
    gen->add_option("-o,--output", gen_out);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "hom, density and diversity of a graph");
    std::string an_file;
    double an_C = 2, an_delta = 0.2;
    std::uint64_t an_cap = kDefaultHomNodeCap;
    std::optional<double> an_eps;
    std::size_t an_budget = 20000;
    analyze->add_option("graph", an_file)->required();
    analyze->add_option("--C", an_C);
    analyze->add_option("--delta", an_delta);
    analyze->add_option("--hom-cap", an_cap);
    analyze->add_option("--eps", an_eps, "also run the uniform density check");
    analyze->add_option("--dense-budget", an_budget);

    // phi / psi
    std::string sp_file, sp_weights, sp_out;
    bool sp_exact = false, sp_sampled = false;
    std::uint64_t sp_trials = 100000;
    std::size_t sp_cap = kDefaultEnumerationCap;
    auto add_spectrum = [&](const char* name, const char* help) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("graph", sp_file)->required();
        cmd->add_option("--weights", sp_weights, "file of whitespace-separated vertex weights");
        cmd->add_flag("--exact", sp_exact, "Gray-code enumeration (default)");
        cmd->add_flag("--sampled", sp_sampled, "stratified sampling lower bound");
        cmd->add_option("--trials", sp_trials);
        cmd->add_option("--cap", sp_cap);
        cmd->add_option("-o,--output", sp_out);
        return cmd;
    };
    auto* phi = add_spectrum("phi", "set of induced-subgraph sizes");
    auto* psi = add_spectrum("psi", "set of (order, size) pairs");

    // construct
    auto* construct = app.add_subcommand("construct", "run the stitched three-step construction");
    std::string co_file;
    construct->add_option("graph", co_file)->required();

    // certify
    auto* cert = app.add_subcommand("certify", "recount a certificate file");
    std::string ce_graph, ce_file;
    cert->add_option("graph", ce_graph)->required();
    cert->add_option("certificates", ce_file)->required();

    // probe
    auto* probe = app.add_subcommand("probe", "exact point-mass scaling probe");
    double pr_a = 0.4, pr_b = 0.4, pr_k = 0.5;
    std::string pr_grid = "64,128,256,512,1024", pr_out;
    probe->add_option("--a-frac", pr_a);
    probe->add_option("--b-frac", pr_b);
    probe->add_option("--k-frac", pr_k);
    probe->add_option("--grid", pr_grid);
    probe->add_option("-o,--output", pr_out);

    // suite
    auto* suite = app.add_subcommand("suite", "run a named experiment suite");
    std::string su_name, su_grid;
    std::size_t su_seeds = 0;
    suite->add_option("name", su_name)->required()->check(CLI::IsMember({"scaling", "conjecture_probe", "antconc"}));
    suite->add_option("--grid", su_grid, "comma-separated n values");
    suite->add_option("--seeds", su_seeds, "number of consecutive seeds starting at --seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            Graph g;
            if (kind == "gnp")
                g = gnp(gen_n, gen_p, require_seed(glob, "gen --kind gnp"));
            else if (kind == "paley")
                g = paley(gen_q);
            else if (kind == "complete")
                g = complete_graph(gen_n);
            else if (kind == "empty")
                g = empty_graph(gen_n);
            else
                g = cycle_graph(gen_n);
            emit(gen_out, serialize_graph(g));
        } else if (analyze->parsed()) {
            const Graph g = parse_graph(read_file(an_file));
            ojson j;
            j["n"] = g.order();
            j["edges"] = g.edge_count();
            j["density"] = g.order() >= 2 ? ojson(edge_density(g)) : ojson(nullptr);
            const HomResult h = hom(g, an_cap);
            j["hom"] = {{"clique", h.clique_size},
                        {"independent", h.indep_size},
                        {"hom", h.hom},
                        {"clique_witness", h.witness_clique.members()},
                        {"independent_witness", h.witness_indep.members()}};
            if (g.order() >= 2) {
                j["C"] = an_C;
                j["log2_n"] = std::log2(static_cast<double>(g.order()));
                j["c_ramsey"] = is_c_ramsey(h, g.order(), an_C);
            }
            auto div = ojson::array();
            for (double c : {0.1, 0.2, 0.3, 0.4, 0.5}) {
                const auto r = diversity_check(g, c, an_delta);
                div.push_back({{"c", c},
                               {"delta", an_delta},
                               {"threshold", r.threshold},
                               {"allowance", r.allowance},
                               {"violating_vertices", r.violating_vertices.size()},
                               {"is_diverse", r.is_diverse}});
            }
            j["diversity"] = div;
            if (an_eps) {
                const auto r = uniform_dense_check(g, *an_eps, an_budget, glob.seed.value_or(0));
                j["uniform_dense"] = {{"eps", *an_eps},
                                      {"pass", r.pass},
                                      {"exhaustive", r.exhaustive},
                                      {"subsets_examined", r.subsets_examined},
                                      {"witness", r.witness ? ojson(r.witness->members()) : ojson(nullptr)},
                                      {"witness_density", r.witness ? ojson(r.witness_density) : ojson(nullptr)}};
            }
            std::cout << j.dump(2) << '\n';
        } else if (phi->parsed() || psi->parsed()) {
            if (sp_exact && sp_sampled) throw ParameterError("choose one of --exact and --sampled");
            const auto mode = phi->parsed() ? SpectrumMode::phi : SpectrumMode::psi;
            const WeightedGraph wg = load_weighted(sp_file, sp_weights);
            const SizeSpectrum spec =
                sp_sampled ? phi_sampled(wg, mode, sp_trials, require_seed(glob, "--sampled"), glob.threads)
                           : phi_psi_exact(wg, mode, sp_cap);
            emit(sp_out, glob.format == "csv" ? spectrum_csv(spec) : spectrum_json(spec));
        } else if (construct->parsed()) {
            const std::uint64_t seed = require_seed(glob, "construct");
            const ConstructionParams params = load_params(glob);
            const Graph g = parse_graph(read_file(co_file));
            const auto t0 = std::chrono::steady_clock::now();
            const Step3Result r = step3_stitch(g, params, seed, glob.threads);
            const double t_build = seconds_since(t0);
            const auto t1 = std::chrono::steady_clock::now();
            const CertifyReport audit = certify(g, r.certificates);
            const double t_audit = seconds_since(t1);

            write_file(out_path(glob, "certificates.json"), certificates_json(r.certificates));
            const Table scales = scale_family_table(r.family);
            write_file(out_path(glob, "scales.csv"), scales.csv());

            ojson rep;
            rep["tool_version"] = kVersion;
            rep["config"] = {{"command", "construct"},
                             {"graph", fs::path(co_file).filename().string()},
                             {"seed", seed},
                             {"params", params_to_text(params)}};
            rep["graph"] = {{"n", g.order()}, {"edges", g.edge_count()}};
            rep["domain"] = {{"size", r.domain.count()}, {"extracted", r.domain_extracted}};
            std::size_t ok = 0;
            for (const auto& s : r.family.scales) ok += s.ok;
            rep["scales"] = {{"s", r.family.s},
                             {"succeeded", ok},
                             {"unit", r.family.scale_unit},
                             {"slack", r.family.slack},
                             {"spacing", r.family.spacing}};
            rep["certificates"] = {{"raw", r.raw_certificates},
                                   {"discarded_fact_a", r.discarded_fact_a},
                                   {"discarded_fact_b", r.discarded_fact_b},
                                   {"duplicates", r.duplicates},
                                   {"emitted", r.certificates.size()},
                                   {"distinct_sizes", audit.distinct_sizes}};
            rep["assertions"] = {{"recount", "pass"}, {"facts_ab", "pass"}, {"psi_distinct", "pass"}};
            rep["runtime"] = {{"threads", glob.threads}, {"seconds_build", t_build}, {"seconds_audit", t_audit}};
            write_file(out_path(glob, "report.json"), rep.dump(2) + "\n");
            std::cout << "scales " << ok << "/" << r.family.s << ", certificates " << r.certificates.size()
                      << ", distinct sizes " << audit.distinct_sizes << "\n";
        } else if (cert->parsed()) {
            const Graph g = parse_graph(read_file(ce_graph));
            const auto certs = parse_certificates_json(read_file(ce_file), g.order());
            const CertifyReport r = certify(g, certs);
            if (glob.format == "csv") {
                std::cout << "certificates,distinct_sizes\n" << r.certificates << ',' << r.distinct_sizes << '\n';
            } else {
                ojson j{{"certificates", r.certificates}, {"distinct_sizes", r.distinct_sizes}, {"status", "ok"}};
                std::cout << j.dump(2) << '\n';
            }
        } else if (probe->parsed()) {
            const auto rows = pointmass_scaling_probe(pr_a, pr_b, pr_k, parse_list<std::uint64_t>(pr_grid, "--grid"));
            if (glob.format == "csv") {
                emit(pr_out, probe_csv(rows));
            } else {
                auto arr = ojson::array();
                for (const auto& r : rows)
                    arr.push_back({{"n", r.n},
                                   {"a", r.a},
                                   {"b", r.b},
                                   {"k", r.k},
                                   {"max_prob", r.max_prob.str()},
                                   {"max_prob_times_sqrt_n", r.scaled()},
                                   {"sums_to_one", r.sums_to_one}});
                emit(pr_out, arr.dump(2) + "\n");
            }
        } else if (suite->parsed()) {
            SuiteOutput out;
            if (su_name == "antconc") {
                const auto grid = parse_list<std::uint64_t>(su_grid.empty() ? "64,128,256,512,1024" : su_grid, "--grid");
                out = suite_antconc(grid, 0.4, 0.4, 0.5);
            } else if (su_name == "conjecture_probe") {
                const std::uint64_t seed = require_seed(glob, "suite conjecture_probe");
                const auto grid = parse_list<std::size_t>(su_grid.empty() ? "12,13,14,15,16,17,18,19,20" : su_grid, "--grid");
                out = suite_conjecture_probe(grid, seed_list(seed, su_seeds ? su_seeds : 10), glob.threads);
            } else {
                const std::uint64_t seed = require_seed(glob, "suite scaling");
                const auto grid = parse_list<std::size_t>(su_grid.empty() ? "256,512,1024" : su_grid, "--grid");
                out = suite_scaling(grid, seed_list(seed, su_seeds ? su_seeds : 3), load_params(glob), glob.threads);
            }
            write_suite(glob, su_name, out);
            std::cout << out.runs.csv();
        }
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    } catch (const ConstructionError& e) {
        std::cerr << "construction error: " << e.what() << '\n';
        return 3;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
