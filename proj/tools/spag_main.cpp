// Command-line front end: generate graphs, percolate, analyze, probe the
// path machinery, simulate the indegree process, and run parameter sweeps.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spag/analysis.hpp"
#include "spag/generator.hpp"
#include "spag/indegree.hpp"
#include "spag/pathlab.hpp"
#include "spag/percolation.hpp"
#include "spag/sweep.hpp"

namespace {

using nlohmann::json;
using namespace spag;

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw std::invalid_argument("empty value grid");
    return out;
}

// Flat key=value scan for the numeric knobs the model config does not cover.
std::map<std::string, std::string> read_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

json params_json(const ModelParams& p) {
    json j;
    j["d"] = p.d;
    j["gamma"] = p.gamma;
    j["beta"] = p.beta;
    j["delta"] = p.exponential_profile() ? json("inf") : json(p.delta);
    j["a"] = p.a;
    return j;
}

int cmd_generate(const std::string& config, double t, const std::string& view,
                 const std::string& mode, const std::string& seed, const std::string& out) {
    const ModelParams params = load_model_params(config);
    const Graph g = build_graph(params, view_from_string(view), t, parse_seed(seed),
                                build_mode_from_string(mode));
    write_graph_file(g, out);
    std::cout << "wrote " << out << " (n=" << g.n() << ", m=" << g.m() << ")\n";
    return 0;
}

int cmd_percolate(const std::string& graph_path, const std::string& p_grid,
                  const std::string& seed_text, std::int64_t k, const std::string& out) {
    const Graph g = read_graph_file(graph_path);
    const std::uint64_t seed = parse_seed(seed_text);
    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open output: " + out);
    csv << "p,retained,largest,second,components,frac_to_oldest,frac_finite_k" << k << "\n";
    for (double p : parse_grid(p_grid)) {
        const auto r = percolate(g, p, seed);
        const auto stats = component_stats(r);
        csv << format_double(p) << ',' << r.retained_count << ',' << stats.largest << ','
            << stats.second << ',' << stats.count << ','
            << format_double(fraction_connected_to_oldest(r, g)) << ','
            << format_double(finite_component_fraction(r, k)) << "\n";
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_analyze(const std::string& graph_path, const std::string& report,
                const std::string& out, double top_fraction, std::int64_t sample,
                std::int64_t pairs, int core_k, double alpha, const std::string& seed_text) {
    const Graph g = read_graph_file(graph_path);
    const std::uint64_t seed = parse_seed(seed_text);
    const bool as_json = out.size() >= 5 && out.substr(out.size() - 5) == ".json";
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output: " + out);

    json summary;
    summary["report"] = report;
    summary["params"] = params_json(g.params);
    summary["seed"] = seed_to_hex(seed);
    summary["n"] = g.n();
    summary["m"] = g.m();

    if (report == "degrees") {
        const auto adj = g.adjacency();
        std::map<std::size_t, std::int64_t> histogram;
        for (const auto& nbrs : adj) ++histogram[nbrs.size()];
        summary["tail_exponent"] = tail_exponent_of_degrees(g, top_fraction);
        summary["top_fraction"] = top_fraction;
        summary["sample_size"] = g.n();
        if (as_json) {
            file << summary.dump(2) << "\n";
        } else {
            file << "degree,count\n";
            for (const auto& [deg, count] : histogram) file << deg << ',' << count << "\n";
        }
    } else if (report == "clustering") {
        const double c = average_clustering(g, static_cast<std::size_t>(sample), seed);
        summary["average_clustering"] = c;
        summary["sample_size"] = sample;
        if (as_json) file << summary.dump(2) << "\n";
        else file << "average_clustering,sample_size\n" << format_double(c) << ',' << sample << "\n";
    } else if (report == "lengths") {
        std::vector<double> grid;
        for (double k_len = 1.0; k_len <= std::pow(g.t, 1.0 / g.params.d) / 2.0; k_len *= 1.5)
            grid.push_back(k_len);
        const auto curve = edge_length_survival(g, grid);
        summary["log_log_slope"] = log_log_slope(curve);
        summary["sample_size"] = g.n();
        if (as_json) {
            json pts = json::array();
            for (const auto& pt : curve) pts.push_back({{"threshold", pt.threshold},
                                                        {"fraction", pt.fraction}});
            summary["curve"] = pts;
            file << summary.dump(2) << "\n";
        } else {
            file << "threshold,fraction\n";
            for (const auto& pt : curve)
                file << format_double(pt.threshold) << ',' << format_double(pt.fraction) << "\n";
        }
    } else if (report == "distances") {
        const auto sample_out = distance_sample(g, nullptr, pairs, seed);
        auto hops = sample_out.hops;
        std::sort(hops.begin(), hops.end());
        summary["sample_size"] = hops.size();
        summary["unreachable"] = sample_out.unreachable;
        summary["median_hops"] = hops.empty() ? 0 : hops[hops.size() / 2];
        if (as_json) {
            summary["hops"] = hops;
            file << summary.dump(2) << "\n";
        } else {
            file << "hops\n";
            for (int h : hops) file << h << "\n";
        }
    } else if (report == "core") {
        const auto rep = core_report(g, core_k, alpha);
        summary["k"] = rep.k;
        summary["alpha"] = rep.alpha;
        summary["birth_cutoff"] = rep.birth_cutoff;
        summary["good_vertices"] = rep.good_vertex_ids.size();
        summary["core_vertices"] = rep.core_ids.size();
        summary["pairwise_distance_bound_ok"] = rep.pairwise_distance_bound_ok;
        summary["max_core_distance"] = rep.max_core_distance;
        summary["two_connected_fraction"] = rep.two_connected_fraction;
        if (as_json) {
            file << summary.dump(2) << "\n";
        } else {
            file << "k,alpha,good,core,bound_ok,max_distance,two_connected_fraction\n";
            file << rep.k << ',' << format_double(rep.alpha) << ',' << rep.good_vertex_ids.size()
                 << ',' << rep.core_ids.size() << ',' << (rep.pairwise_distance_bound_ok ? 1 : 0)
                 << ',' << rep.max_core_distance << ','
                 << format_double(rep.two_connected_fraction) << "\n";
        }
    } else {
        throw std::invalid_argument("unknown report: " + report);
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_pathlab(const std::string& graph_path, const std::string& perc_seed_text, double p,
                std::int64_t samples, const std::string& out) {
    const Graph g = read_graph_file(graph_path);
    const std::uint64_t perc_seed = parse_seed(perc_seed_text);
    const auto r = percolate(g, p, perc_seed);

    std::vector<std::uint32_t> retained_ids;
    for (std::uint32_t v = 0; v < g.n(); ++v)
        if (r.retained[v]) retained_ids.push_back(v);

    CounterRng rng(SeedSpec{perc_seed, "pathlab-pairs", 0});
    json records = json::array();
    std::int64_t produced = 0, attempts = 0;
    while (produced < samples && attempts < samples * 50 && retained_ids.size() >= 2) {
        ++attempts;
        const auto pick = [&] {
            return retained_ids[static_cast<std::size_t>(
                rng.uniform() * static_cast<double>(retained_ids.size()))];
        };
        const std::uint32_t from = pick();
        const std::uint32_t to = pick();
        if (from == to || r.component[from] != r.component[to]) continue;
        json rec;
        try {
            const auto path = geodesic(g, &r.retained, from, to);
            const auto qp = quick_path(g, r.retained, path);
            const auto dec = decompose(g, qp);
            const auto sets = children_sets(g, qp, dec);
            rec["geodesic"] = path;
            rec["quick_path"] = qp.vertex_ids;
            json roles = json::array();
            for (auto role : qp.roles) roles.push_back(to_string(role));
            rec["roles"] = roles;
            rec["inserted"] = std::vector<int>(qp.inserted.begin(), qp.inserted.end());
            rec["split_indices"] = dec.split_indices;
            json types = json::array();
            for (auto t : dec.part_types) types.push_back(to_string(t));
            rec["part_types"] = types;
            rec["sigma_sizes"] = [&] {
                std::vector<std::size_t> sizes;
                for (const auto& s : sets.sigma) sizes.push_back(s.size());
                return sizes;
            }();
            rec["sigma_disjoint"] = sets.pairwise_disjoint;
            if (g.params.d == 1) {
                const auto tr = trace(g, qp, r.retained);
                rec["trace_length"] = tr.path_indices.size();
                rec["trace_retained_fraction"] = tr.retained_fraction;
                rec["trace_almost_inserted"] = tr.almost_inserted.size();
            }
        } catch (const std::exception& e) {
            rec["error"] = e.what();
        }
        records.push_back(std::move(rec));
        ++produced;
    }

    json doc;
    doc["params"] = params_json(g.params);
    doc["p"] = p;
    doc["perc_seed"] = seed_to_hex(perc_seed);
    doc["samples"] = records;
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output: " + out);
    file << doc.dump(2) << "\n";
    std::cout << "wrote " << out << " (" << produced << " samples)\n";
    return 0;
}

int cmd_indegree(const std::string& check, const std::string& config, const std::string& out) {
    const ModelParams params = load_model_params(config);
    const auto kv = read_key_values(config);
    auto num = [&](const std::string& key, double fallback) {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : std::stod(it->second);
    };
    const double r = num("r", 0.01);
    const double s = num("s", 1.0);
    const auto replicas = static_cast<std::int64_t>(num("replicas", 10000));
    const std::uint64_t seed = kv.count("seed") ? parse_seed(kv.at("seed")) : 0;

    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open output: " + out);

    if (check == "mean") {
        // Empirical versus closed-form mean on a log-spaced time grid.
        csv << "s,empirical_mean,closed_form,stderr\n";
        std::vector<double> grid;
        for (double x = r * 2.0; x <= s * 1.0000001; x *= std::pow(s / (r * 2.0), 1.0 / 9.0))
            grid.push_back(x);
        std::vector<double> sums(grid.size(), 0.0), sq(grid.size(), 0.0);
        for (std::int64_t rep = 0; rep < replicas; ++rep) {
            const auto path = simulate_birth_process(params, r, s, SeedSpec{seed, "mean", rep});
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const auto z = static_cast<double>(path.value_at(grid[i]));
                sums[i] += z;
                sq[i] += z * z;
            }
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double mean = sums[i] / static_cast<double>(replicas);
            const double var = sq[i] / static_cast<double>(replicas) - mean * mean;
            csv << format_double(grid[i]) << ',' << format_double(mean) << ','
                << format_double(mean_indegree(params, r, grid[i])) << ','
                << format_double(std::sqrt(std::max(0.0, var) / static_cast<double>(replicas)))
                << "\n";
        }
    } else if (check == "tail") {
        std::vector<double> lambdas;
        for (double l = 2.0; l <= 12.0; l += 1.0) lambdas.push_back(l);
        const auto result = tail_bound_check(params, r, s, lambdas, replicas, seed);
        csv << "# fitted_log_slope=" << format_double(result.fitted_log_slope) << "\n";
        csv << "lambda,exceedance\n";
        for (const auto& row : result.rows)
            csv << format_double(row.lambda) << ',' << format_double(row.exceedance) << "\n";
    } else if (check == "moments") {
        const double s_prime = num("s_prime", s);
        const std::vector<double> p_grid{0.5, 1.0, 2.0};
        const auto checks = moment_ratio_check(params, r, s, s_prime, p_grid, replicas, seed);
        csv << "p,bucket,samples,ratio_over_bound\n";
        for (const auto& check_row : checks)
            for (const auto& bucket : check_row.buckets)
                csv << format_double(check_row.p) << ',' << bucket.z_at_s << ','
                    << bucket.samples << ',' << format_double(bucket.ratio_over_bound) << "\n";
    } else {
        throw std::invalid_argument("unknown check: " + check);
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial preferential attachment network toolkit"};
    app.require_subcommand(1);

    std::string config, t_view = "growth", mode = "ring-skip", seed = "0", out, graph_path;
    double t = 1000.0;
    auto* generate = app.add_subcommand("generate", "Sample a graph and write it to a file");
    generate->add_option("--config", config)->required();
    generate->add_option("--t", t)->required();
    generate->add_option("--view", t_view);
    generate->add_option("--mode", mode);
    generate->add_option("--seed", seed);
    generate->add_option("--out", out)->required();

    std::string p_grid = "0.2";
    std::int64_t finite_k = 100;
    auto* perc = app.add_subcommand("percolate", "Vertex percolation and component statistics");
    perc->add_option("--graph", graph_path)->required();
    perc->add_option("--p", p_grid);
    perc->add_option("--seed", seed);
    perc->add_option("--k", finite_k);
    perc->add_option("--out", out)->required();

    std::string report = "degrees";
    double top_fraction = 0.05, alpha = 0.0, p_single = 0.2;
    std::int64_t sample = 10000, pairs = 200, samples = 100;
    int core_k = 1;
    auto* analyze = app.add_subcommand("analyze", "Degree, clustering, length, distance, and core reports");
    analyze->add_option("--graph", graph_path)->required();
    analyze->add_option("--report", report)->required();
    analyze->add_option("--out", out)->required();
    analyze->add_option("--top-fraction", top_fraction);
    analyze->add_option("--sample", sample);
    analyze->add_option("--pairs", pairs);
    analyze->add_option("--core-k", core_k);
    analyze->add_option("--alpha", alpha);
    analyze->add_option("--seed", seed);

    std::string perc_seed = "0";
    auto* pathlab_cmd = app.add_subcommand("pathlab", "Quick paths, splittings, and traces");
    pathlab_cmd->add_option("--graph", graph_path)->required();
    pathlab_cmd->add_option("--perc-seed", perc_seed);
    pathlab_cmd->add_option("--p", p_single);
    pathlab_cmd->add_option("--samples", samples);
    pathlab_cmd->add_option("--out", out)->required();

    std::string check = "mean";
    auto* indeg = app.add_subcommand("indegree", "Indegree birth-process checks");
    indeg->add_option("--check", check)->required();
    indeg->add_option("--config", config)->required();
    indeg->add_option("--out", out)->required();

    std::string out_dir;
    bool resume = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Percolation parameter sweep");
    sweep_cmd->add_option("--config", config)->required();
    sweep_cmd->add_option("--out-dir", out_dir)->required();
    sweep_cmd->add_flag("--resume", resume);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) return cmd_generate(config, t, t_view, mode, seed, out);
        if (*perc) return cmd_percolate(graph_path, p_grid, seed, finite_k, out);
        if (*analyze) {
            if (alpha == 0.0) alpha = 1.05;  // conservative default inside (1, admissible max)
            return cmd_analyze(graph_path, report, out, top_fraction, sample, pairs, core_k,
                               alpha, seed);
        }
        if (*pathlab_cmd) return cmd_pathlab(graph_path, perc_seed, p_single, samples, out);
        if (*indeg) return cmd_indegree(check, config, out);
        if (*sweep_cmd) {
            const auto outcome = run_sweep(load_sweep_config(config), out_dir, resume);
            std::cout << "wrote " << outcome.csv_path << " (" << outcome.rows.size()
                      << " rows, " << outcome.skipped.size() << " skipped)\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
