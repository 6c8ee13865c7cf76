#include "spag/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "spag/percolation.hpp"

namespace spag {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s) {
    const std::string v = trim(s);
    if (v == "inf") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("sweep config: bad number '" + v + "'");
    return x;
}

std::vector<double> parse_array(const std::string& s) {
    std::string v = trim(s);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') throw std::invalid_argument("sweep config: unterminated array");
        v = v.substr(1, v.size() - 2);
        std::vector<double> out;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
        if (out.empty()) throw std::invalid_argument("sweep config: empty array");
        return out;
    }
    return {parse_number(v)};
}

struct Cell {
    double gamma, delta, t;
    int d;
    std::string label;  // stable identifier, also the seed-stream label
};

std::vector<Cell> enumerate_cells(const SweepConfig& cfg) {
    std::vector<Cell> cells;
    for (double gamma : cfg.gamma)
        for (double delta : cfg.delta)
            for (int d : cfg.d)
                for (double t : cfg.t) {
                    Cell c{gamma, delta, t, d, ""};
                    c.label = "sweep gamma=" + format_double(gamma) +
                              " delta=" + format_double(delta) + " d=" + std::to_string(d) +
                              " t=" + format_double(t);
                    cells.push_back(std::move(c));
                }
    return cells;
}

}  // namespace

void SweepConfig::validate() const {
    if (replicas < 1) throw std::invalid_argument("sweep config: replicas must be >= 1");
    if (gamma.empty() || delta.empty() || d.empty() || t.empty() || p.empty())
        throw std::invalid_argument("sweep config: empty parameter grid");
    for (double gamma_v : gamma)
        for (double delta_v : delta)
            for (int d_v : d) {
                ModelParams params{d_v, gamma_v, beta.value_or(1.0 - gamma_v), delta_v, a};
                params.validate();
            }
    for (double p_v : p)
        if (!(p_v >= 0.0 && p_v <= 1.0))
            throw std::invalid_argument("sweep config: p values must lie in [0,1]");
    for (double t_v : t)
        if (!(t_v > 0.0)) throw std::invalid_argument("sweep config: t values must be positive");
}

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("sweep config: expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "gamma") cfg.gamma = parse_array(value);
        else if (key == "delta") cfg.delta = parse_array(value);
        else if (key == "d") {
            cfg.d.clear();
            for (double v : parse_array(value)) cfg.d.push_back(static_cast<int>(v));
        } else if (key == "t") cfg.t = parse_array(value);
        else if (key == "p") cfg.p = parse_array(value);
        else if (key == "replicas") cfg.replicas = static_cast<int>(parse_number(value));
        else if (key == "mode") cfg.mode = build_mode_from_string(value);
        else if (key == "seed") cfg.seed = parse_seed(value);
        else if (key == "finite_k") cfg.finite_k = static_cast<std::int64_t>(parse_number(value));
        else if (key == "a") cfg.a = parse_number(value);
        else if (key == "beta") cfg.beta = parse_number(value);
        else if (key == "max_points") cfg.max_expected_points = parse_number(value);
        // other keys are ignored so model configs can be reused
    }
    cfg.validate();
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep config: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_sweep_config(buffer.str());
}

std::string sweep_csv_header(std::int64_t finite_k) {
    return "gamma,delta,d,t,p,replica,seed,mode,largest_frac,second_frac,frac_to_oldest,"
           "frac_finite_k" + std::to_string(finite_k) + ",runtime_ms";
}

std::string format_sweep_row(const SweepRow& row) {
    std::string out;
    out += format_double(row.gamma);
    out += ',';
    out += format_double(row.delta);
    out += ',';
    out += std::to_string(row.d);
    out += ',';
    out += format_double(row.t);
    out += ',';
    out += format_double(row.p);
    out += ',';
    out += std::to_string(row.replica);
    out += ',';
    out += seed_to_hex(row.seed);
    out += ',';
    out += to_string(row.mode);
    out += ',';
    out += format_double(row.largest_frac);
    out += ',';
    out += format_double(row.second_frac);
    out += ',';
    out += format_double(row.frac_to_oldest);
    out += ',';
    out += format_double(row.frac_finite_k);
    out += ',';
    out += std::to_string(row.runtime_ms);
    return out;
}

SweepRow parse_sweep_row(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    if (fields.size() != 13) throw std::invalid_argument("sweep row: expected 13 fields");
    SweepRow row;
    row.gamma = parse_number(fields[0]);
    row.delta = parse_number(fields[1]);
    row.d = std::stoi(fields[2]);
    row.t = parse_number(fields[3]);
    row.p = parse_number(fields[4]);
    row.replica = std::stoi(fields[5]);
    row.seed = parse_seed(fields[6]);
    row.mode = build_mode_from_string(fields[7]);
    row.largest_frac = parse_number(fields[8]);
    row.second_frac = parse_number(fields[9]);
    row.frac_to_oldest = parse_number(fields[10]);
    row.frac_finite_k = parse_number(fields[11]);
    row.runtime_ms = std::stoll(fields[12]);
    return row;
}

SweepOutcome run_sweep(const SweepConfig& cfg, const std::string& out_dir, bool resume,
                       int threads) {
    cfg.validate();
    const auto wall_start = std::chrono::steady_clock::now();
    const auto cells = enumerate_cells(cfg);
    fs::create_directories(fs::path(out_dir) / "cells");

    if (threads <= 0) {
        if (const char* env = std::getenv("SPAG_THREADS")) threads = std::atoi(env);
        if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }

    struct Task {
        std::size_t cell;
        int replica;
        fs::path fragment;
    };
    std::vector<Task> tasks;
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        for (int rep = 0; rep < cfg.replicas; ++rep)
            tasks.push_back({ci, rep,
                             fs::path(out_dir) / "cells" /
                                 ("cell" + std::to_string(ci) + "_rep" + std::to_string(rep) +
                                  ".csv")});

    auto run_task = [&](const Task& task) {
        if (resume && fs::exists(task.fragment) && fs::file_size(task.fragment) > 0) return;
        const Cell& cell = cells[task.cell];
        const std::uint64_t row_seed = SeedSpec{cfg.seed, cell.label, task.replica}.stream_key();
        std::string content;
        try {
            if (cell.t > cfg.max_expected_points)
                throw std::length_error("expected point count above the resource cap");
            const auto t0 = std::chrono::steady_clock::now();
            const ModelParams params{cell.d, cell.gamma, cfg.beta.value_or(1.0 - cell.gamma),
                                     cell.delta, cfg.a};
            const Graph g = build_graph(params, View::Growth, cell.t, row_seed, cfg.mode);
            for (double p : cfg.p) {
                const auto r = percolate(g, p, row_seed);
                const auto stats = component_stats(r);
                SweepRow row;
                row.gamma = cell.gamma;
                row.delta = cell.delta;
                row.d = cell.d;
                row.t = cell.t;
                row.p = p;
                row.replica = task.replica;
                row.seed = row_seed;
                row.mode = cfg.mode;
                row.largest_frac = static_cast<double>(stats.largest) / cell.t;
                row.second_frac = static_cast<double>(stats.second) / cell.t;
                row.frac_to_oldest = fraction_connected_to_oldest(r, g);
                row.frac_finite_k = finite_component_fraction(r, cfg.finite_k);
                row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count();
                content += format_sweep_row(row) + "\n";
            }
        } catch (const std::length_error& e) {
            content = std::string("# skipped: ") + e.what() + "\n";
        }
        const fs::path tmp = task.fragment.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            out << content;
        }
        fs::rename(tmp, task.fragment);
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            run_task(tasks[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // Deterministic assembly in task order.
    SweepOutcome outcome;
    outcome.csv_path = (fs::path(out_dir) / "results.csv").string();
    outcome.manifest_path = (fs::path(out_dir) / "manifest.json").string();
    std::ofstream csv(outcome.csv_path, std::ios::binary);
    csv << sweep_csv_header(cfg.finite_k) << "\n";
    for (const Task& task : tasks) {
        std::ifstream in(task.fragment);
        if (!in) throw std::runtime_error("missing sweep fragment: " + task.fragment.string());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line[0] == '#') {
                outcome.skipped.push_back(cells[task.cell].label + " replica " +
                                          std::to_string(task.replica) + ": " + line.substr(1));
                continue;
            }
            csv << line << "\n";
            outcome.rows.push_back(parse_sweep_row(line));
        }
    }
    csv.close();

    nlohmann::json manifest;
    manifest["version"] = "spag 1.0";
    manifest["seed"] = seed_to_hex(cfg.seed);
    manifest["mode"] = to_string(cfg.mode);
    manifest["replicas"] = cfg.replicas;
    manifest["gamma"] = cfg.gamma;
    manifest["delta"] = cfg.delta;
    manifest["d"] = cfg.d;
    manifest["t"] = cfg.t;
    manifest["p"] = cfg.p;
    manifest["finite_k"] = cfg.finite_k;
    manifest["rows"] = outcome.rows.size();
    manifest["skipped"] = outcome.skipped;
    manifest["wall_time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - wall_start)
                                   .count();
    std::ofstream mf(outcome.manifest_path, std::ios::binary);
    mf << manifest.dump(2) << "\n";
    return outcome;
}

}  // namespace spag
