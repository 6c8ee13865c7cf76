#ifndef SPAG_SWEEP_HPP
#define SPAG_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spag/generator.hpp"

namespace spag {

// Parameter grid for a percolation sweep. The cell grid is the product
// gamma x delta x d x t; the p grid is evaluated within each cell on the
// same replica graphs, so percolation results are monotonically coupled in
// p row-wise.
struct SweepConfig {
    std::vector<double> gamma{0.5};
    std::vector<double> delta{2.0};
    std::vector<int> d{1};
    std::vector<double> t{1000.0};
    std::vector<double> p{0.2};
    int replicas = 1;
    BuildMode mode = BuildMode::RingSkip;
    std::uint64_t seed = 0;
    std::int64_t finite_k = 100;      // component-size cutoff for frac_finite_k
    double a = 0.5;
    std::optional<double> beta;       // absent -> 1 - gamma per cell
    double max_expected_points = 5e7; // resource cap; larger cells are skipped

    void validate() const;
};

// Line-based key=value config with array syntax, e.g. gamma=[0.2,0.5,0.8].
// Unknown keys are ignored; delta accepts the literal "inf".
SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

struct SweepRow {
    double gamma = 0.5;
    double delta = 2.0;
    int d = 1;
    double t = 0.0;
    double p = 0.0;
    int replica = 0;
    std::uint64_t seed = 0;
    BuildMode mode = BuildMode::RingSkip;
    double largest_frac = 0.0;
    double second_frac = 0.0;
    double frac_to_oldest = 0.0;
    double frac_finite_k = 0.0;
    std::int64_t runtime_ms = 0;
};

std::string sweep_csv_header(std::int64_t finite_k);
std::string format_sweep_row(const SweepRow& row);
SweepRow parse_sweep_row(const std::string& line);

struct SweepOutcome {
    std::vector<SweepRow> rows;         // deterministic cell-major order
    std::vector<std::string> skipped;   // "<cell label>: <reason>" entries
    std::string csv_path;
    std::string manifest_path;
};

// Run the sweep with a worker pool (threads = 0 reads SPAG_THREADS, falling
// back to the hardware concurrency). Each (cell, replica) task writes an
// atomic fragment file under <out_dir>/cells/, so an interrupted sweep can
// be resumed; the final CSV and JSON manifest are assembled from fragments
// in deterministic order, independent of the worker count.
SweepOutcome run_sweep(const SweepConfig& cfg, const std::string& out_dir, bool resume = false,
                       int threads = 0);

}  // namespace spag

#endif
