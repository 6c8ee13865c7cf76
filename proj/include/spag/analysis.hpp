#ifndef SPAG_ANALYSIS_HPP
#define SPAG_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "spag/graph.hpp"

namespace spag {

// Hill estimate of the power-law exponent of the upper tail, using the top
// `top_fraction` order statistics. Requires at least 100 samples strictly
// above the cut; throws std::invalid_argument otherwise (e.g. constant
// input has no tail).
double tail_exponent(const std::vector<double>& samples, double top_fraction = 0.05);

// Hill estimate on the (total) degree sequence, with a uniform-jitter
// continuity correction for the integer ties at the cut; deterministic given
// the graph's recorded seed.
double tail_exponent_of_degrees(const Graph& g, double top_fraction = 0.05);

// Mean local clustering coefficient over up to sample_size vertices of
// degree >= 2 (exact when sample_size >= n); deterministic given the seed.
double average_clustering(const Graph& g, std::size_t sample_size, std::uint64_t seed);

struct SurvivalPoint {
    double threshold = 0.0;
    double fraction = 0.0;  // fraction of vertices incident to an edge longer than threshold
};

// Empirical edge-length survival curve. Stationary view only (growth-view
// lengths all live on the unit torus and are not comparable across t).
std::vector<SurvivalPoint> edge_length_survival(const Graph& g,
                                                const std::vector<double>& thresholds);

// Least-squares slope of log(fraction) against log(threshold), over curve
// points with positive coordinates.
double log_log_slope(const std::vector<SurvivalPoint>& curve);

struct DistanceSample {
    std::vector<int> hops;          // BFS distances of connected sampled pairs
    std::int64_t unreachable = 0;   // sampled pairs in different components
};

// BFS hop distances between uniformly sampled vertex pairs. When a retained
// mask is given, both sampling and paths are restricted to retained
// vertices.
DistanceSample distance_sample(const Graph& g, const std::vector<char>* retained_mask,
                               std::int64_t pairs, std::uint64_t seed);

// Indegree of every vertex at the given construction-clock time, replayed
// from the birth-ordered edge list.
std::vector<std::uint32_t> indegree_at_time(const Graph& g, double time);

// Sub-polynomial correction used in the old-vertex indegree threshold.
double default_good_correction(double u);

struct CoreReport {
    int k = 0;
    double alpha = 0.0;
    double birth_cutoff = 0.0;                  // t^{-1/alpha^k}
    std::vector<std::uint32_t> good_vertex_ids;
    std::vector<std::uint32_t> core_ids;        // good vertices with birth < cutoff
    bool pairwise_distance_bound_ok = true;     // all core pairs within 4k+4 hops
    int max_core_distance = 0;                  // -1 if some pair is disconnected
    // Fraction of core pairs joined by a 2-hop path through a vertex born
    // after time 1/2 (1.0 when fewer than two core vertices).
    double two_connected_fraction = 1.0;
};

// Old-vertex core diagnostics on a stationary-view graph with robust-phase
// parameters. A vertex born at s is good when its indegree at time 1/2 is
// >= s^{-gamma}/g(1/s); the core keeps good vertices with s < t^{-1/alpha^k}.
// alpha must lie in (1, gamma/(delta*(1-gamma))). Throws std::invalid_argument
// on wrong view, non-robust parameters, or alpha out of range.
CoreReport core_report(const Graph& g, int k, double alpha,
                       const std::function<double(double)>& g_function = {});

}  // namespace spag

#endif
