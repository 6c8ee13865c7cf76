#ifndef SPAG_GENERATOR_HPP
#define SPAG_GENERATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spag/graph.hpp"
#include "spag/model.hpp"
#include "spag/random.hpp"

namespace spag {

enum class BuildMode { Naive, RingExact, RingSkip };

BuildMode build_mode_from_string(const std::string& s);
std::string to_string(BuildMode mode);

struct BuildStats {
    std::uint64_t pair_evaluations = 0;   // full-probability evaluations
    std::uint64_t skip_candidates = 0;    // candidates surfaced by skip sampling
    std::uint64_t dominating_violations = 0;  // p_true > p_bar events (must be 0)
};

// Precomputed attachment kernel: the edge probability for a younger vertex
// with birth clock s testing an older vertex at distance `dist` that has
// indegree k. Nondecreasing in k, nonincreasing in dist.
class ConnectionKernel {
public:
    explicit ConnectionKernel(const ModelParams& params);
    double probability(double s_younger, double dist, long long older_indegree) const;
    const ModelParams& params() const { return params_; }

private:
    ModelParams params_;
    double mu_;
};

// Edge probability of the construction rule. Growth view: the clock is the
// younger birth in (0,t] and the metric lives on the unit torus; stationary
// view: births in (0,1] and the volume-t torus metric. Throws if the age
// order is violated.
double connection_probability(const ModelParams& params, View view, double t,
                              const SpaceTimePoint& older, long long older_indegree,
                              const SpaceTimePoint& younger);

// Build the network on a fixed, birth-sorted point set with marks supplied
// by the oracle. Naive enumerates all older vertices; RingExact enumerates
// them through the cell grid but evaluates every pair (edge-identical to
// Naive); RingSkip thins a per-annulus dominating bound with geometric skip
// sampling (equal in distribution, not mark-coupled). `seed` is recorded in
// the header and keys the skip-sampling stream.
Graph build_graph_from_points(const ModelParams& params, View view, double t,
                              std::vector<SpaceTimePoint> points,
                              const PairMarkOracle& oracle, BuildMode mode,
                              std::uint64_t seed, BuildStats* stats = nullptr);

// Sample the Poisson point set for the requested view and build the graph.
Graph build_graph(const ModelParams& params, View view, double t, std::uint64_t seed,
                  BuildMode mode, BuildStats* stats = nullptr);

// Map every vertex through the space-time rescaling; edges are untouched.
// Forward goes growth -> stationary; inverse the other way. Throws on view
// mismatch.
Graph rescale_graph(const Graph& g, RescaleDirection dir);

}  // namespace spag

#endif
