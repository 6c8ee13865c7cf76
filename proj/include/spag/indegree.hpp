#ifndef SPAG_INDEGREE_HPP
#define SPAG_INDEGREE_HPP

#include <cstdint>
#include <vector>

#include "spag/model.hpp"
#include "spag/random.hpp"

namespace spag {

// One path of the indegree process of a vertex born at time r: a pure birth
// process with jump rate f(Z(s-))/s at time s, simulated exactly in
// logarithmic time where it is homogeneous between jumps.
struct BirthProcessPath {
    double birth_time = 0.0;
    std::vector<double> jump_times;  // increasing, in (birth_time, horizon]

    std::int64_t value_at(double s) const;  // Z(s) = number of jumps <= s
};

BirthProcessPath simulate_birth_process(const ModelParams& params, double r, double horizon,
                                        const SeedSpec& seed);

// Closed-form mean E[Z(s)] = (beta/gamma) ((s/r)^gamma - 1).
double mean_indegree(const ModelParams& params, double r, double s);

struct TailRow {
    double lambda = 0.0;
    double exceedance = 0.0;  // empirical P(Z(s) >= lambda (s/r)^gamma)
};

struct TailCheck {
    std::vector<TailRow> rows;
    double fitted_log_slope = 0.0;  // least-squares slope of log exceedance in lambda
};

// Monte Carlo check of the exponential tail bound
// P(Z(s) >= lambda (s/r)^gamma) <= c exp(-lambda/8).
TailCheck tail_bound_check(const ModelParams& params, double r, double s,
                           const std::vector<double>& lambda_grid, std::int64_t replicas,
                           std::uint64_t seed);

struct MomentBucket {
    std::int64_t z_at_s = 0;      // conditioning value Z(s)
    std::int64_t samples = 0;
    double ratio_over_bound = 0;  // E[((1+Z(s'))/(1+Z(s)))^p | bucket] / (s'/s)^{p gamma}
};

struct MomentCheck {
    double p = 0.0;
    std::vector<MomentBucket> buckets;  // only buckets meeting min_samples
    double max_ratio_over_bound = 0.0;
};

// Monte Carlo check of the conditional moment bound
// E[((1+Z(s'))/(1+Z(s)))^p | Z(s)] <= c_p (s'/s)^{p gamma},
// bucketed by the conditioning value.
std::vector<MomentCheck> moment_ratio_check(const ModelParams& params, double r, double s,
                                            double s_prime, const std::vector<double>& p_grid,
                                            std::int64_t replicas, std::uint64_t seed,
                                            std::int64_t min_samples = 100);

}  // namespace spag

#endif
