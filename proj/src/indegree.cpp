#include "spag/indegree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "spag/analysis.hpp"

namespace spag {

std::int64_t BirthProcessPath::value_at(double s) const {
    return std::upper_bound(jump_times.begin(), jump_times.end(), s) - jump_times.begin();
}

BirthProcessPath simulate_birth_process(const ModelParams& params, double r, double horizon,
                                        const SeedSpec& seed) {
    params.validate();
    if (!(r > 0.0) || r > horizon)
        throw std::invalid_argument("simulate_birth_process: need 0 < r <= horizon");
    BirthProcessPath path;
    path.birth_time = r;
    // In l = ln s the rate between jumps is the constant f(k), so waiting
    // times are plain exponentials.
    double l = std::log(r);
    const double l_end = std::log(horizon);
    CounterRng rng(seed);
    std::int64_t k = 0;
    while (true) {
        l += rng.exponential() / attachment_value(params, k);
        if (l > l_end) break;
        path.jump_times.push_back(std::exp(l));
        ++k;
    }
    return path;
}

double mean_indegree(const ModelParams& params, double r, double s) {
    return params.beta / params.gamma * (std::pow(s / r, params.gamma) - 1.0);
}

TailCheck tail_bound_check(const ModelParams& params, double r, double s,
                           const std::vector<double>& lambda_grid, std::int64_t replicas,
                           std::uint64_t seed) {
    if (!(r < s)) throw std::invalid_argument("tail_bound_check: need r < s");
    if (replicas < 1000) throw std::invalid_argument("tail_bound_check: need >= 1000 replicas");
    const double scale = std::pow(s / r, params.gamma);
    std::vector<std::int64_t> exceed(lambda_grid.size(), 0);
    for (std::int64_t rep = 0; rep < replicas; ++rep) {
        const auto path =
            simulate_birth_process(params, r, s, SeedSpec{seed, "indegree-tail", rep});
        const auto z = static_cast<double>(path.value_at(s));
        for (std::size_t i = 0; i < lambda_grid.size(); ++i)
            if (z >= lambda_grid[i] * scale) ++exceed[i];
    }
    TailCheck out;
    std::vector<SurvivalPoint> fit;
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        const double frac = static_cast<double>(exceed[i]) / static_cast<double>(replicas);
        out.rows.push_back({lambda_grid[i], frac});
        // Slope fitted in lambda itself (the bound is exponential in
        // lambda): reuse the log-linear fitter with exp(lambda) abscissa.
        if (frac > 0.0 && lambda_grid[i] > 0.0) fit.push_back({std::exp(lambda_grid[i]), frac});
    }
    out.fitted_log_slope = log_log_slope(fit);
    return out;
}

std::vector<MomentCheck> moment_ratio_check(const ModelParams& params, double r, double s,
                                            double s_prime, const std::vector<double>& p_grid,
                                            std::int64_t replicas, std::uint64_t seed,
                                            std::int64_t min_samples) {
    if (!(r < s && s <= s_prime))
        throw std::invalid_argument("moment_ratio_check: need r < s <= s_prime");
    // Per conditioning value: sample count and, per p, the running sum of
    // ((1+Z(s'))/(1+Z(s)))^p.
    std::map<std::int64_t, std::pair<std::int64_t, std::vector<double>>> buckets;
    for (std::int64_t rep = 0; rep < replicas; ++rep) {
        const auto path =
            simulate_birth_process(params, r, s_prime, SeedSpec{seed, "indegree-moments", rep});
        const auto z_s = path.value_at(s);
        const auto z_sp = path.value_at(s_prime);
        auto& [count, sums] = buckets[z_s];
        if (sums.empty()) sums.assign(p_grid.size(), 0.0);
        ++count;
        const double base = static_cast<double>(1 + z_sp) / static_cast<double>(1 + z_s);
        for (std::size_t i = 0; i < p_grid.size(); ++i) sums[i] += std::pow(base, p_grid[i]);
    }
    std::vector<MomentCheck> out;
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        MomentCheck check;
        check.p = p_grid[i];
        const double bound = std::pow(s_prime / s, p_grid[i] * params.gamma);
        for (const auto& [z, data] : buckets) {
            if (data.first < min_samples) continue;
            const double mean = data.second[i] / static_cast<double>(data.first);
            check.buckets.push_back({z, data.first, mean / bound});
            check.max_ratio_over_bound = std::max(check.max_ratio_over_bound, mean / bound);
        }
        out.push_back(std::move(check));
    }
    return out;
}

}  // namespace spag
