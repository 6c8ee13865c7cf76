#ifndef SPAG_MODEL_HPP
#define SPAG_MODEL_HPP

#include <limits>
#include <string>

namespace spag {

// Parameters of the spatial preferential attachment model. The attachment
// rule is the affine f(k) = gamma*k + beta; the profile function is the
// Pareto family a*(1+u)^{-delta}, or a*exp(-u) when delta = +inf, rescaled
// so that x |-> phi(|x|^d) integrates to 1 over R^d. The point process
// intensity is fixed to 1 by the usual time change.
struct ModelParams {
    int d = 1;
    double gamma = 0.5;
    double beta = 0.5;
    double delta = 2.0;  // +inf selects the exponential profile
    double a = 0.5;

    void validate() const;  // throws std::invalid_argument on bad parameters

    bool exponential_profile() const {
        return delta == std::numeric_limits<double>::infinity();
    }
};

enum class Phase { Robust, NonRobust, Unknown };

struct PhaseVerdict {
    Phase phase = Phase::Unknown;
    std::string criterion;  // the inequality that decided the verdict
};

// f(k) = gamma*k + beta.
double attachment_value(const ModelParams& params, long long k);

// Normalizing constant mu with int phi0(|x|^d) dx = mu over R^d, in closed
// form: V_d * a/(delta-1) for the Pareto profile, V_d * a for the
// exponential one, where V_d is the volume of the d-dimensional unit ball.
double normalization_constant(const ModelParams& params);

// Normalized profile phi(u) = phi0(mu*u); nonincreasing with values in (0,1).
double profile_value(const ModelParams& params, double u);

// Power-law exponent of the degree distribution, tau = 1 + 1/gamma.
double tau(const ModelParams& params);

// Phase of the (gamma, delta, d) point: robust when gamma > delta/(1+delta),
// non-robust when gamma < 1/2 or (d = 1 and gamma < (delta-1)/delta), and
// unknown in between.
PhaseVerdict classify_phase(const ModelParams& params);

// Volume of the d-dimensional Euclidean unit ball.
double unit_ball_volume(int d);

// Read parameters from a key=value config file (keys d, gamma, beta, delta,
// a; delta accepts the literal "inf"). Unknown keys are ignored so model and
// sweep settings can share one file.
ModelParams load_model_params(const std::string& path);
ModelParams parse_model_params(const std::string& text);

std::string to_string(Phase phase);

}  // namespace spag

#endif
