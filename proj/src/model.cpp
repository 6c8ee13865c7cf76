#include "spag/model.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace spag {

void ModelParams::validate() const {
    if (d < 1) throw std::invalid_argument("ModelParams: d must be >= 1");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("ModelParams: gamma must lie in (0,1)");
    if (!(beta > 0.0)) throw std::invalid_argument("ModelParams: beta must be positive");
    if (!(delta > 1.0)) throw std::invalid_argument("ModelParams: delta must be > 1");
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("ModelParams: a must lie in (0,1)");
}

double attachment_value(const ModelParams& params, long long k) {
    if (k < 0) throw std::invalid_argument("attachment_value: k must be >= 0");
    return params.gamma * static_cast<double>(k) + params.beta;
}

double unit_ball_volume(int d) {
    return std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double normalization_constant(const ModelParams& params) {
    params.validate();
    double vd = unit_ball_volume(params.d);
    if (params.exponential_profile()) return vd * params.a;
    return vd * params.a / (params.delta - 1.0);
}

double profile_value(const ModelParams& params, double u) {
    if (u < 0.0) throw std::invalid_argument("profile_value: u must be >= 0");
    double mu = normalization_constant(params);
    double v = mu * u;
    if (params.exponential_profile()) return params.a * std::exp(-v);
    return params.a * std::pow(1.0 + v, -params.delta);
}

double tau(const ModelParams& params) { return 1.0 + 1.0 / params.gamma; }

PhaseVerdict classify_phase(const ModelParams& params) {
    params.validate();
    // delta/(1+delta) -> 1 and (delta-1)/delta -> 1 as delta -> inf.
    double robust_bound =
        params.exponential_profile() ? 1.0 : params.delta / (1.0 + params.delta);
    if (params.gamma > robust_bound)
        return {Phase::Robust, "gamma > delta/(1+delta)"};
    if (params.gamma < 0.5) return {Phase::NonRobust, "gamma < 1/2"};
    if (params.d == 1) {
        double bound = params.exponential_profile() ? 1.0 : (params.delta - 1.0) / params.delta;
        if (params.gamma < bound)
            return {Phase::NonRobust, "d=1 and gamma < (delta-1)/delta"};
    }
    return {Phase::Unknown, "between known robust and non-robust regions"};
}

std::string to_string(Phase phase) {
    switch (phase) {
        case Phase::Robust: return "Robust";
        case Phase::NonRobust: return "NonRobust";
        default: return "Unknown";
    }
}

ModelParams parse_model_params(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    ModelParams p;
    bool have_beta = false;
    for (const auto& [key, value] : kv) {
        if (key == "d") p.d = std::stoi(value);
        else if (key == "gamma") p.gamma = std::stod(value);
        else if (key == "beta") { p.beta = std::stod(value); have_beta = true; }
        else if (key == "delta")
            p.delta = (value == "inf") ? std::numeric_limits<double>::infinity()
                                       : std::stod(value);
        else if (key == "a") p.a = std::stod(value);
        // other keys belong to sweep configs sharing the same file
    }
    if (!have_beta) p.beta = 1.0 - p.gamma;
    p.validate();
    return p;
}

ModelParams load_model_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_params(buf.str());
}

}  // namespace spag
