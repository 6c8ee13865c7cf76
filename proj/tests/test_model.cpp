#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spag/model.hpp"
#include "spag/random.hpp"

using namespace spag;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Numerical oracle for the normalizing constant: integrate phi0(|x|^d) over
// R^d radially, int = d*V_d * int_0^inf r^{d-1} phi0(r^d) dr, by adaptive-ish
// fine trapezoids on a log grid.
double quadrature_mu(const ModelParams& p) {
    const double vd = unit_ball_volume(p.d);
    auto phi0 = [&](double u) {
        return p.exponential_profile() ? p.a * std::exp(-u)
                                       : p.a * std::pow(1.0 + u, -p.delta);
    };
    auto integrand = [&](double r) { return std::pow(r, p.d - 1) * phi0(std::pow(r, p.d)); };
    double total = 0.0;
    double lo = 1e-12;
    const double hi = p.exponential_profile() ? 1e3 : 1e12;
    const int steps_per_decade = 2000;
    while (lo < hi) {
        const double next = std::min(hi, lo * std::pow(10.0, 1.0 / steps_per_decade));
        total += 0.5 * (integrand(lo) + integrand(next)) * (next - lo);
        lo = next;
    }
    // Add the [0, 1e-12] sliver where the integrand is ~ a r^{d-1}.
    total += p.a * std::pow(1e-12, p.d) / p.d;
    return p.d * vd * total;
}

}  // namespace

TEST_CASE("attachment rule is affine and nondecreasing") {
    ModelParams p{1, 0.5, 0.5, 2.0, 0.5};
    CHECK(attachment_value(p, 0) == doctest::Approx(0.5));
    CHECK(attachment_value(p, 2) == doctest::Approx(1.5));
    CHECK(std::abs(attachment_value(p, 1000000) / 1e6 - p.gamma) < 1e-6);
}

TEST_CASE("normalization constant closed forms") {
    CHECK(normalization_constant({1, 0.5, 0.5, 2.0, 0.5}) == doctest::Approx(1.0));
    CHECK(normalization_constant({2, 0.5, 0.5, 2.0, 0.5}) ==
          doctest::Approx(std::acos(-1.0) * 0.5));
    CHECK(normalization_constant({1, 0.5, 0.5, kInf, 0.5}) == doctest::Approx(1.0));
}

TEST_CASE("normalization constant agrees with quadrature") {
    CounterRng rng(SeedSpec{21, "model-test", 0});
    for (int trial = 0; trial < 20; ++trial) {
        ModelParams p;
        p.d = 1 + trial % 3;
        p.gamma = 0.2 + 0.6 * rng.uniform();
        p.beta = 1.0 - p.gamma;
        p.delta = trial % 5 == 4 ? kInf : 1.5 + 3.0 * rng.uniform();
        p.a = 0.1 + 0.8 * rng.uniform();
        const double rel = p.exponential_profile() ? 1e-6 : 1e-4;  // slow power tails
        CHECK(normalization_constant(p) == doctest::Approx(quadrature_mu(p)).epsilon(rel));
    }
}

TEST_CASE("normalized profile integrates to one") {
    // With phi(u) = phi0(mu*u), int phi(|x|^d) dx = mu_of_phi0 / mu = 1.
    CounterRng rng(SeedSpec{22, "model-test", 0});
    for (int trial = 0; trial < 10; ++trial) {
        ModelParams p;
        p.d = 1 + trial % 2;
        p.gamma = 0.5;
        p.beta = 0.5;
        p.delta = 1.5 + 3.0 * rng.uniform();
        p.a = 0.2 + 0.6 * rng.uniform();
        const double vd = unit_ball_volume(p.d);
        auto integrand = [&](double r) {
            return std::pow(r, p.d - 1) * profile_value(p, std::pow(r, p.d));
        };
        double total = 0.0, lo = 1e-12;
        while (lo < 1e12) {
            const double next = std::min(1e12, lo * std::pow(10.0, 1.0 / 2000));
            total += 0.5 * (integrand(lo) + integrand(next)) * (next - lo);
            lo = next;
        }
        CHECK(p.d * vd * total == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("profile values") {
    ModelParams p{1, 0.5, 0.5, 2.0, 0.5};  // mu = 1
    CHECK(profile_value(p, 1.0) == doctest::Approx(0.125));
    CHECK(profile_value(p, 0.0) == doctest::Approx(0.5));
    CHECK(profile_value({2, 0.5, 0.5, 3.0, 0.3}, 0.0) == doctest::Approx(0.3));
    CounterRng rng(SeedSpec{23, "model-test", 0});
    for (int i = 0; i < 100; ++i) {
        const double u1 = rng.uniform() * 10.0, u2 = u1 + rng.uniform() * 10.0;
        CHECK(profile_value(p, u1) >= profile_value(p, u2));
        CHECK(profile_value(p, u1) > 0.0);
        CHECK(profile_value(p, u1) < 1.0);
    }
}

TEST_CASE("power-law exponent") {
    CHECK(tau({1, 0.5, 0.5, 2.0, 0.5}) == doctest::Approx(3.0));
    CHECK(tau({1, 0.75, 0.25, 2.0, 0.5}) == doctest::Approx(1.0 + 1.0 / 0.75));
    CHECK(tau({1, 0.999, 0.001, 2.0, 0.5}) > 2.0);
}

TEST_CASE("phase classification") {
    CHECK(classify_phase({2, 0.8, 0.2, 1.2, 0.5}).phase == Phase::Robust);      // 0.8 > 0.5454
    CHECK(classify_phase({1, 0.3, 0.7, 3.0, 0.5}).phase == Phase::NonRobust);   // 0.3 < 1/2 and < 2/3
    CHECK(classify_phase({2, 0.55, 0.45, 4.0, 0.5}).phase == Phase::Unknown);   // 0.55 in [0.5, 0.8]
    // d=1 criterion active beyond gamma >= 1/2: gamma=0.6, delta=3 gives
    // (delta-1)/delta = 2/3 > 0.6 but delta/(1+delta) = 0.75.
    CHECK(classify_phase({1, 0.6, 0.4, 3.0, 0.5}).phase == Phase::NonRobust);
    CHECK(classify_phase({2, 0.6, 0.4, 3.0, 0.5}).phase == Phase::Unknown);
    // Exponential profile (delta = inf): never robust, non-robust iff gamma < 1/2 (d>1).
    CHECK(classify_phase({2, 0.3, 0.7, kInf, 0.5}).phase == Phase::NonRobust);

    // Boundary strictness.
    const double b = 2.0 / 3.0;  // delta/(1+delta) at delta=2
    CHECK(classify_phase({2, b + 1e-12, 1.0 - b, 2.0, 0.5}).phase == Phase::Robust);
    CHECK(classify_phase({2, b - 1e-12, 1.0 - b, 2.0, 0.5}).phase == Phase::Unknown);

    CHECK(!classify_phase({1, 0.3, 0.7, 3.0, 0.5}).criterion.empty());
}

TEST_CASE("phase regions never overlap") {
    // The robust and non-robust criteria are mutually exclusive because
    // (delta-1)/delta < delta/(1+delta) for delta > 1.
    CounterRng rng(SeedSpec{24, "model-test", 0});
    for (int i = 0; i < 2000; ++i) {
        ModelParams p;
        p.d = 1 + i % 3;
        p.gamma = 0.01 + 0.98 * rng.uniform();
        p.beta = 1.0 - p.gamma;
        p.delta = 1.0 + 5.0 * rng.uniform();
        p.a = 0.5;
        const bool robust = p.gamma > p.delta / (1.0 + p.delta);
        const bool nonrobust =
            p.gamma < 0.5 || (p.d == 1 && p.gamma < (p.delta - 1.0) / p.delta);
        CHECK(!(robust && nonrobust));
        const Phase expected =
            robust ? Phase::Robust : (nonrobust ? Phase::NonRobust : Phase::Unknown);
        CHECK(classify_phase(p).phase == expected);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ModelParams({1, 1.5, 0.5, 2.0, 0.5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams({1, 0.5, -0.1, 2.0, 0.5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams({1, 0.5, 0.5, 0.9, 0.5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams({1, 0.5, 0.5, 2.0, 1.5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams({0, 0.5, 0.5, 2.0, 0.5}).validate(), std::invalid_argument);
    CHECK_NOTHROW(ModelParams({3, 0.5, 0.5, kInf, 0.5}).validate());
}

TEST_CASE("config parsing") {
    const auto p = parse_model_params("d=2\ngamma=0.6\ndelta=inf\na=0.4\n# comment\n");
    CHECK(p.d == 2);
    CHECK(p.gamma == doctest::Approx(0.6));
    CHECK(p.beta == doctest::Approx(0.4));  // defaults to 1 - gamma
    CHECK(p.exponential_profile());
    CHECK(p.a == doctest::Approx(0.4));

    const auto q = parse_model_params("gamma=0.7\nbeta=0.9\ndelta=2.5\n");
    CHECK(q.beta == doctest::Approx(0.9));
    CHECK(q.d == 1);

    // Unknown keys (e.g. sweep knobs in a shared file) are ignored.
    CHECK_NOTHROW(parse_model_params("gamma=0.5\ndelta=2\nreplicas=10\n"));
}
