#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "spag/geometry.hpp"
#include "spag/random.hpp"

using namespace spag;

TEST_CASE("coordinates are canonicalized into the fundamental domain") {
    CHECK(wrap_coord(0.5, 1.0) == doctest::Approx(0.5));    // right edge included
    CHECK(wrap_coord(-0.5, 1.0) == doctest::Approx(0.5));   // left edge wraps
    CHECK(wrap_coord(0.75, 1.0) == doctest::Approx(-0.25));
    CHECK(wrap_coord(-1.25, 1.0) == doctest::Approx(-0.25));
    TorusPoint p({1.3}, 1.0);
    CHECK(p.coords[0] == doctest::Approx(0.3));
}

TEST_CASE("torus distance hand values") {
    CHECK(torus_distance(TorusPoint({0.4}, 1.0), TorusPoint({-0.4}, 1.0), 1.0) ==
          doctest::Approx(0.2));  // wrap-around beats direct 0.8
    CHECK(torus_distance(TorusPoint({0.4, 0.4}, 1.0), TorusPoint({-0.4, -0.4}, 1.0), 1.0) ==
          doctest::Approx(std::sqrt(0.08)));
    const TorusPoint x({0.123, -0.321}, 1.0);
    CHECK(torus_distance(x, x, 1.0) == 0.0);
}

TEST_CASE("torus distance matches brute-force shift enumeration") {
    // Independent oracle: minimize the Euclidean distance over all 3^d
    // whole-torus shifts of the second point.
    CounterRng rng(SeedSpec{42, "geom-test", 0});
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + trial % 3;
        const double volume = trial % 2 ? 1.0 : 7.3;
        const double side = std::pow(volume, 1.0 / d);
        std::vector<double> a(d), b(d);
        for (int i = 0; i < d; ++i) {
            a[i] = (rng.uniform() - 0.5) * side;
            b[i] = (rng.uniform() - 0.5) * side;
        }
        const TorusPoint x(a, volume), y(b, volume);
        double best = 1e300;
        std::vector<int> shift(d, -1);
        while (true) {
            double sq = 0;
            for (int i = 0; i < d; ++i) {
                const double diff = x.coords[i] - (y.coords[i] + shift[i] * side);
                sq += diff * diff;
            }
            best = std::min(best, std::sqrt(sq));
            int i = 0;
            for (; i < d && shift[i] == 1; ++i) shift[i] = -1;
            if (i == d) break;
            ++shift[i];
        }
        CHECK(torus_distance(x, y, volume) == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("torus distance is symmetric, bounded, and satisfies the triangle inequality") {
    CounterRng rng(SeedSpec{43, "geom-test", 0});
    for (int trial = 0; trial < 200; ++trial) {
        const double volume = 2.5;
        auto random_point = [&] {
            return TorusPoint({(rng.uniform() - 0.5) * 2.5, (rng.uniform() - 0.5) * 2.5}, volume);
        };
        const auto x = random_point(), y = random_point(), z = random_point();
        const double xy = torus_distance(x, y, volume);
        CHECK(xy == torus_distance(y, x, volume));
        CHECK(xy <= std::sqrt(2.0) / 2.0 * std::sqrt(volume) + 1e-12);
        CHECK(xy <= torus_distance(x, z, volume) + torus_distance(z, y, volume) + 1e-12);
    }
}

TEST_CASE("torus distance rejects dimension mismatch") {
    CHECK_THROWS_AS(torus_distance(TorusPoint({0.1}, 1.0), TorusPoint({0.1, 0.2}, 1.0), 1.0),
                    std::invalid_argument);
}

TEST_CASE("rescale hand values") {
    {
        const auto q = rescale({TorusPoint({0.25, -0.25}, 1.0), 8.0}, 16.0,
                               RescaleDirection::Forward);
        CHECK(q.position.coords[0] == doctest::Approx(1.0));
        CHECK(q.position.coords[1] == doctest::Approx(-1.0));
        CHECK(q.birth == doctest::Approx(0.5));
    }
    {
        const auto q = rescale({TorusPoint({0.25}, 1.0), 50.0}, 100.0, RescaleDirection::Forward);
        CHECK(q.position.coords[0] == doctest::Approx(25.0));
        CHECK(q.birth == doctest::Approx(0.5));
    }
    {
        const auto q = rescale({TorusPoint({0.37}, 1.0), 0.9}, 1.0, RescaleDirection::Forward);
        CHECK(q.position.coords[0] == doctest::Approx(0.37));
        CHECK(q.birth == doctest::Approx(0.9));
    }
}

TEST_CASE("rescale round-trips, bit-exactly for power-of-two scale factors") {
    CounterRng rng(SeedSpec{44, "geom-test", 0});
    for (int trial = 0; trial < 100; ++trial) {
        const double t = trial % 2 ? 256.0 : 123.7;  // 256^{1/1} and 256^{1/2} are powers of two
        const int d = 1 + trial % 2;
        std::vector<double> c(d);
        for (int i = 0; i < d; ++i) c[i] = rng.uniform() - 0.5 + 1e-9;
        const SpaceTimePoint p{TorusPoint(c, 1.0), rng.uniform() * t};
        const auto back = rescale(rescale(p, t, RescaleDirection::Forward), t,
                                  RescaleDirection::Inverse);
        for (int i = 0; i < d; ++i) {
            if (trial % 2)
                CHECK(back.position.coords[i] == p.position.coords[i]);
            else
                CHECK(back.position.coords[i] == doctest::Approx(p.position.coords[i]).epsilon(1e-12));
        }
        CHECK(back.birth == doctest::Approx(p.birth).epsilon(1e-12));
    }
}

TEST_CASE("rescaling scales the metric by t^{1/d}") {
    CounterRng rng(SeedSpec{45, "geom-test", 0});
    const double t = 37.5;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + trial % 3;
        std::vector<double> a(d), b(d);
        for (int i = 0; i < d; ++i) {
            a[i] = rng.uniform() - 0.5 + 1e-9;
            b[i] = rng.uniform() - 0.5 + 1e-9;
        }
        const SpaceTimePoint x{TorusPoint(a, 1.0), 0.5 * t}, y{TorusPoint(b, 1.0), 0.7 * t};
        const auto hx = rescale(x, t, RescaleDirection::Forward);
        const auto hy = rescale(y, t, RescaleDirection::Forward);
        CHECK(torus_distance(hx.position, hy.position, t) ==
              doctest::Approx(std::pow(t, 1.0 / d) *
                              torus_distance(x.position, y.position, 1.0))
                  .epsilon(1e-12));
    }
}

TEST_CASE("rescale validates the birth range") {
    CHECK_THROWS_AS(rescale({TorusPoint({0.1}, 1.0), 20.0}, 10.0, RescaleDirection::Forward),
                    std::invalid_argument);  // growth birth must be in (0,t]
    CHECK_THROWS_AS(rescale({TorusPoint({0.1}, 1.0), 2.0}, 10.0, RescaleDirection::Inverse),
                    std::invalid_argument);  // stationary birth must be in (0,1]
}
