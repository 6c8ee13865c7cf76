#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "spag/generator.hpp"
#include "spag/graph.hpp"
#include "spag/random.hpp"

using namespace spag;

namespace {

std::string graph_text(const Graph& g) {
    std::ostringstream out;
    write_graph(g, out);
    return out.str();
}

// Two-sample Kolmogorov-Smirnov distance; CDFs are compared only at
// complete distinct values so tied atoms are handled correctly.
double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        double x;
        if (i < a.size() && j < b.size()) x = std::min(a[i], b[j]);
        else if (i < a.size()) x = a[i];
        else x = b[j];
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

}  // namespace

TEST_CASE("connection probability hand value") {
    // d=1, gamma=beta=0.5, delta=2, a=0.5 gives mu=1; with the younger clock
    // at 10, distance 0.1 and indegree 2 the argument is 10*0.1/1.5 = 2/3 and
    // the probability 0.5*(1+2/3)^{-2} = 0.18.
    ModelParams p{1, 0.5, 0.5, 2.0, 0.5};
    SpaceTimePoint older{TorusPoint({0.0}, 1.0), 1.0};
    SpaceTimePoint younger{TorusPoint({0.1}, 1.0), 10.0};
    CHECK(connection_probability(p, View::Growth, 100.0, older, 2, younger) ==
          doctest::Approx(0.18));
}

TEST_CASE("connection probability properties") {
    ModelParams p{1, 0.5, 0.5, 2.0, 0.5};
    ConnectionKernel kernel(p);
    // Zero distance hits the profile at 0, which equals a.
    CHECK(kernel.probability(5.0, 0.0, 0) == doctest::Approx(p.a));
    // Nondecreasing in indegree, nonincreasing in distance and in clock.
    for (int k = 0; k < 20; ++k) {
        CHECK(kernel.probability(5.0, 0.2, k + 1) >= kernel.probability(5.0, 0.2, k));
    }
    CHECK(kernel.probability(5.0, 0.1, 0) > kernel.probability(5.0, 0.3, 0));
    CHECK(kernel.probability(2.0, 0.2, 0) > kernel.probability(8.0, 0.2, 0));

    // The age order is part of the contract.
    SpaceTimePoint older{TorusPoint({0.0}, 1.0), 3.0};
    SpaceTimePoint younger{TorusPoint({0.1}, 1.0), 2.0};
    CHECK_THROWS_AS(connection_probability(p, View::Growth, 10.0, older, 0, younger),
                    std::invalid_argument);
}

TEST_CASE("stationary view uses the volume-t torus") {
    ModelParams p{1, 0.5, 0.5, 2.0, 0.5};
    // Same displacement 0.1 on a torus of volume 100; clock 0.1, indegree 2:
    // argument 0.1*0.1/1.5 — identical to the growth-view hand value after
    // rescaling by t = 100.
    SpaceTimePoint older{TorusPoint({0.0}, 100.0), 0.01};
    SpaceTimePoint younger{TorusPoint({10.0}, 100.0), 0.1};
    CHECK(connection_probability(p, View::Stationary, 100.0, older, 2, younger) ==
          doctest::Approx(0.18));
}

TEST_CASE("naive and ring-exact builds are edge-identical") {
    const std::vector<ModelParams> cases = {
        {1, 0.5, 0.5, 2.0, 0.5},  {1, 0.8, 0.2, 1.5, 0.5}, {2, 0.6, 0.4, 2.5, 0.5},
        {2, 0.3, 0.7, 5.0, 0.5},  {3, 0.5, 0.5, 2.0, 0.3},
    };
    for (const auto& p : cases) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            for (View view : {View::Growth, View::Stationary}) {
                BuildStats sn, se;
                const Graph a = build_graph(p, view, 400.0, seed, BuildMode::Naive, &sn);
                const Graph b = build_graph(p, view, 400.0, seed, BuildMode::RingExact, &se);
                REQUIRE(graph_text(a) == graph_text(b));
                CHECK(sn.pair_evaluations == se.pair_evaluations);
                CHECK_NOTHROW(a.check_consistency());
            }
        }
    }
}

TEST_CASE("ring-skip never exceeds its dominating bound") {
    for (const ModelParams& p : {ModelParams{1, 0.7, 0.3, 1.5, 0.5},
                                 ModelParams{2, 0.5, 0.5, 3.0, 0.5}}) {
        BuildStats s;
        const Graph g = build_graph(p, View::Stationary, 3000.0, 5, BuildMode::RingSkip, &s);
        CHECK(s.dominating_violations == 0);
        CHECK(s.skip_candidates > 0);
        // Skip sampling must touch far fewer pairs than the n^2/2 a naive
        // build would evaluate.
        const double all_pairs = 0.5 * static_cast<double>(g.n()) * static_cast<double>(g.n());
        CHECK(static_cast<double>(s.pair_evaluations) < 0.5 * all_pairs);
        CHECK_NOTHROW(g.check_consistency());
    }
}

TEST_CASE("ring-skip matches the exact build in distribution") {
    // Compare edge counts across independent replicas; equality in
    // distribution at this size keeps the KS distance below the alpha=0.01
    // critical value 1.628*sqrt(2/120) = 0.21.
    ModelParams p{1, 0.6, 0.4, 2.0, 0.5};
    std::vector<double> exact, skip;
    for (std::uint64_t r = 0; r < 120; ++r) {
        exact.push_back(static_cast<double>(
            build_graph(p, View::Stationary, 250.0, 1000 + r, BuildMode::Naive).m()));
        skip.push_back(static_cast<double>(
            build_graph(p, View::Stationary, 250.0, 5000 + r, BuildMode::RingSkip).m()));
    }
    CHECK(ks_distance(exact, skip) < 0.21);
}

TEST_CASE("building commutes with rescaling") {
    ModelParams p{1, 0.5, 0.5, 2.0, 0.5};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Graph grown = build_graph(p, View::Growth, 300.0, seed, BuildMode::RingExact);
        // Rescale the sampled points first, then build on the volume-t torus
        // with the same mark oracle: the edge set must match exactly.
        const PairMarkOracle oracle(seed);
        std::vector<SpaceTimePoint> pts;
        for (const auto& v : grown.vertices) pts.push_back(rescale(v, grown.t, RescaleDirection::Forward));
        const Graph direct = build_graph_from_points(p, View::Stationary, grown.t, pts,
                                                     oracle, BuildMode::RingExact, seed);
        const Graph rescaled = rescale_graph(grown, RescaleDirection::Forward);
        CHECK(graph_text(rescaled) == graph_text(direct));
        // And the rescaling is its own inverse up to bit-exactness when t is
        // a power of two.
        const Graph back = rescale_graph(rescaled, RescaleDirection::Inverse);
        CHECK(back.view == View::Growth);
        CHECK(back.edges == grown.edges);
    }
}

TEST_CASE("degenerate inputs") {
    ModelParams p{1, 0.5, 0.5, 2.0, 0.5};
    // A horizon so small the point process is almost surely empty.
    const Graph g = build_graph(p, View::Growth, 1e-9, 3, BuildMode::RingSkip);
    CHECK(g.n() == 0);
    CHECK(g.m() == 0);
    // Unsorted births are rejected.
    std::vector<SpaceTimePoint> pts = {{TorusPoint({0.1}, 1.0), 0.9},
                                       {TorusPoint({0.2}, 1.0), 0.5}};
    PairMarkOracle oracle(1);
    CHECK_THROWS_AS(
        build_graph_from_points(p, View::Growth, 2.0, pts, oracle, BuildMode::Naive, 1),
        std::invalid_argument);
}

TEST_CASE("dropping the youngest vertices leaves an earlier snapshot") {
    // The construction only ever consults older state, so rebuilding on a
    // birth-prefix of the same point set with the same marks reproduces the
    // induced graph on those vertices.
    ModelParams p{1, 0.5, 0.5, 2.0, 0.5};
    const std::uint64_t seed = 11;
    const PairMarkOracle oracle(seed);
    auto pts = sample_poisson_points(1, 1.0, 400.0, 1.0, SeedSpec{seed, "points", 0});
    const Graph full =
        build_graph_from_points(p, View::Growth, 400.0, pts, oracle, BuildMode::Naive, seed);
    std::vector<SpaceTimePoint> prefix(pts.begin(), pts.begin() + pts.size() / 2);
    const Graph half =
        build_graph_from_points(p, View::Growth, 400.0, prefix, oracle, BuildMode::Naive, seed);
    std::vector<Edge> restricted;
    for (const Edge& e : full.edges) {
        if (e.younger < half.n()) restricted.push_back(e);
    }
    CHECK(restricted == half.edges);
}
