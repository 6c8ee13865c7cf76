#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "spag/generator.hpp"
#include "spag/percolation.hpp"

using namespace spag;

namespace {

// A hand-built graph: two triangles sharing no vertex plus two isolated
// vertices, 8 vertices total, births ascending with the ids.
Graph hand_graph() {
    Graph g;
    g.view = View::Growth;
    g.t = 8.0;
    g.params = {1, 0.5, 0.5, 2.0, 0.5};
    for (int i = 0; i < 8; ++i) {
        g.vertices.push_back({TorusPoint({i / 10.0}, 1.0), (i + 1) * 0.9});
    }
    g.edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}};
    g.indegree_at_end = {2, 1, 0, 2, 1, 0, 0, 0};
    return g;
}

}  // namespace

TEST_CASE("p=1 keeps everything, p=0 keeps nothing") {
    const Graph g = hand_graph();
    const auto all = percolate(g, 1.0, 42);
    CHECK(all.retained_count == 8);
    CHECK(component_stats(all).largest == 3);
    CHECK(component_stats(all).count == 4);  // two triangles + two singletons

    const auto none = percolate(g, 0.0, 42);
    CHECK(none.retained_count == 0);
    CHECK(none.sizes.empty());
    for (auto c : none.component) CHECK(c == -1);
}

TEST_CASE("component statistics on the hand graph") {
    const auto r = percolate(hand_graph(), 1.0, 42);
    const auto st = component_stats(r);
    CHECK(st.largest == 3);
    CHECK(st.second == 3);
    // Partition identity: sizes add up to the retained count.
    CHECK(std::accumulate(r.sizes.begin(), r.sizes.end(), std::int64_t{0}) ==
          r.retained_count);
}

TEST_CASE("retention rate matches its binomial confidence interval") {
    // 1e5 isolated vertices at p = 0.3: the retained count is
    // Binomial(1e5, 0.3); a six-sigma window is [29520, 30480].
    Graph g;
    g.view = View::Growth;
    g.t = 1e5;
    g.params = {1, 0.5, 0.5, 2.0, 0.5};
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        g.vertices.push_back({TorusPoint({0.0}, 1.0), i + 0.5});
    }
    g.indegree_at_end.assign(n, 0);
    const auto r = percolate(g, 0.3, 7);
    CHECK(r.retained_count >= 29520);
    CHECK(r.retained_count <= 30480);
    // Every retained vertex is its own component here.
    CHECK(static_cast<std::int64_t>(r.sizes.size()) == r.retained_count);
}

TEST_CASE("increasing p only adds retained vertices") {
    ModelParams params{1, 0.6, 0.4, 2.0, 0.5};
    const Graph g = build_graph(params, View::Stationary, 2000.0, 13, BuildMode::RingExact);
    PercolationResult prev = percolate(g, 0.0, 99);
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        const auto cur = percolate(g, p, 99);
        for (std::size_t v = 0; v < g.n(); ++v) {
            if (prev.retained[v]) CHECK(cur.retained[v]);
        }
        CHECK(cur.retained_count >= prev.retained_count);
        // Partition identity at every level.
        CHECK(std::accumulate(cur.sizes.begin(), cur.sizes.end(), std::int64_t{0}) ==
              cur.retained_count);
        prev = cur;
    }
}

TEST_CASE("component ids are consistent with the edge structure") {
    ModelParams params{2, 0.7, 0.3, 1.5, 0.5};
    const Graph g = build_graph(params, View::Stationary, 1000.0, 21, BuildMode::RingExact);
    const auto r = percolate(g, 0.6, 5);
    for (const Edge& e : g.edges) {
        if (r.retained[e.older] && r.retained[e.younger]) {
            CHECK(r.component[e.older] == r.component[e.younger]);
        }
    }
    for (std::size_t v = 0; v < g.n(); ++v) {
        CHECK((r.component[v] >= 0) == static_cast<bool>(r.retained[v]));
    }
}

TEST_CASE("fraction connected to the oldest retained vertex") {
    const Graph g = hand_graph();
    const auto r = percolate(g, 1.0, 42);
    // Oldest vertex 0 lives in a triangle; t = 8.
    CHECK(fraction_connected_to_oldest(r, g) == doctest::Approx(3.0 / 8.0));
    CHECK(retained_fraction_to_oldest(r) == doctest::Approx(3.0 / 8.0));

    const auto none = percolate(g, 0.0, 42);
    CHECK(fraction_connected_to_oldest(none, g) == 0.0);
}

TEST_CASE("finite-component fraction") {
    const auto r = percolate(hand_graph(), 1.0, 42);
    CHECK(finite_component_fraction(r, 1) == doctest::Approx(2.0 / 8.0));
    CHECK(finite_component_fraction(r, 2) == doctest::Approx(2.0 / 8.0));
    CHECK(finite_component_fraction(r, 3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(finite_component_fraction(r, 0), std::invalid_argument);
}

TEST_CASE("percolation is deterministic in the seed") {
    ModelParams params{1, 0.5, 0.5, 2.0, 0.5};
    const Graph g = build_graph(params, View::Growth, 500.0, 8, BuildMode::Naive);
    const auto a = percolate(g, 0.4, 17);
    const auto b = percolate(g, 0.4, 17);
    CHECK(a.retained == b.retained);
    CHECK(a.component == b.component);
    const auto c = percolate(g, 0.4, 18);
    CHECK(a.retained != c.retained);
}
