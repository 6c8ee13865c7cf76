#ifndef SPAG_PERCOLATION_HPP
#define SPAG_PERCOLATION_HPP

#include <cstdint>
#include <vector>

#include "spag/graph.hpp"

namespace spag {

// Bernoulli vertex percolation outcome. Vertex v is retained iff its "perc"
// mark is <= p, so results for increasing p on the same seed are
// monotonically coupled.
struct PercolationResult {
    double p = 0.0;
    std::vector<char> retained;             // per-vertex mask
    std::vector<std::int64_t> component;    // component id per vertex, -1 if dropped
    std::vector<std::int64_t> sizes;        // size per component id
    std::int64_t retained_count = 0;
};

struct ComponentStats {
    std::int64_t largest = 0;
    std::int64_t second = 0;
    std::int64_t count = 0;
};

PercolationResult percolate(const Graph& g, double p, std::uint64_t seed);

ComponentStats component_stats(const PercolationResult& r);

// Size of the component containing the oldest retained vertex, divided by
// the graph's time scale t (the estimator of p times the limit density of
// the infinite percolated component). 0 when nothing is retained.
double fraction_connected_to_oldest(const PercolationResult& r, const Graph& g);

// Same numerator divided by the retained count instead of t.
double retained_fraction_to_oldest(const PercolationResult& r);

// Fraction of retained vertices in components of size <= k. Throws on k < 1.
double finite_component_fraction(const PercolationResult& r, std::int64_t k);

}  // namespace spag

#endif
