#include "spag/percolation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "spag/random.hpp"

namespace spag {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

PercolationResult percolate(const Graph& g, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("percolate: p must lie in [0,1]");
    PercolationResult r;
    r.p = p;
    r.retained.assign(g.n(), 0);
    r.component.assign(g.n(), -1);

    const PairMarkOracle oracle(seed);
    for (std::size_t v = 0; v < g.n(); ++v) {
        if (oracle.vertex_mark("perc", v) <= p) {
            r.retained[v] = 1;
            ++r.retained_count;
        }
    }

    UnionFind uf(g.n());
    for (const Edge& e : g.edges)
        if (r.retained[e.older] && r.retained[e.younger]) uf.unite(e.older, e.younger);

    std::vector<std::int64_t> root_to_component(g.n(), -1);
    for (std::size_t v = 0; v < g.n(); ++v) {
        if (!r.retained[v]) continue;
        const std::size_t root = uf.find(v);
        if (root_to_component[root] < 0) {
            root_to_component[root] = static_cast<std::int64_t>(r.sizes.size());
            r.sizes.push_back(0);
        }
        r.component[v] = root_to_component[root];
        ++r.sizes[static_cast<std::size_t>(r.component[v])];
    }
    return r;
}

ComponentStats component_stats(const PercolationResult& r) {
    ComponentStats s;
    s.count = static_cast<std::int64_t>(r.sizes.size());
    for (std::int64_t size : r.sizes) {
        if (size > s.largest) {
            s.second = s.largest;
            s.largest = size;
        } else if (size > s.second) {
            s.second = size;
        }
    }
    return s;
}

double fraction_connected_to_oldest(const PercolationResult& r, const Graph& g) {
    for (std::size_t v = 0; v < r.retained.size(); ++v) {
        if (!r.retained[v]) continue;
        return static_cast<double>(r.sizes[static_cast<std::size_t>(r.component[v])]) / g.t;
    }
    return 0.0;
}

double retained_fraction_to_oldest(const PercolationResult& r) {
    for (std::size_t v = 0; v < r.retained.size(); ++v) {
        if (!r.retained[v]) continue;
        return static_cast<double>(r.sizes[static_cast<std::size_t>(r.component[v])]) /
               static_cast<double>(r.retained_count);
    }
    return 0.0;
}

double finite_component_fraction(const PercolationResult& r, std::int64_t k) {
    if (k < 1) throw std::invalid_argument("finite_component_fraction: k must be >= 1");
    if (r.retained_count == 0) return 0.0;
    std::int64_t in_small = 0;
    for (std::int64_t size : r.sizes)
        if (size <= k) in_small += size;
    return static_cast<double>(in_small) / static_cast<double>(r.retained_count);
}

}  // namespace spag
