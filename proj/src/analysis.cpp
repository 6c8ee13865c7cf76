#include "spag/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "spag/random.hpp"

namespace spag {

double tail_exponent(const std::vector<double>& samples, double top_fraction) {
    if (!(top_fraction > 0.0 && top_fraction < 1.0))
        throw std::invalid_argument("tail_exponent: top_fraction must lie in (0,1)");
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    const auto k = static_cast<std::size_t>(
        std::floor(top_fraction * static_cast<double>(sorted.size())));
    if (k < 100 || k >= sorted.size())
        throw std::invalid_argument("tail_exponent: need at least 100 tail samples above the cut");
    const double threshold = sorted[k];
    if (!(threshold > 0.0))
        throw std::invalid_argument("tail_exponent: nonpositive tail threshold");
    double mean_log = 0.0;
    for (std::size_t i = 0; i < k; ++i) mean_log += std::log(sorted[i] / threshold);
    mean_log /= static_cast<double>(k);
    if (!(mean_log > 0.0))
        throw std::invalid_argument("tail_exponent: degenerate tail (no spread above the cut)");
    return 1.0 + 1.0 / mean_log;
}

double tail_exponent_of_degrees(const Graph& g, double top_fraction) {
    const auto adj = g.adjacency();
    // Continuity correction: integer degrees tie heavily at the tail cut,
    // which biases the estimator upward; uniform jitter de-ties them without
    // moving the tail index. Seeded by the graph so the estimate is
    // deterministic.
    CounterRng rng(SeedSpec{g.seed, "degree-jitter", 0});
    std::vector<double> degrees(g.n());
    for (std::size_t v = 0; v < g.n(); ++v)
        degrees[v] = static_cast<double>(adj[v].size()) + rng.uniform();
    return tail_exponent(degrees, top_fraction);
}

double average_clustering(const Graph& g, std::size_t sample_size, std::uint64_t seed) {
    if (g.n() == 0) throw std::invalid_argument("average_clustering: empty graph");
    const auto adj = g.adjacency();
    std::vector<std::uint32_t> eligible;
    for (std::uint32_t v = 0; v < g.n(); ++v)
        if (adj[v].size() >= 2) eligible.push_back(v);
    if (eligible.empty()) return 0.0;

    if (sample_size < eligible.size()) {
        // Partial Fisher-Yates: the first sample_size entries become a
        // uniform sample without replacement.
        CounterRng rng(SeedSpec{seed, "clustering-sample", 0});
        for (std::size_t i = 0; i < sample_size; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(rng.uniform() * static_cast<double>(eligible.size() - i));
            std::swap(eligible[i], eligible[std::min(j, eligible.size() - 1)]);
        }
        eligible.resize(sample_size);
    }

    auto connected = [&](std::uint32_t a, std::uint32_t b) {
        const auto& na = adj[a].size() <= adj[b].size() ? adj[a] : adj[b];
        const std::uint32_t needle = adj[a].size() <= adj[b].size() ? b : a;
        return std::binary_search(na.begin(), na.end(), needle);
    };

    double total = 0.0;
    for (std::uint32_t v : eligible) {
        const auto& nv = adj[v];
        std::int64_t closed = 0;
        for (std::size_t i = 0; i < nv.size(); ++i)
            for (std::size_t j = i + 1; j < nv.size(); ++j)
                if (connected(nv[i], nv[j])) ++closed;
        const double wedges =
            static_cast<double>(nv.size()) * static_cast<double>(nv.size() - 1) / 2.0;
        total += static_cast<double>(closed) / wedges;
    }
    return total / static_cast<double>(eligible.size());
}

std::vector<SurvivalPoint> edge_length_survival(const Graph& g,
                                                const std::vector<double>& thresholds) {
    if (g.view != View::Stationary)
        throw std::invalid_argument(
            "edge_length_survival: requires the stationary view (growth-view lengths are "
            "not comparable across t)");
    std::vector<double> longest(g.n(), -1.0);  // -1 marks isolated vertices
    for (const Edge& e : g.edges) {
        const double len = torus_distance(g.vertices[e.older].position,
                                          g.vertices[e.younger].position, g.torus_volume());
        longest[e.older] = std::max(longest[e.older], len);
        longest[e.younger] = std::max(longest[e.younger], len);
    }
    std::vector<SurvivalPoint> curve;
    curve.reserve(thresholds.size());
    for (double k : thresholds) {
        std::int64_t over = 0;
        for (double len : longest)
            if (len > k) ++over;
        curve.push_back({k, g.n() == 0 ? 0.0
                                       : static_cast<double>(over) / static_cast<double>(g.n())});
    }
    return curve;
}

double log_log_slope(const std::vector<SurvivalPoint>& curve) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::int64_t n = 0;
    for (const auto& pt : curve) {
        if (!(pt.threshold > 0.0 && pt.fraction > 0.0)) continue;
        const double x = std::log(pt.threshold);
        const double y = std::log(pt.fraction);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("log_log_slope: need at least 2 positive points");
    const double den = static_cast<double>(n) * sxx - sx * sx;
    return (static_cast<double>(n) * sxy - sx * sy) / den;
}

DistanceSample distance_sample(const Graph& g, const std::vector<char>* retained_mask,
                               std::int64_t pairs, std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("distance_sample: pairs must be >= 1");
    const auto adj = g.adjacency();
    std::vector<std::uint32_t> pool;
    for (std::uint32_t v = 0; v < g.n(); ++v)
        if (!retained_mask || (*retained_mask)[v]) pool.push_back(v);
    DistanceSample out;
    if (pool.empty()) return out;

    CounterRng rng(SeedSpec{seed, "distance-sample", 0});
    std::vector<int> dist(g.n());
    std::vector<std::uint32_t> touched;
    for (std::int64_t i = 0; i < pairs; ++i) {
        const std::uint32_t from =
            pool[static_cast<std::size_t>(rng.uniform() * static_cast<double>(pool.size()))];
        std::uint32_t to = from;
        while (to == from && pool.size() > 1) {
            to = pool[static_cast<std::size_t>(rng.uniform() *
                                               static_cast<double>(pool.size()))];
        }
        if (from == to) {
            out.hops.push_back(0);  // single-vertex pool
            continue;
        }
        for (std::uint32_t v : touched) dist[v] = 0;
        touched.clear();
        std::queue<std::uint32_t> frontier;
        dist[from] = 1;  // stored as hops+1 so 0 means unvisited
        touched.push_back(from);
        frontier.push(from);
        int found = -1;
        while (!frontier.empty() && found < 0) {
            const std::uint32_t v = frontier.front();
            frontier.pop();
            for (std::uint32_t w : adj[v]) {
                if (dist[w] != 0) continue;
                if (retained_mask && !(*retained_mask)[w]) continue;
                dist[w] = dist[v] + 1;
                touched.push_back(w);
                if (w == to) {
                    found = dist[w] - 1;
                    break;
                }
                frontier.push(w);
            }
        }
        if (found >= 0)
            out.hops.push_back(found);
        else
            ++out.unreachable;
    }
    return out;
}

std::vector<std::uint32_t> indegree_at_time(const Graph& g, double time) {
    std::vector<std::uint32_t> indeg(g.n(), 0);
    for (const Edge& e : g.edges) {
        if (g.vertices[e.younger].birth > time) break;  // edges are in younger-birth order
        ++indeg[e.older];
    }
    return indeg;
}

double default_good_correction(double u) {
    const double l = std::log1p(u);
    return (1.0 + l) * (1.0 + l);
}

CoreReport core_report(const Graph& g, int k, double alpha,
                       const std::function<double(double)>& g_function) {
    if (g.view != View::Stationary)
        throw std::invalid_argument("core_report: requires the stationary view");
    const PhaseVerdict verdict = classify_phase(g.params);
    if (verdict.phase != Phase::Robust)
        throw std::invalid_argument(
            "core_report: the old-vertex core construction presumes the robust phase "
            "(gamma > delta/(1+delta)); got " + verdict.criterion);
    const double alpha_max = g.params.gamma / (g.params.delta * (1.0 - g.params.gamma));
    if (!(alpha > 1.0 && alpha < alpha_max))
        throw std::invalid_argument("core_report: alpha must lie in (1, gamma/(delta*(1-gamma)))");
    if (k < 1) throw std::invalid_argument("core_report: k must be >= 1");

    const auto correction = g_function ? g_function : default_good_correction;
    CoreReport report;
    report.k = k;
    report.alpha = alpha;
    report.birth_cutoff = std::pow(g.t, -1.0 / std::pow(alpha, k));

    const auto half_indeg = indegree_at_time(g, 0.5);
    for (std::uint32_t v = 0; v < g.n(); ++v) {
        const double s = g.vertices[v].birth;
        const double threshold = std::pow(s, -g.params.gamma) / correction(1.0 / s);
        if (static_cast<double>(half_indeg[v]) >= threshold) {
            report.good_vertex_ids.push_back(v);
            if (s < report.birth_cutoff) report.core_ids.push_back(v);
        }
    }

    const auto adj = g.adjacency();
    const int bound = 4 * k + 4;
    std::vector<char> in_core(g.n(), 0);
    for (std::uint32_t v : report.core_ids) in_core[v] = 1;

    // Pairwise distances via BFS from each core vertex over the full graph.
    std::vector<int> dist(g.n());
    for (std::uint32_t src : report.core_ids) {
        std::fill(dist.begin(), dist.end(), 0);
        std::queue<std::uint32_t> frontier;
        dist[src] = 1;
        frontier.push(src);
        while (!frontier.empty()) {
            const std::uint32_t v = frontier.front();
            frontier.pop();
            for (std::uint32_t w : adj[v]) {
                if (dist[w] != 0) continue;
                dist[w] = dist[v] + 1;
                frontier.push(w);
            }
        }
        for (std::uint32_t other : report.core_ids) {
            if (other <= src) continue;
            if (dist[other] == 0) {
                report.pairwise_distance_bound_ok = false;
                report.max_core_distance = -1;
            } else if (report.max_core_distance >= 0) {
                const int d = dist[other] - 1;
                report.max_core_distance = std::max(report.max_core_distance, d);
                if (d > bound) report.pairwise_distance_bound_ok = false;
            }
        }
    }

    // Two-connection diagnostic: pairs joined through a late-born common
    // neighbor.
    if (report.core_ids.size() >= 2) {
        std::vector<std::vector<std::uint32_t>> late_neighbors(report.core_ids.size());
        for (std::size_t i = 0; i < report.core_ids.size(); ++i)
            for (std::uint32_t w : adj[report.core_ids[i]])
                if (g.vertices[w].birth > 0.5) late_neighbors[i].push_back(w);
        std::int64_t joined = 0, total = 0;
        for (std::size_t i = 0; i < report.core_ids.size(); ++i) {
            for (std::size_t j = i + 1; j < report.core_ids.size(); ++j) {
                ++total;
                const auto& a = late_neighbors[i];
                const auto& b = late_neighbors[j];
                std::size_t ia = 0, ib = 0;
                while (ia < a.size() && ib < b.size()) {
                    if (a[ia] < b[ib]) ++ia;
                    else if (a[ia] > b[ib]) ++ib;
                    else { ++joined; break; }
                }
            }
        }
        report.two_connected_fraction =
            static_cast<double>(joined) / static_cast<double>(total);
    }
    return report;
}

}  // namespace spag
