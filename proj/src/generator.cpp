#include "spag/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace spag {

BuildMode build_mode_from_string(const std::string& s) {
    if (s == "naive") return BuildMode::Naive;
    if (s == "ring-exact") return BuildMode::RingExact;
    if (s == "ring-skip") return BuildMode::RingSkip;
    throw std::invalid_argument("unknown build mode: " + s);
}

std::string to_string(BuildMode mode) {
    switch (mode) {
        case BuildMode::Naive: return "naive";
        case BuildMode::RingExact: return "ring-exact";
        case BuildMode::RingSkip: return "ring-skip";
    }
    throw std::logic_error("bad build mode");
}

ConnectionKernel::ConnectionKernel(const ModelParams& params) : params_(params) {
    params_.validate();
    mu_ = normalization_constant(params_);
}

double ConnectionKernel::probability(double s_younger, double dist,
                                     long long older_indegree) const {
    const double u = s_younger * std::pow(dist, params_.d) /
                     attachment_value(params_, older_indegree);
    const double v = mu_ * u;
    if (params_.exponential_profile()) return params_.a * std::exp(-v);
    return params_.a * std::pow(1.0 + v, -params_.delta);
}

double connection_probability(const ModelParams& params, View view, double t,
                              const SpaceTimePoint& older, long long older_indegree,
                              const SpaceTimePoint& younger) {
    if (!(older.birth < younger.birth))
        throw std::invalid_argument("connection_probability: older vertex must be born first");
    if (older_indegree < 0)
        throw std::invalid_argument("connection_probability: negative indegree");
    const double volume = view == View::Growth ? 1.0 : t;
    ConnectionKernel kernel(params);
    return kernel.probability(younger.birth,
                              torus_distance(older.position, younger.position, volume),
                              older_indegree);
}

namespace {

// -------------------------------------------------------------------------
// Cell grid over the torus. Cells are C^d axis-aligned boxes; a Chebyshev
// cell ring at radius l only contains points at torus distance
// >= (l-1)*cell_side from anything in the center cell, which is the distance
// bound the skip sampler's dominating probability rests on.

class CellGrid {
public:
    CellGrid(int dim, double side, std::size_t expected_points) : dim_(dim), side_(side) {
        const double target = std::max(1.0, static_cast<double>(expected_points) / 4.0);
        cells_per_side_ = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::floor(std::pow(target, 1.0 / dim))));
        cell_side_ = side_ / static_cast<double>(cells_per_side_);
        std::size_t total = 1;
        for (int i = 0; i < dim_; ++i) total *= static_cast<std::size_t>(cells_per_side_);
        members_.resize(total);
        max_indegree_.assign(total, -1);
    }

    std::int64_t cells_per_side() const { return cells_per_side_; }
    double cell_side() const { return cell_side_; }
    std::size_t cell_count() const { return members_.size(); }
    // Largest Chebyshev ring radius with distinct cells.
    std::int64_t max_ring() const { return cells_per_side_ / 2; }

    std::vector<std::int64_t> cell_of(const TorusPoint& p) const {
        std::vector<std::int64_t> c(dim_);
        for (int i = 0; i < dim_; ++i) {
            auto idx = static_cast<std::int64_t>(
                std::floor((p.coords[i] + side_ / 2.0) / cell_side_));
            c[i] = std::clamp<std::int64_t>(idx, 0, cells_per_side_ - 1);
        }
        return c;
    }

    std::size_t flat(const std::vector<std::int64_t>& cell) const {
        std::size_t id = 0;
        for (int i = dim_ - 1; i >= 0; --i)
            id = id * static_cast<std::size_t>(cells_per_side_) + static_cast<std::size_t>(cell[i]);
        return id;
    }

    std::size_t wrapped_flat(const std::vector<std::int64_t>& center,
                             const std::vector<std::int64_t>& offset) const {
        std::size_t id = 0;
        for (int i = dim_ - 1; i >= 0; --i) {
            std::int64_t c = (center[i] + offset[i]) % cells_per_side_;
            if (c < 0) c += cells_per_side_;
            id = id * static_cast<std::size_t>(cells_per_side_) + static_cast<std::size_t>(c);
        }
        return id;
    }

    void insert(std::uint32_t id, std::size_t cell) { members_[cell].push_back(id); }

    void note_indegree(std::size_t cell, std::int64_t k) {
        max_indegree_[cell] = std::max(max_indegree_[cell], k);
    }

    const std::vector<std::uint32_t>& members(std::size_t cell) const { return members_[cell]; }
    std::int64_t max_indegree(std::size_t cell) const { return max_indegree_[cell]; }

    // Offsets of every distinct cell, grouped by Chebyshev ring radius.
    // Offsets per coordinate cover one complete residue system, so each cell
    // of the torus appears exactly once across all rings.
    std::vector<std::vector<std::vector<std::int64_t>>> rings_by_radius() const {
        const std::int64_t lo = -(cells_per_side_ / 2);
        const std::int64_t hi = lo + cells_per_side_ - 1;
        std::vector<std::vector<std::vector<std::int64_t>>> rings(
            static_cast<std::size_t>(max_ring()) + 1);
        std::vector<std::int64_t> offset(dim_, lo);
        while (true) {
            std::int64_t radius = 0;
            for (int i = 0; i < dim_; ++i) radius = std::max(radius, std::abs(offset[i]));
            rings[static_cast<std::size_t>(radius)].push_back(offset);
            int i = 0;
            for (; i < dim_; ++i) {
                if (offset[i] < hi) {
                    ++offset[i];
                    break;
                }
                offset[i] = lo;
            }
            if (i == dim_) break;
        }
        return rings;
    }

private:
    int dim_;
    double side_;
    std::int64_t cells_per_side_;
    double cell_side_;
    std::vector<std::vector<std::uint32_t>> members_;
    std::vector<std::int64_t> max_indegree_;  // -1 when empty
};

// -------------------------------------------------------------------------
// One-dimensional index structures for the fast skip sampler: a Fenwick tree
// of occupant counts supporting k-th occupant selection, and a segment tree
// of per-cell running maximum indegrees supporting range max queries.

class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

    void add(std::size_t i, std::int64_t delta) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
    }

    std::int64_t prefix(std::int64_t i) const {  // sum of [0, i]
        std::int64_t s = 0;
        for (std::int64_t j = i + 1; j > 0; j -= j & (-j)) s += tree_[static_cast<std::size_t>(j)];
        return s;
    }

    std::int64_t range(std::int64_t l, std::int64_t r) const {
        return prefix(r) - (l > 0 ? prefix(l - 1) : 0);
    }

    // Smallest index with prefix sum >= target (target >= 1).
    std::size_t find(std::int64_t target) const {
        std::size_t pos = 0;
        std::size_t mask = 1;
        while (mask * 2 < tree_.size()) mask *= 2;
        for (; mask > 0; mask /= 2) {
            std::size_t next = pos + mask;
            if (next < tree_.size() && tree_[next] < target) {
                pos = next;
                target -= tree_[next];
            }
        }
        return pos;  // 0-based cell index
    }

private:
    std::vector<std::int64_t> tree_;
};

class MaxSegTree {
public:
    explicit MaxSegTree(std::size_t n) {
        size_ = 1;
        while (size_ < n) size_ *= 2;
        tree_.assign(2 * size_, -1);
    }

    void raise(std::size_t i, std::int64_t value) {
        i += size_;
        if (tree_[i] >= value) return;
        tree_[i] = value;
        for (i /= 2; i >= 1; i /= 2) tree_[i] = std::max(tree_[2 * i], tree_[2 * i + 1]);
    }

    std::int64_t range_max(std::int64_t l, std::int64_t r) const {  // inclusive
        std::int64_t best = -1;
        std::size_t lo = static_cast<std::size_t>(l) + size_;
        std::size_t hi = static_cast<std::size_t>(r) + size_;
        while (lo <= hi) {
            if (lo % 2 == 1) best = std::max(best, tree_[lo++]);
            if (hi % 2 == 0) best = std::max(best, tree_[hi--]);
            if (lo > hi) break;
            lo /= 2;
            hi /= 2;
        }
        return best;
    }

private:
    std::size_t size_;
    std::vector<std::int64_t> tree_;
};

// Number of failures before the next success of a Bernoulli(p) sequence,
// clamped so callers can add it to an index without overflow.
std::uint64_t geometric_skip(CounterRng& rng, double p, std::uint64_t clamp) {
    const double u = rng.uniform();
    const double g = std::floor(std::log1p(-u) / std::log1p(-p));
    if (!(g >= 0.0)) return 0;
    if (g >= static_cast<double>(clamp)) return clamp;
    return static_cast<std::uint64_t>(g);
}

struct BuilderContext {
    const ConnectionKernel& kernel;
    const std::vector<SpaceTimePoint>& points;
    double volume;
    std::vector<std::uint32_t>& indegree;
    std::vector<Edge>& edges;
    BuildStats& stats;
};

void attach_naive(BuilderContext& ctx, const PairMarkOracle& oracle) {
    const std::size_t n = ctx.points.size();
    for (std::uint32_t y = 0; y < n; ++y) {
        const SpaceTimePoint& py = ctx.points[y];
        for (std::uint32_t x = 0; x < y; ++x) {
            const double dist = torus_distance(ctx.points[x].position, py.position, ctx.volume);
            const double p = ctx.kernel.probability(py.birth, dist, ctx.indegree[x]);
            ++ctx.stats.pair_evaluations;
            if (oracle.pair_mark(y, x) <= p) ctx.edges.push_back({x, y});
        }
        // Indegrees update only after all of y's tests: the rule reads the
        // state just before y's birth.
        for (auto it = ctx.edges.rbegin(); it != ctx.edges.rend() && it->younger == y; ++it)
            ++ctx.indegree[it->older];
    }
}

void attach_ring_exact(BuilderContext& ctx, const PairMarkOracle& oracle, CellGrid& grid) {
    const auto rings = grid.rings_by_radius();
    std::vector<std::uint32_t> accepted;
    for (std::uint32_t y = 0; y < ctx.points.size(); ++y) {
        const SpaceTimePoint& py = ctx.points[y];
        const auto center = grid.cell_of(py.position);
        accepted.clear();
        for (const auto& ring : rings) {
            for (const auto& offset : ring) {
                const std::size_t cell = grid.wrapped_flat(center, offset);
                for (std::uint32_t x : grid.members(cell)) {
                    const double dist =
                        torus_distance(ctx.points[x].position, py.position, ctx.volume);
                    const double p = ctx.kernel.probability(py.birth, dist, ctx.indegree[x]);
                    ++ctx.stats.pair_evaluations;
                    if (oracle.pair_mark(y, x) <= p) accepted.push_back(x);
                }
            }
        }
        std::sort(accepted.begin(), accepted.end());
        for (std::uint32_t x : accepted) {
            ctx.edges.push_back({x, y});
            ++ctx.indegree[x];
        }
        grid.insert(y, grid.flat(center));
    }
}

// Skip-sample one contiguous run of candidates (indices [0, count) into the
// concatenation that `fetch` resolves), thinning the dominating bound p_bar.
template <typename Fetch>
void skim_candidates(BuilderContext& ctx, CounterRng& rng, double p_bar, std::uint64_t count,
                     double s_younger, const SpaceTimePoint& py, Fetch fetch,
                     std::vector<std::uint32_t>& accepted) {
    if (count == 0 || !(p_bar > 0.0)) return;
    std::uint64_t pos = geometric_skip(rng, p_bar, count);
    while (pos < count) {
        const std::uint32_t x = fetch(pos);
        const double dist = torus_distance(ctx.points[x].position, py.position, ctx.volume);
        const double p_true = ctx.kernel.probability(s_younger, dist, ctx.indegree[x]);
        ++ctx.stats.pair_evaluations;
        ++ctx.stats.skip_candidates;
        if (p_true > p_bar) ++ctx.stats.dominating_violations;
        if (rng.uniform() * p_bar <= p_true) accepted.push_back(x);
        pos += 1 + geometric_skip(rng, p_bar, count);
    }
}

// Skip sampler, general dimension: visit each Chebyshev cell ring twice
// (running max indegree, then skip sampling over the ring's occupants).
void attach_ring_skip_nd(BuilderContext& ctx, CounterRng& rng, CellGrid& grid) {
    const auto rings = grid.rings_by_radius();
    std::vector<std::size_t> ring_cells;
    std::vector<std::uint32_t> accepted;
    for (std::uint32_t y = 0; y < ctx.points.size(); ++y) {
        const SpaceTimePoint& py = ctx.points[y];
        const auto center = grid.cell_of(py.position);
        accepted.clear();
        for (std::size_t radius = 0; radius < rings.size(); ++radius) {
            ring_cells.clear();
            std::uint64_t count = 0;
            std::int64_t max_k = -1;
            for (const auto& offset : rings[radius]) {
                const std::size_t cell = grid.wrapped_flat(center, offset);
                if (grid.members(cell).empty()) continue;
                ring_cells.push_back(cell);
                count += grid.members(cell).size();
                max_k = std::max(max_k, grid.max_indegree(cell));
            }
            if (count == 0) continue;
            const double r_in =
                static_cast<double>(std::max<std::int64_t>(0, static_cast<std::int64_t>(radius) - 1)) *
                grid.cell_side();
            const double p_bar = ctx.kernel.probability(py.birth, r_in, std::max<std::int64_t>(0, max_k));
            std::size_t c = 0;
            std::uint64_t base = 0;
            skim_candidates(
                ctx, rng, p_bar, count, py.birth, py,
                [&](std::uint64_t pos) {
                    while (pos >= base + grid.members(ring_cells[c]).size()) {
                        base += grid.members(ring_cells[c]).size();
                        ++c;
                    }
                    return grid.members(ring_cells[c])[pos - base];
                },
                accepted);
        }
        std::sort(accepted.begin(), accepted.end());
        for (std::uint32_t x : accepted) {
            ctx.edges.push_back({x, y});
            ++ctx.indegree[x];
            grid.note_indegree(grid.flat(grid.cell_of(ctx.points[x].position)), ctx.indegree[x]);
        }
        grid.insert(y, grid.flat(center));
    }
}

// Skip sampler, one dimension: cell rings are grouped into doubling annuli
// (rings {0,1}, then [2^j, 2^{j+1})), so each insertion touches O(log n)
// annuli. Occupant counts live in a Fenwick tree (with k-th occupant
// selection) and running max indegrees in a segment tree, both indexed by
// cell, giving O(log^2 n) work per inserted vertex.
void attach_ring_skip_1d(BuilderContext& ctx, CounterRng& rng, CellGrid& grid) {
    const std::int64_t C = grid.cells_per_side();
    const std::size_t cells = static_cast<std::size_t>(C);
    Fenwick counts(cells);
    MaxSegTree maxima(cells);
    std::vector<std::uint32_t> accepted;

    // Inclusive cell interval [p, q] on the circle -> 1 or 2 plain ranges.
    auto plain_ranges = [&](std::int64_t p, std::int64_t q,
                            std::vector<std::pair<std::int64_t, std::int64_t>>& out) {
        std::int64_t lo = ((p % C) + C) % C;
        std::int64_t len = q - p + 1;
        if (lo + len <= C) {
            out.emplace_back(lo, lo + len - 1);
        } else {
            out.emplace_back(lo, C - 1);
            out.emplace_back(0, lo + len - 1 - C);
        }
    };

    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    for (std::uint32_t y = 0; y < ctx.points.size(); ++y) {
        const SpaceTimePoint& py = ctx.points[y];
        const std::int64_t c = static_cast<std::int64_t>(grid.flat(grid.cell_of(py.position)));
        accepted.clear();

        const std::int64_t H = grid.max_ring();
        const std::int64_t S = (C - 1) / 2;  // largest radius whose ring has 2 distinct cells
        std::int64_t lo_ring = 0, hi_ring = 1;
        while (lo_ring <= H) {
            hi_ring = std::min(hi_ring, H);
            ranges.clear();
            const std::int64_t s = std::min(hi_ring, S);
            if (lo_ring == 0) {
                plain_ranges(c - s, c + s, ranges);
            } else if (lo_ring <= s) {
                plain_ranges(c + lo_ring, c + s, ranges);
                plain_ranges(c - s, c - lo_ring, ranges);
            }
            if (C % 2 == 0 && hi_ring == H && lo_ring <= H)
                plain_ranges(c + H, c + H, ranges);

            std::uint64_t count = 0;
            std::int64_t max_k = -1;
            for (const auto& [a, b] : ranges) {
                count += static_cast<std::uint64_t>(counts.range(a, b));
                max_k = std::max(max_k, maxima.range_max(a, b));
            }
            if (count > 0) {
                const double r_in =
                    static_cast<double>(std::max<std::int64_t>(0, lo_ring - 1)) * grid.cell_side();
                const double p_bar =
                    ctx.kernel.probability(py.birth, r_in, std::max<std::int64_t>(0, max_k));
                // Resolve the pos-th occupant of the range union through the
                // Fenwick tree: global rank, then descend, then index into
                // the owning cell's member list.
                std::size_t r = 0;
                std::uint64_t base = 0;
                skim_candidates(
                    ctx, rng, p_bar, count, py.birth, py,
                    [&](std::uint64_t pos) {
                        while (pos >= base + static_cast<std::uint64_t>(
                                                 counts.range(ranges[r].first, ranges[r].second))) {
                            base += static_cast<std::uint64_t>(
                                counts.range(ranges[r].first, ranges[r].second));
                            ++r;
                        }
                        const std::int64_t k_in_range = static_cast<std::int64_t>(pos - base);
                        const std::int64_t target =
                            (ranges[r].first > 0 ? counts.prefix(ranges[r].first - 1) : 0) +
                            k_in_range + 1;
                        const std::size_t cell = counts.find(target);
                        const std::int64_t within =
                            target - 1 -
                            (cell > 0 ? counts.prefix(static_cast<std::int64_t>(cell) - 1) : 0);
                        return grid.members(cell)[static_cast<std::size_t>(within)];
                    },
                    accepted);
            }
            lo_ring = hi_ring + 1;
            hi_ring = 2 * lo_ring - 1;
        }

        std::sort(accepted.begin(), accepted.end());
        for (std::uint32_t x : accepted) {
            ctx.edges.push_back({x, y});
            ++ctx.indegree[x];
            const std::size_t cell = grid.flat(grid.cell_of(ctx.points[x].position));
            grid.note_indegree(cell, ctx.indegree[x]);
            maxima.raise(cell, ctx.indegree[x]);
        }
        grid.insert(y, static_cast<std::size_t>(c));
        counts.add(static_cast<std::size_t>(c), 1);
    }
}

}  // namespace

Graph build_graph_from_points(const ModelParams& params, View view, double t,
                              std::vector<SpaceTimePoint> points,
                              const PairMarkOracle& oracle, BuildMode mode,
                              std::uint64_t seed, BuildStats* stats) {
    params.validate();
    if (!(t > 0.0)) throw std::invalid_argument("build_graph: t must be positive");
    if (points.size() > 0xffffffffull) throw std::length_error("build_graph: too many points");
    if (!std::is_sorted(points.begin(), points.end(),
                        [](const SpaceTimePoint& a, const SpaceTimePoint& b) {
                            return a.birth < b.birth;
                        }))
        throw std::invalid_argument("build_graph: points must be sorted by birth");

    Graph g;
    g.view = view;
    g.t = t;
    g.params = params;
    g.seed = seed;
    g.vertices = std::move(points);
    g.indegree_at_end.assign(g.n(), 0);

    const ConnectionKernel kernel(params);
    BuildStats local;
    BuildStats& st = stats ? *stats : local;
    st = BuildStats{};
    BuilderContext ctx{kernel, g.vertices, g.torus_volume(), g.indegree_at_end, g.edges, st};

    if (mode == BuildMode::Naive) {
        attach_naive(ctx, oracle);
    } else {
        const double side = std::pow(g.torus_volume(), 1.0 / params.d);
        CellGrid grid(params.d, side, g.n());
        if (mode == BuildMode::RingExact) {
            attach_ring_exact(ctx, oracle, grid);
        } else {
            CounterRng rng(SeedSpec{seed, "ring-skip", 0});
            if (params.d == 1)
                attach_ring_skip_1d(ctx, rng, grid);
            else
                attach_ring_skip_nd(ctx, rng, grid);
        }
    }
    return g;
}

Graph build_graph(const ModelParams& params, View view, double t, std::uint64_t seed,
                  BuildMode mode, BuildStats* stats) {
    params.validate();
    const double volume = view == View::Growth ? 1.0 : t;
    const double horizon = view == View::Growth ? t : 1.0;
    auto points = sample_poisson_points(params.d, volume, horizon, 1.0,
                                        SeedSpec{seed, "points", 0});
    return build_graph_from_points(params, view, t, std::move(points),
                                   PairMarkOracle(seed), mode, seed, stats);
}

Graph rescale_graph(const Graph& g, RescaleDirection dir) {
    if (dir == RescaleDirection::Forward && g.view != View::Growth)
        throw std::invalid_argument("rescale_graph: forward expects the growth view");
    if (dir == RescaleDirection::Inverse && g.view != View::Stationary)
        throw std::invalid_argument("rescale_graph: inverse expects the stationary view");
    Graph out = g;
    out.view = dir == RescaleDirection::Forward ? View::Stationary : View::Growth;
    for (auto& v : out.vertices) v = rescale(v, g.t, dir);
    return out;
}

}  // namespace spag
