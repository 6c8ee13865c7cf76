#include "spag/pathlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace spag {

namespace {

std::vector<std::uint32_t> sorted_intersection(const std::vector<std::uint32_t>& a,
                                               const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Common children of vertices a and b: graph neighbors of both that are
// younger than both.
std::vector<std::uint32_t> common_children(const Graph& g,
                                           const std::vector<std::vector<std::uint32_t>>& adj,
                                           std::uint32_t a, std::uint32_t b) {
    const double cutoff = std::max(g.vertices[a].birth, g.vertices[b].birth);
    std::vector<std::uint32_t> out;
    for (std::uint32_t w : sorted_intersection(adj[a], adj[b]))
        if (g.vertices[w].birth > cutoff) out.push_back(w);
    return out;
}

std::uint32_t oldest_of(const Graph& g, const std::vector<std::uint32_t>& ids) {
    std::uint32_t best = ids.front();
    for (std::uint32_t w : ids)
        if (g.vertices[w].birth < g.vertices[best].birth) best = w;
    return best;
}

bool has_edge(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t a,
              std::uint32_t b) {
    const auto& n = adj[a].size() <= adj[b].size() ? adj[a] : adj[b];
    return std::binary_search(n.begin(), n.end(), adj[a].size() <= adj[b].size() ? b : a);
}

std::vector<Role> classify_roles(const std::vector<double>& births) {
    const std::size_t m = births.size();
    std::vector<Role> roles(m, Role::Regular);
    for (std::size_t i = 0; i < m; ++i) {
        const bool older_than_prev = i > 0 && births[i] < births[i - 1];
        const bool older_than_next = i + 1 < m && births[i] < births[i + 1];
        const bool has_prev = i > 0;
        const bool has_next = i + 1 < m;
        if (!older_than_prev && !older_than_next)
            roles[i] = Role::LocalMax;  // younger than every neighbor it has
        else if ((!has_prev || older_than_prev) && (!has_next || older_than_next))
            roles[i] = Role::LocalMin;
        else
            roles[i] = Role::Regular;
    }
    return roles;
}

}  // namespace

std::string to_string(PartType t) {
    switch (t) {
        case PartType::I: return "i";
        case PartType::II: return "ii";
        case PartType::III: return "iii";
        case PartType::IV: return "iv";
        case PartType::V: return "v";
        case PartType::VI: return "vi";
    }
    throw std::logic_error("bad part type");
}

std::string to_string(Role r) {
    switch (r) {
        case Role::Regular: return "regular";
        case Role::LocalMax: return "local-max";
        case Role::LocalMin: return "local-min";
    }
    throw std::logic_error("bad role");
}

std::vector<std::uint32_t> geodesic(const Graph& g, const std::vector<char>* retained_mask,
                                    std::uint32_t from, std::uint32_t to) {
    if (from >= g.n() || to >= g.n()) throw std::invalid_argument("geodesic: vertex id out of range");
    if (retained_mask && (!(*retained_mask)[from] || !(*retained_mask)[to]))
        throw std::invalid_argument("geodesic: endpoint not retained");
    const auto adj = g.adjacency();

    // Distance-to-target labels, then a greedy walk from the source taking
    // the smallest-id neighbor one step closer: the id-lexicographically
    // smallest shortest path.
    std::vector<int> dist(g.n(), -1);
    dist[to] = 0;
    std::queue<std::uint32_t> frontier;
    frontier.push(to);
    while (!frontier.empty()) {
        const std::uint32_t v = frontier.front();
        frontier.pop();
        for (std::uint32_t w : adj[v]) {
            if (dist[w] >= 0) continue;
            if (retained_mask && !(*retained_mask)[w]) continue;
            dist[w] = dist[v] + 1;
            frontier.push(w);
        }
    }
    if (dist[from] < 0) throw std::runtime_error("geodesic: endpoints are not connected");

    std::vector<std::uint32_t> path{from};
    std::uint32_t v = from;
    while (v != to) {
        for (std::uint32_t w : adj[v]) {  // adjacency is sorted, first hit is smallest id
            if (dist[w] == dist[v] - 1 && (!retained_mask || (*retained_mask)[w])) {
                path.push_back(w);
                v = w;
                break;
            }
        }
    }
    return path;
}

QuickPath quick_path(const Graph& g, const std::vector<char>& retained_mask,
                     const std::vector<std::uint32_t>& path) {
    if (path.empty()) throw std::invalid_argument("quick_path: empty path");
    const auto adj = g.adjacency();
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] >= g.n()) throw std::invalid_argument("quick_path: vertex id out of range");
        if (!retained_mask[path[i]])
            throw std::invalid_argument("quick_path: path vertex not retained");
        if (i > 0 && !has_edge(adj, path[i - 1], path[i]))
            throw std::invalid_argument("quick_path: input is not a path");
    }

    // Step 1: the jump subsequence. From the current geodesic position,
    // jump to the furthest later vertex sharing a late-born common child in
    // the full graph; with no such vertex, advance one step.
    std::vector<std::size_t> picks{0};
    std::size_t current = 0;
    while (current + 1 < path.size()) {
        std::size_t next = current + 1;
        for (std::size_t k = current + 1; k < path.size(); ++k)
            if (!common_children(g, adj, path[current], path[k]).empty()) next = k;
        picks.push_back(next);
        current = next;
    }

    // Step 2: insert the oldest common child between non-adjacent picks.
    QuickPath qp;
    for (std::size_t i = 0; i < picks.size(); ++i) {
        const std::uint32_t v = path[picks[i]];
        if (i > 0 && !has_edge(adj, qp.vertex_ids.back(), v)) {
            const auto children = common_children(g, adj, qp.vertex_ids.back(), v);
            if (children.empty())
                throw std::runtime_error("quick_path: non-adjacent picks without a common child");
            qp.vertex_ids.push_back(oldest_of(g, children));
            qp.inserted.push_back(1);
        }
        qp.vertex_ids.push_back(v);
        qp.inserted.push_back(0);
    }

    std::vector<double> births(qp.vertex_ids.size());
    for (std::size_t i = 0; i < births.size(); ++i) births[i] = g.vertices[qp.vertex_ids[i]].birth;
    qp.roles = classify_roles(births);

    const std::string diagnostic = verify_quick_path(g, qp);
    if (!diagnostic.empty()) throw std::runtime_error("quick_path: " + diagnostic);
    return qp;
}

std::string verify_quick_path(const Graph& g, const QuickPath& qp) {
    const auto adj = g.adjacency();
    const std::size_t m = qp.vertex_ids.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (qp.vertex_ids[i] == qp.vertex_ids[j])
                return "path is not self-avoiding at indices " + std::to_string(i) + "," +
                       std::to_string(j);

    auto birth = [&](std::size_t i) { return g.vertices[qp.vertex_ids[i]].birth; };

    // Property: a vertex older than one of its path neighbors has no edge
    // to any younger path vertex other than those neighbors.
    for (std::size_t i = 0; i < m; ++i) {
        if (!is_regular(qp.roles[i])) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i || j + 1 == i || j == i + 1) continue;
            if (birth(j) > birth(i) && has_edge(adj, qp.vertex_ids[i], qp.vertex_ids[j]))
                return "edge property violated at indices " + std::to_string(i) + "," +
                       std::to_string(j);
        }
    }

    // Property: two such vertices at least two steps apart share children
    // only when exactly two apart with a local maximum between them that is
    // their oldest common child.
    for (std::size_t i = 0; i < m; ++i) {
        if (!is_regular(qp.roles[i])) continue;
        for (std::size_t j = i + 2; j < m; ++j) {
            if (!is_regular(qp.roles[j])) continue;
            const auto children = common_children(g, adj, qp.vertex_ids[i], qp.vertex_ids[j]);
            if (children.empty()) continue;
            if (j != i + 2 || qp.roles[i + 1] != Role::LocalMax ||
                oldest_of(g, children) != qp.vertex_ids[i + 1])
                return "common-child property violated at indices " + std::to_string(i) + "," +
                       std::to_string(j);
        }
    }
    return "";
}

std::vector<std::size_t> split(const std::vector<double>& birth_times) {
    if (birth_times.empty()) throw std::invalid_argument("split: empty sequence");
    {
        std::vector<double> sorted = birth_times;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("split: duplicate birth times");
    }
    const std::size_t n = birth_times.size() - 1;
    const auto& u = birth_times;
    std::vector<std::size_t> splits;
    for (std::size_t i = 0; i <= n; ++i) {
        const bool over_predecessors =
            (i < 1 || u[i] > u[i - 1]) && (i < 2 || u[i] > u[i - 2]);
        const bool over_successors =
            (i + 1 > n || u[i] > u[i + 1]) && (i + 2 > n || u[i] > u[i + 2]);
        if (over_predecessors || over_successors) splits.push_back(i);
    }
    return splits;
}

PartType classify_part(const std::vector<double>& birth_times) {
    const std::size_t edges = birth_times.size() - 1;
    {
        const auto internal = split(birth_times);
        if (internal.size() != 2 || internal.front() != 0 || internal.back() != edges)
            throw std::invalid_argument("classify_part: sequence admits an internal split");
    }
    if (edges == 1) return PartType::I;
    if (edges == 2) return PartType::II;
    if (edges == 3) {
        std::vector<double> u = birth_times;
        // Reflect so the valley sits at index 2 (two-edge leg on the left).
        if (u[1] < u[2]) std::reverse(u.begin(), u.end());
        // Shape is now u0 > u1 > u2 < u3 with u1 < u3.
        return u[3] > u[0] ? PartType::IV : PartType::III;
    }
    if (edges == 4) {
        const auto& u = birth_times;
        if (!(u[1] < u[0] && u[1] < u[2] && u[3] < u[2] && u[3] < u[4]))
            throw std::invalid_argument("classify_part: 4-edge part is not W-shaped");
        const bool deeper_valley_left = u[1] < u[3];
        const bool lower_end_left = u[0] < u[4];
        return deeper_valley_left == lower_end_left ? PartType::VI : PartType::V;
    }
    throw std::invalid_argument("classify_part: parts have at most four edges");
}

PartDecomposition decompose(const Graph& g, const QuickPath& qp) {
    std::vector<double> births(qp.vertex_ids.size());
    for (std::size_t i = 0; i < births.size(); ++i) births[i] = g.vertices[qp.vertex_ids[i]].birth;
    PartDecomposition dec;
    dec.split_indices = split(births);
    for (std::size_t j = 0; j + 1 < dec.split_indices.size(); ++j) {
        const std::vector<double> part(births.begin() + static_cast<std::ptrdiff_t>(dec.split_indices[j]),
                                       births.begin() + static_cast<std::ptrdiff_t>(dec.split_indices[j + 1]) + 1);
        dec.part_types.push_back(classify_part(part));
    }
    return dec;
}

ChildrenSets children_sets(const Graph& g, const QuickPath& qp,
                           const PartDecomposition& decomposition) {
    const auto adj = g.adjacency();
    auto birth = [&](std::size_t i) { return g.vertices[qp.vertex_ids[i]].birth; };
    const std::size_t m = qp.vertex_ids.size();

    ChildrenSets out;
    for (std::size_t j = 0; j + 1 < decomposition.split_indices.size(); ++j) {
        const std::size_t lo = decomposition.split_indices[j];
        const std::size_t hi = decomposition.split_indices[j + 1];
        std::vector<std::uint32_t> sigma;
        for (std::size_t i = lo; i <= hi; ++i) {
            // A vertex contributes to the part unless it is a local maximum
            // of the part (higher than the part neighbors it has).
            const bool part_local_max = (i == lo || birth(i) > birth(i - 1)) &&
                                        (i == hi || birth(i) > birth(i + 1));
            if (part_local_max) continue;
            double upper = -std::numeric_limits<double>::infinity();
            if (i > 0) upper = std::max(upper, birth(i - 1));
            if (i + 1 < m) upper = std::max(upper, birth(i + 1));
            for (std::uint32_t w : adj[qp.vertex_ids[i]]) {
                if (i > 0 && w == qp.vertex_ids[i - 1]) continue;
                if (i + 1 < m && w == qp.vertex_ids[i + 1]) continue;
                const double s = g.vertices[w].birth;
                if (s > birth(i) && s < upper) sigma.push_back(w);
            }
        }
        std::sort(sigma.begin(), sigma.end());
        sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
        out.sigma.push_back(std::move(sigma));
    }

    std::vector<std::uint32_t> seen(qp.vertex_ids);
    std::sort(seen.begin(), seen.end());
    for (const auto& sigma : out.sigma) {
        for (std::uint32_t w : sigma) {
            if (std::binary_search(seen.begin(), seen.end(), w)) {
                out.pairwise_disjoint = false;
                return out;
            }
        }
        seen.insert(seen.end(), sigma.begin(), sigma.end());
        std::sort(seen.begin(), seen.end());
    }
    return out;
}

bool region_contains(const Region& r, double position, double time) {
    const double u = r.anchor_time;
    const double gap = std::abs(position - r.anchor_position);
    if (r.kind == Region::Kind::C) {
        if (time < u) return false;
        return gap <= 2.0 / u - 1.0 / time;
    }
    if (time >= u) return gap <= 2.0 / u + 1.0 / time;
    return gap <= 2.0 / u + std::pow(u, r.gamma - 1.0) * std::pow(time, -r.gamma);
}

Trace trace(const Graph& g, const QuickPath& qp, const std::vector<char>& retained_mask) {
    if (g.params.d != 1) throw std::invalid_argument("trace: defined for dimension 1 only");
    auto position = [&](std::size_t i) { return g.vertices[qp.vertex_ids[i]].position.coords[0]; };
    auto birth = [&](std::size_t i) { return g.vertices[qp.vertex_ids[i]].birth; };

    Trace tr;
    tr.path_indices.push_back(0);
    while (true) {
        const std::size_t cur = tr.path_indices.back();
        const Region c{position(cur), birth(cur), Region::Kind::C, g.params.gamma};
        std::size_t next = qp.vertex_ids.size();
        for (std::size_t k = cur + 1; k < qp.vertex_ids.size(); ++k) {
            if (!region_contains(c, position(k), birth(k))) {
                next = k;
                break;
            }
        }
        if (next == qp.vertex_ids.size()) break;
        const Region enlarged{position(cur), birth(cur), Region::Kind::Cprime, g.params.gamma};
        if (next - 1 > cur && !region_contains(enlarged, position(next), birth(next)))
            tr.almost_inserted.push_back(next - 1);
        tr.path_indices.push_back(next);
    }

    std::int64_t retained = 0;
    for (std::size_t i : tr.path_indices)
        if (retained_mask[qp.vertex_ids[i]]) ++retained;
    tr.retained_fraction =
        static_cast<double>(retained) / static_cast<double>(tr.path_indices.size());
    return tr;
}

}  // namespace spag
