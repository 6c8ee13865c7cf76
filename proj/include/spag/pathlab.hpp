#ifndef SPAG_PATHLAB_HPP
#define SPAG_PATHLAB_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spag/graph.hpp"

namespace spag {

// Role of a vertex on a quick path: a local maximum is younger than every
// neighbor it has on the path; every other vertex is "regular" in the wide
// sense (older than at least one neighbor), and among those a local minimum
// is older than all of its path neighbors.
enum class Role { Regular, LocalMax, LocalMin };

inline bool is_regular(Role r) { return r != Role::LocalMax; }

struct QuickPath {
    std::vector<std::uint32_t> vertex_ids;  // z_0..z_m
    std::vector<Role> roles;
    std::vector<char> inserted;  // true for inserted common children
};

enum class PartType { I, II, III, IV, V, VI };
std::string to_string(PartType t);
std::string to_string(Role r);

struct PartDecomposition {
    std::vector<std::size_t> split_indices;  // n_0=0 < ... < n_k=m
    std::vector<PartType> part_types;        // one per part
};

struct ChildrenSets {
    std::vector<std::vector<std::uint32_t>> sigma;  // one vertex-id set per part
    bool pairwise_disjoint = true;  // also covers disjointness from the path itself
};

struct Region {
    enum class Kind { C, Cprime };
    double anchor_position = 0.0;  // d=1 spatial coordinate
    double anchor_time = 0.0;
    Kind kind = Kind::C;
    double gamma = 0.5;  // only the enlarged region's old-time branch uses it
};

struct Trace {
    std::vector<std::size_t> path_indices;      // indices into the quick path
    std::vector<std::size_t> almost_inserted;   // quick-path indices of inserted y'_k
    double retained_fraction = 0.0;             // over the trace vertices proper
};

// BFS shortest path with deterministic tie-break: among the shortest paths,
// the one choosing the smallest vertex id at every step. A retained mask
// restricts the search to retained vertices. Throws if the endpoints are
// not connected (or not retained).
std::vector<std::uint32_t> geodesic(const Graph& g, const std::vector<char>* retained_mask,
                                    std::uint32_t from, std::uint32_t to);

// The quick path associated with a geodesic of the percolated graph:
// advance through the geodesic by jumping to the furthest vertex sharing a
// late-born common child in the full graph, then insert the oldest common
// child between consecutive non-adjacent picks. Verifies the structural
// properties against the full graph and throws std::runtime_error with a
// diagnostic when they fail.
QuickPath quick_path(const Graph& g, const std::vector<char>& retained_mask,
                     const std::vector<std::uint32_t>& path);

// Structural verification of a quick path against the full graph, by brute
// force over all vertices:
//  - no vertex older than a path neighbor is joined by an edge to a younger
//    path vertex other than its neighbors;
//  - two such vertices two or more steps apart share children only when
//    they are exactly two apart with a local maximum between them, which is
//    then their oldest common child.
// Returns an empty string on success, a diagnostic otherwise.
std::string verify_quick_path(const Graph& g, const QuickPath& qp);

// Split indices of a birth-time sequence: a split lands at i when u_i
// exceeds both of its two predecessors or both of its two successors,
// out-of-range comparisons counting as satisfied (so 0 and n always split).
// Throws on duplicate times.
std::vector<std::size_t> split(const std::vector<double>& birth_times);

// Classify one part (a subsequence admitting no internal split) into the
// six shapes: single edge; V with two edges; V with three edges (short-leg
// end below or above the long leg's upper vertex); W with the higher or the
// lower end on the deeper valley's side. Throws if the part admits an
// internal split.
PartType classify_part(const std::vector<double>& birth_times);

PartDecomposition decompose(const Graph& g, const QuickPath& qp);

// The per-part children sets: children (younger graph neighbors, excluding
// the path neighbors) of every vertex contributing to the part, with births
// in (u_i, u_{i-1} v u_{i+1}), plus the pairwise-disjointness verdict.
ChildrenSets children_sets(const Graph& g, const QuickPath& qp,
                           const PartDecomposition& decomposition);

// Exact membership test for the d=1 space-time regions around an anchor
// (z,u): the plain region needs u' >= u and |z'-z| <= 2/u - 1/u'; the
// enlarged one allows all times with |z'-z| <= 2/u + 1/u' for u' >= u and
// |z'-z| <= 2/u + u^{gamma-1} u'^{-gamma} for u' < u.
bool region_contains(const Region& r, double position, double time);

// Trace of a quick path (d=1): repeatedly jump to the first vertex outside
// the region of the current one; then mark the almost-quick-path
// insertions y'_k = x_{phi(k)-1} (taken when the jump skipped at least one
// vertex and the landing point even left the enlarged region).
Trace trace(const Graph& g, const QuickPath& qp, const std::vector<char>& retained_mask);

}  // namespace spag

#endif
