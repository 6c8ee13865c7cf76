#ifndef SPAG_GRAPH_HPP
#define SPAG_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spag/geometry.hpp"
#include "spag/model.hpp"

namespace spag {

enum class View { Growth, Stationary };

struct Edge {
    std::uint32_t older = 0;
    std::uint32_t younger = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

// An immutable realization of the network. Vertices are birth-sorted with
// ids equal to birth rank; edges are listed in younger-birth order.
struct Graph {
    View view = View::Growth;
    double t = 1.0;  // final time (growth view) or torus volume (stationary)
    ModelParams params;
    std::uint64_t seed = 0;
    std::vector<SpaceTimePoint> vertices;
    std::vector<Edge> edges;
    std::vector<std::uint32_t> indegree_at_end;

    std::size_t n() const { return vertices.size(); }
    std::size_t m() const { return edges.size(); }

    // Torus volume of the view the vertices live on.
    double torus_volume() const { return view == View::Growth ? 1.0 : t; }
    // Duration of the construction clock.
    double time_horizon() const { return view == View::Growth ? t : 1.0; }

    // Sorted adjacency lists (both directions), built on demand by callers.
    std::vector<std::vector<std::uint32_t>> adjacency() const;

    // Recompute indegrees by replaying the edge list; throws
    // std::runtime_error if the result disagrees with indegree_at_end.
    void check_consistency() const;
};

std::string to_string(View view);
View view_from_string(const std::string& s);

// Canonical text format, the bit-exact contract for golden tests. Floats are
// printed as shortest round-trip decimals.
void write_graph(const Graph& g, std::ostream& out);
void write_graph_file(const Graph& g, const std::string& path);
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

std::string format_double(double v);

}  // namespace spag

#endif
