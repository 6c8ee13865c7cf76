#ifndef SPAG_GEOMETRY_HPP
#define SPAG_GEOMETRY_HPP

#include <cstddef>
#include <vector>

namespace spag {

// A point on the d-dimensional torus of a given volume V. Coordinates are
// kept in the fundamental domain (-V^{1/d}/2, V^{1/d}/2]; inputs are
// canonicalized on construction.
struct TorusPoint {
    std::vector<double> coords;

    TorusPoint() = default;
    TorusPoint(std::vector<double> c, double volume);

    int dim() const { return static_cast<int>(coords.size()); }
};

// A vertex of the space-time picture: position plus birth time.
struct SpaceTimePoint {
    TorusPoint position;
    double birth = 0.0;
};

enum class RescaleDirection { Forward, Inverse };

// Wrap a single coordinate into (-side/2, side/2].
double wrap_coord(double x, double side);

// Torus metric: Euclidean distance minimized over per-coordinate shifts by
// the side length V^{1/d}. Throws std::invalid_argument on dimension
// mismatch.
double torus_distance(const TorusPoint& x, const TorusPoint& y, double volume);

// The space-time rescaling between the growth picture (unit torus, births in
// (0,t]) and the stationary picture (volume-t torus, births in (0,1]):
// forward maps (x,s) -> (t^{1/d} x, s/t).
SpaceTimePoint rescale(const SpaceTimePoint& p, double t, RescaleDirection dir);

}  // namespace spag

#endif
