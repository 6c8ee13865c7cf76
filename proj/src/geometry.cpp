#include "spag/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace spag {

double wrap_coord(double x, double side) {
    double half = side / 2.0;
    double w = std::fmod(x + half, side);
    if (w <= 0.0) w += side;
    return w - half;  // lands in (-side/2, side/2]
}

TorusPoint::TorusPoint(std::vector<double> c, double volume) : coords(std::move(c)) {
    if (coords.empty()) throw std::invalid_argument("TorusPoint: dim must be >= 1");
    double side = std::pow(volume, 1.0 / static_cast<double>(coords.size()));
    for (auto& x : coords) x = wrap_coord(x, side);
}

double torus_distance(const TorusPoint& x, const TorusPoint& y, double volume) {
    if (x.dim() != y.dim() || x.dim() == 0)
        throw std::invalid_argument("torus_distance: dimension mismatch");
    int d = x.dim();
    double side = std::pow(volume, 1.0 / d);
    double sq = 0.0;
    for (int i = 0; i < d; ++i) {
        // The torus metric factorizes over coordinates, so the minimum over
        // the 3^d shift vectors is attained coordinate-wise.
        double delta = std::fabs(x.coords[i] - y.coords[i]);
        delta = std::min(delta, side - delta);
        sq += delta * delta;
    }
    return std::sqrt(sq);
}

SpaceTimePoint rescale(const SpaceTimePoint& p, double t, RescaleDirection dir) {
    if (t <= 0.0) throw std::invalid_argument("rescale: t must be positive");
    int d = p.position.dim();
    double stretch = std::pow(t, 1.0 / d);
    SpaceTimePoint out;
    out.position.coords.resize(d);
    if (dir == RescaleDirection::Forward) {
        if (p.birth <= 0.0 || p.birth > t)
            throw std::invalid_argument("rescale forward: birth must lie in (0,t]");
        for (int i = 0; i < d; ++i) out.position.coords[i] = p.position.coords[i] * stretch;
        out.birth = p.birth / t;
    } else {
        if (p.birth <= 0.0 || p.birth > 1.0)
            throw std::invalid_argument("rescale inverse: birth must lie in (0,1]");
        for (int i = 0; i < d; ++i) out.position.coords[i] = p.position.coords[i] / stretch;
        out.birth = p.birth * t;
    }
    return out;
}

}  // namespace spag
