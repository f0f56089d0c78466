#include "nlheat/mesh.hpp"

#include "nlheat/error.hpp"

#include <cmath>
#include <sstream>

namespace nlheat {

SpaceMesh build_space_mesh(double a, double b, std::size_t n) {
    if (n < 3) {
        std::ostringstream os;
        os << "space mesh needs at least 3 nodes, got " << n;
        throw Error(ErrorKind::Mesh, os.str());
    }
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
        throw Error(ErrorKind::Domain, "space mesh requires finite a < b");

    SpaceMesh mesh;
    mesh.a_ = a;
    mesh.b_ = b;
    mesh.h_ = (b - a) / static_cast<double>(n - 1);
    mesh.nodes_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        mesh.nodes_[i] = a + static_cast<double>(i) * mesh.h_;
    mesh.nodes_.back() = b;
    return mesh;
}

TimeMesh build_time_mesh(double tau, double t_end) {
    if (!std::isfinite(tau) || !(tau > 0.0))
        throw Error(ErrorKind::TimeMesh, "time step tau must be positive");
    if (!std::isfinite(t_end) || t_end < tau)
        throw Error(ErrorKind::TimeMesh, "t_end must be at least one time step");
    const double ratio = t_end / tau;
    const double steps = std::round(ratio);
    if (std::abs(ratio - steps) > 1e-9) {
        std::ostringstream os;
        os << "t_end/tau = " << ratio << " is not an integer number of steps";
        throw Error(ErrorKind::TimeMesh, os.str());
    }
    TimeMesh mesh;
    mesh.tau_ = tau;
    mesh.levels_ = static_cast<std::size_t>(steps) + 1;
    return mesh;
}

}  // namespace nlheat
