#include "flavors/mesh.hpp"

#include <cmath>
#include <string>

#include "flavors/errors.hpp"

namespace flavors {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidArgument(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

std::size_t integral_ratio(double a, double b, const char* what) {
    const double r = a / b;
    const double n = std::round(r);
    if (n < 1.0 || std::abs(r - n) > 1e-9 * r) {
        throw NonDivisible(std::string(what) + " = " + std::to_string(r) + " is not an integer");
    }
    return static_cast<std::size_t>(n);
}

SpaceTimeMesh build_mesh(double L, double T, double K, double h, double H) {
    require_positive(L, "L");
    require_positive(T, "T");
    require_positive(K, "K");
    require_positive(h, "h");
    require_positive(H, "H");
    if (h >= H) {
        throw DegenerateSteps("micro step h must be strictly smaller than macro step H");
    }

    SpaceTimeMesh mesh;
    mesh.L_ = L;
    mesh.T_ = T;
    mesh.K_ = K;
    mesh.h_ = h;
    mesh.H_ = H;
    mesh.N_ = integral_ratio(L, K, "L/K");
    mesh.M_ = integral_ratio(T, H, "T/H");

    // Nodes are computed from their index, never accumulated.
    mesh.time_nodes_.reserve(2 * mesh.M_ + 1);
    for (std::size_t k = 0; k < mesh.M_; ++k) {
        const double t = static_cast<double>(k) * H;
        mesh.time_nodes_.push_back(t);
        mesh.time_nodes_.push_back(t + h);
    }
    mesh.time_nodes_.push_back(static_cast<double>(mesh.M_) * H);
    return mesh;
}

std::vector<double> SpaceTimeMesh::space_nodes() const {
    std::vector<double> x(N_);
    for (std::size_t i = 0; i < N_; ++i) x[i] = static_cast<double>(i) * K_;
    return x;
}

StepDiagnostics step_diagnostics(double h, double eps, double H, double threshold) {
    StepDiagnostics d;
    d.fast_ratio = h / eps;
    d.lower = d.fast_ratio * d.fast_ratio / H;
    d.upper = H / d.fast_ratio;
    d.within_regime = d.lower < threshold && d.upper < threshold;
    return d;
}

}  // namespace flavors
