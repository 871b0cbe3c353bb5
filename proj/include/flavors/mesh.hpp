#pragma once

#include <cstddef>
#include <vector>

namespace flavors {

/// Two-scale space-time mesh.
///
/// Space is uniform with mesoscopic step K. Time alternates a microscopic
/// step h (stiffness on) with a mesoscopic step H - h (stiffness off), so one
/// macro step of length H spans two time nodes:
///
///     0, h, H, H + h, 2H, ..., (M - 1)H + h, MH
///
/// Immutable once built.
class SpaceTimeMesh {
public:
    double L() const { return L_; }
    double T() const { return T_; }
    double K() const { return K_; }
    double h() const { return h_; }
    double H() const { return H_; }

    /// Spatial node count, L / K.
    std::size_t N() const { return N_; }
    /// Macro step count, T / H.
    std::size_t M() const { return M_; }

    /// All 2M + 1 time nodes; even indices are macro nodes kH.
    const std::vector<double>& time_nodes() const { return time_nodes_; }

    /// Spatial node positions i * K, i = 0..N-1.
    std::vector<double> space_nodes() const;

    friend SpaceTimeMesh build_mesh(double L, double T, double K, double h, double H);

private:
    SpaceTimeMesh() = default;

    double L_ = 0, T_ = 0, K_ = 0, h_ = 0, H_ = 0;
    std::size_t N_ = 0, M_ = 0;
    std::vector<double> time_nodes_;
};

/// Builds and validates a FLAVOR mesh.
///
/// Throws InvalidArgument for non-positive inputs, DegenerateSteps when
/// h >= H and NonDivisible when L/K or T/H is not an integer (relative
/// tolerance 1e-9).
SpaceTimeMesh build_mesh(double L, double T, double K, double h, double H);

/// Returns round(a / b) if the ratio is a positive integer within relative
/// tolerance 1e-9, otherwise throws NonDivisible naming `what`.
std::size_t integral_ratio(double a, double b, const char* what);

/// Step-tuning report for the regime (h/eps)^2 << H << h/eps.
struct StepDiagnostics {
    double fast_ratio = 0.0;  ///< h / eps
    double lower = 0.0;       ///< (h/eps)^2 / H
    double upper = 0.0;       ///< H / (h/eps) = eps H / h
    bool within_regime = false;
};

inline constexpr double kDefaultRegimeThreshold = 0.5;

/// Pure arithmetic; never rejects. `within_regime` requires both ratios to be
/// strictly below `threshold`.
StepDiagnostics step_diagnostics(double h, double eps, double H,
                                 double threshold = kDefaultRegimeThreshold);

}  // namespace flavors
