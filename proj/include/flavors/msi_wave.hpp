#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "flavors/field.hpp"
#include "flavors/modes.hpp"
#include "flavors/ode_flavor.hpp"

namespace flavors::wave {

/// Potential V and its derivative V'.
struct Potential {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
};

/// V(u) = -cos(omega u) - cos(u).
Potential sine_gordon_stiff(double omega);
/// V(u) = -cos(u), the stiff potential with the omega term removed.
Potential sine_gordon_soft();

/// Nonlinear wave equation u_tt - u_xx = V'(u), periodic on [0, L).
///
/// `stiff` is used on rows where the large coefficient is on, `soft` on
/// rows where it is switched off. Empty initial-condition functions mean the
/// defaults f(x) = sin(2 pi x / L) and g(x) = 0.
struct WaveConfig {
    double omega = 20.0;
    double L = 2.0;
    double T = 2.0;
    Potential stiff = sine_gordon_stiff(20.0);
    Potential soft = sine_gordon_soft();
    std::function<double(double)> displacement;
    std::function<double(double)> velocity;

    void validate() const;
    double f(double x) const;
    double g(double x) const;
};

/// Sine-Gordon configuration with stiff frequency `omega`.
WaveConfig sine_gordon_config(double omega, double L = 2.0, double T = 2.0);

/// Time-row layout of a variational space-time grid. Rows are numbered from 1.
///
/// FLAVOR grid: row j advances by h (stiffness on) for odd j and by H - h
/// (stiffness off) for even j. Uniform grid: every row advances by h with
/// stiffness on; H is 0.
struct FlavorGrid {
    double K = 0.0;
    double h = 0.0;
    double H = 0.0;

    static FlavorGrid flavor(double K, double h, double H);
    static FlavorGrid uniform(double k, double h);

    bool is_flavor() const { return H > 0.0; }
    double row_step(std::size_t j) const;
    bool stiff_row(std::size_t j) const;
};

/// Cell Lagrangian h k [ 1/2 ((u_{i,j+1} - u_ij)/h)^2 - 1/2 ((u_{i+1,j} - u_ij)/k)^2 + V(u_ij) ].
double discrete_lagrangian(double u_ij, double u_i_jp1, double u_ip1_j, double h, double k,
                           const std::function<double(double)>& V);

/// Solves the discrete Euler-Lagrange equation at row j for row j + 1:
///
///   k (u_ij - u_i,j+1)/h_j - h_j (u_ij - u_i+1,j)/k + h_j k V'(u_ij)
///     + k (u_ij - u_i,j-1)/h_{j-1} - h_j (u_ij - u_i-1,j)/k = 0
///
/// with V' chosen by the stiffness of row j. Periodic in i.
std::vector<double> del_update(std::span<const double> row_prev, std::span<const double> row_curr,
                               std::size_t j, const FlavorGrid& grid, const WaveConfig& cfg);

/// Integrates the variational scheme. Rows 1 and 2 are f(x_i) and
/// f(x_i) + h g(x_i) at x_i = i * dx; every later row comes from del_update.
/// FLAVOR fields store every row (odd rows are the macro nodes kH).
SpaceTimeField run_msi(const WaveConfig& cfg, const GridMode& mode,
                       const InstabilityGuard& guard = {});

/// Same as run_msi with explicit first two rows.
SpaceTimeField run_msi_from(const WaveConfig& cfg, const GridMode& mode,
                            std::span<const double> row1, std::span<const double> row2,
                            const InstabilityGuard& guard = {});

/// omega * h / H, the coefficient naive splitting would predict.
double averaged_stiffness(double omega, double h, double H);

}  // namespace flavors::wave
