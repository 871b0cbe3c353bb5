#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "flavors/field.hpp"
#include "flavors/modes.hpp"
#include "flavors/ode_flavor.hpp"

namespace flavors::conslaw {

/// Periodic conservation law with Ginzburg-Landau source,
///
///     u_t + f(u)_x = (1/eps) u (1 - u^2)   on [0, L) x [0, T].
struct ConsLawConfig {
    double eps = 2e-3;
    double L = 2.0;
    double T = 2.0;
    std::function<double(double)> flux = [](double u) { return std::sin(u); };
    std::function<double(double)> flux_derivative = [](double u) { return std::cos(u); };
    std::function<double(double)> initial = [](double x) { return std::sin(M_PI * x); };

    void validate() const;
};

/// One Lax-Friedrichs step on a periodic grid, in centered form:
///
///     ubar_i = (u_{i-1} + u_{i+1}) / 2
///     u_i'   = ubar_i - tau f'(ubar_i) (u_{i+1} - u_{i-1}) / (2 k)
///                     + tau alpha ubar_i (1 - ubar_i^2)
///
/// `alpha` stands in for 1/eps (0 switches the source off). The result is not
/// checked for finiteness; callers apply an InstabilityGuard.
std::vector<double> lf_step(std::span<const double> u, double k_space, double tau, double alpha,
                            const ConsLawConfig& cfg);

/// Lax-Friedrichs as a switchable legacy flow on a grid with space step `k_space`.
SwitchedFlow lax_friedrichs_flow(double k_space, std::size_t nodes, const ConsLawConfig& cfg);

/// FLAVORized Lax-Friedrichs macro step: source on over h, off over H - h.
FlavorStep lf_flavor_macro_step(std::span<const double> u, double K, double h, double H,
                                const ConsLawConfig& cfg, const InstabilityGuard& guard = {});

/// Runs either the single-scale scheme or its FLAVORization from the
/// configured initial condition sampled at x_i = i * dx.
SpaceTimeField run_fd(const ConsLawConfig& cfg, const GridMode& mode,
                      const InstabilityGuard& guard = {});

/// Same as run_fd with an explicit initial vector (length L / dx).
SpaceTimeField run_fd_from(const ConsLawConfig& cfg, const GridMode& mode,
                           std::span<const double> u0, const InstabilityGuard& guard = {});

}  // namespace flavors::conslaw
