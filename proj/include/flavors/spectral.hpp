#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "flavors/field.hpp"
#include "flavors/fourier.hpp"
#include "flavors/ode_flavor.hpp"

namespace flavors::spectral {

/// Three-field system, periodic on [0, L):
///
///     u_t + u_x - q^2 = 0
///     q_t + q_x - p   = 0
///     p_t + p_x + omega^2 q = 0
///
/// with omega^2 playing the role of the stiff parameter. Empty initial
/// functions select the defaults f_u = f_q = cos(2 pi x / L), f_p = 0.
struct SpectralConfig {
    double omega = 1000.0;
    double L = 2.0;
    double T = 10.0;
    std::size_t N = 20;
    std::function<double(double)> initial_u;
    std::function<double(double)> initial_q;
    std::function<double(double)> initial_p;

    void validate() const;
    /// Collocation points y_j = L j / N.
    std::vector<double> nodes() const;
};

/// Nodal values of u, q, p at the collocation points. Nodal and modal forms
/// are interchangeable for real fields; coefficients() exposes the modal one.
struct SpectralState {
    std::size_t N = 0;
    double L = 0.0;
    std::vector<double> u, q, p;

    static SpectralState initial(const SpectralConfig& cfg);

    /// Packs as [u, q, p] for the generic FLAVOR driver.
    State flatten() const;
    static SpectralState unflatten(const State& s, std::size_t N, double L);

    /// Fourier coefficients a_n, n = 0..N-1 in FFT order (a_{N-n} = conj(a_n)),
    /// of one nodal vector: v_j = sum_n a_n e^{2 pi i n j / N}.
    static std::vector<std::complex<double>> coefficients(std::span<const double> values);
};

/// Collocation derivative on a periodic grid of even length.
///
/// Mode m is multiplied by i 2 pi m / L; the Nyquist mode is dropped. Holds
/// its own transform plan, so one instance per thread.
class SpectralDerivative {
public:
    SpectralDerivative(std::size_t n, double L);

    void apply(std::span<const double> values, std::span<double> out);
    std::vector<double> operator()(std::span<const double> values);

private:
    RealFft fft_;
    double L_;
    std::vector<std::complex<double>> modes_;
};

/// One-shot collocation derivative.
std::vector<double> spectral_derivative(std::span<const double> values, double L);

/// Right-hand side of the collocated system with alpha in place of omega^2.
/// q^2 is evaluated pointwise with no dealiasing.
class ThreeFieldRhs {
public:
    ThreeFieldRhs(std::size_t n, double L);

    /// `state` and the result are packed [u, q, p].
    State operator()(const State& state, double alpha);

private:
    std::size_t n_;
    SpectralDerivative d_;
    std::vector<double> ux_, qx_, px_;
};

using RhsFn = std::function<State(const State& y, double t)>;

/// Classical four-stage Runge-Kutta step. Throws NonFinite if the result is
/// not finite.
State rk4_step(const RhsFn& rhs, const State& y, double t, double tau);

/// RK4 on the collocated system as a switchable flow (alpha = omega^2 or 0).
SwitchedFlow rk4_flow(std::size_t n, double L);

/// RK4 with stiffness on over h followed by RK4 with stiffness off over H - h.
SpectralState flavor_spectral_step(const SpectralState& state, double t, double h, double H,
                                   const SpectralConfig& cfg);

struct SpectralSingleScale {
    double h = 0.0;
    std::size_t time_stride = 1;
};

struct SpectralFlavor {
    double h = 0.0;
    double H = 0.0;
};

using SpectralMode = std::variant<SpectralSingleScale, SpectralFlavor>;

struct SpectralRun {
    SpaceTimeField u, q, p;

    bool unstable() const { return u.unstable(); }
};

/// Integrates from the configured initial condition. Single-scale runs keep
/// every `time_stride`-th step; FLAVOR runs keep all micro and macro nodes.
SpectralRun run_spectral(const SpectralConfig& cfg, const SpectralMode& mode,
                         const InstabilityGuard& guard = {});

}  // namespace flavors::spectral
