#include "flavors/spectral.hpp"

#include <cmath>
#include <memory>

#include "flavors/errors.hpp"
#include "flavors/mesh.hpp"
#include "flavors/norms.hpp"

namespace flavors::spectral {

void SpectralConfig::validate() const {
    if (N < 4 || N % 2 != 0) throw InvalidArgument("collocation count N must be even and >= 4");
    if (!(L > 0.0) || !(T > 0.0)) throw InvalidArgument("L and T must be positive");
    if (!(omega >= 0.0)) throw InvalidArgument("omega must be non-negative");
}

std::vector<double> SpectralConfig::nodes() const {
    std::vector<double> y(N);
    for (std::size_t j = 0; j < N; ++j) y[j] = L * static_cast<double>(j) / static_cast<double>(N);
    return y;
}

SpectralState SpectralState::initial(const SpectralConfig& cfg) {
    cfg.validate();
    const double L = cfg.L;
    auto wave = [L](double x) { return std::cos(2.0 * M_PI * x / L); };
    auto fu = cfg.initial_u ? cfg.initial_u : std::function<double(double)>(wave);
    auto fq = cfg.initial_q ? cfg.initial_q : std::function<double(double)>(wave);
    auto fp = cfg.initial_p ? cfg.initial_p : std::function<double(double)>([](double) { return 0.0; });

    SpectralState s{cfg.N, cfg.L, {}, {}, {}};
    for (double y : cfg.nodes()) {
        s.u.push_back(fu(y));
        s.q.push_back(fq(y));
        s.p.push_back(fp(y));
    }
    return s;
}

State SpectralState::flatten() const {
    State out;
    out.reserve(3 * N);
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), q.begin(), q.end());
    out.insert(out.end(), p.begin(), p.end());
    return out;
}

SpectralState SpectralState::unflatten(const State& s, std::size_t N, double L) {
    if (s.size() != 3 * N) throw InvalidArgument("packed state must have 3N entries");
    SpectralState out{N, L, {}, {}, {}};
    out.u.assign(s.begin(), s.begin() + N);
    out.q.assign(s.begin() + N, s.begin() + 2 * N);
    out.p.assign(s.begin() + 2 * N, s.end());
    return out;
}

std::vector<std::complex<double>> SpectralState::coefficients(std::span<const double> values) {
    const std::size_t n = values.size();
    RealFft fft(n);
    std::vector<std::complex<double>> half(n / 2 + 1);
    fft.forward(values, half);
    std::vector<std::complex<double>> full(n);
    for (std::size_t m = 0; m < half.size(); ++m) full[m] = half[m];
    for (std::size_t m = half.size(); m < n; ++m) full[m] = std::conj(half[n - m]);
    return full;
}

SpectralDerivative::SpectralDerivative(std::size_t n, double L) : fft_(n), L_(L), modes_(n / 2 + 1) {
    if (n < 2 || n % 2 != 0) throw InvalidArgument("spectral derivative needs an even node count");
    if (!(L > 0.0)) throw InvalidArgument("period must be positive");
}

void SpectralDerivative::apply(std::span<const double> values, std::span<double> out) {
    fft_.forward(values, modes_);
    const double base = 2.0 * M_PI / L_;
    const std::size_t nyquist = fft_.size() / 2;
    for (std::size_t m = 0; m < nyquist; ++m) {
        modes_[m] *= std::complex<double>(0.0, base * static_cast<double>(m));
    }
    modes_[nyquist] = 0.0;
    fft_.inverse(modes_, out);
}

std::vector<double> SpectralDerivative::operator()(std::span<const double> values) {
    std::vector<double> out(values.size());
    apply(values, out);
    return out;
}

std::vector<double> spectral_derivative(std::span<const double> values, double L) {
    SpectralDerivative d(values.size(), L);
    return d(values);
}

ThreeFieldRhs::ThreeFieldRhs(std::size_t n, double L) : n_(n), d_(n, L), ux_(n), qx_(n), px_(n) {}

State ThreeFieldRhs::operator()(const State& y, double alpha) {
    if (y.size() != 3 * n_) throw InvalidArgument("packed state must have 3N entries");
    const std::span<const double> all(y);
    const auto u = all.subspan(0, n_);
    const auto q = all.subspan(n_, n_);
    const auto p = all.subspan(2 * n_, n_);
    d_.apply(u, ux_);
    d_.apply(q, qx_);
    d_.apply(p, px_);
    State dy(3 * n_);
    for (std::size_t j = 0; j < n_; ++j) {
        dy[j] = -ux_[j] + q[j] * q[j];
        dy[n_ + j] = -qx_[j] + p[j];
        dy[2 * n_ + j] = -px_[j] - alpha * q[j];
    }
    return dy;
}

State rk4_step(const RhsFn& rhs, const State& y, double t, double tau) {
    const std::size_t n = y.size();
    auto axpy = [n](const State& base, double a, const State& k) {
        State out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + a * k[i];
        return out;
    };
    const State k1 = rhs(y, t);
    const State k2 = rhs(axpy(y, 0.5 * tau, k1), t + 0.5 * tau);
    const State k3 = rhs(axpy(y, 0.5 * tau, k2), t + 0.5 * tau);
    const State k4 = rhs(axpy(y, tau, k3), t + tau);
    State out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = y[i] + tau / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!all_finite(out)) throw NonFinite("RK4 step produced a non-finite state", t);
    return out;
}

SwitchedFlow rk4_flow(std::size_t n, double L) {
    auto rhs = std::make_shared<ThreeFieldRhs>(n, L);
    SwitchedFlow flow;
    flow.dim = 3 * n;
    flow.step = [rhs](const State& y, double t, double tau, double alpha) {
        if (tau == 0.0) return y;
        return rk4_step([&](const State& s, double) { return (*rhs)(s, alpha); }, y, t, tau);
    };
    return flow;
}

SpectralState flavor_spectral_step(const SpectralState& state, double t, double h, double H,
                                   const SpectralConfig& cfg) {
    cfg.validate();
    const auto flow = rk4_flow(cfg.N, cfg.L);
    const auto step = flavor_macro_step(flow, state.flatten(), t, h, H, cfg.omega * cfg.omega);
    return SpectralState::unflatten(step.macro, cfg.N, cfg.L);
}

namespace {

SpectralRun run_single_scale(const SpectralConfig& cfg, const SpectralSingleScale& m,
                             const InstabilityGuard& guard) {
    if (!(m.h > 0.0)) throw InvalidArgument("time step must be positive");
    if (m.time_stride == 0) throw InvalidArgument("time stride must be positive");
    const std::size_t steps = integral_ratio(cfg.T, m.h, "T/h");
    const std::size_t n = cfg.N;
    const double dx = cfg.L / static_cast<double>(n);
    const auto x = cfg.nodes();
    SpectralRun run{SpaceTimeField("u", x, dx, m.h), SpaceTimeField("q", x, dx, m.h),
                    SpaceTimeField("p", x, dx, m.h)};

    auto store = [&](const State& y, double t) {
        const std::span<const double> all(y);
        run.u.append_column(all.subspan(0, n), t);
        run.q.append_column(all.subspan(n, n), t);
        run.p.append_column(all.subspan(2 * n, n), t);
    };
    auto mark = [&](double t) {
        run.u.mark_unstable(t);
        run.q.mark_unstable(t);
        run.p.mark_unstable(t);
    };

    const auto flow = rk4_flow(n, cfg.L);
    const double alpha = cfg.omega * cfg.omega;
    State y = SpectralState::initial(cfg).flatten();
    store(y, 0.0);
    for (std::size_t j = 1; j <= steps; ++j) {
        const double t0 = static_cast<double>(j - 1) * m.h;
        try {
            y = flow.step(y, t0, m.h, alpha);
            check_state(y, t0, guard);
        } catch (const NonFinite& e) {
            mark(e.time());
            break;
        }
        if (j % m.time_stride == 0) store(y, static_cast<double>(j) * m.h);
    }
    return run;
}

SpectralRun run_flavor(const SpectralConfig& cfg, const SpectralFlavor& m, const InstabilityGuard& guard) {
    const double dx = cfg.L / static_cast<double>(cfg.N);
    const auto mesh = build_mesh(cfg.L, cfg.T, dx, m.h, m.H);
    const auto traj = integrate(rk4_flow(cfg.N, cfg.L), SpectralState::initial(cfg).flatten(), mesh,
                                cfg.omega * cfg.omega, guard);
    const auto x = cfg.nodes();
    return {to_field(traj, "u", x, mesh, 0), to_field(traj, "q", x, mesh, cfg.N),
            to_field(traj, "p", x, mesh, 2 * cfg.N)};
}

}  // namespace

SpectralRun run_spectral(const SpectralConfig& cfg, const SpectralMode& mode, const InstabilityGuard& guard) {
    cfg.validate();
    if (const auto* s = std::get_if<SpectralSingleScale>(&mode)) return run_single_scale(cfg, *s, guard);
    return run_flavor(cfg, std::get<SpectralFlavor>(mode), guard);
}

}  // namespace flavors::spectral
