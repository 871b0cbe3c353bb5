#include "flavors/fd_conslaw.hpp"

#include <string>
#include <type_traits>
#include <variant>

#include "flavors/errors.hpp"
#include "flavors/mesh.hpp"

namespace flavors::conslaw {

void ConsLawConfig::validate() const {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    if (!(L > 0.0) || !(T > 0.0)) throw InvalidArgument("L and T must be positive");
    if (!flux || !flux_derivative || !initial) {
        throw InvalidArgument("flux, flux derivative and initial condition are required");
    }
}

std::vector<double> lf_step(std::span<const double> u, double k_space, double tau, double alpha,
                            const ConsLawConfig& cfg) {
    if (u.empty()) throw InvalidArgument("lf_step on an empty grid");
    if (!(k_space > 0.0) || !(tau > 0.0)) throw InvalidArgument("lf_step steps must be positive");
    const std::size_t n = u.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = u[(i + n - 1) % n];
        const double right = u[(i + 1) % n];
        const double avg = 0.5 * (left + right);
        const double transport = cfg.flux_derivative(avg) * (right - left) / (2.0 * k_space);
        const double source = alpha * avg * (1.0 - avg * avg);
        out[i] = avg - tau * transport + tau * source;
    }
    return out;
}

SwitchedFlow lax_friedrichs_flow(double k_space, std::size_t nodes, const ConsLawConfig& cfg) {
    SwitchedFlow flow;
    flow.dim = nodes;
    flow.step = [k_space, cfg](const State& u, double, double tau, double alpha) {
        if (tau == 0.0) return u;
        return lf_step(u, k_space, tau, alpha, cfg);
    };
    return flow;
}

FlavorStep lf_flavor_macro_step(std::span<const double> u, double K, double h, double H,
                                const ConsLawConfig& cfg, const InstabilityGuard& guard) {
    const State state(u.begin(), u.end());
    return flavor_macro_step(lax_friedrichs_flow(K, state.size(), cfg), state, 0.0, h, H,
                             1.0 / cfg.eps, guard);
}

namespace {

std::vector<double> nodes(std::size_t n, double dx) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) * dx;
    return x;
}

SpaceTimeField run_single_scale(const ConsLawConfig& cfg, const SingleScale& m,
                                std::span<const double> u0, const InstabilityGuard& guard) {
    const std::size_t n = u0.size();
    const std::size_t steps = integral_ratio(cfg.T, m.h, "T/h");
    const std::size_t sx = m.sampling.space_stride;
    const std::size_t st = m.sampling.time_stride;
    if (sx == 0 || st == 0 || n % sx != 0) {
        throw InvalidArgument("sampling strides must be positive and divide the node count");
    }

    std::vector<double> stored_x;
    for (std::size_t i = 0; i < n; i += sx) stored_x.push_back(static_cast<double>(i) * m.k);
    SpaceTimeField field("u", std::move(stored_x), m.k, m.h);

    std::vector<double> column(n / sx);
    auto store = [&](const std::vector<double>& u, double t) {
        for (std::size_t i = 0; i < column.size(); ++i) column[i] = u[i * sx];
        field.append_column(column, t);
    };

    std::vector<double> u(u0.begin(), u0.end());
    store(u, 0.0);
    const double alpha = 1.0 / cfg.eps;
    for (std::size_t j = 1; j <= steps; ++j) {
        const double t0 = static_cast<double>(j - 1) * m.h;
        u = lf_step(u, m.k, m.h, alpha, cfg);
        try {
            check_state(u, t0, guard);
        } catch (const NonFinite& e) {
            field.mark_unstable(e.time());
            break;
        }
        if (j % st == 0) store(u, static_cast<double>(j) * m.h);
    }
    return field;
}

SpaceTimeField run_flavor(const ConsLawConfig& cfg, const Flavor& m, std::span<const double> u0,
                          const InstabilityGuard& guard) {
    const auto mesh = build_mesh(cfg.L, cfg.T, m.K, m.h, m.H);
    const auto flow = lax_friedrichs_flow(m.K, mesh.N(), cfg);
    const auto traj = integrate(flow, State(u0.begin(), u0.end()), mesh, 1.0 / cfg.eps, guard);
    return to_field(traj, "u", mesh.space_nodes(), mesh);
}

double space_step(const GridMode& mode) {
    return std::visit(
        [](const auto& m) {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, SingleScale>) {
                return m.k;
            } else {
                return m.K;
            }
        },
        mode);
}

}  // namespace

SpaceTimeField run_fd(const ConsLawConfig& cfg, const GridMode& mode,
                      const InstabilityGuard& guard) {
    cfg.validate();
    const double dx = space_step(mode);
    if (!(dx > 0.0)) throw InvalidArgument("space step must be positive");
    const std::size_t n = integral_ratio(cfg.L, dx, "L/dx");
    std::vector<double> u0(n);
    const auto x = nodes(n, dx);
    for (std::size_t i = 0; i < n; ++i) u0[i] = cfg.initial(x[i]);
    return run_fd_from(cfg, mode, u0, guard);
}

SpaceTimeField run_fd_from(const ConsLawConfig& cfg, const GridMode& mode,
                           std::span<const double> u0, const InstabilityGuard& guard) {
    cfg.validate();
    const double dx = space_step(mode);
    if (!(dx > 0.0)) throw InvalidArgument("space step must be positive");
    if (u0.size() != integral_ratio(cfg.L, dx, "L/dx")) {
        throw InvalidArgument("initial vector length must equal L / dx");
    }
    if (const auto* single = std::get_if<SingleScale>(&mode)) {
        return run_single_scale(cfg, *single, u0, guard);
    }
    return run_flavor(cfg, std::get<Flavor>(mode), u0, guard);
}

}  // namespace flavors::conslaw
