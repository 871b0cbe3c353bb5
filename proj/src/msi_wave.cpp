#include "flavors/msi_wave.hpp"

#include <cmath>
#include <variant>

#include "flavors/errors.hpp"
#include "flavors/mesh.hpp"

namespace flavors::wave {

Potential sine_gordon_stiff(double omega) {
    return {[omega](double u) { return -std::cos(omega * u) - std::cos(u); },
            [omega](double u) { return omega * std::sin(omega * u) + std::sin(u); }};
}

Potential sine_gordon_soft() {
    return {[](double u) { return -std::cos(u); }, [](double u) { return std::sin(u); }};
}

void WaveConfig::validate() const {
    if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
    if (!(L > 0.0) || !(T > 0.0)) throw InvalidArgument("L and T must be positive");
    if (!stiff.derivative || !soft.derivative) throw InvalidArgument("potential derivatives are required");
}

double WaveConfig::f(double x) const {
    return displacement ? displacement(x) : std::sin(2.0 * M_PI * x / L);
}

double WaveConfig::g(double x) const { return velocity ? velocity(x) : 0.0; }

WaveConfig sine_gordon_config(double omega, double L, double T) {
    WaveConfig cfg;
    cfg.omega = omega;
    cfg.L = L;
    cfg.T = T;
    cfg.stiff = sine_gordon_stiff(omega);
    cfg.soft = sine_gordon_soft();
    return cfg;
}

FlavorGrid FlavorGrid::flavor(double K, double h, double H) {
    if (!(K > 0.0) || !(h > 0.0)) throw InvalidArgument("grid steps must be positive");
    if (!(h < H)) throw DegenerateSteps("micro step h must be strictly smaller than macro step H");
    return {K, h, H};
}

FlavorGrid FlavorGrid::uniform(double k, double h) {
    if (!(k > 0.0) || !(h > 0.0)) throw InvalidArgument("grid steps must be positive");
    return {k, h, 0.0};
}

double FlavorGrid::row_step(std::size_t j) const {
    if (!is_flavor()) return h;
    return (j % 2 == 1) ? h : H - h;
}

bool FlavorGrid::stiff_row(std::size_t j) const { return !is_flavor() || j % 2 == 1; }

double discrete_lagrangian(double u_ij, double u_i_jp1, double u_ip1_j, double h, double k,
                           const std::function<double(double)>& V) {
    const double ut = (u_i_jp1 - u_ij) / h;
    const double ux = (u_ip1_j - u_ij) / k;
    return h * k * (0.5 * ut * ut - 0.5 * ux * ux + V(u_ij));
}

std::vector<double> del_update(std::span<const double> row_prev, std::span<const double> row_curr,
                               std::size_t j, const FlavorGrid& grid, const WaveConfig& cfg) {
    const std::size_t n = row_curr.size();
    if (n == 0 || row_prev.size() != n) throw InvalidArgument("rows must be non-empty and of equal length");
    if (j < 2) throw InvalidArgument("del_update needs a previous row (j >= 2)");

    const double k = grid.K;
    const double hj = grid.row_step(j);
    const double hp = grid.row_step(j - 1);
    const auto& dV = grid.stiff_row(j) ? cfg.stiff.derivative : cfg.soft.derivative;

    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = row_curr[i];
        const double right = row_curr[(i + 1) % n];
        const double left = row_curr[(i + n - 1) % n];
        // Everything in the stationarity condition except k (u - u_next) / h_j.
        const double rest = -hj * (u - right) / k + hj * k * dV(u) + k * (u - row_prev[i]) / hp -
                            hj * (u - left) / k;
        next[i] = u + hj * rest / k;
    }
    return next;
}

namespace {

struct RowRunner {
    const WaveConfig& cfg;
    FlavorGrid grid;
    std::size_t rows = 0;  // total rows including the two initial ones
    std::vector<double> times;
    Sampling sampling{};
};

SpaceTimeField run_rows(const RowRunner& run, std::span<const double> row1,
                        std::span<const double> row2, const InstabilityGuard& guard) {
    const std::size_t n = row1.size();
    const std::size_t sx = run.sampling.space_stride;
    const std::size_t st = run.sampling.time_stride;
    if (sx == 0 || st == 0 || n % sx != 0) {
        throw InvalidArgument("sampling strides must be positive and divide the node count");
    }
    const bool flavor = run.grid.is_flavor();

    std::vector<double> stored_x;
    for (std::size_t i = 0; i < n; i += sx) stored_x.push_back(static_cast<double>(i) * run.grid.K);
    SpaceTimeField field("u", std::move(stored_x), run.grid.K, flavor ? run.grid.H : run.grid.h,
                         flavor ? run.grid.h : 0.0);

    std::vector<double> column(n / sx);
    // Row index is 0-based here: row r is row r + 1 of the 1-based grid numbering.
    auto store = [&](std::span<const double> row, std::size_t r) {
        if (!flavor && r % st != 0) return;
        for (std::size_t i = 0; i < column.size(); ++i) column[i] = row[i * sx];
        field.append_column(column, run.times[r], !flavor || r % 2 == 0);
    };

    std::vector<double> prev(row1.begin(), row1.end());
    std::vector<double> curr(row2.begin(), row2.end());
    store(prev, 0);
    if (run.rows < 2) return field;
    store(curr, 1);
    for (std::size_t r = 2; r < run.rows; ++r) {
        auto next = del_update(prev, curr, r, run.grid, run.cfg);
        try {
            check_state(next, run.times[r - 1], guard);
        } catch (const NonFinite& e) {
            field.mark_unstable(e.time());
            break;
        }
        prev = std::move(curr);
        curr = std::move(next);
        store(curr, r);
    }
    return field;
}

RowRunner make_runner(const WaveConfig& cfg, const GridMode& mode, std::size_t& nodes) {
    if (const auto* s = std::get_if<SingleScale>(&mode)) {
        RowRunner run{cfg, FlavorGrid::uniform(s->k, s->h), 0, {}, {}};
        nodes = integral_ratio(cfg.L, s->k, "L/k");
        const std::size_t steps = integral_ratio(cfg.T, s->h, "T/h");
        run.rows = steps + 1;
        run.times.resize(run.rows);
        for (std::size_t r = 0; r < run.rows; ++r) run.times[r] = static_cast<double>(r) * s->h;
        run.sampling = s->sampling;
        return run;
    }
    const auto& f = std::get<Flavor>(mode);
    const auto mesh = build_mesh(cfg.L, cfg.T, f.K, f.h, f.H);
    RowRunner run{cfg, FlavorGrid::flavor(f.K, f.h, f.H), 0, {}, {}};
    nodes = mesh.N();
    run.times = mesh.time_nodes();
    run.rows = run.times.size();
    return run;
}

}  // namespace

SpaceTimeField run_msi(const WaveConfig& cfg, const GridMode& mode, const InstabilityGuard& guard) {
    cfg.validate();
    std::size_t n = 0;
    const auto run = make_runner(cfg, mode, n);
    const double h1 = run.grid.row_step(1);
    std::vector<double> row1(n), row2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) * run.grid.K;
        row1[i] = cfg.f(x);
        row2[i] = row1[i] + h1 * cfg.g(x);
    }
    return run_rows(run, row1, row2, guard);
}

SpaceTimeField run_msi_from(const WaveConfig& cfg, const GridMode& mode,
                            std::span<const double> row1, std::span<const double> row2,
                            const InstabilityGuard& guard) {
    cfg.validate();
    std::size_t n = 0;
    const auto run = make_runner(cfg, mode, n);
    if (row1.size() != n || row2.size() != n) {
        throw InvalidArgument("initial rows must have L / dx entries");
    }
    return run_rows(run, row1, row2, guard);
}

double averaged_stiffness(double omega, double h, double H) {
    if (!(h > 0.0) || !(H > 0.0) || h > H) throw InvalidArgument("averaged_stiffness requires 0 < h <= H");
    return omega * h / H;
}

}  // namespace flavors::wave
