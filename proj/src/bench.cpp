#include "flavors/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "flavors/errors.hpp"
#include "flavors/fourier.hpp"
#include "flavors/norms.hpp"

namespace flavors::bench {

double speedup(double H, double K, double h, double k) { return H * K / (2.0 * h * k); }

double speedup_time(double H, double h_bench) { return H / (2.0 * h_bench); }

namespace {

constexpr double kNodeTolerance = 1e-6;

std::optional<std::size_t> locate(const std::vector<double>& sorted, double value, double tol) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), value - tol);
    if (it == sorted.end() || std::abs(*it - value) > tol) return std::nullopt;
    return static_cast<std::size_t>(it - sorted.begin());
}

double finest_time_step(const SpaceTimeField& f) {
    return f.is_flavor() ? std::min(f.micro_step(), f.time_step() - f.micro_step()) : f.time_step();
}

void require_stable(const SpaceTimeField& f) {
    if (f.unstable()) throw NonFinite("field '" + f.name() + "' is unstable", *f.failure_time());
}

/// Column values, low-pass filtered when requested.
class ColumnSource {
public:
    ColumnSource(const SpaceTimeField& field, std::optional<std::size_t> modes) : field_(field), modes_(modes) {}

    std::span<const double> get(std::size_t col) {
        if (!modes_) return field_.column(col);
        auto [it, fresh] = cache_.try_emplace(col);
        if (fresh) it->second = low_pass(field_.column(col), *modes_);
        return it->second;
    }

private:
    const SpaceTimeField& field_;
    std::optional<std::size_t> modes_;
    std::map<std::size_t, std::vector<double>> cache_;
};

}  // namespace

ComparisonReport compare_on_intersection(const SpaceTimeField& flavor, const SpaceTimeField& benchmark,
                                         const CompareOptions& options) {
    require_stable(flavor);
    require_stable(benchmark);
    if (flavor.cols() == 0 || benchmark.cols() == 0) throw InvalidArgument("cannot compare empty fields");

    const double tol_x = kNodeTolerance * std::min(flavor.space_step(), benchmark.space_step());
    const double tol_t = kNodeTolerance * std::min(finest_time_step(flavor), finest_time_step(benchmark));

    std::vector<std::size_t> rows(flavor.rows());
    for (std::size_t i = 0; i < flavor.rows(); ++i) {
        const auto hit = locate(benchmark.x(), flavor.x()[i], tol_x);
        if (!hit) throw MeshMismatch("spatial node " + std::to_string(flavor.x()[i]) + " is not a benchmark node");
        rows[i] = *hit;
    }

    ColumnSource fsrc(flavor, options.low_pass), bsrc(benchmark, options.low_pass);
    std::vector<double> diff;
    for (std::size_t c = 0; c < flavor.cols(); ++c) {
        if (!flavor.is_macro(c)) continue;
        const double t = flavor.times()[c];
        const auto hit = locate(benchmark.times(), t, tol_t);
        if (!hit) throw MeshMismatch("time node " + std::to_string(t) + " is not a benchmark node");
        const auto a = fsrc.get(c);
        const auto b = bsrc.get(*hit);
        for (std::size_t i = 0; i < rows.size(); ++i) diff.push_back(a[i] - b[rows[i]]);
    }

    ComparisonReport report;
    report.error = normalized_l1(diff);
    report.node_count = diff.size();
    report.speedup = flavor.is_flavor()
                         ? speedup(flavor.time_step(), flavor.space_step(), benchmark.time_step(),
                                   benchmark.space_step())
                         : flavor.time_step() * flavor.space_step() /
                               (benchmark.time_step() * benchmark.space_step());
    return report;
}

ErrorSurface error_sweep(const std::vector<double>& H_values, const std::vector<double>& h_values,
                         const SpaceTimeField& benchmark, const CellRunner& run_cell, std::size_t threads) {
    ErrorSurface surface{H_values, h_values, {}, {}};
    const std::size_t cells = H_values.size() * h_values.size();
    surface.errors.assign(cells, std::nullopt);
    surface.status.assign(cells, CellStatus::invalid);

    auto evaluate = [&](std::size_t idx) {
        const double H = H_values[idx / h_values.size()];
        const double h = h_values[idx % h_values.size()];
        if (!(h > 0.0) || !(h < H)) return;
        try {
            const auto field = run_cell(H, h);
            if (field.unstable()) {
                surface.status[idx] = CellStatus::unstable;
                return;
            }
            const double e = compare_on_intersection(field, benchmark).error;
            if (std::isfinite(e) && e <= 1.0) {
                surface.errors[idx] = e;
                surface.status[idx] = CellStatus::stable;
            } else {
                surface.status[idx] = CellStatus::unstable;
            }
        } catch (const NonFinite&) {
            surface.status[idx] = CellStatus::unstable;
        } catch (const InvalidArgument&) {
            surface.status[idx] = CellStatus::invalid;
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, cells));
    if (workers == 1) {
        for (std::size_t idx = 0; idx < cells; ++idx) evaluate(idx);
        return surface;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t idx = next++; idx < cells; idx = next++) evaluate(idx);
        });
    }
    for (auto& t : pool) t.join();
    return surface;
}

ErrorSurface gl_error_sweep(const conslaw::ConsLawConfig& cfg, double K, const std::vector<double>& H_values,
                            const std::vector<double>& h_values, const SpaceTimeField& benchmark,
                            std::size_t threads) {
    cfg.validate();
    const CellRunner runner = [cfg, K](double H, double h) {
        const auto macro_steps = static_cast<std::size_t>(std::floor(cfg.T / H + 1e-9));
        if (macro_steps == 0) throw InvalidArgument("H exceeds T");
        auto cell = cfg;
        cell.T = static_cast<double>(macro_steps) * H;
        return conslaw::run_fd(cell, Flavor{K, h, H});
    };
    return error_sweep(H_values, h_values, benchmark, runner, threads);
}

ComparisonReport splitting_control(const wave::WaveConfig& cfg, const SpaceTimeField& flavor,
                                   double omega_tilde, const SingleScale& mesh, const CompareOptions& options) {
    auto averaged = cfg;
    averaged.omega = omega_tilde;
    averaged.stiff = wave::sine_gordon_stiff(omega_tilde);
    const auto field = wave::run_msi(averaged, mesh);
    return compare_on_intersection(flavor, field, options);
}

EnvelopeReport compare_envelopes(const SpaceTimeField& flavor, const SpaceTimeField& benchmark, double width) {
    require_stable(flavor);
    require_stable(benchmark);
    if (!(width > 0.0)) throw InvalidArgument("envelope window must be positive");
    if (flavor.rows() != benchmark.rows()) throw MeshMismatch("envelope comparison needs a shared spatial grid");
    const double tol_x = kNodeTolerance * std::min(flavor.space_step(), benchmark.space_step());
    for (std::size_t i = 0; i < flavor.rows(); ++i) {
        if (std::abs(flavor.x()[i] - benchmark.x()[i]) > tol_x) {
            throw MeshMismatch("envelope comparison needs a shared spatial grid");
        }
    }
    if (flavor.cols() == 0 || benchmark.cols() == 0) throw InvalidArgument("cannot compare empty fields");

    double t_end = benchmark.times().back();
    for (std::size_t c = flavor.cols(); c-- > 0;) {
        if (flavor.is_macro(c)) {
            t_end = std::min(t_end, flavor.times()[c]);
            break;
        }
    }
    const double stride = width / 2.0;
    const double tol_t = kNodeTolerance * std::min(finest_time_step(flavor), finest_time_step(benchmark));
    const std::size_t n = flavor.rows();

    auto envelope = [&](const SpaceTimeField& f, bool macro_only, double a, double b, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t c = 0; c < f.cols(); ++c) {
            const double t = f.times()[c];
            if ((macro_only && !f.is_macro(c)) || t < a - tol_t || t > b + tol_t) continue;
            const auto col = f.column(c);
            for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], std::abs(col[i]));
        }
    };

    std::vector<double> env_f, env_b, ef(n), eb(n);
    EnvelopeReport report;
    for (std::size_t w = 0;; ++w) {
        const double a = static_cast<double>(w) * stride;
        if (a + width > t_end + tol_t) break;
        envelope(flavor, true, a, a + width, ef);
        envelope(benchmark, false, a, a + width, eb);
        env_f.insert(env_f.end(), ef.begin(), ef.end());
        env_b.insert(env_b.end(), eb.begin(), eb.end());
        ++report.windows;
    }
    if (report.windows == 0) throw InvalidArgument("envelope window is longer than the compared time span");

    std::vector<double> diff(env_f.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = env_f[i] - env_b[i];
    const double scale = normalized_l1(env_b);
    if (!(scale > 0.0)) throw InvalidArgument("benchmark envelope is identically zero");
    report.relative_error = normalized_l1(diff) / scale;
    return report;
}

}  // namespace flavors::bench
