// Acceptance checks: one PASS/FAIL line per criterion; exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flavors/bench.hpp"
#include "flavors/errors.hpp"
#include "flavors/fd_conslaw.hpp"
#include "flavors/msi_wave.hpp"
#include "flavors/norms.hpp"
#include "flavors/spectral.hpp"
#include "support/action_oracle.hpp"

using namespace flavors;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

std::vector<double> rotate(std::span<const double> v, std::size_t m) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[(i + m) % v.size()] = v[i];
    return out;
}

/// Zero crossings of a periodic column, linearly interpolated.
std::vector<double> zero_crossings(const SpaceTimeField& f, std::size_t col, double L) {
    std::vector<double> out;
    const std::size_t n = f.rows();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = f(i, col), b = f((i + 1) % n, col);
        if ((a < 0.0) != (b < 0.0)) out.push_back(std::fmod(f.x()[i] + f.space_step() * a / (a - b), L));
    }
    return out;
}

double periodic_distance(double a, double b, double L) {
    const double d = std::abs(a - b);
    return std::min(d, L - d);
}

/// Largest distance from a FLAVOR front to the nearest benchmark front.
double front_offset(const std::vector<double>& flavor, const std::vector<double>& bench, double L) {
    double worst = 0.0;
    for (double x : flavor) {
        double nearest = L;
        for (double y : bench) nearest = std::min(nearest, periodic_distance(x, y, L));
        worst = std::max(worst, nearest);
    }
    return worst;
}

std::size_t last_macro(const SpaceTimeField& f) {
    std::size_t c = f.cols() - 1;
    while (!f.is_macro(c)) --c;
    return c;
}

Verdict speedups() {
    Verdict v;
    const double gl = bench::speedup(0.005, 0.01, 0.0002, 0.0004);
    const double L = 2.0, omega = 20.0, k = L / 20.0 / omega, K = L / 40.0;
    const double sg = bench::speedup(K / 2.0, K, k / 2.0, k);
    const double sp = bench::speedup_time(0.01, 1e-4);
    v.detail << "GL " << gl << ", Sine-Gordon " << sg << ", spectral " << sp;
    v.require(std::abs(gl - 312.5) < 1e-12, "GL 312.5");
    v.require(std::abs(sg - 50.0) < 1e-12, "Sine-Gordon 50");
    v.require(std::abs(sp - 50.0) < 1e-12, "spectral 50");
    return v;
}

Verdict gl_stability_structure() {
    Verdict v;
    conslaw::ConsLawConfig cfg;  // eps = 2e-3, L = T = 2
    const double eps = cfg.eps;
    const auto start = std::chrono::steady_clock::now();
    const auto benchmark = conslaw::run_fd(cfg, SingleScale{0.2 * eps, 0.1 * eps, {25, 1}});
    const std::vector<double> Hs{2 * 0.1 * eps, 10 * 0.1 * eps, 25 * 0.1 * eps, 50 * 0.1 * eps};
    const std::vector<double> hs{0.05 * eps, 0.1 * eps, 0.5 * eps, 1.5 * eps, 3 * eps};
    const auto s = bench::gl_error_sweep(cfg, 0.01, Hs, hs, benchmark, 2);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto small = s.error(0, 1), large = s.error(3, 1), preset = s.error(2, 1);
    std::size_t masked = 0;
    for (std::size_t a = 0; a < Hs.size(); ++a) masked += s.stable(a, 4) ? 0 : 1;

    v.detail << "T=2; h=0.1eps: err(H=0.2eps)=" << (small ? *small : NAN) << " err(H=5eps)=" << (large ? *large : NAN)
             << "; h=3eps masked " << masked << "/4; err(h=0.1eps,H=0.005)=" << (preset ? *preset : NAN) << "; "
             << seconds << " s";
    v.require(small && large && *small < *large, "(a) error grows with H");
    v.require(2 * masked > Hs.size(), "(b) majority masked at h=3eps");
    v.require(preset && *preset < 1.0 && s.stable(2, 1), "(c) preset cell stable, error < 1");
    return v;
}

Verdict gl_physical_behavior() {
    Verdict v;
    conslaw::ConsLawConfig cfg;
    cfg.T = 0.5;
    const double eps = cfg.eps, K = 0.01;
    const auto benchmark = conslaw::run_fd(cfg, SingleScale{0.2 * eps, 0.1 * eps, {1, 2500}});
    const auto flavor = conslaw::run_fd(cfg, Flavor{K, 0.1 * eps, 0.005});
    v.require(!benchmark.unstable() && !flavor.unstable(), "both runs stable");
    if (!v.pass) return v;

    const std::size_t bc = benchmark.cols() - 1;
    const auto bfronts = zero_crossings(benchmark, bc, cfg.L);
    double worst = 0.0;
    for (std::size_t i = 0; i < benchmark.rows(); ++i) {
        const double x = benchmark.x()[i];
        const bool near = std::any_of(bfronts.begin(), bfronts.end(),
                                      [&](double f) { return periodic_distance(x, f, cfg.L) < 2 * K; });
        if (!near) worst = std::max(worst, std::abs(std::abs(benchmark(i, bc)) - 1.0));
    }
    const auto ffronts = zero_crossings(flavor, last_macro(flavor), cfg.L);
    const double offset = front_offset(ffronts, bfronts, cfg.L);

    // Same comparison at T = 2, reported but not judged.
    conslaw::ConsLawConfig full;
    const auto bench2 = conslaw::run_fd(full, SingleScale{0.2 * eps, 0.1 * eps, {1, 10000}});
    const auto flavor2 = conslaw::run_fd(full, Flavor{K, 0.1 * eps, 0.005});
    const double offset2 = front_offset(zero_crossings(flavor2, last_macro(flavor2), full.L),
                                        zero_crossings(bench2, bench2.cols() - 1, full.L), full.L);

    v.detail << "t=0.5: " << bfronts.size() << " fronts, max ||u|-1| beyond 2K of fronts " << worst
             << "; FLAVOR front offset " << offset << " (2K = " << 2 * K << "); offset at T=2 " << offset2
             << " (info)";
    v.require(!bfronts.empty() && ffronts.size() == bfronts.size(), "matching front counts");
    v.require(worst < 0.05, "|u| within 0.05 of 1 away from fronts");
    v.require(offset < 2 * K, "fronts within 2K");
    return v;
}

Verdict msi_stationarity() {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    const auto cfg = wave::sine_gordon_config(20.0, 2.0, 2.0);
    const double k = 2.0 / 20.0 / 20.0, K = 2.0 / 40.0;
    struct Case {
        const char* name;
        GridMode mode;
        wave::FlavorGrid grid;
    };
    const Case cases[] = {{"benchmark", SingleScale{k, k / 2}, wave::FlavorGrid::uniform(k, k / 2)},
                          {"flavor", Flavor{K, k / 2, K / 2}, wave::FlavorGrid::flavor(K, k / 2, K / 2)}};
    for (const auto& c : cases) {
        const auto field = wave::run_msi(cfg, c.mode);
        v.require(!field.unstable(), std::string(c.name) + " completed");
        if (field.unstable()) continue;
        double worst = 0.0;
        std::size_t nodes = 0;
        for (std::size_t r = 1; r + 1 < field.cols(); ++r) {
            for (std::size_t i = 0; i < field.rows(); ++i, ++nodes) {
                worst = std::max(worst, std::abs(testing::action_gradient(field, i, r, c.grid, cfg)));
            }
        }
        v.detail << c.name << ": max |dS/du| " << worst << " over " << nodes << " nodes; ";
        v.require(worst < 1e-9, std::string(c.name) + " gradient < 1e-9");
    }
    v.detail << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s";
    return v;
}

Verdict msi_leapfrog() {
    Verdict v;
    wave::WaveConfig cfg = wave::sine_gordon_config(20.0);
    const wave::Potential zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
    cfg.stiff = cfg.soft = zero;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double stencil = 0.0, cycle = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 8 + static_cast<std::size_t>(trial % 40);
        const double step = 0.01 + 0.001 * (trial % 7);
        const auto grid = wave::FlavorGrid::uniform(step, step);
        std::vector<double> prev(n), curr(n);
        for (auto& x : prev) x = dist(rng);
        for (auto& x : curr) x = dist(rng);
        const std::size_t j = 2 + static_cast<std::size_t>(trial % 5);
        const auto next = wave::del_update(prev, curr, j, grid, cfg);
        for (std::size_t i = 0; i < n; ++i) {
            const double expected = curr[(i + 1) % n] + curr[(i + n - 1) % n] - prev[i];
            stencil = std::max(stencil, std::abs(next[i] - expected));
        }
        const auto back = wave::del_update(next, curr, j, grid, cfg);
        cycle = std::max(cycle, max_abs_diff(back, prev));
    }
    v.detail << "stencil deviation " << stencil << ", advance-retreat deviation " << cycle;
    v.require(stencil < 1e-12, "leapfrog stencil");
    v.require(cycle < 1e-12, "advance-retreat identity");
    return v;
}

Verdict averaged_stiffness_control() {
    Verdict v;
    const auto cfg = wave::sine_gordon_config(20.0, 2.0, 2.0);
    const double k = 0.005, h = 0.0025, K = 0.05, H = 0.025;
    const auto flavor = wave::run_msi(cfg, Flavor{K, h, H});
    const auto fine = wave::run_msi(cfg, SingleScale{k, h});
    const bench::CompareOptions lp{4};
    const double omega_tilde = wave::averaged_stiffness(20.0, h, H);
    const double to_bench = bench::compare_on_intersection(flavor, fine, lp).error;
    const double to_avg = bench::splitting_control(cfg, flavor, omega_tilde, SingleScale{k, h}, lp).error;
    v.detail << "T=2, omega_tilde " << omega_tilde << ": d(FLAVOR, omega_tilde run) " << to_avg
             << ", d(FLAVOR, fine benchmark) " << to_bench << ", ratio " << to_avg / to_bench << " (need > 10)";
    v.require(to_avg > 10.0 * to_bench, "distance ratio > 10");
    return v;
}

Verdict spectral_two_scale() {
    Verdict v;
    spectral::SpectralConfig cfg;  // omega = 1000, L = 2, N = 20
    cfg.T = 2.0;
    const auto benchmark = spectral::run_spectral(cfg, spectral::SpectralSingleScale{0.1 / cfg.omega, 1});
    const auto flavor = spectral::run_spectral(cfg, spectral::SpectralFlavor{1.0 / (cfg.omega * cfg.omega), 0.01});
    v.require(!benchmark.unstable() && !flavor.unstable(), "both runs stable");
    if (!v.pass) return v;
    const double u_err = bench::compare_on_intersection(flavor.u, benchmark.u).error;
    const double q_err = bench::compare_on_intersection(flavor.q, benchmark.q).error;
    const auto env = bench::compare_envelopes(flavor.q, benchmark.q, 1.0);
    v.detail << "T=2: u error " << u_err << " (< 0.05); q envelope relative error " << env.relative_error << " over "
             << env.windows << " windows of width 1 (< 0.1); q pointwise error " << q_err << " (info)";
    v.require(u_err < 0.05, "slow field pointwise");
    v.require(env.relative_error < 0.1, "fast field envelope");
    return v;
}

Verdict kernel_properties() {
    Verdict v;
    // RK4 on the logistic equation.
    const spectral::RhsFn logistic = [](const State& s, double) { return State{s[0] * (1 - s[0])}; };
    const double y0 = 0.2;
    auto exact = [y0](double t) { return y0 * std::exp(t) / (1 - y0 + y0 * std::exp(t)); };
    auto one_step = [&](double tau) { return std::abs(spectral::rk4_step(logistic, State{y0}, 0.0, tau)[0] - exact(tau)); };
    auto at_one = [&](std::size_t steps) {
        State y{y0};
        const double tau = 1.0 / static_cast<double>(steps);
        for (std::size_t s = 0; s < steps; ++s) y = spectral::rk4_step(logistic, y, static_cast<double>(s) * tau, tau);
        return std::abs(y[0] - exact(1.0));
    };
    const double local_ratio = one_step(0.1) / one_step(0.05);
    const double global_ratio = at_one(10) / at_one(20);
    v.require(local_ratio >= 8 && local_ratio <= 32, "RK4 one-step ratio");
    v.require(global_ratio >= 8 && global_ratio <= 32, "RK4 fixed-time ratio");

    // Spectral derivative of random band-limited data.
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    double deriv_err = 0.0;
    for (std::size_t n : {8u, 16u, 20u, 32u}) {
        for (int trial = 0; trial < 25; ++trial) {
            const double L = 2.0;
            std::vector<double> v0(n, 0.0), dv(n, 0.0);
            for (std::size_t m = 0; m < n / 2; ++m) {
                const double a = coef(rng), b = m == 0 ? 0.0 : coef(rng), w = 2 * M_PI * m / L;
                for (std::size_t j = 0; j < n; ++j) {
                    const double x = L * j / n;
                    v0[j] += a * std::cos(w * x) + b * std::sin(w * x);
                    dv[j] += -w * a * std::sin(w * x) + w * b * std::cos(w * x);
                }
            }
            deriv_err = std::max(deriv_err, max_abs_diff(spectral::spectral_derivative(v0, L), dv));
        }
    }
    v.require(deriv_err < 1e-12, "spectral derivative exact");

    // Lax-Friedrichs fixed points in both modes.
    conslaw::ConsLawConfig gl;
    gl.T = 0.1;
    const double eps = gl.eps;
    double fixed_err = 0.0;
    for (double c : {-1.0, 0.0, 1.0}) {
        gl.initial = [c](double) { return c; };
        for (const GridMode& mode : {GridMode{SingleScale{0.2 * eps, 0.1 * eps}}, GridMode{Flavor{0.01, 0.1 * eps, 0.005}}}) {
            const auto f = conslaw::run_fd(gl, mode);
            for (double x : f.values()) fixed_err = std::max(fixed_err, std::abs(x - c));
        }
    }
    v.require(fixed_err <= 1e-14, "Lax-Friedrichs fixed points");

    // Norm axioms.
    std::uniform_real_distribution<double> val(-10.0, 10.0);
    std::uniform_int_distribution<std::size_t> len(1, 100);
    std::size_t violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = len(rng);
        std::vector<double> a(n), b(n), sum(n), scaled(n);
        const double c = val(rng);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = val(rng);
            b[i] = val(rng);
            sum[i] = a[i] + b[i];
            scaled[i] = c * a[i];
        }
        const double na = normalized_l1(a), nb = normalized_l1(b);
        if (na < 0 || normalized_l1(sum) > (na + nb) * (1 + 1e-12)) ++violations;
        if (std::abs(normalized_l1(scaled) - std::abs(c) * na) > 1e-12 * std::abs(c) * na) ++violations;
    }
    v.require(violations == 0, "norm axioms");

    // Translation equivariance of both grid schemes.
    double shift_err = 0.0;
    {
        conslaw::ConsLawConfig c;
        c.T = 0.1;
        const std::size_t n = 200, m = 37;
        std::vector<double> u0(n);
        for (std::size_t i = 0; i < n; ++i) u0[i] = std::sin(M_PI * 0.01 * i) + 0.3 * std::cos(3 * M_PI * 0.01 * i);
        const Flavor mode{0.01, 0.1 * eps, 0.005};
        const auto a = conslaw::run_fd_from(c, mode, u0);
        const auto b = conslaw::run_fd_from(c, mode, rotate(u0, m));
        for (std::size_t col = 0; col < a.cols(); ++col) shift_err = std::max(shift_err, max_abs_diff(rotate(a.column(col), m), b.column(col)));
    }
    {
        const auto c = wave::sine_gordon_config(20.0, 2.0, 0.5);
        const std::size_t n = 40, m = 13;
        std::vector<double> r1(n), r2(n);
        for (std::size_t i = 0; i < n; ++i) {
            r1[i] = std::sin(2 * M_PI * i / n) + 0.2 * std::sin(6 * M_PI * i / n);
            r2[i] = r1[i] + 0.0025 * std::cos(2 * M_PI * i / n);
        }
        const Flavor mode{0.05, 0.0025, 0.025};
        const auto a = wave::run_msi_from(c, mode, r1, r2);
        const auto b = wave::run_msi_from(c, mode, rotate(r1, m), rotate(r2, m));
        for (std::size_t col = 0; col < a.cols(); ++col) shift_err = std::max(shift_err, max_abs_diff(rotate(a.column(col), m), b.column(col)));
    }
    v.require(shift_err <= 1e-12, "translation equivariance");

    v.detail << "RK4 ratios " << local_ratio << " (one step), " << global_ratio << " (T=1); derivative error "
             << deriv_err << "; fixed-point drift " << fixed_err << "; norm violations " << violations
             << "/2000; shift deviation " << shift_err;
    return v;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"speedup identities", speedups},
        {"GL stability structure", gl_stability_structure},
        {"GL physical behavior", gl_physical_behavior},
        {"MSI variational stationarity", msi_stationarity},
        {"MSI leapfrog limit", msi_leapfrog},
        {"averaged-stiffness non-equivalence", averaged_stiffness_control},
        {"spectral two-scale behavior", spectral_two_scale},
        {"numerical kernel properties", kernel_properties},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        failures += v.pass ? 0 : 1;
        std::printf("%s  %zu. %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures;
}
