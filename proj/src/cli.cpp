#include "flavors/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"

#include "flavors/bench.hpp"
#include "flavors/errors.hpp"
#include "flavors/fd_conslaw.hpp"
#include "flavors/io.hpp"
#include "flavors/mesh.hpp"
#include "flavors/msi_wave.hpp"
#include "flavors/spectral.hpp"

namespace flavors::cli {

namespace {

const std::vector<std::string> kExperiments{"gl_fd", "sine_gordon_msi", "spectral_three_field"};
const std::vector<std::string> kModes{"single_scale", "flavor", "compare", "sweep", "control", "diagnose"};

bool one_of(const std::string& s, const std::vector<std::string>& options) {
    return std::find(options.begin(), options.end(), s) != options.end();
}

/// a / b when it is an integer, else nullopt.
std::optional<std::size_t> exact_ratio(double a, double b) {
    const double r = a / b;
    const double n = std::round(r);
    if (n < 1.0 || std::abs(r - n) > 1e-9 * n) return std::nullopt;
    return static_cast<std::size_t>(n);
}

double effective_eps(const RunConfig& c) { return c.experiment == "gl_fd" ? c.eps : 1.0 / c.omega; }

std::vector<double> preset_H_values(double eps) {
    std::vector<double> v;
    for (int m = 2; m <= 50; ++m) v.push_back(m * 0.1 * eps);
    return v;
}

std::vector<double> preset_h_values(double eps) {
    std::vector<double> v;
    for (int m = 1; m <= 300; ++m) v.push_back(m * 0.01 * eps);
    return v;
}

}  // namespace

void RunConfig::validate() const {
    if (!one_of(experiment, kExperiments)) throw InvalidArgument("unknown experiment '" + experiment + "'");
    if (!one_of(mode, kModes)) throw InvalidArgument("unknown mode '" + mode + "'");
    for (double v : {eps, omega, L, T, K, k, h, H, h_bench, envelope_window, regime_threshold, blowup_norm}) {
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("numeric parameters must be positive and finite");
    }
    for (double v : H_values) {
        if (!(v > 0.0)) throw InvalidArgument("sweep H values must be positive");
    }
    for (double v : h_values) {
        if (!(v > 0.0)) throw InvalidArgument("sweep h values must be positive");
    }
}

RunConfig preset(const std::string& name) {
    RunConfig c;
    if (name == "gl") {
        c.experiment = "gl_fd";
        c.eps = 2e-3;
        c.L = c.T = 2.0;
        c.k = 0.2 * c.eps;
        c.h_bench = 0.1 * c.eps;
        c.K = 0.01;
        c.h = 0.1 * c.eps;
        c.H = 0.005;
        c.H_values = preset_H_values(c.eps);
        c.h_values = preset_h_values(c.eps);
    } else if (name == "sg") {
        c.experiment = "sine_gordon_msi";
        c.omega = 20.0;
        c.L = c.T = 2.0;
        c.k = c.L / 20.0 / c.omega;
        c.h_bench = c.k / 2.0;
        c.K = c.L / 40.0;
        c.H = c.K / 2.0;
        c.h = c.h_bench;
    } else if (name == "spectral") {
        c.experiment = "spectral_three_field";
        c.omega = 1000.0;
        c.L = 2.0;
        c.T = 10.0;
        c.N = 20;
        c.h_bench = 0.1 / c.omega;
        c.h = 1.0 / (c.omega * c.omega);
        c.H = 0.01;
        c.K = c.k = c.L / static_cast<double>(c.N);
    } else {
        throw InvalidArgument("unknown preset '" + name + "'");
    }
    return c;
}

nlohmann::json to_json(const RunConfig& c) {
    return {{"experiment", c.experiment},
            {"mode", c.mode},
            {"eps", c.eps},
            {"omega", c.omega},
            {"L", c.L},
            {"T", c.T},
            {"K", c.K},
            {"k", c.k},
            {"h", c.h},
            {"H", c.H},
            {"h_bench", c.h_bench},
            {"N", c.N},
            {"H_values", c.H_values},
            {"h_values", c.h_values},
            {"low_pass", c.low_pass},
            {"envelope_window", c.envelope_window},
            {"regime_threshold", c.regime_threshold},
            {"blowup_norm", c.blowup_norm},
            {"out", c.out},
            {"threads", c.threads}};
}

RunConfig apply_json(const nlohmann::json& doc, RunConfig c) {
    const auto& src = doc.contains("config") ? doc.at("config") : doc;
    if (!src.is_object()) throw InvalidArgument("configuration must be a JSON object");
    try {
        for (const auto& [key, value] : src.items()) {
            if (key == "experiment") c.experiment = value.get<std::string>();
            else if (key == "mode") c.mode = value.get<std::string>();
            else if (key == "eps") c.eps = value.get<double>();
            else if (key == "omega") c.omega = value.get<double>();
            else if (key == "L") c.L = value.get<double>();
            else if (key == "T") c.T = value.get<double>();
            else if (key == "K") c.K = value.get<double>();
            else if (key == "k") c.k = value.get<double>();
            else if (key == "h") c.h = value.get<double>();
            else if (key == "H") c.H = value.get<double>();
            else if (key == "h_bench") c.h_bench = value.get<double>();
            else if (key == "N") c.N = value.get<std::size_t>();
            else if (key == "H_values") c.H_values = value.get<std::vector<double>>();
            else if (key == "h_values") c.h_values = value.get<std::vector<double>>();
            else if (key == "low_pass") c.low_pass = value.get<std::size_t>();
            else if (key == "envelope_window") c.envelope_window = value.get<double>();
            else if (key == "regime_threshold") c.regime_threshold = value.get<double>();
            else if (key == "blowup_norm") c.blowup_norm = value.get<double>();
            else if (key == "out") c.out = value.get<std::string>();
            else if (key == "threads") c.threads = value.get<std::size_t>();
            else throw InvalidArgument("unknown configuration key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("bad configuration value: ") + e.what());
    }
    return c;
}

namespace {

struct Flags {
    bool paper_gl = false, paper_sg = false, paper_spectral = false;
    std::optional<std::string> config, experiment, mode, out;
    std::optional<double> eps, omega, L, T, K, k, h, H, h_bench, envelope_window, regime_threshold, blowup_norm;
    std::optional<std::size_t> N, low_pass, threads;
    std::vector<double> H_list, h_list;
};

void add_flags(CLI::App& app, Flags& f, bool with_mode) {
    auto* gl = app.add_flag("--paper-gl", f.paper_gl, "Ginzburg-Landau conservation law parameters");
    auto* sg = app.add_flag("--paper-sg", f.paper_sg, "stiff Sine-Gordon parameters");
    auto* sp = app.add_flag("--paper-spectral", f.paper_spectral, "three-field pseudospectral parameters");
    gl->excludes(sg)->excludes(sp);
    sg->excludes(sp);
    app.add_option("--config", f.config, "JSON configuration (or a previous report.json)");
    app.add_option("--experiment", f.experiment, "gl_fd | sine_gordon_msi | spectral_three_field");
    if (with_mode) app.add_option("--mode", f.mode, "single_scale | flavor");
    app.add_option("--eps", f.eps, "stiffness scale (gl_fd)");
    app.add_option("--omega", f.omega, "stiff frequency");
    app.add_option("--L", f.L, "domain length");
    app.add_option("--T", f.T, "final time");
    app.add_option("--K", f.K, "FLAVOR space step");
    app.add_option("--k", f.k, "single-scale space step");
    app.add_option("--h", f.h, "FLAVOR micro step");
    app.add_option("--H", f.H, "FLAVOR macro step");
    app.add_option("--h-bench", f.h_bench, "single-scale time step");
    app.add_option("--N", f.N, "collocation points (spectral)");
    app.add_option("--H-list", f.H_list, "sweep H values")->delimiter(',');
    app.add_option("--h-list", f.h_list, "sweep h values")->delimiter(',');
    app.add_option("--low-pass", f.low_pass, "Fourier modes kept for weak comparisons");
    app.add_option("--envelope-window", f.envelope_window, "window width for fast-field envelopes");
    app.add_option("--regime-threshold", f.regime_threshold, "step diagnostics threshold");
    app.add_option("--blowup-norm", f.blowup_norm, "instability guard on the normalized L1 norm");
    app.add_option("--out", f.out, "output directory");
    app.add_option("--threads", f.threads, "sweep threads (default FLAVOR_THREADS, else all cores)");
}

RunConfig resolve(const Flags& f, const std::string& mode) {
    RunConfig c;
    if (f.paper_gl) c = preset("gl");
    if (f.paper_sg) c = preset("sg");
    if (f.paper_spectral) c = preset("spectral");
    if (f.config) {
        std::ifstream in(*f.config);
        if (!in) throw InvalidArgument("cannot read config file " + *f.config);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw InvalidArgument(std::string("config file is not valid JSON: ") + e.what());
        }
        c = apply_json(doc, c);
    }
    auto set = [](auto& dst, const auto& src) {
        if (src) dst = *src;
    };
    set(c.experiment, f.experiment);
    set(c.eps, f.eps);
    set(c.omega, f.omega);
    set(c.L, f.L);
    set(c.T, f.T);
    set(c.K, f.K);
    set(c.k, f.k);
    set(c.h, f.h);
    set(c.H, f.H);
    set(c.h_bench, f.h_bench);
    set(c.N, f.N);
    set(c.low_pass, f.low_pass);
    set(c.envelope_window, f.envelope_window);
    set(c.regime_threshold, f.regime_threshold);
    set(c.blowup_norm, f.blowup_norm);
    set(c.out, f.out);
    set(c.threads, f.threads);
    if (!f.H_list.empty()) c.H_values = f.H_list;
    if (!f.h_list.empty()) c.h_values = f.h_list;

    if (mode == "run") {
        if (f.mode) c.mode = *f.mode;
        else if (c.mode != "single_scale") c.mode = "flavor";
        if (c.mode != "single_scale" && c.mode != "flavor") throw InvalidArgument("run mode must be single_scale or flavor");
    } else {
        c.mode = mode;
    }
    if (c.threads == 0) {
        if (const char* env = std::getenv("FLAVOR_THREADS")) {
            try {
                c.threads = static_cast<std::size_t>(std::stoul(env));
            } catch (const std::exception&) {
                throw InvalidArgument("FLAVOR_THREADS must be a positive integer");
            }
        }
        if (c.threads == 0) c.threads = std::max(1u, std::thread::hardware_concurrency());
    }
    c.validate();
    return c;
}

InstabilityGuard guard_of(const RunConfig& c) { return InstabilityGuard{c.blowup_norm}; }

/// Storage strides for a single-scale run compared against the FLAVOR mesh.
Sampling comparison_sampling(const RunConfig& c) {
    Sampling s;
    const auto n = exact_ratio(c.L, c.k);
    if (const auto sx = exact_ratio(c.K, c.k); sx && n && *n % *sx == 0) s.space_stride = *sx;
    // Fast-field envelopes need every benchmark step.
    if (c.experiment == "spectral_three_field") return s;
    if (const auto st = exact_ratio(c.H, c.h_bench)) s.time_stride = *st;
    return s;
}

/// Runs the configured experiment; returns every produced field.
std::vector<SpaceTimeField> run_experiment(const RunConfig& c, bool flavor, Sampling sampling = {}) {
    const auto guard = guard_of(c);
    if (c.experiment == "gl_fd") {
        conslaw::ConsLawConfig cfg;
        cfg.eps = c.eps;
        cfg.L = c.L;
        cfg.T = c.T;
        const GridMode mode = flavor ? GridMode{Flavor{c.K, c.h, c.H}} : GridMode{SingleScale{c.k, c.h_bench, sampling}};
        return {conslaw::run_fd(cfg, mode, guard)};
    }
    if (c.experiment == "sine_gordon_msi") {
        const auto cfg = wave::sine_gordon_config(c.omega, c.L, c.T);
        const GridMode mode = flavor ? GridMode{Flavor{c.K, c.h, c.H}} : GridMode{SingleScale{c.k, c.h_bench, sampling}};
        return {wave::run_msi(cfg, mode, guard)};
    }
    spectral::SpectralConfig cfg;
    cfg.omega = c.omega;
    cfg.L = c.L;
    cfg.T = c.T;
    cfg.N = c.N;
    const spectral::SpectralMode mode = flavor ? spectral::SpectralMode{spectral::SpectralFlavor{c.h, c.H}}
                                               : spectral::SpectralMode{spectral::SpectralSingleScale{
                                                     c.h_bench, sampling.time_stride}};
    auto run = spectral::run_spectral(cfg, mode, guard);
    return {std::move(run.u), std::move(run.q), std::move(run.p)};
}

bool any_unstable(const std::vector<SpaceTimeField>& fields) {
    return std::any_of(fields.begin(), fields.end(), [](const auto& f) { return f.unstable(); });
}

double nominal_speedup(const RunConfig& c) {
    if (c.experiment == "spectral_three_field") return bench::speedup_time(c.H, c.h_bench);
    return bench::speedup(c.H, c.K, c.h_bench, c.k);
}

/// Twelve significant digits, with a trailing ".0" on integers so the ratio
/// triple reads as decimals.
std::string decimal(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

nlohmann::json diagnostics_json(const StepDiagnostics& d) {
    return {{"fast_ratio", d.fast_ratio}, {"lower", d.lower}, {"upper", d.upper}, {"within_regime", d.within_regime}};
}

StepDiagnostics diagnose_steps(const RunConfig& c, std::ostream& err) {
    const auto d = step_diagnostics(c.h, effective_eps(c), c.H, c.regime_threshold);
    if (!d.within_regime) {
        err << "warning: (h/eps)^2/H = " << decimal(d.lower) << ", H/(h/eps) = " << decimal(d.upper)
            << "; outside the tuning regime (threshold " << decimal(c.regime_threshold) << ")\n";
    }
    return d;
}

void write_fields(const std::vector<SpaceTimeField>& fields, const std::filesystem::path& dir,
                  nlohmann::json& report, const std::string& suffix = "") {
    for (const auto& f : fields) {
        io::write_field_csv(f, dir / ("field_" + f.name() + suffix + ".csv"));
        report["fields"][f.name() + suffix] = io::field_summary(f);
    }
}

int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::filesystem::path dir(c.out);
    nlohmann::json report{{"config", to_json(c)}};
    const bool flavor = c.mode == "flavor";
    if (flavor) {
        report["diagnostics"] = diagnostics_json(diagnose_steps(c, err));
        report["speedup"] = nominal_speedup(c);
    }
    const auto fields = run_experiment(c, flavor);
    write_fields(fields, dir, report);
    const bool unstable = any_unstable(fields);
    report["unstable"] = unstable;
    io::write_json(report, dir / "report.json");
    out << c.experiment << ' ' << c.mode << ": " << fields.front().cols() << " stored time nodes, "
        << (unstable ? "UNSTABLE" : "stable") << "; wrote " << dir.string() << '\n';
    if (unstable) {
        err << "instability detected at t = " << io::format_double(*fields.front().failure_time()) << '\n';
        return 2;
    }
    return 0;
}

int cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::filesystem::path dir(c.out);
    nlohmann::json report{{"config", to_json(c)}};
    report["diagnostics"] = diagnostics_json(diagnose_steps(c, err));
    const auto flavor = run_experiment(c, true);
    const auto bench = run_experiment(c, false, comparison_sampling(c));
    write_fields(flavor, dir, report, "_flavor");
    write_fields(bench, dir, report, "_benchmark");
    if (any_unstable(flavor) || any_unstable(bench)) {
        report["unstable"] = true;
        io::write_json(report, dir / "report.json");
        err << "instability detected; no comparison made\n";
        return 2;
    }
    for (std::size_t i = 0; i < flavor.size(); ++i) {
        const auto r = bench::compare_on_intersection(flavor[i], bench[i]);
        report["comparison"][flavor[i].name()] = io::to_json(r);
        out << flavor[i].name() << ": error " << io::format_double(r.error) << " over " << r.node_count
            << " nodes, speedup " << io::format_double(r.speedup) << '\n';
    }
    if (c.experiment == "spectral_three_field") {
        const auto e = bench::compare_envelopes(flavor[1], bench[1], c.envelope_window);
        report["envelope_q"] = {{"relative_error", e.relative_error}, {"windows", e.windows}};
        out << "q envelope: relative error " << io::format_double(e.relative_error) << " over " << e.windows
            << " windows\n";
    }
    report["unstable"] = false;
    io::write_json(report, dir / "report.json");
    return 0;
}

int cmd_sweep(RunConfig c, std::ostream& out, std::ostream&) {
    if (c.experiment != "gl_fd") throw InvalidArgument("sweep is defined for the gl_fd experiment");
    if (c.H_values.empty()) c.H_values = preset_H_values(c.eps);
    if (c.h_values.empty()) c.h_values = preset_h_values(c.eps);
    const std::filesystem::path dir(c.out);

    Sampling sampling;
    if (const auto sx = exact_ratio(c.K, c.k)) sampling.space_stride = *sx;
    const auto bench = run_experiment(c, false, sampling);
    nlohmann::json report{{"config", to_json(c)}};
    if (bench.front().unstable()) {
        report["unstable"] = true;
        io::write_json(report, dir / "report.json");
        return 2;
    }
    conslaw::ConsLawConfig cfg;
    cfg.eps = c.eps;
    cfg.L = c.L;
    cfg.T = c.T;
    const auto surface = bench::gl_error_sweep(cfg, c.K, c.H_values, c.h_values, bench.front(), c.threads);
    io::write_surface_csv(surface, dir / "surface.csv");
    report["summary"] = io::surface_summary(surface, c.K, c.h_bench, c.k);
    report["unstable"] = false;
    io::write_json(report, dir / "report.json");
    const auto& s = report["summary"];
    out << "sweep " << c.H_values.size() << " x " << c.h_values.size() << ": " << s["stable_cells"] << " stable, "
        << s["unstable_cells"] << " unstable, " << s["invalid_cells"] << " invalid; wrote " << dir.string() << '\n';
    return 0;
}

int cmd_control(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.experiment != "sine_gordon_msi") throw InvalidArgument("control is defined for the sine_gordon_msi experiment");
    const std::filesystem::path dir(c.out);
    nlohmann::json report{{"config", to_json(c)}};
    report["diagnostics"] = diagnostics_json(diagnose_steps(c, err));
    const auto flavor = run_experiment(c, true);
    const auto bench = run_experiment(c, false);
    write_fields(flavor, dir, report, "_flavor");
    write_fields(bench, dir, report, "_benchmark");
    if (any_unstable(flavor) || any_unstable(bench)) {
        report["unstable"] = true;
        io::write_json(report, dir / "report.json");
        err << "instability detected; no comparison made\n";
        return 2;
    }
    const bench::CompareOptions lp{c.low_pass};
    const double omega_tilde = wave::averaged_stiffness(c.omega, c.h, c.H);
    const auto to_bench = bench::compare_on_intersection(flavor.front(), bench.front(), lp);
    const auto to_avg = bench::splitting_control(wave::sine_gordon_config(c.omega, c.L, c.T), flavor.front(),
                                                 omega_tilde, SingleScale{c.k, c.h_bench}, lp);
    report["omega_tilde"] = omega_tilde;
    report["flavor_vs_benchmark"] = io::to_json(to_bench);
    report["flavor_vs_averaged"] = io::to_json(to_avg);
    report["ratio"] = to_avg.error / to_bench.error;
    report["unstable"] = false;
    io::write_json(report, dir / "report.json");
    out << "omega_tilde " << io::format_double(omega_tilde) << ": distance to benchmark "
        << io::format_double(to_bench.error) << ", to averaged-stiffness run " << io::format_double(to_avg.error)
        << " (ratio " << io::format_double(to_avg.error / to_bench.error) << ")\n";
    return 0;
}

int cmd_diagnose(const RunConfig& c, std::ostream& out) {
    const auto d = step_diagnostics(c.h, effective_eps(c), c.H, c.regime_threshold);
    out << "h/eps = " << decimal(d.fast_ratio) << '\n'
        << "(h/eps)^2/H = " << decimal(d.lower) << '\n'
        << "H/(h/eps) = " << decimal(d.upper) << '\n'
        << "ratios: " << decimal(d.fast_ratio) << " / " << decimal(d.lower) << " / " << decimal(d.upper) << '\n'
        << "within regime (threshold " << decimal(c.regime_threshold) << "): " << (d.within_regime ? "yes" : "no")
        << '\n';
    return 0;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Flow-averaging integrators for stiff PDEs", "flavors"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    Flags flags;
    auto* run = app.add_subcommand("run", "integrate one experiment in single_scale or flavor mode");
    auto* compare = app.add_subcommand("compare", "run FLAVOR and single-scale and compare on the shared mesh");
    auto* sweep = app.add_subcommand("sweep", "(H, h) error surface for the gl_fd experiment");
    auto* control = app.add_subcommand("control", "averaged-stiffness control for the Sine-Gordon experiment");
    auto* diagnose = app.add_subcommand("diagnose", "report the step-tuning ratios");
    add_flags(*run, flags, true);
    for (auto* sub : {compare, sweep, control, diagnose}) add_flags(*sub, flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (run->parsed()) return cmd_run(resolve(flags, "run"), out, err);
        if (compare->parsed()) return cmd_compare(resolve(flags, "compare"), out, err);
        if (sweep->parsed()) return cmd_sweep(resolve(flags, "sweep"), out, err);
        if (control->parsed()) return cmd_control(resolve(flags, "control"), out, err);
        return cmd_diagnose(resolve(flags, "diagnose"), out);
    } catch (const MeshMismatch& e) {
        err << "MeshMismatch: " << e.what() << '\n';
        return 1;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return 1;
    } catch (const NonFinite& e) {
        err << "instability: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace flavors::cli
