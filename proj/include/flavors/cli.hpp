#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace flavors::cli {

/// Fully resolved parameters of one invocation.
///
/// Single-scale runs use (k, h_bench); FLAVOR runs use (K, h, H). The
/// spectral experiment takes its space step from N and ignores k and K.
struct RunConfig {
    std::string experiment = "gl_fd";  ///< gl_fd | sine_gordon_msi | spectral_three_field
    std::string mode = "flavor";       ///< single_scale | flavor | compare | sweep | control | diagnose
    double eps = 2e-3;
    double omega = 20.0;
    double L = 2.0;
    double T = 2.0;
    double K = 0.01;
    double k = 4e-4;
    double h = 2e-4;
    double H = 0.005;
    double h_bench = 2e-4;
    std::size_t N = 20;
    std::vector<double> H_values;
    std::vector<double> h_values;
    std::size_t low_pass = 4;
    double envelope_window = 1.0;
    double regime_threshold = 0.5;
    double blowup_norm = 1e6;
    std::string out = "flavors_out";
    std::size_t threads = 0;  ///< 0: FLAVOR_THREADS, else all cores

    /// Throws InvalidArgument on unknown names or non-positive parameters.
    void validate() const;
};

/// Parameter sets of the three reference experiments: "gl", "sg", "spectral".
RunConfig preset(const std::string& name);

nlohmann::json to_json(const RunConfig& cfg);

/// Overlays the keys present in `doc` on `base`. A report written by a
/// previous run is accepted too; its "config" member is used.
RunConfig apply_json(const nlohmann::json& doc, RunConfig base);

/// Exit codes: 0 success, 1 validation error, 2 instability; usage errors
/// return CLI11's nonzero code.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flavors::cli
