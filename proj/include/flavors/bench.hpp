#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "flavors/fd_conslaw.hpp"
#include "flavors/field.hpp"
#include "flavors/modes.hpp"
#include "flavors/msi_wave.hpp"

namespace flavors::bench {

/// Cost ratio H K / (2 h k) of a FLAVOR run against a single-scale run.
double speedup(double H, double K, double h, double k);

/// Time-only cost ratio H / (2 h_bench) for runs sharing a spatial grid.
double speedup_time(double H, double h_bench);

struct ComparisonReport {
    double error = 0.0;
    std::size_t node_count = 0;
    double speedup = 0.0;
};

struct CompareOptions {
    /// Keep Fourier modes |n| <= low_pass on each column before differencing.
    std::optional<std::size_t> low_pass;
};

/// Normalized L1 distance over the space-time nodes the two fields share.
///
/// Only macro columns of `flavor` are used. Every such node must also be a
/// node of `benchmark` (spatial and temporal nesting), else MeshMismatch.
/// Throws NonFinite if either field is marked unstable.
ComparisonReport compare_on_intersection(const SpaceTimeField& flavor, const SpaceTimeField& benchmark,
                                         const CompareOptions& options = {});

enum class CellStatus { stable, unstable, invalid };

/// Errors of FLAVOR runs over an (H, h) grid; row index = H, column index = h.
/// Cells that blew up, exceeded error 1, or could not be built are masked
/// and carry no error.
struct ErrorSurface {
    std::vector<double> H_values;
    std::vector<double> h_values;
    std::vector<std::optional<double>> errors;
    std::vector<CellStatus> status;

    std::size_t index(std::size_t iH, std::size_t ih) const { return iH * h_values.size() + ih; }
    std::optional<double> error(std::size_t iH, std::size_t ih) const { return errors[index(iH, ih)]; }
    CellStatus cell(std::size_t iH, std::size_t ih) const { return status[index(iH, ih)]; }
    bool stable(std::size_t iH, std::size_t ih) const { return cell(iH, ih) == CellStatus::stable; }
    bool operator==(const ErrorSurface&) const = default;
};

/// Produces the FLAVOR field of one sweep cell.
using CellRunner = std::function<SpaceTimeField(double H, double h)>;

/// Runs one cell per (H, h) and compares it with `benchmark`. Cells are
/// independent; with threads > 1 they run concurrently but land in fixed
/// slots, so the result does not depend on the thread count. Errors above 1
/// and NonFinite runs are marked unstable; h >= H, MeshMismatch and other
/// invalid-argument failures are marked invalid.
ErrorSurface error_sweep(const std::vector<double>& H_values, const std::vector<double>& h_values,
                         const SpaceTimeField& benchmark, const CellRunner& run_cell,
                         std::size_t threads = 1);

/// Lax-Friedrichs sweep at FLAVOR space step K. A cell whose H does not
/// divide cfg.T runs to the last macro node floor(T/H) H.
ErrorSurface gl_error_sweep(const conslaw::ConsLawConfig& cfg, double K, const std::vector<double>& H_values,
                            const std::vector<double>& h_values, const SpaceTimeField& benchmark,
                            std::size_t threads = 1);

/// Runs single-scale MSI on `mesh` with the stiff frequency replaced by
/// omega_tilde and measures its distance from `flavor`.
ComparisonReport splitting_control(const wave::WaveConfig& cfg, const SpaceTimeField& flavor,
                                   double omega_tilde, const SingleScale& mesh,
                                   const CompareOptions& options = {});

struct EnvelopeReport {
    /// normalized_l1(env_flavor - env_bench) / normalized_l1(env_bench).
    double relative_error = 0.0;
    std::size_t windows = 0;
};

/// Amplitude-envelope comparison for fast fields sampled on the same spatial
/// nodes. Windows [w s, w s + width] with s = width / 2 tile [0, t_end]; the
/// envelope at (x_i, w) is the largest |value| over the window. Only macro
/// columns of `flavor` enter.
EnvelopeReport compare_envelopes(const SpaceTimeField& flavor, const SpaceTimeField& benchmark, double width);

}  // namespace flavors::bench
