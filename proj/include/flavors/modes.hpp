#pragma once

#include <cstddef>
#include <variant>

namespace flavors {

/// Storage subsampling for fine single-scale runs: keep every
/// `space_stride`-th node and every `time_stride`-th step.
struct Sampling {
    std::size_t space_stride = 1;
    std::size_t time_stride = 1;
};

/// Uniform grid with space step k and time step h, stiffness always on.
struct SingleScale {
    double k = 0.0;
    double h = 0.0;
    Sampling sampling{};
};

/// FLAVOR grid: mesoscopic space step K, alternating time steps h and H - h.
struct Flavor {
    double K = 0.0;
    double h = 0.0;
    double H = 0.0;
};

using GridMode = std::variant<SingleScale, Flavor>;

}  // namespace flavors
