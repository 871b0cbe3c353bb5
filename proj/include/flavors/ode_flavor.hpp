#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "flavors/field.hpp"
#include "flavors/mesh.hpp"

namespace flavors {

using State = std::vector<double>;

/// A legacy one-step integrator whose stiff coefficient can be switched.
///
/// `step(state, t, tau, alpha)` advances `state` from t to t + tau with the
/// stiff parameter 1/eps replaced by `alpha` (either 1/eps or 0). It must be
/// deterministic and reduce to the identity for tau = 0.
struct SwitchedFlow {
    std::function<State(const State& state, double t, double tau, double alpha)> step;
    std::size_t dim = 0;
};

/// Blow-up detection: a state is rejected when it holds NaN/Inf or when its
/// normalized L1 norm exceeds `blowup_norm`.
struct InstabilityGuard {
    double blowup_norm = 1e6;
};

/// Throws NonFinite (tagged with `t`) if `state` fails the guard.
void check_state(const State& state, double t, const InstabilityGuard& guard = {});

struct FlavorStep {
    State macro;  ///< state at t + H
    State micro;  ///< intermediate state at t + h
};

/// One FLAVOR macro step: stiffness-off flow over [t+h, t+H] composed with
/// stiffness-on flow over [t, t+h].
FlavorStep flavor_macro_step(const SwitchedFlow& flow, const State& state, double t, double h,
                             double H, double eps_inv, const InstabilityGuard& guard = {});

/// States sampled at every node of a FLAVOR mesh.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    /// Set when integration stopped early; holds the start time of the
    /// macro step that blew up. `times`/`states` then hold the stable prefix.
    std::optional<double> failure_time;

    bool unstable() const { return failure_time.has_value(); }
};

/// Composes M macro steps over `mesh`, recording both micro and macro nodes.
Trajectory integrate(const SwitchedFlow& flow, const State& state0, const SpaceTimeMesh& mesh,
                     double eps_inv, const InstabilityGuard& guard = {});

/// Copies entries [offset, offset + x.size()) of every trajectory state into a
/// FLAVOR field; even trajectory indices become macro columns.
SpaceTimeField to_field(const Trajectory& traj, std::string name, std::vector<double> x,
                        const SpaceTimeMesh& mesh, std::size_t offset = 0);

}  // namespace flavors
