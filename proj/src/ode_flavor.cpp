#include "flavors/ode_flavor.hpp"

#include <string>

#include "flavors/errors.hpp"
#include "flavors/norms.hpp"

namespace flavors {

void check_state(const State& state, double t, const InstabilityGuard& guard) {
    if (!all_finite(state)) {
        throw NonFinite("non-finite state at t = " + std::to_string(t), t);
    }
    if (!state.empty() && normalized_l1(state) > guard.blowup_norm) {
        throw NonFinite("state norm exceeded blow-up guard at t = " + std::to_string(t), t);
    }
}

FlavorStep flavor_macro_step(const SwitchedFlow& flow, const State& state, double t, double h,
                             double H, double eps_inv, const InstabilityGuard& guard) {
    if (!(h > 0.0) || !(h < H)) {
        throw DegenerateSteps("flavor_macro_step requires 0 < h < H");
    }
    if (state.size() != flow.dim) {
        throw InvalidArgument("state dimension does not match the flow");
    }
    FlavorStep out;
    out.micro = flow.step(state, t, h, eps_inv);
    check_state(out.micro, t, guard);
    out.macro = flow.step(out.micro, t + h, H - h, 0.0);
    check_state(out.macro, t, guard);
    return out;
}

Trajectory integrate(const SwitchedFlow& flow, const State& state0, const SpaceTimeMesh& mesh,
                     double eps_inv, const InstabilityGuard& guard) {
    if (!all_finite(state0)) {
        throw InvalidArgument("initial state must be finite");
    }
    const auto& nodes = mesh.time_nodes();
    Trajectory traj;
    traj.times.reserve(nodes.size());
    traj.states.reserve(nodes.size());
    traj.times.push_back(nodes[0]);
    traj.states.push_back(state0);

    for (std::size_t k = 0; k < mesh.M(); ++k) {
        const double t = nodes[2 * k];
        try {
            auto step = flavor_macro_step(flow, traj.states.back(), t, mesh.h(), mesh.H(), eps_inv,
                                          guard);
            traj.times.push_back(nodes[2 * k + 1]);
            traj.states.push_back(std::move(step.micro));
            traj.times.push_back(nodes[2 * k + 2]);
            traj.states.push_back(std::move(step.macro));
        } catch (const NonFinite& e) {
            traj.failure_time = e.time();
            break;
        }
    }
    return traj;
}

SpaceTimeField to_field(const Trajectory& traj, std::string name, std::vector<double> x,
                        const SpaceTimeMesh& mesh, std::size_t offset) {
    const std::size_t n = x.size();
    SpaceTimeField field(std::move(name), std::move(x), mesh.K(), mesh.H(), mesh.h());
    for (std::size_t j = 0; j < traj.states.size(); ++j) {
        const auto& s = traj.states[j];
        if (offset + n > s.size()) throw InvalidArgument("trajectory state shorter than requested slice");
        field.append_column(std::span<const double>(s).subspan(offset, n), traj.times[j], j % 2 == 0);
    }
    if (traj.failure_time) field.mark_unstable(*traj.failure_time);
    return field;
}

}  // namespace flavors
