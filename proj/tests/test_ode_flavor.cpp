#include <cmath>
#include <limits>

#include "doctest.h"
#include "flavors/errors.hpp"
#include "flavors/ode_flavor.hpp"

using namespace flavors;

namespace {

/// Forward Euler on y' = alpha * a(y) + b(y).
SwitchedFlow forward_euler(std::function<double(double)> stiff, std::function<double(double)> soft) {
    SwitchedFlow flow;
    flow.dim = 1;
    flow.step = [stiff, soft](const State& y, double, double tau, double alpha) {
        return State{y[0] + tau * (alpha * stiff(y[0]) + soft(y[0]))};
    };
    return flow;
}

SwitchedFlow identity_flow(std::size_t dim) {
    return {[](const State& s, double, double, double) { return s; }, dim};
}

}  // namespace

TEST_CASE("flavor_macro_step: identity flow") {
    const State s{1.0, -2.0, 3.5};
    const auto step = flavor_macro_step(identity_flow(3), s, 0.0, 0.1, 1.0, 1e3);
    CHECK(step.macro == s);
    CHECK(step.micro == s);
}

TEST_CASE("flavor_macro_step: alpha-independent flow is plain two-substep integration") {
    SwitchedFlow flow;
    flow.dim = 2;
    flow.step = [](const State& y, double t, double tau, double) {
        return State{y[0] + tau * (y[1] + t), y[1] - tau * y[0]};
    };
    const State s{0.3, -0.7};
    const auto step = flavor_macro_step(flow, s, 0.25, 0.01, 0.05, 1e4);
    const auto a = flow.step(s, 0.25, 0.01, 0.0);
    const auto b = flow.step(a, 0.26, 0.04, 0.0);
    CHECK(step.micro == a);
    CHECK(step.macro == b);
}

TEST_CASE("flavor_macro_step: eps_inv = 0 is pure splitting, bitwise") {
    const auto flow = forward_euler([](double y) { return -y; }, [](double y) { return std::sin(y); });
    const State s{0.8};
    const auto step = flavor_macro_step(flow, s, 0.0, 1e-3, 1e-2, 0.0);
    const auto twice = flow.step(flow.step(s, 0.0, 1e-3, 0.0), 1e-3, 1e-2 - 1e-3, 0.0);
    CHECK(step.macro[0] == twice[0]);
}

TEST_CASE("flavor_macro_step: preconditions and blow-up") {
    const auto flow = forward_euler([](double y) { return -y; }, [](double) { return 0.0; });
    CHECK_THROWS_AS(flavor_macro_step(flow, State{1.0}, 0.0, 0.1, 0.1, 1.0), DegenerateSteps);
    CHECK_THROWS_AS(flavor_macro_step(flow, State{1.0, 2.0}, 0.0, 0.01, 0.1, 1.0), InvalidArgument);

    SwitchedFlow nan_flow{[](const State&, double, double, double) {
                              return State{std::numeric_limits<double>::quiet_NaN()};
                          },
                          1};
    CHECK_THROWS_AS(flavor_macro_step(nan_flow, State{1.0}, 0.0, 0.01, 0.1, 1.0), NonFinite);

    SwitchedFlow big_flow{[](const State& y, double, double, double) { return State{y[0] * 1e4}; }, 1};
    CHECK_THROWS_AS(flavor_macro_step(big_flow, State{1e3}, 0.0, 0.01, 0.1, 1.0), NonFinite);
    InstabilityGuard loose{1e12};
    CHECK_NOTHROW(flavor_macro_step(big_flow, State{1e3}, 0.0, 0.01, 0.1, 1.0, loose));
}

TEST_CASE("integrate: single macro step gives three nodes") {
    const auto mesh = build_mesh(1.0, 0.1, 1.0, 0.05, 0.1);
    const auto traj = integrate(identity_flow(1), State{2.0}, mesh, 10.0);
    CHECK_FALSE(traj.unstable());
    REQUIRE(traj.states.size() == 3);
    CHECK(traj.times == mesh.time_nodes());
}

TEST_CASE("integrate: zero right-hand side keeps the state constant") {
    const auto flow = forward_euler([](double) { return 0.0; }, [](double) { return 0.0; });
    const auto mesh = build_mesh(1.0, 1.0, 0.5, 1e-3, 1e-2);
    const auto traj = integrate(flow, State{0.42}, mesh, 1e3);
    REQUIRE(traj.states.size() == 201);
    for (const auto& s : traj.states) CHECK(s[0] == 0.42);
    CHECK(traj.times == mesh.time_nodes());
}

TEST_CASE("integrate: stiff linear relaxation") {
    const double eps = 1e-3, h = 1e-4, H = 1e-2, T = 1.0;
    const auto mesh = build_mesh(1.0, T, 1.0, h, H);

    SUBCASE("source written as (1/eps)(eps - y) relaxes to the quasi-static value") {
        const auto flow = forward_euler([eps](double y) { return eps - y; }, [](double) { return 0.0; });
        const auto traj = integrate(flow, State{1.0}, mesh, 1.0 / eps);
        REQUIRE_FALSE(traj.unstable());
        // Closed form of the composed affine map: contraction (1 - h/eps) per macro step.
        const double exact = eps + (1.0 - eps) * std::pow(1.0 - h / eps, static_cast<double>(mesh.M()));
        const double yT = traj.states.back()[0];
        CHECK(yT == doctest::Approx(exact).epsilon(1e-10));
        CHECK(std::abs(yT - eps) < 0.1 * eps);
        for (const auto& s : traj.states) CHECK(std::abs(s[0]) <= 1.0);
    }
    SUBCASE("unit forcing left on during the mesoscopic step settles at eps H / h") {
        const auto flow = forward_euler([](double y) { return -y; }, [](double) { return 1.0; });
        const auto traj = integrate(flow, State{0.0}, mesh, 1.0 / eps);
        REQUIRE_FALSE(traj.unstable());
        // Iterating y -> (1 - h/eps) y + H from 0 approaches its fixed point eps H / h.
        const double fixed = eps * H / h;
        const double exact = fixed * (1.0 - std::pow(1.0 - h / eps, static_cast<double>(mesh.M())));
        CHECK(traj.states.back()[0] == doctest::Approx(exact).epsilon(1e-10));
        CHECK(std::abs(traj.states.back()[0] - fixed) < 1e-4 * fixed);
    }
}

TEST_CASE("integrate: instability is monotone in the micro step") {
    const double eps = 1e-3, H = 1e-2;
    const auto flow = forward_euler([eps](double y) { return eps - y; }, [](double) { return 0.0; });
    bool previous_stable = true;
    for (int n = 1; n <= 30; ++n) {
        const double h = n * 1e-4;
        const auto mesh = build_mesh(1.0, 2.0, 1.0, h, H);
        const auto traj = integrate(flow, State{1.0}, mesh, 1.0 / eps);
        const bool stable = !traj.unstable();
        if (stable) CHECK(previous_stable);
        previous_stable = stable;
        // Forward Euler factor |1 - h/eps| decides stability.
        CHECK(stable == (h <= 2.0 * eps + 1e-15));
    }
}

TEST_CASE("integrate: partial trajectory on blow-up") {
    const double eps = 1e-3;
    const auto flow = forward_euler([](double y) { return -y; }, [](double) { return 0.0; });
    const auto mesh = build_mesh(1.0, 1.0, 1.0, 5e-3, 1e-2);
    const auto traj = integrate(flow, State{1.0}, mesh, 1.0 / eps);
    REQUIRE(traj.unstable());
    CHECK(traj.states.size() == traj.times.size());
    CHECK(traj.states.size() % 2 == 1);
    CHECK(traj.states.size() < mesh.time_nodes().size());
    CHECK(*traj.failure_time == doctest::Approx(traj.times.back()));
}

TEST_CASE("to_field marks even nodes as macro") {
    const auto mesh = build_mesh(1.0, 0.2, 0.5, 0.05, 0.1);
    const auto traj = integrate(identity_flow(2), State{1.0, 2.0}, mesh, 1.0);
    const auto field = to_field(traj, "y", mesh.space_nodes(), mesh);
    REQUIRE(field.cols() == 5);
    CHECK(field.is_macro(0));
    CHECK_FALSE(field.is_macro(1));
    CHECK(field.is_macro(4));
    CHECK(field(1, 3) == 2.0);
    CHECK(field.is_flavor());
}
