#include <cmath>

#include <doctest.h>

#include "dnaclab/augment.hpp"
#include "dnaclab/cascade.hpp"
#include "dnaclab/errors.hpp"
#include "dnaclab/rigid_body.hpp"

using namespace dnaclab;

TEST_CASE("wrench composition")
{
  Wrench a{Eigen::Vector3d(1.0, 0.0, -2.0), Eigen::Vector3d(0.1, 0.0, 0.0)};
  Wrench b{Eigen::Vector3d(0.5, 1.0, 0.0), Eigen::Vector3d(0.0, -0.2, 0.3)};
  const Wrench sum = compose({a, b});
  CHECK(sum.force == Eigen::Vector3d(1.5, 1.0, -2.0));
  CHECK(sum.torque == Eigen::Vector3d(0.1, -0.2, 0.3));
  CHECK(compose({}).force.norm() == 0.0);
}

TEST_CASE("hover thrust balances gravity exactly")
{
  QuadParams params;
  RigidBodyState state;
  ActuatorCommand cmd;
  cmd.thrust = params.mass * params.gravity;
  const StateDerivative d = dynamics_derivative(state, cmd, Wrench{}, params);
  CHECK(d.position.norm() == 0.0);
  CHECK(d.velocity.norm() == 0.0);
  CHECK(d.attitude.norm() == 0.0);
  CHECK(d.body_rates.norm() == 0.0);
}

TEST_CASE("free fall and single-axis torque responses")
{
  QuadParams params;
  RigidBodyState state;
  const StateDerivative fall = dynamics_derivative(state, ActuatorCommand{}, Wrench{}, params);
  CHECK(fall.velocity == Eigen::Vector3d(0.0, 0.0, -params.gravity));

  ActuatorCommand cmd;
  cmd.torque = Eigen::Vector3d(0.01, 0.0, 0.0);
  const StateDerivative spin = dynamics_derivative(state, cmd, Wrench{}, params);
  CHECK(spin.body_rates(0) == doctest::Approx(0.01 / params.inertia(0)).epsilon(1e-15));
  CHECK(spin.body_rates(1) == 0.0);
  CHECK(spin.body_rates(2) == 0.0);
}

TEST_CASE("gyroscopic coupling follows the euler equations")
{
  QuadParams params;
  RigidBodyState state;
  state.body_rates = Eigen::Vector3d(1.0, 2.0, 3.0);
  const StateDerivative d = dynamics_derivative(state, ActuatorCommand{}, Wrench{}, params);

  const Eigen::Vector3d iw = params.inertia.cwiseProduct(state.body_rates);
  const Eigen::Vector3d expected =
      (-state.body_rates.cross(iw) - params.rotational_drag * state.body_rates)
          .cwiseQuotient(params.inertia);
  CHECK((d.body_rates - expected).norm() < 1e-15);
  // hand value for the roll axis: -(q*Iz*r - r*Iy*q) - c*p over Ix
  const double roll = (-(2.0 * 0.02 * 3.0 - 3.0 * 0.01 * 2.0) - 0.05 * 1.0) / 0.01;
  CHECK(d.body_rates(0) == doctest::Approx(roll).epsilon(1e-12));
}

TEST_CASE("euler kinematics at a generic attitude")
{
  const Eigen::Vector3d att(0.3, 0.2, -0.4);
  const Eigen::Vector3d w(0.1, -0.2, 0.15);
  const Eigen::Vector3d rates = euler_rates(att, w);
  const double sphi = std::sin(0.3), cphi = std::cos(0.3);
  CHECK(rates(0) ==
        doctest::Approx(0.1 + (-0.2 * sphi + 0.15 * cphi) * std::tan(0.2)).epsilon(1e-15));
  CHECK(rates(1) == doctest::Approx(-0.2 * cphi - 0.15 * sphi).epsilon(1e-15));
  CHECK(rates(2) == doctest::Approx((-0.2 * sphi + 0.15 * cphi) / std::cos(0.2)).epsilon(1e-15));
}

TEST_CASE("thrust axis orientation conventions")
{
  CHECK(thrust_axis_world(Eigen::Vector3d::Zero()) == Eigen::Vector3d(0.0, 0.0, 1.0));
  // nose-up pitch tilts thrust backward along -x
  const Eigen::Vector3d pitched = thrust_axis_world(Eigen::Vector3d(0.0, 0.3, 0.0));
  CHECK(pitched(0) == doctest::Approx(-std::sin(0.3)).epsilon(1e-15));
  CHECK(pitched(1) == 0.0);
  CHECK(pitched(2) == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
  // positive roll tilts thrust toward -y
  const Eigen::Vector3d rolled = thrust_axis_world(Eigen::Vector3d(0.3, 0.0, 0.0));
  CHECK(rolled(1) == doctest::Approx(-std::sin(0.3)).epsilon(1e-15));

  const Eigen::Vector3d att(0.2, -0.5, 1.1);
  const Eigen::Matrix3d r = rotation_body_to_world(att);
  CHECK((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-14);
  CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  // body z points down in this frame, so thrust acts along the rotated -z axis
  CHECK((r * Eigen::Vector3d(0.0, 0.0, -1.0) - thrust_axis_world(att)).norm() < 1e-15);
}

TEST_CASE("rk4 matches the exponential on a pure drag decay")
{
  QuadParams params;
  params.linear_drag = params.mass;  // v' = -v on each axis
  RigidBodyState state;
  state.velocity = Eigen::Vector3d(1.0, 0.0, 0.0);

  RigidBodyState next = rk4_step(state, ActuatorCommand{}, Wrench{}, params, 0.01);
  CHECK(std::abs(next.velocity(0) - std::exp(-0.01)) < 1e-10);

  for (int i = 1; i < 10; ++i)
    next = rk4_step(next, ActuatorCommand{}, Wrench{}, params, 0.01);
  CHECK(std::abs(next.velocity(0) - std::exp(-0.1)) < 1e-10);
}

TEST_CASE("torque-free rotation conserves energy and momentum over 10 s")
{
  QuadParams params;
  params.rotational_drag = 0.0;
  params.linear_drag = 0.0;
  RigidBodyState state;
  state.body_rates = Eigen::Vector3d(0.1, 0.05, 1.5);  // spin about z with a small wobble

  const auto energy = [&](const RigidBodyState& s) {
    return 0.5 * s.body_rates.dot(params.inertia.cwiseProduct(s.body_rates));
  };
  const auto momentum = [&](const RigidBodyState& s) {
    return params.inertia.cwiseProduct(s.body_rates).norm();
  };
  const double e0 = energy(state);
  const double l0 = momentum(state);
  double worst_e = 0.0, worst_l = 0.0;
  for (int i = 0; i < 10000; ++i)
  {
    state = rk4_step(state, ActuatorCommand{}, Wrench{}, params, 0.001);
    worst_e = std::max(worst_e, std::abs(energy(state) - e0));
    worst_l = std::max(worst_l, std::abs(momentum(state) - l0));
  }
  CHECK(worst_e / e0 < 1e-9);
  CHECK(worst_l / l0 < 1e-9);
  // axial rate is an exact invariant here (equal x/y inertias)
  CHECK(std::abs(state.body_rates(2) - 1.5) < 1e-12);
}

TEST_CASE("rk4 is exact on the polynomial constant-torque spin-up")
{
  QuadParams params;
  params.rotational_drag = 0.0;
  RigidBodyState state;
  ActuatorCommand cmd;
  cmd.torque(0) = 0.004;  // p' = 0.4 rad/s^2, phi = 0.2 t^2: degree <= 4, zero truncation error

  for (int i = 0; i < 500; ++i)
    state = rk4_step(state, cmd, Wrench{}, params, 0.001);

  const double accel = cmd.torque(0) / params.inertia(0);
  CHECK(std::abs(state.body_rates(0) - accel * 0.5) < 1e-12);
  CHECK(std::abs(state.attitude(0) - 0.5 * accel * 0.25) < 1e-12);
  CHECK(std::abs(state.attitude(1)) < 1e-15);  // no cross-axis leakage
}

TEST_CASE("crash faults on envelope exit and non-finite states")
{
  QuadParams params;
  RigidBodyState tipped;
  tipped.attitude(1) = 1.6;  // 91.7 degrees
  CHECK_THROWS_AS(dynamics_derivative(tipped, ActuatorCommand{}, Wrench{}, params), CrashFault);

  RigidBodyState poisoned;
  poisoned.velocity(0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(rk4_step(poisoned, ActuatorCommand{}, Wrench{}, params, 0.001), CrashFault);

  CHECK_THROWS_AS(rk4_step(RigidBodyState{}, ActuatorCommand{}, Wrench{}, params, 0.0),
                  ConfigError);
}

TEST_CASE("quad parameter validation")
{
  QuadParams params;
  CHECK_NOTHROW(params.validate());
  params.mass = 0.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params = QuadParams{};
  params.linear_drag = -0.1;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params = QuadParams{};
  params.rotational_drag = 0.0;  // drag-free is allowed
  CHECK_NOTHROW(params.validate());
}

TEST_CASE("cascade holds hover at the reference")
{
  QuadParams params;
  Cascade cascade(CascadeConfig{}, params);
  RigidBodyState state;
  state.position = Eigen::Vector3d(0.0, 0.0, 1.0);
  const Cascade::Output out = cascade.step(state, state.position, Eigen::Vector3d::Zero(),
                                           Eigen::Vector3d::Zero(), 0.004);
  CHECK(out.attitude_ref.norm() == 0.0);
  CHECK(out.attitude_ref_rate.norm() == 0.0);
  CHECK(out.thrust == doctest::Approx(params.mass * params.gravity).epsilon(1e-15));
}

TEST_CASE("commanded +x velocity produces a nose-down pitch reference")
{
  Cascade cascade(CascadeConfig{}, QuadParams{});
  RigidBodyState state;
  const Cascade::Output out = cascade.step(state, Eigen::Vector3d::Zero(),
                                           Eigen::Vector3d(1.0, 0.0, 0.0),
                                           Eigen::Vector3d::Zero(), 0.004);
  CHECK(out.attitude_ref(1) < 0.0);
  CHECK(out.attitude_ref(0) == 0.0);
}

TEST_CASE("cascade saturates tilt and thrust on distant references")
{
  QuadParams params;
  CascadeConfig cfg;
  Cascade cascade(cfg, params);
  RigidBodyState state;
  for (int i = 0; i < 200; ++i)
  {
    const Cascade::Output out = cascade.step(state, Eigen::Vector3d(100.0, -50.0, 20.0),
                                             Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(),
                                             0.004);
    CHECK(out.attitude_ref.cwiseAbs().maxCoeff() <= cfg.max_tilt + 1e-12);
    CHECK(out.thrust >= 0.0);
    CHECK(out.thrust <= params.max_thrust);
  }
  cascade.reset();
  const Cascade::Output after = cascade.step(state, state.position, Eigen::Vector3d::Zero(),
                                             Eigen::Vector3d::Zero(), 0.004);
  CHECK(after.attitude_ref.norm() == 0.0);
}

TEST_CASE("tilt compensation raises collective thrust")
{
  QuadParams params;
  Cascade cascade(CascadeConfig{}, params);
  RigidBodyState state;
  state.attitude(0) = 0.3;
  const Cascade::Output out = cascade.step(state, state.position, Eigen::Vector3d::Zero(),
                                           Eigen::Vector3d::Zero(), 0.004);
  CHECK(out.thrust ==
        doctest::Approx(params.mass * params.gravity / std::cos(0.3)).epsilon(1e-12));
}

TEST_CASE("torque augmentation echoes the applied total")
{
  QuadParams params;
  const AugmentResult plain = augment_and_apply(Eigen::Vector2d(0.2, -0.1),
                                                Eigen::Vector2d(0.15, 0.05), 0.02, 11.0, params);
  CHECK(plain.total_attitude_torque == Eigen::Vector2d(0.35, -0.05));
  CHECK(plain.command.torque(0) == 0.35);
  CHECK(plain.command.torque(1) == -0.05);
  CHECK(plain.command.torque(2) == 0.02);
  CHECK(plain.command.thrust == 11.0);

  // saturation clamps the sum, and the echo reports the clamped value
  const AugmentResult sat = augment_and_apply(Eigen::Vector2d(0.9, -0.9),
                                              Eigen::Vector2d(0.3, -0.3), -5.0, 50.0, params);
  CHECK(sat.total_attitude_torque == Eigen::Vector2d(1.0, -1.0));
  CHECK(sat.command.torque(2) == -1.0);
  CHECK(sat.command.thrust == params.max_thrust);

  const AugmentResult floor = augment_and_apply(Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(),
                                                0.0, -3.0, params);
  CHECK(floor.command.thrust == 0.0);

  CHECK_THROWS_AS(augment_and_apply(Eigen::Vector2d(std::nan(""), 0.0), Eigen::Vector2d::Zero(),
                                    0.0, 10.0, params),
                  InputError);
}
