#include "dnaclab/rigid_body.hpp"

#include <cmath>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

namespace
{
constexpr double kPitchLimitRad = 85.0 * M_PI / 180.0;
}

Wrench compose(const std::vector<Wrench>& wrenches)
{
  Wrench total;
  for (const auto& w : wrenches)
    total = total + w;
  return total;
}

void QuadParams::validate() const
{
  if (!(mass > 0.0) || !(arm_length > 0.0) || !(max_thrust > 0.0) || !(max_torque > 0.0) ||
      !(gravity > 0.0))
    throw ConfigError("mass, arm length, limits, and gravity must be positive");
  if ((inertia.array() <= 0.0).any())
    throw ConfigError("inertia diagonal must be positive");
  if (linear_drag < 0.0 || rotational_drag < 0.0)
    throw ConfigError("drag coefficients must be nonnegative");
}

Eigen::Vector3d thrust_axis_world(const Eigen::Vector3d& attitude)
{
  const double cphi = std::cos(attitude(0)), sphi = std::sin(attitude(0));
  const double cth = std::cos(attitude(1)), sth = std::sin(attitude(1));
  const double cpsi = std::cos(attitude(2)), spsi = std::sin(attitude(2));
  return {-(cphi * sth * cpsi + sphi * spsi), cphi * sth * spsi - sphi * cpsi, cphi * cth};
}

Eigen::Matrix3d rotation_body_to_world(const Eigen::Vector3d& attitude)
{
  const double cphi = std::cos(attitude(0)), sphi = std::sin(attitude(0));
  const double cth = std::cos(attitude(1)), sth = std::sin(attitude(1));
  const double cpsi = std::cos(attitude(2)), spsi = std::sin(attitude(2));
  Eigen::Matrix3d r;
  r << cth * cpsi, sphi * sth * cpsi - cphi * spsi, cphi * sth * cpsi + sphi * spsi,
      -cth * spsi, -(sphi * sth * spsi + cphi * cpsi), -(cphi * sth * spsi - sphi * cpsi),
      sth, -sphi * cth, -cphi * cth;
  return r;
}

Eigen::Vector3d euler_rates(const Eigen::Vector3d& attitude, const Eigen::Vector3d& body_rates)
{
  const double cphi = std::cos(attitude(0)), sphi = std::sin(attitude(0));
  const double cth = std::cos(attitude(1)), tth = std::tan(attitude(1));
  const double p = body_rates(0), q = body_rates(1), r = body_rates(2);
  return {p + (q * sphi + r * cphi) * tth, q * cphi - r * sphi, (q * sphi + r * cphi) / cth};
}

StateDerivative dynamics_derivative(const RigidBodyState& state, const ActuatorCommand& cmd,
                                    const Wrench& external, const QuadParams& params)
{
  if (std::abs(state.attitude(1)) > kPitchLimitRad)
    throw CrashFault("pitch left the valid envelope", -1.0);

  StateDerivative d;
  d.position = state.velocity;

  const Eigen::Vector3d thrust_force = cmd.thrust * thrust_axis_world(state.attitude);
  const Eigen::Vector3d gravity_force(0.0, 0.0, -params.mass * params.gravity);
  d.velocity = (thrust_force + gravity_force - params.linear_drag * state.velocity +
                external.force) /
               params.mass;

  d.attitude = euler_rates(state.attitude, state.body_rates);

  const Eigen::Vector3d iw = params.inertia.cwiseProduct(state.body_rates);
  const Eigen::Vector3d torque = cmd.torque - state.body_rates.cross(iw) -
                                 params.rotational_drag * state.body_rates + external.torque;
  d.body_rates = torque.cwiseQuotient(params.inertia);
  return d;
}

RigidBodyState rk4_step(const RigidBodyState& state, const ActuatorCommand& cmd,
                        const Wrench& external, const QuadParams& params, double dt)
{
  if (dt <= 0.0)
    throw ConfigError("dt must be positive");

  const auto shift = [](const RigidBodyState& s, const StateDerivative& d, double h) {
    RigidBodyState out;
    out.position = s.position + h * d.position;
    out.velocity = s.velocity + h * d.velocity;
    out.attitude = s.attitude + h * d.attitude;
    out.body_rates = s.body_rates + h * d.body_rates;
    return out;
  };

  const StateDerivative k1 = dynamics_derivative(state, cmd, external, params);
  const StateDerivative k2 = dynamics_derivative(shift(state, k1, 0.5 * dt), cmd, external, params);
  const StateDerivative k3 = dynamics_derivative(shift(state, k2, 0.5 * dt), cmd, external, params);
  const StateDerivative k4 = dynamics_derivative(shift(state, k3, dt), cmd, external, params);

  RigidBodyState next;
  next.position =
      state.position + (dt / 6.0) * (k1.position + 2.0 * k2.position + 2.0 * k3.position + k4.position);
  next.velocity =
      state.velocity + (dt / 6.0) * (k1.velocity + 2.0 * k2.velocity + 2.0 * k3.velocity + k4.velocity);
  next.attitude =
      state.attitude + (dt / 6.0) * (k1.attitude + 2.0 * k2.attitude + 2.0 * k3.attitude + k4.attitude);
  next.body_rates = state.body_rates + (dt / 6.0) * (k1.body_rates + 2.0 * k2.body_rates +
                                                     2.0 * k3.body_rates + k4.body_rates);
  if (!next.finite())
    throw CrashFault("non-finite state after integration step", -1.0);
  return next;
}

}  // namespace dnaclab
