#pragma once

#include <algorithm>

#include <Eigen/Dense>

#include "dnaclab/errors.hpp"
#include "dnaclab/rigid_body.hpp"

namespace dnaclab
{

struct AugmentResult
{
  ActuatorCommand command;
  // The clamped roll/pitch torque actually applied; this, not base + added,
  // is what the adaptive controller must store as its input sample.
  Eigen::Vector2d total_attitude_torque = Eigen::Vector2d::Zero();
};

// Sums the baseline and added attitude torques, saturates per axis, and
// echoes the applied total back for learning.
inline AugmentResult augment_and_apply(const Eigen::Vector2d& base_torque,
                                       const Eigen::Vector2d& added_torque, double yaw_torque,
                                       double thrust, const QuadParams& params)
{
  if (!base_torque.allFinite() || !added_torque.allFinite() || !std::isfinite(yaw_torque) ||
      !std::isfinite(thrust))
    throw InputError("non-finite torque command");
  AugmentResult res;
  const double lim = params.max_torque;
  for (int i = 0; i < 2; ++i)
    res.total_attitude_torque(i) = std::clamp(base_torque(i) + added_torque(i), -lim, lim);
  res.command.torque(0) = res.total_attitude_torque(0);
  res.command.torque(1) = res.total_attitude_torque(1);
  res.command.torque(2) = std::clamp(yaw_torque, -lim, lim);
  res.command.thrust = std::clamp(thrust, 0.0, params.max_thrust);
  return res;
}

}  // namespace dnaclab
