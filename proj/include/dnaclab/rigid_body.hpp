#pragma once

#include <vector>

#include <Eigen/Dense>

namespace dnaclab
{

// External load on the vehicle: force in the world frame, torque in the body frame.
struct Wrench
{
  Eigen::Vector3d force = Eigen::Vector3d::Zero();   // N
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();  // N*m

  Wrench operator+(const Wrench& other) const { return {force + other.force, torque + other.torque}; }
};

Wrench compose(const std::vector<Wrench>& wrenches);

// World frame: x forward, y left, z up. Attitude is aerospace Euler
// roll/pitch/yaw (positive pitch = nose up, so accelerating along +x needs a
// negative pitch reference). Body rates are (p, q, r) in the body frame.
struct RigidBodyState
{
  Eigen::Vector3d position = Eigen::Vector3d::Zero();    // m
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();    // m/s
  Eigen::Vector3d attitude = Eigen::Vector3d::Zero();    // roll, pitch, yaw rad
  Eigen::Vector3d body_rates = Eigen::Vector3d::Zero();  // rad/s

  bool finite() const
  {
    return position.allFinite() && velocity.allFinite() && attitude.allFinite() &&
           body_rates.allFinite();
  }
};

struct StateDerivative
{
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d attitude = Eigen::Vector3d::Zero();
  Eigen::Vector3d body_rates = Eigen::Vector3d::Zero();
};

struct QuadParams
{
  double mass = 1.2;                                          // kg
  Eigen::Vector3d inertia = Eigen::Vector3d(0.01, 0.01, 0.02);  // kg*m^2 diagonal
  double arm_length = 0.25;                                   // m
  double linear_drag = 0.1;                                   // N*s/m
  double rotational_drag = 0.05;                              // N*m*s/rad
  double max_thrust = 30.0;                                   // N
  double max_torque = 1.0;                                    // N*m per axis
  double gravity = 9.81;                                      // m/s^2

  void validate() const;
};

struct ActuatorCommand
{
  double thrust = 0.0;                               // N along body z
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();  // N*m body
};

// World-frame unit vector of the body z (thrust) axis for the given attitude.
Eigen::Vector3d thrust_axis_world(const Eigen::Vector3d& attitude);

// Rotation mapping body-frame vectors into the world frame.
Eigen::Matrix3d rotation_body_to_world(const Eigen::Vector3d& attitude);

// Euler-angle rates (roll', pitch', yaw') for the given attitude and body rates.
Eigen::Vector3d euler_rates(const Eigen::Vector3d& attitude, const Eigen::Vector3d& body_rates);

// Newton-Euler derivative with diagonal inertia:
//   m v' = thrust_axis * thrust - (0,0,m g) - linear_drag v + external force
//   I w' = tau - w x (I w) - rotational_drag w + external torque
// plus the Euler-angle kinematic map from body rates to attitude rates.
// Throws CrashFault when |pitch| exceeds 85 degrees.
StateDerivative dynamics_derivative(const RigidBodyState& state, const ActuatorCommand& cmd,
                                    const Wrench& external, const QuadParams& params);

// Classical RK4 with the command and wrench held over the step.
// Throws CrashFault on a non-finite result.
RigidBodyState rk4_step(const RigidBodyState& state, const ActuatorCommand& cmd,
                        const Wrench& external, const QuadParams& params, double dt);

}  // namespace dnaclab
