#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "dnaclab/rigid_body.hpp"

namespace dnaclab
{

// 18 mph crosswind, rounded to m/s.
constexpr double kWindSpeed18Mph = 8.05;

// Conical fan jet: core speed decays exponentially along the blow axis and
// quadratically off-axis, with a startup ramp. The aerodynamic force is a
// linear relative-flow drag scaled by the local jet envelope; a small
// center-of-pressure lever above the center of mass adds an attitude moment.
struct WindField
{
  Eigen::Vector3d source = Eigen::Vector3d(2.0, 0.0, 1.0);       // m
  Eigen::Vector3d direction = Eigen::Vector3d(-1.0, 0.0, 0.0);   // unit
  double core_speed = kWindSpeed18Mph;                           // m/s
  double cone_half_angle = 0.6;                                  // rad
  double decay_length = 4.0;                                     // m
  double onset_ramp = 1.0;                                       // s
  double drag_coeff = 0.3;                                       // N*s/m
  double cp_offset = 0.02;                                       // m above CoM

  void validate() const;
};

Wrench wind_wrench(const WindField& field, const RigidBodyState& state, double t);

struct WallSegment
{
  Eigen::Vector2d a = Eigen::Vector2d::Zero();  // xy endpoints, m
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
};

struct WallEffectConfig
{
  std::vector<WallSegment> segments;
  double influence_distance = 1.2;   // m
  double contact_torque_std = 0.08;  // N*m at zero distance
  double correlation_time = 0.3;     // s

  void validate() const;
};

// Proximity turbulence: two independent Ornstein-Uhlenbeck torque processes
// (roll, pitch) scaled linearly down to zero at the influence distance.
// Noise is drawn only inside the influence zone; outside, the state decays.
class WallEffect
{
public:
  WallEffect(WallEffectConfig cfg, std::uint32_t seed);

  // Distance from an xy point to the nearest wall segment.
  double distance(const Eigen::Vector2d& xy) const;

  Eigen::Vector3d torque(const RigidBodyState& state, double dt);

  const Eigen::Vector2d& noise_state() const { return noise_; }
  const WallEffectConfig& config() const { return cfg_; }

private:
  WallEffectConfig cfg_;
  Eigen::Vector2d noise_ = Eigen::Vector2d::Zero();
  std::mt19937 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

struct SlungMassConfig
{
  Eigen::Vector3d attach_offset = Eigen::Vector3d(0.177, 0.177, -0.02);  // body m
  double length = 0.3;            // m
  double mass = 0.165;            // kg
  double pendulum_damping = 0.3;  // ratio
  double slosh_freq = 18.0;       // rad/s
  double slosh_damping = 0.3;     // ratio
  double slosh_coupling = 0.4;    // effective angle gain per unit slosh state
  double gravity = 9.81;

  void validate() const;
};

// Hanging bottle: a two-plane small-angle pendulum driven by the vehicle's
// horizontal acceleration, plus a damped slosh oscillator excited by the
// swing that modulates the effective bob direction. The output is the string
// tension applied at the attachment point and its moment about the center of
// mass.
class SlungMass
{
public:
  explicit SlungMass(SlungMassConfig cfg);

  Wrench wrench(const RigidBodyState& state, double dt);

  Eigen::Vector2d pendulum_angle() const { return angle_; }
  Eigen::Vector2d pendulum_rate() const { return rate_; }
  double mechanical_energy() const;
  const SlungMassConfig& config() const { return cfg_; }

private:
  SlungMassConfig cfg_;
  Eigen::Vector2d angle_ = Eigen::Vector2d::Zero();  // swing toward world x, y
  Eigen::Vector2d rate_ = Eigen::Vector2d::Zero();
  double slosh_ = 0.0;
  double slosh_rate_ = 0.0;
  Eigen::Vector3d prev_velocity_ = Eigen::Vector3d::Zero();
  bool has_prev_ = false;
};

}  // namespace dnaclab
