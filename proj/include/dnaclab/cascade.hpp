#pragma once

#include <Eigen/Dense>

#include "dnaclab/pid.hpp"
#include "dnaclab/rigid_body.hpp"

namespace dnaclab
{

// Position -> velocity -> attitude/thrust stack. The position loop outputs a
// velocity reference (clamped by its output limit), the velocity loop an
// acceleration demand that maps to roll/pitch references through the
// small-angle tilt map and to collective thrust.
struct CascadeConfig
{
  // The attitude loop underneath (kp 0.15, kd 0.03 on J = 0.01) resonates
  // near 3.9 rad/s, so the velocity loop crosses over around 1 rad/s and the
  // position loop around 0.4 rad/s.
  PidConfig position{0.6, 0.0, 0.0, 1.0, 2.0};  // error m -> velocity ref m/s
  PidConfig velocity{1.4, 0.6, 0.0, 2.0, 5.0};  // error m/s -> accel m/s^2
  double max_tilt = 0.35;                       // rad
  double ref_filter_tau = 0.05;                 // s

  void validate() const;
};

class Cascade
{
public:
  struct Output
  {
    Eigen::Vector2d attitude_ref = Eigen::Vector2d::Zero();       // roll, pitch rad
    Eigen::Vector2d attitude_ref_rate = Eigen::Vector2d::Zero();  // rad/s
    double thrust = 0.0;                                          // N
  };

  Cascade(CascadeConfig cfg, QuadParams params);

  // `vel_ff` and `acc_ff` are the trajectory's velocity and acceleration
  // feedforwards. The attitude reference passes through a first-order
  // low-pass whose exact analytic derivative is returned as
  // attitude_ref_rate.
  Output step(const RigidBodyState& state, const Eigen::Vector3d& position_ref,
              const Eigen::Vector3d& vel_ff, const Eigen::Vector3d& acc_ff, double dt);

  void reset();

  const CascadeConfig& config() const { return cfg_; }

private:
  CascadeConfig cfg_;
  QuadParams params_;
  AxisPid pos_[3];
  AxisPid vel_[3];
  Eigen::Vector2d att_filt_ = Eigen::Vector2d::Zero();
};

}  // namespace dnaclab
