#include "dnaclab/cascade.hpp"

#include <cmath>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

void CascadeConfig::validate() const
{
  if (!(max_tilt > 0.0) || max_tilt >= M_PI / 2.0)
    throw ConfigError("max tilt must lie in (0, pi/2)");
  if (!(ref_filter_tau > 0.0))
    throw ConfigError("reference filter time constant must be positive");
  if (position.kp < 0.0 || position.ki < 0.0 || position.kd < 0.0 || velocity.kp < 0.0 ||
      velocity.ki < 0.0 || velocity.kd < 0.0)
    throw ConfigError("cascade gains must be nonnegative");
}

Cascade::Cascade(CascadeConfig cfg, QuadParams params) : cfg_(cfg), params_(params)
{
  cfg_.validate();
  params_.validate();
  for (int i = 0; i < 3; ++i)
  {
    pos_[i] = AxisPid(cfg_.position);
    vel_[i] = AxisPid(cfg_.velocity);
  }
}

Cascade::Output Cascade::step(const RigidBodyState& state, const Eigen::Vector3d& position_ref,
                              const Eigen::Vector3d& vel_ff, const Eigen::Vector3d& acc_ff,
                              double dt)
{
  if (dt <= 0.0)
    throw ConfigError("dt must be positive");
  if (!state.finite() || !position_ref.allFinite() || !vel_ff.allFinite() || !acc_ff.allFinite())
    throw InputError("non-finite cascade input");

  Eigen::Vector3d accel;
  for (int i = 0; i < 3; ++i)
  {
    const double vel_ref = pos_[i].step(position_ref(i) - state.position(i), dt) + vel_ff(i);
    accel(i) = vel_[i].step(vel_ref - state.velocity(i), dt) + acc_ff(i);
  }

  // Small-angle tilt map resolved through the current heading: accelerating
  // along +x needs a nose-down (negative) pitch reference.
  const double cpsi = std::cos(state.attitude(2)), spsi = std::sin(state.attitude(2));
  const double g = params_.gravity;
  Eigen::Vector2d raw;
  raw(0) = (-accel(0) * spsi - accel(1) * cpsi) / g;  // roll
  raw(1) = (-accel(0) * cpsi + accel(1) * spsi) / g;  // pitch
  raw = raw.cwiseMax(-cfg_.max_tilt).cwiseMin(cfg_.max_tilt);

  // Exact discretization of y' = (u - y)/tau; the rate output is the
  // filter's own derivative at the new sample.
  const double alpha = std::exp(-dt / cfg_.ref_filter_tau);
  att_filt_ = raw + alpha * (att_filt_ - raw);

  Output out;
  out.attitude_ref = att_filt_;
  out.attitude_ref_rate = (raw - att_filt_) / cfg_.ref_filter_tau;

  const double tilt = std::max(std::cos(state.attitude(0)) * std::cos(state.attitude(1)), 0.2);
  out.thrust = std::clamp(params_.mass * (g + accel(2)) / tilt, 0.0, params_.max_thrust);
  return out;
}

void Cascade::reset()
{
  for (int i = 0; i < 3; ++i)
  {
    pos_[i].reset();
    vel_[i].reset();
  }
  att_filt_.setZero();
}

}  // namespace dnaclab
