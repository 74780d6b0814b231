#include "dnaclab/disturbances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

void WindField::validate() const
{
  if (!source.allFinite() || !direction.allFinite())
    throw ConfigError("wind source and direction must be finite");
  if (std::abs(direction.norm() - 1.0) > 1e-6)
    throw ConfigError("wind direction must be a unit vector");
  if (core_speed < 0.0 || drag_coeff < 0.0 || cp_offset < 0.0 || onset_ramp < 0.0)
    throw ConfigError("wind magnitudes must be nonnegative");
  if (!(cone_half_angle > 0.0) || !(decay_length > 0.0))
    throw ConfigError("cone half-angle and decay length must be positive");
}

Wrench wind_wrench(const WindField& field, const RigidBodyState& state, double t)
{
  Wrench out;
  const Eigen::Vector3d rel = state.position - field.source;
  const double along = rel.dot(field.direction);
  if (along <= 0.0)
    return out;

  double angular = 1.0;
  const double range = rel.norm();
  if (range > 1e-12)
  {
    const double cosang = std::clamp(along / range, -1.0, 1.0);
    const double u = std::acos(cosang) / field.cone_half_angle;
    angular = std::max(0.0, 1.0 - u * u);
  }
  if (angular == 0.0)
    return out;

  const double axial = std::exp(-along / field.decay_length);
  const double ramp =
      field.onset_ramp <= 0.0 ? 1.0 : std::clamp(t / field.onset_ramp, 0.0, 1.0);
  const double envelope = axial * angular * ramp;
  if (envelope <= 0.0)
    return out;

  const Eigen::Vector3d rel_flow = field.core_speed * field.direction - state.velocity;
  out.force = field.drag_coeff * envelope * rel_flow;

  const Eigen::Vector3d f_body =
      rotation_body_to_world(state.attitude).transpose() * out.force;
  out.torque = Eigen::Vector3d(0.0, 0.0, -field.cp_offset).cross(f_body);
  return out;
}

void WallEffectConfig::validate() const
{
  if (!(influence_distance > 0.0))
    throw ConfigError("wall influence distance must be positive");
  if (contact_torque_std < 0.0)
    throw ConfigError("wall torque std must be nonnegative");
  if (!(correlation_time > 0.0))
    throw ConfigError("wall correlation time must be positive");
  for (const auto& seg : segments)
    if (!seg.a.allFinite() || !seg.b.allFinite())
      throw ConfigError("wall segment endpoints must be finite");
}

WallEffect::WallEffect(WallEffectConfig cfg, std::uint32_t seed) : cfg_(std::move(cfg)), rng_(seed)
{
  cfg_.validate();
}

namespace
{

double point_segment_distance(const Eigen::Vector2d& p, const WallSegment& seg)
{
  const Eigen::Vector2d ab = seg.b - seg.a;
  const double len2 = ab.squaredNorm();
  double t = 0.0;
  if (len2 > 0.0)
    t = std::clamp((p - seg.a).dot(ab) / len2, 0.0, 1.0);
  return (seg.a + t * ab - p).norm();
}

}  // namespace

double WallEffect::distance(const Eigen::Vector2d& xy) const
{
  double best = std::numeric_limits<double>::infinity();
  for (const auto& seg : cfg_.segments)
    best = std::min(best, point_segment_distance(xy, seg));
  return best;
}

Eigen::Vector3d WallEffect::torque(const RigidBodyState& state, double dt)
{
  if (dt <= 0.0)
    throw ConfigError("dt must be positive");
  const double alpha = std::exp(-dt / cfg_.correlation_time);
  const double d = distance(state.position.head<2>());
  if (!(d < cfg_.influence_distance))
  {
    noise_ *= alpha;
    return Eigen::Vector3d::Zero();
  }
  const double kick = cfg_.contact_torque_std * std::sqrt(1.0 - alpha * alpha);
  for (int i = 0; i < 2; ++i)
    noise_(i) = alpha * noise_(i) + kick * normal_(rng_);
  const double scale = 1.0 - d / cfg_.influence_distance;
  return {noise_(0) * scale, noise_(1) * scale, 0.0};
}

void SlungMassConfig::validate() const
{
  if (!attach_offset.allFinite())
    throw ConfigError("attachment offset must be finite");
  if (mass < 0.0)
    throw ConfigError("slung mass must be nonnegative");
  if (!(length > 0.0) || !(gravity > 0.0))
    throw ConfigError("pendulum length and gravity must be positive");
  if (pendulum_damping <= 0.0 || pendulum_damping >= 1.0 || slosh_damping <= 0.0 ||
      slosh_damping >= 1.0)
    throw ConfigError("damping ratios must lie in (0, 1)");
  if (!(slosh_freq > 0.0) || slosh_coupling < 0.0)
    throw ConfigError("slosh frequency must be positive and coupling nonnegative");
}

SlungMass::SlungMass(SlungMassConfig cfg) : cfg_(cfg)
{
  cfg_.validate();
}

double SlungMass::mechanical_energy() const
{
  const double kinetic = 0.5 * cfg_.mass * cfg_.length * cfg_.length * rate_.squaredNorm();
  const double potential = cfg_.mass * cfg_.gravity * cfg_.length *
                           ((1.0 - std::cos(angle_(0))) + (1.0 - std::cos(angle_(1))));
  return kinetic + potential;
}

Wrench SlungMass::wrench(const RigidBodyState& state, double dt)
{
  if (dt <= 0.0)
    throw ConfigError("dt must be positive");
  Wrench out;
  if (cfg_.mass == 0.0)
    return out;

  Eigen::Vector3d accel = Eigen::Vector3d::Zero();
  if (has_prev_)
    accel = (state.velocity - prev_velocity_) / dt;
  prev_velocity_ = state.velocity;
  has_prev_ = true;

  const double wp = std::sqrt(cfg_.gravity / cfg_.length);
  const double ws = cfg_.slosh_freq;

  // State layout for the RK4 sweep: swing angles, swing rates, slosh, slosh rate.
  using Vec6 = Eigen::Matrix<double, 6, 1>;
  Vec6 y;
  y << angle_(0), angle_(1), rate_(0), rate_(1), slosh_, slosh_rate_;
  const auto deriv = [&](const Vec6& s) -> Vec6 {
    Vec6 d;
    for (int i = 0; i < 2; ++i)
    {
      d(i) = s(2 + i);
      d(2 + i) = -wp * wp * std::sin(s(i)) - 2.0 * cfg_.pendulum_damping * wp * s(2 + i) -
                 accel(i) / cfg_.length * std::cos(s(i));
    }
    d(4) = s(5);
    d(5) = -ws * ws * s(4) - 2.0 * cfg_.slosh_damping * ws * s(5) + (s(2) + s(3));
    return d;
  };
  const Vec6 k1 = deriv(y);
  const Vec6 k2 = deriv(y + 0.5 * dt * k1);
  const Vec6 k3 = deriv(y + 0.5 * dt * k2);
  const Vec6 k4 = deriv(y + dt * k3);
  y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

  angle_ = y.head<2>();
  rate_ = y.segment<2>(2);
  slosh_ = y(4);
  slosh_rate_ = y(5);

  // Slosh shifts the effective bob direction relative to the geometric swing.
  const double sx = std::sin(angle_(0) * (1.0 + cfg_.slosh_coupling * slosh_));
  const double sy = std::sin(angle_(1) * (1.0 + cfg_.slosh_coupling * slosh_));
  const double sz = -std::sqrt(std::max(1.0 - sx * sx - sy * sy, 0.0));
  Eigen::Vector3d bob_dir(sx, sy, sz);
  const double norm = bob_dir.norm();
  bob_dir = norm > 0.0 ? Eigen::Vector3d(bob_dir / norm) : Eigen::Vector3d(0.0, 0.0, -1.0);

  const double tension =
      cfg_.mass * (cfg_.gravity * std::max(-bob_dir(2), 0.0) + cfg_.length * rate_.squaredNorm());
  out.force = tension * bob_dir;

  const Eigen::Vector3d f_body =
      rotation_body_to_world(state.attitude).transpose() * out.force;
  out.torque = cfg_.attach_offset.cross(f_body);
  return out;
}

}  // namespace dnaclab
