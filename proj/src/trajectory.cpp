#include "dnaclab/trajectory.hpp"

#include <cmath>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

void TrajectorySpec::validate() const
{
  if (!center.allFinite() || !step_to.allFinite())
    throw ConfigError("trajectory points must be finite");
  switch (kind)
  {
    case Kind::Circle:
      if (!(radius > 0.0) || !(period > 0.0))
        throw ConfigError("circle radius and period must be positive");
      break;
    case Kind::Rose:
      if (!(amplitude > 0.0) || !(period > 0.0))
        throw ConfigError("rose amplitude and period must be positive");
      break;
    case Kind::Hover:
      break;
    case Kind::Step:
      if (step_at < 0.0)
        throw ConfigError("step time must be nonnegative");
      break;
  }
}

TrajectorySample position_ref(const TrajectorySpec& spec, double t)
{
  if (t < 0.0)
    throw ConfigError("time must be nonnegative");
  TrajectorySample s;
  switch (spec.kind)
  {
    case TrajectorySpec::Kind::Circle:
    {
      const double w = 2.0 * M_PI / spec.period;
      s.position = spec.center +
                   Eigen::Vector3d(spec.radius * std::cos(w * t), spec.radius * std::sin(w * t), 0.0);
      s.velocity = Eigen::Vector3d(-spec.radius * w * std::sin(w * t),
                                   spec.radius * w * std::cos(w * t), 0.0);
      break;
    }
    case TrajectorySpec::Kind::Rose:
    {
      const double w = 2.0 * M_PI / spec.period;
      const double th = w * t;
      const double r = spec.amplitude * std::sin(2.0 * th);
      const double dr = 2.0 * spec.amplitude * std::cos(2.0 * th);
      s.position =
          spec.center + Eigen::Vector3d(r * std::cos(th), r * std::sin(th), 0.0);
      s.velocity = w * Eigen::Vector3d(dr * std::cos(th) - r * std::sin(th),
                                       dr * std::sin(th) + r * std::cos(th), 0.0);
      break;
    }
    case TrajectorySpec::Kind::Hover:
      s.position = spec.center;
      break;
    case TrajectorySpec::Kind::Step:
      s.position = t < spec.step_at ? spec.center : spec.step_to;
      break;
  }
  return s;
}

double arc_length(const TrajectorySpec& spec, int panels)
{
  if (panels < 2 || panels % 2 != 0)
    throw ConfigError("Simpson quadrature needs an even panel count");
  if (spec.kind != TrajectorySpec::Kind::Circle && spec.kind != TrajectorySpec::Kind::Rose)
    throw ConfigError("arc length applies to closed patterns only");

  // |dP/dtheta| over one full revolution.
  const auto speed = [&spec](double th) {
    if (spec.kind == TrajectorySpec::Kind::Circle)
      return spec.radius;
    const double r = spec.amplitude * std::sin(2.0 * th);
    const double dr = 2.0 * spec.amplitude * std::cos(2.0 * th);
    return std::sqrt(r * r + dr * dr);
  };

  const double h = 2.0 * M_PI / panels;
  double sum = speed(0.0) + speed(2.0 * M_PI);
  for (int i = 1; i < panels; ++i)
    sum += (i % 2 == 1 ? 4.0 : 2.0) * speed(i * h);
  return sum * h / 3.0;
}

double arc_speed_normalize(const TrajectorySpec& spec, double target_speed)
{
  if (!(target_speed > 0.0))
    throw ConfigError("target speed must be positive");
  return arc_length(spec) / target_speed;
}

}  // namespace dnaclab
