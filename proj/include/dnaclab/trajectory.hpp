#pragma once

#include <Eigen/Dense>

namespace dnaclab
{

// Position references: circle and four-petal rose patterns at constant
// altitude, plus hover and step utilities.
struct TrajectorySpec
{
  enum class Kind
  {
    Circle,
    Rose,
    Hover,
    Step
  };

  Kind kind = Kind::Hover;
  double radius = 1.0;     // circle, m
  double amplitude = 2.8;  // rose r = a sin(2 theta), m
  double period = 12.0;    // circle/rose, s
  Eigen::Vector3d center = Eigen::Vector3d(0.0, 0.0, 1.0);  // center / hover point / step origin
  Eigen::Vector3d step_to = Eigen::Vector3d(0.0, 0.0, 1.0);
  double step_at = 0.0;  // s

  void validate() const;
};

struct TrajectorySample
{
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
};

// Reference position and its exact analytic velocity at time t.
TrajectorySample position_ref(const TrajectorySpec& spec, double t);

// Length of one full pattern (circle or rose) by composite Simpson
// quadrature with the given number of panels.
double arc_length(const TrajectorySpec& spec, int panels = 10000);

// Period such that the mean path speed equals target_speed.
double arc_speed_normalize(const TrajectorySpec& spec, double target_speed);

}  // namespace dnaclab
