#include <cmath>

#include <doctest.h>

#include "dnaclab/errors.hpp"
#include "dnaclab/trajectory.hpp"

using namespace dnaclab;

namespace
{

TrajectorySpec circle_spec(double radius, double period)
{
  TrajectorySpec spec;
  spec.kind = TrajectorySpec::Kind::Circle;
  spec.radius = radius;
  spec.period = period;
  spec.center = Eigen::Vector3d(0.5, -0.2, 1.0);
  return spec;
}

TrajectorySpec rose_spec(double amplitude, double period)
{
  TrajectorySpec spec;
  spec.kind = TrajectorySpec::Kind::Rose;
  spec.amplitude = amplitude;
  spec.period = period;
  spec.center = Eigen::Vector3d(0.0, 0.0, 1.0);
  return spec;
}

}  // namespace

TEST_CASE("circle starts on the +x axis and closes after one period")
{
  const TrajectorySpec spec = circle_spec(1.5, 12.0);
  const TrajectorySample start = position_ref(spec, 0.0);
  CHECK((start.position - (spec.center + Eigen::Vector3d(1.5, 0.0, 0.0))).norm() == 0.0);
  CHECK(start.velocity(0) == 0.0);
  CHECK(start.velocity(1) == doctest::Approx(1.5 * 2.0 * M_PI / 12.0).epsilon(1e-15));

  for (double t : {0.7, 3.3, 9.9})
  {
    const TrajectorySample a = position_ref(spec, t);
    const TrajectorySample b = position_ref(spec, t + 12.0);
    CHECK((a.position - b.position).norm() < 1e-12);
    // constant path speed r * omega
    CHECK(a.velocity.norm() == doctest::Approx(1.5 * 2.0 * M_PI / 12.0).epsilon(1e-12));
  }
}

TEST_CASE("analytic velocities match centered differences")
{
  const double h = 1e-5;
  for (const TrajectorySpec& spec : {circle_spec(1.0, 12.0), rose_spec(2.8, 40.0)})
  {
    for (double t : {0.3, 1.9, 5.0, 13.7, 29.2})
    {
      const Eigen::Vector3d fd =
          (position_ref(spec, t + h).position - position_ref(spec, t - h).position) / (2.0 * h);
      CHECK((position_ref(spec, t).velocity - fd).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("rose petals: zeros on the axes, tips at the diagonals")
{
  const TrajectorySpec spec = rose_spec(2.8, 40.0);
  // theta = 2 pi t / period; r = a sin(2 theta)
  for (int k = 0; k < 4; ++k)
  {
    const double t = k * 10.0;  // theta = k pi / 2
    CHECK((position_ref(spec, t).position - spec.center).norm() < 1e-12);
  }
  for (int k = 0; k < 4; ++k)
  {
    const double t = 5.0 + k * 10.0;  // theta = pi/4 + k pi/2
    CHECK((position_ref(spec, t).position - spec.center).norm() ==
          doctest::Approx(2.8).epsilon(1e-12));
  }
  const TrajectorySample tip = position_ref(spec, 5.0);
  CHECK(tip.position(0) == doctest::Approx(2.8 * std::cos(M_PI / 4.0)).epsilon(1e-12));
  CHECK(tip.position(1) == doctest::Approx(2.8 * std::sin(M_PI / 4.0)).epsilon(1e-12));
}

TEST_CASE("hover and step references")
{
  TrajectorySpec spec;
  spec.kind = TrajectorySpec::Kind::Hover;
  spec.center = Eigen::Vector3d(1.0, 2.0, 3.0);
  CHECK(position_ref(spec, 17.0).position == spec.center);
  CHECK(position_ref(spec, 17.0).velocity.norm() == 0.0);

  spec.kind = TrajectorySpec::Kind::Step;
  spec.step_to = Eigen::Vector3d(2.0, 2.0, 3.0);
  spec.step_at = 4.0;
  CHECK(position_ref(spec, 3.999).position == spec.center);
  CHECK(position_ref(spec, 4.0).position == spec.step_to);
}

TEST_CASE("arc length by quadrature against closed forms")
{
  CHECK(arc_length(circle_spec(2.0, 12.0)) == doctest::Approx(4.0 * M_PI).epsilon(1e-10));

  // four-petal rose, numerically integrated at much higher resolution: 27.1276550175
  const double rose = arc_length(rose_spec(2.8, 40.0));
  CHECK(rose == doctest::Approx(27.1276550175).epsilon(1e-4));
  CHECK(std::abs(rose - arc_length(rose_spec(2.8, 40.0), 100000)) / rose < 1e-4);

  // arc length scales linearly with amplitude
  CHECK(arc_length(rose_spec(1.4, 40.0)) == doctest::Approx(0.5 * rose).epsilon(1e-10));
}

TEST_CASE("speed normalization picks the period with the requested mean speed")
{
  CHECK(arc_speed_normalize(circle_spec(1.0, 99.0), 0.5) ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-9));
  CHECK(arc_speed_normalize(circle_spec(1.0, 99.0), 1.0) ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-9));

  const double period = arc_speed_normalize(rose_spec(2.8, 99.0), 0.7);
  CHECK(arc_length(rose_spec(2.8, 40.0)) / period == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("trajectory validation")
{
  TrajectorySpec spec = circle_spec(1.0, 12.0);
  CHECK_NOTHROW(spec.validate());
  spec.radius = 0.0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = rose_spec(2.8, 40.0);
  spec.period = -1.0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  CHECK_THROWS_AS(position_ref(spec, -0.1), ConfigError);
  CHECK_THROWS_AS(arc_length(circle_spec(1.0, 12.0), 7), ConfigError);
  TrajectorySpec hover;
  CHECK_THROWS_AS(arc_length(hover), ConfigError);
}
