#pragma once

#include <algorithm>

#include <Eigen/Dense>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

struct PidConfig
{
  double kp = 0.15;
  double ki = 0.05;
  double kd = 0.03;
  double integrator_limit = 6.0;  // rad*s
  double output_limit = 1.0;      // N*m
};

// Per-axis PID with integrator clamp and output saturation. The caller
// supplies the error rate; when it does not, the rate falls back to a
// backward difference of the error.
class AxisPid
{
public:
  AxisPid() = default;
  explicit AxisPid(PidConfig cfg) : cfg_(cfg) {}

  double step(double error, double error_rate, double dt)
  {
    if (dt <= 0.0)
      throw ConfigError("pid dt must be positive");
    integrator_ = std::clamp(integrator_ + error * dt, -cfg_.integrator_limit,
                             cfg_.integrator_limit);
    prev_error_ = error;
    const double out = cfg_.kp * error + cfg_.ki * integrator_ + cfg_.kd * error_rate;
    return std::clamp(out, -cfg_.output_limit, cfg_.output_limit);
  }

  double step(double error, double dt)
  {
    const double rate = (error - prev_error_) / dt;
    return step(error, rate, dt);
  }

  void reset()
  {
    integrator_ = 0.0;
    prev_error_ = 0.0;
  }

  double integrator() const { return integrator_; }
  const PidConfig& config() const { return cfg_; }

private:
  PidConfig cfg_;
  double integrator_ = 0.0;
  double prev_error_ = 0.0;
};

// Two-axis wrapper used for the roll/pitch attitude loop.
class PidPair
{
public:
  PidPair() = default;
  explicit PidPair(PidConfig cfg) : axes_{AxisPid(cfg), AxisPid(cfg)} {}

  Eigen::Vector2d step(const Eigen::Vector2d& error, const Eigen::Vector2d& error_rate, double dt)
  {
    return {axes_[0].step(error(0), error_rate(0), dt), axes_[1].step(error(1), error_rate(1), dt)};
  }

  void reset()
  {
    axes_[0].reset();
    axes_[1].reset();
  }

  const AxisPid& axis(int i) const { return axes_[i]; }

private:
  AxisPid axes_[2];
};

}  // namespace dnaclab
