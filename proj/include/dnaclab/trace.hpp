#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dnaclab
{

// One control-step record. Angles stay in radians here; unit conversions
// happen at metric/report time.
struct TraceRow
{
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d attitude = Eigen::Vector3d::Zero();
  Eigen::Vector3d body_rates = Eigen::Vector3d::Zero();
  Eigen::Vector3d position_ref = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity_ref = Eigen::Vector3d::Zero();
  Eigen::Vector2d attitude_ref = Eigen::Vector2d::Zero();       // roll, pitch
  Eigen::Vector2d attitude_ref_rate = Eigen::Vector2d::Zero();
  Eigen::Vector2d attitude_error = Eigen::Vector2d::Zero();     // x - x_d
  Eigen::Vector2d base_torque = Eigen::Vector2d::Zero();
  Eigen::Vector2d added_torque = Eigen::Vector2d::Zero();
  Eigen::Vector2d total_torque = Eigen::Vector2d::Zero();
  double yaw_torque = 0.0;
  double thrust = 0.0;
  Eigen::Vector2d f_hat = Eigen::Vector2d::Zero();
  double w_norm = 0.0;
  int train_event = 0;
  int fault_event = 0;
};

using Trace = std::vector<TraceRow>;

// Fixed column order, header row, %.17g doubles so parse(emit(trace))
// round-trips exactly.
std::string trace_to_csv(const Trace& trace);
Trace trace_from_csv(const std::string& text);

}  // namespace dnaclab
