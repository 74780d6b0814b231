#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnaclab/trace.hpp"

namespace dnaclab
{

// Tracking-error summary over the post-warmup portion of a run. L2 metrics
// are means of per-sample Euclidean error norms; position and velocity use
// the horizontal plane; std columns are population standard deviations.
struct MetricsReport
{
  double attitude_l2_deg = 0.0;
  double position_l2_cm = 0.0;
  double velocity_l2_cm_s = 0.0;
  double std_roll_deg = 0.0;
  double std_pitch_deg = 0.0;
  double moving_rms_window_s = 2.0;
  std::vector<double> moving_rms_deg;
  std::vector<double> lap_attitude_rmse_deg;
  bool crashed = false;
  double crash_time_s = -1.0;
  std::int64_t fault_count = 0;
  std::int64_t training_passes = 0;
  std::int64_t adam_steps = 0;
  std::int64_t sample_touches = 0;
  double max_w_norm = 0.0;
};

// lap_period_s <= 0 disables lap segmentation. The moving RMS window is
// given in seconds and converted using the trace's own sample spacing.
MetricsReport compute_metrics(const Trace& trace, double warmup_s, double window_s,
                              double lap_period_s);

std::string metrics_to_json(const MetricsReport& report);
MetricsReport metrics_from_json(const std::string& text);

// (from - to) / from in percent; 0 when from == 0.
double percent_decrease(double from, double to);

// Values per report plus pairwise percent decreases, as aligned plain text.
std::string compare_table(const std::vector<std::string>& labels,
                          const std::vector<MetricsReport>& reports);

// Same content as CSV (one row per metric, one column per report).
std::string compare_csv(const std::vector<std::string>& labels,
                        const std::vector<MetricsReport>& reports);

}  // namespace dnaclab
