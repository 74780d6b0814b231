#include "dnaclab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

using nlohmann::json;

namespace
{
constexpr double kRadToDeg = 180.0 / M_PI;
}

MetricsReport compute_metrics(const Trace& trace, double warmup_s, double window_s,
                              double lap_period_s)
{
  std::size_t begin = 0;
  while (begin < trace.size() && trace[begin].t < warmup_s)
    ++begin;
  if (begin == trace.size())
    throw ConfigError("trace has no samples after the warmup interval");

  const std::size_t n = trace.size() - begin;
  std::vector<double> att_norm_deg(n);
  double sum_att = 0.0, sum_pos = 0.0, sum_vel = 0.0;
  double sum_roll = 0.0, sum_pitch = 0.0, sum_roll2 = 0.0, sum_pitch2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    const TraceRow& r = trace[begin + i];
    const double roll_deg = r.attitude_error(0) * kRadToDeg;
    const double pitch_deg = r.attitude_error(1) * kRadToDeg;
    att_norm_deg[i] = std::sqrt(roll_deg * roll_deg + pitch_deg * pitch_deg);
    sum_att += att_norm_deg[i];
    sum_roll += roll_deg;
    sum_pitch += pitch_deg;
    sum_roll2 += roll_deg * roll_deg;
    sum_pitch2 += pitch_deg * pitch_deg;
    sum_pos += (r.position.head<2>() - r.position_ref.head<2>()).norm() * 100.0;
    sum_vel += (r.velocity.head<2>() - r.velocity_ref.head<2>()).norm() * 100.0;
  }

  MetricsReport rep;
  const double inv_n = 1.0 / static_cast<double>(n);
  rep.attitude_l2_deg = sum_att * inv_n;
  rep.position_l2_cm = sum_pos * inv_n;
  rep.velocity_l2_cm_s = sum_vel * inv_n;
  const double mean_roll = sum_roll * inv_n;
  const double mean_pitch = sum_pitch * inv_n;
  rep.std_roll_deg = std::sqrt(std::max(sum_roll2 * inv_n - mean_roll * mean_roll, 0.0));
  rep.std_pitch_deg = std::sqrt(std::max(sum_pitch2 * inv_n - mean_pitch * mean_pitch, 0.0));

  const double dt = trace.size() > 1 ? trace[1].t - trace[0].t : 1.0;
  rep.moving_rms_window_s = window_s;
  std::size_t w = dt > 0.0 ? static_cast<std::size_t>(std::lround(window_s / dt)) : 1;
  w = std::clamp<std::size_t>(w, 1, n);
  std::vector<double> prefix_sq(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    prefix_sq[i + 1] = prefix_sq[i] + att_norm_deg[i] * att_norm_deg[i];
  rep.moving_rms_deg.resize(n - w + 1);
  for (std::size_t i = 0; i + w <= n; ++i)
    rep.moving_rms_deg[i] =
        std::sqrt((prefix_sq[i + w] - prefix_sq[i]) / static_cast<double>(w));

  if (lap_period_s > 0.0)
  {
    const double t_end = trace.back().t;
    for (int lap = 0;; ++lap)
    {
      const double lo = warmup_s + lap * lap_period_s;
      const double hi = lo + lap_period_s;
      if (hi > t_end + 0.5 * dt)
        break;
      double sq = 0.0;
      std::size_t count = 0;
      for (std::size_t i = 0; i < n; ++i)
      {
        const double t = trace[begin + i].t;
        if (t >= lo && t < hi)
        {
          sq += att_norm_deg[i] * att_norm_deg[i];
          ++count;
        }
      }
      if (count == 0)
        break;
      rep.lap_attitude_rmse_deg.push_back(std::sqrt(sq / static_cast<double>(count)));
    }
  }

  for (const auto& r : trace)
  {
    rep.max_w_norm = std::max(rep.max_w_norm, r.w_norm);
    rep.fault_count += r.fault_event;
    rep.training_passes += r.train_event;
  }
  return rep;
}

std::string metrics_to_json(const MetricsReport& r)
{
  json doc;
  doc["attitude_l2_deg"] = r.attitude_l2_deg;
  doc["position_l2_cm"] = r.position_l2_cm;
  doc["velocity_l2_cm_s"] = r.velocity_l2_cm_s;
  doc["std_roll_deg"] = r.std_roll_deg;
  doc["std_pitch_deg"] = r.std_pitch_deg;
  doc["moving_rms_window_s"] = r.moving_rms_window_s;
  doc["moving_rms_deg"] = r.moving_rms_deg;
  doc["lap_attitude_rmse_deg"] = r.lap_attitude_rmse_deg;
  doc["crashed"] = r.crashed;
  doc["crash_time_s"] = r.crash_time_s;
  doc["fault_count"] = r.fault_count;
  doc["training_passes"] = r.training_passes;
  doc["adam_steps"] = r.adam_steps;
  doc["sample_touches"] = r.sample_touches;
  doc["max_w_norm"] = r.max_w_norm;
  return doc.dump(2);
}

MetricsReport metrics_from_json(const std::string& text)
{
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (const json::exception& e)
  {
    throw ConfigError(std::string("bad metrics json: ") + e.what());
  }
  MetricsReport r;
  r.attitude_l2_deg = doc.at("attitude_l2_deg").get<double>();
  r.position_l2_cm = doc.at("position_l2_cm").get<double>();
  r.velocity_l2_cm_s = doc.at("velocity_l2_cm_s").get<double>();
  r.std_roll_deg = doc.at("std_roll_deg").get<double>();
  r.std_pitch_deg = doc.at("std_pitch_deg").get<double>();
  r.moving_rms_window_s = doc.at("moving_rms_window_s").get<double>();
  r.moving_rms_deg = doc.at("moving_rms_deg").get<std::vector<double>>();
  r.lap_attitude_rmse_deg = doc.at("lap_attitude_rmse_deg").get<std::vector<double>>();
  r.crashed = doc.at("crashed").get<bool>();
  r.crash_time_s = doc.at("crash_time_s").get<double>();
  r.fault_count = doc.at("fault_count").get<std::int64_t>();
  r.training_passes = doc.at("training_passes").get<std::int64_t>();
  r.adam_steps = doc.at("adam_steps").get<std::int64_t>();
  r.sample_touches = doc.at("sample_touches").get<std::int64_t>();
  r.max_w_norm = doc.at("max_w_norm").get<double>();
  return r;
}

double percent_decrease(double from, double to)
{
  if (from == 0.0)
    return 0.0;
  return (from - to) / from * 100.0;
}

namespace
{

struct MetricColumn
{
  const char* name;
  double MetricsReport::* field;
};

constexpr MetricColumn kScalarMetrics[] = {
    {"attitude_l2_deg", &MetricsReport::attitude_l2_deg},
    {"position_l2_cm", &MetricsReport::position_l2_cm},
    {"velocity_l2_cm_s", &MetricsReport::velocity_l2_cm_s},
    {"std_roll_deg", &MetricsReport::std_roll_deg},
    {"std_pitch_deg", &MetricsReport::std_pitch_deg},
};

}  // namespace

std::string compare_table(const std::vector<std::string>& labels,
                          const std::vector<MetricsReport>& reports)
{
  if (labels.size() != reports.size() || reports.size() < 2)
    throw ConfigError("compare needs at least two labeled reports");
  char buf[64];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-18s", "metric");
  out += buf;
  for (const auto& label : labels)
  {
    out.push_back(' ');
    if (label.size() < 12)
      out.append(12 - label.size(), ' ');
    out += label;
  }
  out.push_back('\n');
  for (const auto& metric : kScalarMetrics)
  {
    std::snprintf(buf, sizeof(buf), "%-18s", metric.name);
    out += buf;
    for (const auto& rep : reports)
    {
      std::snprintf(buf, sizeof(buf), " %12.3f", rep.*metric.field);
      out += buf;
    }
    out.push_back('\n');
  }
  out += "\npercent decrease\n";
  for (const auto& metric : kScalarMetrics)
  {
    for (std::size_t i = 0; i < reports.size(); ++i)
      for (std::size_t j = 0; j < reports.size(); ++j)
      {
        if (i == j)
          continue;
        const double pct = percent_decrease(reports[i].*metric.field, reports[j].*metric.field);
        std::snprintf(buf, sizeof(buf), "%-18s ", metric.name);
        out += buf;
        out += labels[i];
        out += " -> ";
        out += labels[j];
        std::snprintf(buf, sizeof(buf), ": %.1f%%\n", pct);
        out += buf;
      }
  }
  return out;
}

std::string compare_csv(const std::vector<std::string>& labels,
                        const std::vector<MetricsReport>& reports)
{
  if (labels.size() != reports.size() || reports.size() < 2)
    throw ConfigError("compare needs at least two labeled reports");
  std::string out = "metric";
  for (const auto& label : labels)
  {
    out.push_back(',');
    out += label;
  }
  out.push_back('\n');
  char buf[40];
  for (const auto& metric : kScalarMetrics)
  {
    out += metric.name;
    for (const auto& rep : reports)
    {
      std::snprintf(buf, sizeof(buf), ",%.17g", rep.*metric.field);
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace dnaclab
