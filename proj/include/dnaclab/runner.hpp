#pragma once

#include <cstdint>

#include "dnaclab/metrics.hpp"
#include "dnaclab/scenario.hpp"
#include "dnaclab/trace.hpp"

namespace dnaclab
{

struct RunResult
{
  Trace trace;
  MetricsReport report;
  std::int64_t disturbance_bound_violations = 0;
};

// Steps the plant at physics_dt with the control stack at control_dt:
// trajectory -> cascade -> baseline attitude PID -> adaptive added torque ->
// saturation -> plant, with disturbance wrenches composed every physics step
// and the applied total torque echoed back into the learning buffers. A
// non-finite or unhealthy adaptive controller is severed for the rest of the
// run (baseline keeps flying); a crash fault ends the run and is marked in
// the report.
RunResult run_scenario(const ScenarioConfig& config);

}  // namespace dnaclab
