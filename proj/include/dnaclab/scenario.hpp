#pragma once

#include <cstdint>
#include <string>

#include "dnaclab/cascade.hpp"
#include "dnaclab/disturbances.hpp"
#include "dnaclab/dnac.hpp"
#include "dnaclab/mrac.hpp"
#include "dnaclab/pid.hpp"
#include "dnaclab/rigid_body.hpp"
#include "dnaclab/trajectory.hpp"

namespace dnaclab
{

enum class ControllerScheme
{
  Pid,
  PidMrac,
  PidDmrac,
  PidDnac
};

std::string scheme_name(ControllerScheme scheme);
ControllerScheme scheme_from_name(const std::string& name);

struct SensorNoiseConfig
{
  bool enabled = false;
  double attitude_std_deg = 0.2;
  double rate_std_deg_s = 0.5;
};

struct DisturbanceSet
{
  bool wind_enabled = false;
  WindField wind;
  bool walls_enabled = false;
  WallEffectConfig walls;
  bool slung_enabled = false;
  SlungMassConfig slung;
};

constexpr int kScenarioSchemaVersion = 1;

struct ScenarioConfig
{
  ControllerScheme controller = ControllerScheme::Pid;
  TrajectorySpec trajectory;
  DisturbanceSet disturbances;
  QuadParams plant;
  CascadeConfig cascade;
  PidConfig attitude_pid;  // baseline roll/pitch loop
  double yaw_kp = 0.4;
  double yaw_kd = 0.05;
  DnacConfig dnac;
  MracConfig mrac;
  DmracConfig dmrac;
  SensorNoiseConfig sensor_noise;
  double duration = 60.0;      // s
  double physics_dt = 0.001;   // s
  double control_dt = 0.004;   // s
  double warmup = 5.0;         // s excluded from metrics
  double metrics_window = 2.0; // s moving-RMS window
  double augmentation_gain = 1.0;
  std::uint32_t seed = 0;

  // Physics substeps per control step; control_dt must be an integer
  // multiple of physics_dt.
  int substeps() const;
  void validate() const;
};

ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& config);
ScenarioConfig load_scenario_file(const std::string& path);

}  // namespace dnaclab
