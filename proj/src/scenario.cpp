#include "dnaclab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

using nlohmann::json;

std::string scheme_name(ControllerScheme scheme)
{
  switch (scheme)
  {
    case ControllerScheme::Pid: return "pid";
    case ControllerScheme::PidMrac: return "pid+mrac";
    case ControllerScheme::PidDmrac: return "pid+dmrac";
    case ControllerScheme::PidDnac: return "pid+dnac";
  }
  throw ConfigError("unknown controller scheme");
}

ControllerScheme scheme_from_name(const std::string& name)
{
  if (name == "pid") return ControllerScheme::Pid;
  if (name == "pid+mrac" || name == "mrac") return ControllerScheme::PidMrac;
  if (name == "pid+dmrac" || name == "dmrac") return ControllerScheme::PidDmrac;
  if (name == "pid+dnac" || name == "dnac") return ControllerScheme::PidDnac;
  throw ConfigError("unknown controller scheme: " + name);
}

int ScenarioConfig::substeps() const
{
  const double ratio = control_dt / physics_dt;
  const int k = static_cast<int>(std::lround(ratio));
  if (k < 1 || std::abs(k * physics_dt - control_dt) > 1e-9)
    throw ConfigError("control_dt must be an integer multiple of physics_dt");
  return k;
}

void ScenarioConfig::validate() const
{
  if (!(physics_dt > 0.0) || !(control_dt > 0.0))
    throw ConfigError("time steps must be positive");
  substeps();
  if (warmup < 0.0 || !(duration > warmup))
    throw ConfigError("duration must exceed the warmup interval");
  if (!(metrics_window > 0.0))
    throw ConfigError("metrics window must be positive");
  if (!std::isfinite(augmentation_gain) || augmentation_gain < 0.0)
    throw ConfigError("augmentation gain must be finite and nonnegative");
  if (yaw_kp < 0.0 || yaw_kd < 0.0)
    throw ConfigError("yaw gains must be nonnegative");
  trajectory.validate();
  plant.validate();
  cascade.validate();
  dnac.validate();
  mrac.validate();
  dmrac.validate();
  if (disturbances.wind_enabled)
    disturbances.wind.validate();
  if (disturbances.walls_enabled)
    disturbances.walls.validate();
  if (disturbances.slung_enabled)
    disturbances.slung.validate();
}

namespace
{

Eigen::Vector3d vec3_from(const json& j)
{
  if (!j.is_array() || j.size() != 3)
    throw ConfigError("expected a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Eigen::Vector2d vec2_from(const json& j)
{
  if (!j.is_array() || j.size() != 2)
    throw ConfigError("expected a 2-element array");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_array(const Eigen::Vector3d& v)
{
  return json::array({v(0), v(1), v(2)});
}

json to_array2(const Eigen::Vector2d& v)
{
  return json::array({v(0), v(1)});
}

// Scalars mean a multiple of the identity; a 2x2 nested array is taken verbatim.
Eigen::Matrix2d mat2_from(const json& j)
{
  if (j.is_number())
    return j.get<double>() * Eigen::Matrix2d::Identity();
  if (j.is_array() && j.size() == 2 && j[0].is_array())
  {
    Eigen::Matrix2d m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        m(r, c) = j[r][c].get<double>();
    return m;
  }
  throw ConfigError("expected a scalar or 2x2 array");
}

json mat2_to(const Eigen::Matrix2d& m)
{
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

// A scalar fans out to both axes.
Eigen::Vector2d diag2_from(const json& j)
{
  if (j.is_number())
    return Eigen::Vector2d::Constant(j.get<double>());
  return vec2_from(j);
}

void pid_from(const json& j, PidConfig& cfg)
{
  cfg.kp = j.value("kp", cfg.kp);
  cfg.ki = j.value("ki", cfg.ki);
  cfg.kd = j.value("kd", cfg.kd);
  cfg.integrator_limit = j.value("integrator_limit", cfg.integrator_limit);
  cfg.output_limit = j.value("output_limit", cfg.output_limit);
}

json pid_to(const PidConfig& cfg)
{
  return {{"kp", cfg.kp},
          {"ki", cfg.ki},
          {"kd", cfg.kd},
          {"integrator_limit", cfg.integrator_limit},
          {"output_limit", cfg.output_limit}};
}

void adam_from(const json& j, AdamConfig& cfg)
{
  cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
  cfg.beta1 = j.value("beta1", cfg.beta1);
  cfg.beta2 = j.value("beta2", cfg.beta2);
  cfg.epsilon = j.value("epsilon", cfg.epsilon);
}

json adam_to(const AdamConfig& cfg)
{
  return {{"learning_rate", cfg.learning_rate},
          {"beta1", cfg.beta1},
          {"beta2", cfg.beta2},
          {"epsilon", cfg.epsilon}};
}

void mrac_from(const json& j, MracConfig& cfg)
{
  if (j.contains("a_m")) cfg.a_m = mat2_from(j.at("a_m"));
  if (j.contains("b_m")) cfg.b_m = mat2_from(j.at("b_m"));
  if (j.contains("q")) cfg.q = mat2_from(j.at("q"));
  if (j.contains("k_m")) cfg.k_m = mat2_from(j.at("k_m"));
  if (j.contains("g_hat")) cfg.g_hat = mat2_from(j.at("g_hat"));
  cfg.gamma = j.value("gamma", cfg.gamma);
  cfg.w_norm_limit = j.value("w_norm_limit", cfg.w_norm_limit);
}

json mrac_to(const MracConfig& cfg)
{
  return {{"a_m", mat2_to(cfg.a_m)},   {"b_m", mat2_to(cfg.b_m)},
          {"q", mat2_to(cfg.q)},       {"k_m", mat2_to(cfg.k_m)},
          {"g_hat", mat2_to(cfg.g_hat)}, {"gamma", cfg.gamma},
          {"w_norm_limit", cfg.w_norm_limit}};
}

void trajectory_from(const json& j, TrajectorySpec& spec)
{
  if (j.contains("kind"))
  {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "circle")
      spec.kind = TrajectorySpec::Kind::Circle;
    else if (kind == "rose")
      spec.kind = TrajectorySpec::Kind::Rose;
    else if (kind == "hover")
      spec.kind = TrajectorySpec::Kind::Hover;
    else if (kind == "step")
      spec.kind = TrajectorySpec::Kind::Step;
    else
      throw ConfigError("unknown trajectory kind: " + kind);
  }
  spec.radius = j.value("radius", spec.radius);
  spec.amplitude = j.value("amplitude", spec.amplitude);
  // The rose pattern is larger, so it defaults to a slower lap.
  const double default_period = spec.kind == TrajectorySpec::Kind::Rose ? 40.0 : spec.period;
  spec.period = j.value("period", default_period);
  if (j.contains("center")) spec.center = vec3_from(j.at("center"));
  if (j.contains("step_to")) spec.step_to = vec3_from(j.at("step_to"));
  spec.step_at = j.value("step_at", spec.step_at);
}

json trajectory_to(const TrajectorySpec& spec)
{
  const char* kind = "hover";
  switch (spec.kind)
  {
    case TrajectorySpec::Kind::Circle: kind = "circle"; break;
    case TrajectorySpec::Kind::Rose: kind = "rose"; break;
    case TrajectorySpec::Kind::Hover: kind = "hover"; break;
    case TrajectorySpec::Kind::Step: kind = "step"; break;
  }
  return {{"kind", kind},
          {"radius", spec.radius},
          {"amplitude", spec.amplitude},
          {"period", spec.period},
          {"center", to_array(spec.center)},
          {"step_to", to_array(spec.step_to)},
          {"step_at", spec.step_at}};
}

void disturbances_from(const json& j, DisturbanceSet& set)
{
  if (!j.is_array())
    throw ConfigError("disturbances must be a list of typed entries");
  for (const auto& entry : j)
  {
    const std::string type = entry.at("type").get<std::string>();
    const bool enabled = entry.value("enabled", true);
    if (type == "wind")
    {
      set.wind_enabled = enabled;
      WindField& w = set.wind;
      if (entry.contains("source")) w.source = vec3_from(entry.at("source"));
      if (entry.contains("direction")) w.direction = vec3_from(entry.at("direction"));
      w.core_speed = entry.value("core_speed", w.core_speed);
      w.cone_half_angle = entry.value("cone_half_angle", w.cone_half_angle);
      w.decay_length = entry.value("decay_length", w.decay_length);
      w.onset_ramp = entry.value("onset_ramp", w.onset_ramp);
      w.drag_coeff = entry.value("drag_coeff", w.drag_coeff);
      w.cp_offset = entry.value("cp_offset", w.cp_offset);
    }
    else if (type == "walls")
    {
      set.walls_enabled = enabled;
      WallEffectConfig& w = set.walls;
      if (entry.contains("segments"))
      {
        w.segments.clear();
        for (const auto& seg : entry.at("segments"))
        {
          if (!seg.is_array() || seg.size() != 2)
            throw ConfigError("wall segment must be a pair of xy points");
          WallSegment s;
          s.a = vec2_from(seg[0]);
          s.b = vec2_from(seg[1]);
          w.segments.push_back(s);
        }
      }
      w.influence_distance = entry.value("influence_distance", w.influence_distance);
      w.contact_torque_std = entry.value("contact_torque_std", w.contact_torque_std);
      w.correlation_time = entry.value("correlation_time", w.correlation_time);
    }
    else if (type == "slung")
    {
      set.slung_enabled = enabled;
      SlungMassConfig& s = set.slung;
      if (entry.contains("attach_offset")) s.attach_offset = vec3_from(entry.at("attach_offset"));
      s.length = entry.value("length", s.length);
      s.mass = entry.value("mass", s.mass);
      s.pendulum_damping = entry.value("pendulum_damping", s.pendulum_damping);
      s.slosh_freq = entry.value("slosh_freq", s.slosh_freq);
      s.slosh_damping = entry.value("slosh_damping", s.slosh_damping);
      s.slosh_coupling = entry.value("slosh_coupling", s.slosh_coupling);
      s.gravity = entry.value("gravity", s.gravity);
    }
    else
    {
      throw ConfigError("unknown disturbance type: " + type);
    }
  }
}

json disturbances_to(const DisturbanceSet& set)
{
  json arr = json::array();
  {
    const WindField& w = set.wind;
    arr.push_back({{"type", "wind"},
                   {"enabled", set.wind_enabled},
                   {"source", to_array(w.source)},
                   {"direction", to_array(w.direction)},
                   {"core_speed", w.core_speed},
                   {"cone_half_angle", w.cone_half_angle},
                   {"decay_length", w.decay_length},
                   {"onset_ramp", w.onset_ramp},
                   {"drag_coeff", w.drag_coeff},
                   {"cp_offset", w.cp_offset}});
  }
  {
    const WallEffectConfig& w = set.walls;
    json segs = json::array();
    for (const auto& s : w.segments)
      segs.push_back(json::array({to_array2(s.a), to_array2(s.b)}));
    arr.push_back({{"type", "walls"},
                   {"enabled", set.walls_enabled},
                   {"segments", std::move(segs)},
                   {"influence_distance", w.influence_distance},
                   {"contact_torque_std", w.contact_torque_std},
                   {"correlation_time", w.correlation_time}});
  }
  {
    const SlungMassConfig& s = set.slung;
    arr.push_back({{"type", "slung"},
                   {"enabled", set.slung_enabled},
                   {"attach_offset", to_array(s.attach_offset)},
                   {"length", s.length},
                   {"mass", s.mass},
                   {"pendulum_damping", s.pendulum_damping},
                   {"slosh_freq", s.slosh_freq},
                   {"slosh_damping", s.slosh_damping},
                   {"slosh_coupling", s.slosh_coupling},
                   {"gravity", s.gravity}});
  }
  return arr;
}

}  // namespace

ScenarioConfig scenario_from_json(const std::string& text)
{
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (const json::exception& e)
  {
    throw ConfigError(std::string("bad scenario json: ") + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("scenario must be a json object");
  if (doc.value("schema_version", -1) != kScenarioSchemaVersion)
    throw ConfigError("scenario schema_version must be 1");

  // Unknown keys are rejected rather than ignored so a misspelled field
  // cannot silently fall back to its default.
  static const char* known[] = {"schema_version", "controller",   "trajectory",
                                "disturbances",   "plant",        "cascade",
                                "pid",            "yaw",          "dnac",
                                "mrac",           "dmrac",        "sensor_noise",
                                "duration",       "physics_dt",   "control_dt",
                                "warmup",         "metrics_window", "augmentation_gain",
                                "seed"};
  for (const auto& [key, value] : doc.items())
  {
    (void)value;
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known))
      throw ConfigError("unknown scenario field: " + key);
  }

  ScenarioConfig cfg;
  if (doc.contains("controller"))
    cfg.controller = scheme_from_name(doc.at("controller").get<std::string>());
  if (doc.contains("trajectory"))
    trajectory_from(doc.at("trajectory"), cfg.trajectory);
  if (doc.contains("disturbances"))
    disturbances_from(doc.at("disturbances"), cfg.disturbances);

  if (doc.contains("plant"))
  {
    const json& j = doc.at("plant");
    QuadParams& p = cfg.plant;
    p.mass = j.value("mass", p.mass);
    if (j.contains("inertia")) p.inertia = vec3_from(j.at("inertia"));
    p.arm_length = j.value("arm_length", p.arm_length);
    p.linear_drag = j.value("linear_drag", p.linear_drag);
    p.rotational_drag = j.value("rotational_drag", p.rotational_drag);
    p.max_thrust = j.value("max_thrust", p.max_thrust);
    p.max_torque = j.value("max_torque", p.max_torque);
    p.gravity = j.value("gravity", p.gravity);
  }
  if (doc.contains("cascade"))
  {
    const json& j = doc.at("cascade");
    if (j.contains("position")) pid_from(j.at("position"), cfg.cascade.position);
    if (j.contains("velocity")) pid_from(j.at("velocity"), cfg.cascade.velocity);
    cfg.cascade.max_tilt = j.value("max_tilt", cfg.cascade.max_tilt);
    cfg.cascade.ref_filter_tau = j.value("ref_filter_tau", cfg.cascade.ref_filter_tau);
  }
  if (doc.contains("pid"))
    pid_from(doc.at("pid"), cfg.attitude_pid);
  if (doc.contains("yaw"))
  {
    cfg.yaw_kp = doc.at("yaw").value("kp", cfg.yaw_kp);
    cfg.yaw_kd = doc.at("yaw").value("kd", cfg.yaw_kd);
  }
  if (doc.contains("dnac"))
  {
    const json& j = doc.at("dnac");
    DnacConfig& d = cfg.dnac;
    if (j.contains("k_gain")) d.k_gain = diag2_from(j.at("k_gain"));
    d.ks = j.value("ks", d.ks);
    if (j.contains("g_hat")) d.g_hat = diag2_from(j.at("g_hat"));
    d.gamma_w = j.value("gamma_w", d.gamma_w);
    d.buffer_size = j.value("buffer_size", d.buffer_size);
    d.minibatch_size = j.value("minibatch_size", d.minibatch_size);
    d.epochs = j.value("epochs", d.epochs);
    d.loss_beta = j.value("loss_beta", d.loss_beta);
    d.sgn_boundary = j.value("sgn_boundary", d.sgn_boundary);
    d.w_norm_limit = j.value("w_norm_limit", d.w_norm_limit);
    if (j.contains("adam")) adam_from(j.at("adam"), d.adam);
    if (j.contains("hidden_dims")) d.hidden_dims = j.at("hidden_dims").get<std::vector<int>>();
    d.feature_dim = j.value("feature_dim", d.feature_dim);
  }
  if (doc.contains("mrac"))
    mrac_from(doc.at("mrac"), cfg.mrac);
  if (doc.contains("dmrac"))
  {
    const json& j = doc.at("dmrac");
    DmracConfig& d = cfg.dmrac;
    mrac_from(j, d.mrac);
    if (j.contains("hidden_dims")) d.hidden_dims = j.at("hidden_dims").get<std::vector<int>>();
    d.feature_dim = j.value("feature_dim", d.feature_dim);
    d.buffer_size = j.value("buffer_size", d.buffer_size);
    d.minibatch_size = j.value("minibatch_size", d.minibatch_size);
    d.epochs = j.value("epochs", d.epochs);
    d.loss_beta = j.value("loss_beta", d.loss_beta);
    if (j.contains("adam")) adam_from(j.at("adam"), d.adam);
  }
  if (doc.contains("sensor_noise"))
  {
    const json& j = doc.at("sensor_noise");
    cfg.sensor_noise.enabled = j.value("enabled", cfg.sensor_noise.enabled);
    cfg.sensor_noise.attitude_std_deg = j.value("attitude_std_deg", cfg.sensor_noise.attitude_std_deg);
    cfg.sensor_noise.rate_std_deg_s = j.value("rate_std_deg_s", cfg.sensor_noise.rate_std_deg_s);
  }
  cfg.duration = doc.value("duration", cfg.duration);
  cfg.physics_dt = doc.value("physics_dt", cfg.physics_dt);
  cfg.control_dt = doc.value("control_dt", cfg.control_dt);
  cfg.warmup = doc.value("warmup", cfg.warmup);
  cfg.metrics_window = doc.value("metrics_window", cfg.metrics_window);
  cfg.augmentation_gain = doc.value("augmentation_gain", cfg.augmentation_gain);
  cfg.seed = doc.value("seed", cfg.seed);

  cfg.validate();
  return cfg;
}

std::string scenario_to_json(const ScenarioConfig& cfg)
{
  json doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["controller"] = scheme_name(cfg.controller);
  doc["trajectory"] = trajectory_to(cfg.trajectory);
  doc["disturbances"] = disturbances_to(cfg.disturbances);
  doc["plant"] = {{"mass", cfg.plant.mass},
                  {"inertia", to_array(cfg.plant.inertia)},
                  {"arm_length", cfg.plant.arm_length},
                  {"linear_drag", cfg.plant.linear_drag},
                  {"rotational_drag", cfg.plant.rotational_drag},
                  {"max_thrust", cfg.plant.max_thrust},
                  {"max_torque", cfg.plant.max_torque},
                  {"gravity", cfg.plant.gravity}};
  doc["cascade"] = {{"position", pid_to(cfg.cascade.position)},
                    {"velocity", pid_to(cfg.cascade.velocity)},
                    {"max_tilt", cfg.cascade.max_tilt},
                    {"ref_filter_tau", cfg.cascade.ref_filter_tau}};
  doc["pid"] = pid_to(cfg.attitude_pid);
  doc["yaw"] = {{"kp", cfg.yaw_kp}, {"kd", cfg.yaw_kd}};
  doc["dnac"] = {{"k_gain", to_array2(cfg.dnac.k_gain)},
                 {"ks", cfg.dnac.ks},
                 {"g_hat", to_array2(cfg.dnac.g_hat)},
                 {"gamma_w", cfg.dnac.gamma_w},
                 {"buffer_size", cfg.dnac.buffer_size},
                 {"minibatch_size", cfg.dnac.minibatch_size},
                 {"epochs", cfg.dnac.epochs},
                 {"loss_beta", cfg.dnac.loss_beta},
                 {"sgn_boundary", cfg.dnac.sgn_boundary},
                 {"w_norm_limit", cfg.dnac.w_norm_limit},
                 {"adam", adam_to(cfg.dnac.adam)},
                 {"hidden_dims", cfg.dnac.hidden_dims},
                 {"feature_dim", cfg.dnac.feature_dim}};
  doc["mrac"] = mrac_to(cfg.mrac);
  json dmrac = mrac_to(cfg.dmrac.mrac);
  dmrac["hidden_dims"] = cfg.dmrac.hidden_dims;
  dmrac["feature_dim"] = cfg.dmrac.feature_dim;
  dmrac["buffer_size"] = cfg.dmrac.buffer_size;
  dmrac["minibatch_size"] = cfg.dmrac.minibatch_size;
  dmrac["epochs"] = cfg.dmrac.epochs;
  dmrac["loss_beta"] = cfg.dmrac.loss_beta;
  dmrac["adam"] = adam_to(cfg.dmrac.adam);
  doc["dmrac"] = std::move(dmrac);
  doc["sensor_noise"] = {{"enabled", cfg.sensor_noise.enabled},
                         {"attitude_std_deg", cfg.sensor_noise.attitude_std_deg},
                         {"rate_std_deg_s", cfg.sensor_noise.rate_std_deg_s}};
  doc["duration"] = cfg.duration;
  doc["physics_dt"] = cfg.physics_dt;
  doc["control_dt"] = cfg.control_dt;
  doc["warmup"] = cfg.warmup;
  doc["metrics_window"] = cfg.metrics_window;
  doc["augmentation_gain"] = cfg.augmentation_gain;
  doc["seed"] = cfg.seed;
  return doc.dump(2);
}

ScenarioConfig load_scenario_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace dnaclab
