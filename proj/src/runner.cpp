#include "dnaclab/runner.hpp"

#include <cmath>
#include <optional>
#include <random>

#include "dnaclab/augment.hpp"
#include "dnaclab/errors.hpp"
#include "dnaclab/log.hpp"

namespace dnaclab
{

namespace
{
constexpr double kDegToRad = M_PI / 180.0;

// Independent seed streams for the stochastic pieces of one scenario.
constexpr std::uint32_t kWallSeedOffset = 101;
constexpr std::uint32_t kSensorSeedOffset = 202;
}  // namespace

RunResult run_scenario(const ScenarioConfig& config)
{
  config.validate();
  const int substeps = config.substeps();
  const int control_steps = static_cast<int>(std::lround(config.duration / config.control_dt));
  if (control_steps < 1)
    throw ConfigError("duration shorter than one control step");

  RigidBodyState state;
  state.position = position_ref(config.trajectory, 0.0).position;

  Cascade cascade(config.cascade, config.plant);
  PidPair attitude_pid(config.attitude_pid);

  std::optional<DnacController> dnac;
  std::optional<MracController> mrac;
  std::optional<DmracController> dmrac;
  switch (config.controller)
  {
    case ControllerScheme::PidDnac: dnac.emplace(config.dnac, config.seed); break;
    case ControllerScheme::PidMrac: mrac.emplace(config.mrac); break;
    case ControllerScheme::PidDmrac: dmrac.emplace(config.dmrac, config.seed); break;
    case ControllerScheme::Pid: break;
  }

  std::optional<WallEffect> walls;
  if (config.disturbances.walls_enabled)
    walls.emplace(config.disturbances.walls, config.seed + kWallSeedOffset);
  std::optional<SlungMass> slung;
  if (config.disturbances.slung_enabled)
    slung.emplace(config.disturbances.slung);

  std::mt19937 sensor_rng(config.seed + kSensorSeedOffset);
  std::normal_distribution<double> gauss(0.0, 1.0);

  RunResult result;
  result.trace.reserve(control_steps);
  bool severed = false;

  for (int k = 0; k < control_steps; ++k)
  {
    const double t = k * config.control_dt;

    RigidBodyState meas = state;
    if (config.sensor_noise.enabled)
    {
      const double att_std = config.sensor_noise.attitude_std_deg * kDegToRad;
      const double rate_std = config.sensor_noise.rate_std_deg_s * kDegToRad;
      for (int i = 0; i < 3; ++i)
        meas.attitude(i) += att_std * gauss(sensor_rng);
      for (int i = 0; i < 3; ++i)
        meas.body_rates(i) += rate_std * gauss(sensor_rng);
    }

    const TrajectorySample ref = position_ref(config.trajectory, t);
    // Acceleration feedforward from a centered difference of the reference
    // velocity (forward at t = 0); the references are smooth so this is
    // accurate to O(dt^2).
    const double h = config.control_dt;
    const Eigen::Vector3d acc_ff =
        t < h ? Eigen::Vector3d((position_ref(config.trajectory, t + h).velocity - ref.velocity) / h)
              : Eigen::Vector3d((position_ref(config.trajectory, t + h).velocity -
                                 position_ref(config.trajectory, t - h).velocity) /
                                (2.0 * h));
    const Cascade::Output cas =
        cascade.step(meas, ref.position, ref.velocity, acc_ff, config.control_dt);

    const Eigen::Vector2d x = meas.attitude.head<2>();
    const Eigen::Vector2d x_d = cas.attitude_ref;
    const Eigen::Vector2d e = x - x_d;
    const Eigen::Vector2d euler_rate = euler_rates(meas.attitude, meas.body_rates).head<2>();

    const Eigen::Vector2d base =
        attitude_pid.step(x_d - x, cas.attitude_ref_rate - euler_rate, config.control_dt);

    Eigen::Vector2d added = Eigen::Vector2d::Zero();
    Eigen::Vector2d f_hat = Eigen::Vector2d::Zero();
    int fault_event = 0;
    if (!severed)
    {
      try
      {
        if (dnac)
        {
          f_hat = dnac->estimate_uncertainty(x);
          added = config.augmentation_gain *
                  dnac->compute_control(e, cas.attitude_ref_rate, x);
        }
        else if (mrac)
        {
          added = config.augmentation_gain * mrac->compute_control(x);
        }
        else if (dmrac)
        {
          f_hat = dmrac->net().evaluate(x);
          added = config.augmentation_gain * dmrac->compute_control(x);
        }
        if (!added.allFinite())
          throw InputError("non-finite added torque");
      }
      catch (const std::runtime_error& err)
      {
        log::warn(std::string("adaptive controller severed: ") + err.what());
        added.setZero();
        severed = true;
        fault_event = 1;
      }
    }

    const double yaw_torque =
        -config.yaw_kp * meas.attitude(2) - config.yaw_kd * meas.body_rates(2);
    const AugmentResult act =
        augment_and_apply(base, added, yaw_torque, cas.thrust, config.plant);

    int train_event = 0;
    double w_norm = 0.0;
    if (!severed)
    {
      try
      {
        if (dnac)
        {
          dnac->update_outer_weights(e, x, config.control_dt);
          ReplaySample sample;
          sample.x_dot = euler_rate;
          sample.x = x;
          sample.gu = config.dnac.g_hat.cwiseProduct(act.total_attitude_torque);
          if (dnac->record_sample(sample))
          {
            const BatchTrainResult tr = dnac->train_inner();
            train_event = 1;
            if (!tr.ok)
              fault_event = 1;
          }
          w_norm = dnac->outer_weight_norm();
          if (!dnac->healthy())
          {
            log::warn("adaptive weights left the safe envelope; severing");
            severed = true;
            fault_event = 1;
          }
        }
        else if (mrac)
        {
          mrac->update_weights(x, config.control_dt);
          mrac->advance_reference(x_d, config.control_dt);
          w_norm = mrac->weight_norm();
          if (!mrac->healthy())
          {
            severed = true;
            fault_event = 1;
          }
        }
        else if (dmrac)
        {
          dmrac->update_weights(x, config.control_dt);
          dmrac->advance_reference(x_d, config.control_dt);
          if (dmrac->record_sample(euler_rate, x,
                                   config.dmrac.mrac.g_hat * act.total_attitude_torque))
          {
            const BatchTrainResult tr = dmrac->train_inner();
            train_event = 1;
            if (!tr.ok)
              fault_event = 1;
          }
          w_norm = dmrac->weight_norm();
          if (!dmrac->healthy())
          {
            severed = true;
            fault_event = 1;
          }
        }
      }
      catch (const std::runtime_error& err)
      {
        log::warn(std::string("adaptive update severed: ") + err.what());
        severed = true;
        fault_event = 1;
      }
    }

    TraceRow row;
    row.t = t;
    row.position = state.position;
    row.velocity = state.velocity;
    row.attitude = state.attitude;
    row.body_rates = state.body_rates;
    row.position_ref = ref.position;
    row.velocity_ref = ref.velocity;
    row.attitude_ref = cas.attitude_ref;
    row.attitude_ref_rate = cas.attitude_ref_rate;
    row.attitude_error = state.attitude.head<2>() - cas.attitude_ref;
    row.base_torque = base;
    row.added_torque = added;
    row.total_torque = act.total_attitude_torque;
    row.yaw_torque = act.command.torque(2);
    row.thrust = act.command.thrust;
    row.f_hat = f_hat;
    row.w_norm = w_norm;
    row.train_event = train_event;
    row.fault_event = fault_event;
    result.trace.push_back(row);

    try
    {
      for (int i = 0; i < substeps; ++i)
      {
        const double tp = t + i * config.physics_dt;
        Wrench total;
        if (config.disturbances.wind_enabled)
        {
          const Wrench w = wind_wrench(config.disturbances.wind, state, tp);
          if (w.force.norm() > 10.0 || w.torque.norm() > 0.5)
            ++result.disturbance_bound_violations;
          total = total + w;
        }
        if (walls)
        {
          Wrench w;
          w.torque = walls->torque(state, config.physics_dt);
          if (w.torque.norm() > 0.5)
            ++result.disturbance_bound_violations;
          total = total + w;
        }
        if (slung)
        {
          const Wrench w = slung->wrench(state, config.physics_dt);
          if (w.force.norm() > 10.0 || w.torque.norm() > 0.5)
            ++result.disturbance_bound_violations;
          total = total + w;
        }
        state = rk4_step(state, act.command, total, config.plant, config.physics_dt);
      }
    }
    catch (const CrashFault& fault)
    {
      result.report.crashed = true;
      result.report.crash_time_s = t;
      log::error(std::string("crash fault: ") + fault.what());
      break;
    }
  }

  MetricsReport metrics;
  try
  {
    metrics = compute_metrics(result.trace, config.warmup, config.metrics_window,
                              config.trajectory.kind == TrajectorySpec::Kind::Circle ||
                                      config.trajectory.kind == TrajectorySpec::Kind::Rose
                                  ? config.trajectory.period
                                  : 0.0);
  }
  catch (const ConfigError&)
  {
    // Crash before the warmup boundary: keep the zeroed metrics, flags only.
  }
  metrics.crashed = result.report.crashed;
  metrics.crash_time_s = result.report.crash_time_s;
  if (dnac)
  {
    metrics.adam_steps = dnac->train_stats().adam_steps;
    metrics.sample_touches = dnac->train_stats().sample_touches;
  }
  else if (dmrac)
  {
    metrics.adam_steps = dmrac->train_stats().adam_steps;
    metrics.sample_touches = dmrac->train_stats().sample_touches;
  }
  result.report = metrics;
  return result;
}

}  // namespace dnaclab
