#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dnaclab/errors.hpp"
#include "dnaclab/log.hpp"
#include "dnaclab/metrics.hpp"
#include "dnaclab/runner.hpp"
#include "dnaclab/scenario.hpp"

namespace fs = std::filesystem;
using namespace dnaclab;

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitCrash = 2;
constexpr int kExitConfig = 3;

void write_file(const fs::path& path, const std::string& content)
{
  std::ofstream out(path);
  if (!out)
    throw ConfigError("cannot write " + path.string());
  out << content;
}

std::string read_file(const fs::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// "0..4" or "0,2,5"
std::vector<std::uint32_t> parse_seeds(const std::string& text)
{
  std::vector<std::uint32_t> seeds;
  const auto dots = text.find("..");
  if (dots != std::string::npos)
  {
    const long lo = std::stol(text.substr(0, dots));
    const long hi = std::stol(text.substr(dots + 2));
    if (lo < 0 || hi < lo)
      throw ConfigError("bad seed range: " + text);
    for (long s = lo; s <= hi; ++s)
      seeds.push_back(static_cast<std::uint32_t>(s));
    return seeds;
  }
  std::size_t pos = 0;
  while (pos < text.size())
  {
    const auto comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!tok.empty())
      seeds.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  if (seeds.empty())
    throw ConfigError("no seeds given");
  return seeds;
}

void print_summary(const std::string& label, const MetricsReport& r)
{
  std::printf("%-24s attitude %7.3f deg  position %7.2f cm  velocity %7.2f cm/s%s\n",
              label.c_str(), r.attitude_l2_deg, r.position_l2_cm, r.velocity_l2_cm_s,
              r.crashed ? "  [CRASHED]" : "");
}

int cmd_run(const std::string& config_path, int seed_override, const std::string& out_dir)
{
  ScenarioConfig config = load_scenario_file(config_path);
  if (seed_override >= 0)
    config.seed = static_cast<std::uint32_t>(seed_override);

  const RunResult result = run_scenario(config);
  print_summary(scheme_name(config.controller), result.report);

  if (!out_dir.empty())
  {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "scenario.json", scenario_to_json(config));
    write_file(fs::path(out_dir) / "trace.csv", trace_to_csv(result.trace));
    write_file(fs::path(out_dir) / "metrics.json", metrics_to_json(result.report));

    // Plot data: moving RMS of the attitude error with the std band.
    std::string plot = "t,moving_rms_deg,std_band_deg\n";
    const double dt = result.trace.size() > 1 ? result.trace[1].t - result.trace[0].t : 0.0;
    const double band =
        std::sqrt(result.report.std_roll_deg * result.report.std_roll_deg +
                  result.report.std_pitch_deg * result.report.std_pitch_deg);
    char buf[96];
    for (std::size_t i = 0; i < result.report.moving_rms_deg.size(); ++i)
    {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n",
                    config.warmup + (i + 1) * dt, result.report.moving_rms_deg[i], band);
      plot += buf;
    }
    write_file(fs::path(out_dir) / "moving_rms.csv", plot);
  }
  return result.report.crashed ? kExitCrash : kExitOk;
}

int cmd_compare(const std::vector<std::string>& report_paths, const std::string& csv_out)
{
  std::vector<std::string> labels;
  std::vector<MetricsReport> reports;
  for (const auto& path : report_paths)
  {
    labels.push_back(fs::path(path).stem().string());
    reports.push_back(metrics_from_json(read_file(path)));
  }
  std::cout << compare_table(labels, reports);
  if (!csv_out.empty())
    write_file(csv_out, compare_csv(labels, reports));
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& controllers_csv,
              const std::string& seeds_text, const std::string& out_dir)
{
  const ScenarioConfig base = load_scenario_file(config_path);
  std::vector<std::string> controllers;
  {
    std::size_t pos = 0;
    while (pos <= controllers_csv.size())
    {
      const auto comma = controllers_csv.find(',', pos);
      const std::string tok =
          controllers_csv.substr(pos, comma == std::string::npos ? comma : comma - pos);
      if (!tok.empty())
        controllers.push_back(tok);
      if (comma == std::string::npos)
        break;
      pos = comma + 1;
    }
  }
  if (controllers.empty())
    throw ConfigError("no controllers given");
  const std::vector<std::uint32_t> seeds = parse_seeds(seeds_text);

  if (!out_dir.empty())
    fs::create_directories(out_dir);

  bool any_crash = false;
  std::vector<std::string> labels;
  std::vector<MetricsReport> means;
  for (const auto& name : controllers)
  {
    ScenarioConfig config = base;
    config.controller = scheme_from_name(name);
    MetricsReport mean;
    for (const auto seed : seeds)
    {
      config.seed = seed;
      const RunResult result = run_scenario(config);
      any_crash = any_crash || result.report.crashed;
      char label[64];
      std::snprintf(label, sizeof(label), "%s seed %u", scheme_name(config.controller).c_str(),
                    seed);
      print_summary(label, result.report);
      if (!out_dir.empty())
      {
        char fname[96];
        std::snprintf(fname, sizeof(fname), "metrics_%s_seed%u.json",
                      scheme_name(config.controller).c_str(), seed);
        write_file(fs::path(out_dir) / fname, metrics_to_json(result.report));
      }
      mean.attitude_l2_deg += result.report.attitude_l2_deg;
      mean.position_l2_cm += result.report.position_l2_cm;
      mean.velocity_l2_cm_s += result.report.velocity_l2_cm_s;
      mean.std_roll_deg += result.report.std_roll_deg;
      mean.std_pitch_deg += result.report.std_pitch_deg;
    }
    const double inv = 1.0 / static_cast<double>(seeds.size());
    mean.attitude_l2_deg *= inv;
    mean.position_l2_cm *= inv;
    mean.velocity_l2_cm_s *= inv;
    mean.std_roll_deg *= inv;
    mean.std_pitch_deg *= inv;
    labels.push_back(scheme_name(config.controller));
    means.push_back(mean);
  }
  if (means.size() >= 2)
  {
    std::cout << "\nseed-averaged comparison\n";
    std::cout << compare_table(labels, means);
  }
  return any_crash ? kExitCrash : kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Quadrotor attitude-control simulation lab"};
  app.require_subcommand(1);

  std::string config_path, out_dir, csv_out;
  int seed_override = -1;
  std::vector<std::string> report_paths;
  std::string controllers_csv = "pid,mrac,dmrac,dnac";
  std::string seeds_text = "0..4";

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--config", config_path, "Scenario json file")->required();
  run->add_option("--seed", seed_override, "Override the scenario seed");
  run->add_option("--out", out_dir, "Directory for trace.csv / metrics.json");

  auto* compare = app.add_subcommand("compare", "Compare saved metric reports");
  compare->add_option("--reports", report_paths, "metrics.json files")->required()->expected(-2);
  compare->add_option("--csv", csv_out, "Also write the comparison as csv");

  auto* sweep = app.add_subcommand("sweep", "Run a controller x seed grid");
  sweep->add_option("--config", config_path, "Scenario json file")->required();
  sweep->add_option("--controllers", controllers_csv, "Comma-separated scheme list");
  sweep->add_option("--seeds", seeds_text, "Seed list: 0..9 or 0,3,7");
  sweep->add_option("--out", out_dir, "Directory for per-run metrics");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try
  {
    if (run->parsed())
      return cmd_run(config_path, seed_override, out_dir);
    if (compare->parsed())
      return cmd_compare(report_paths, csv_out);
    return cmd_sweep(config_path, controllers_csv, seeds_text, out_dir);
  }
  catch (const ConfigError& e)
  {
    log::error(e.what());
    return kExitConfig;
  }
  catch (const std::exception& e)
  {
    log::error(e.what());
    return kExitCrash;
  }
}
