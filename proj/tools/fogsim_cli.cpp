// Command-line front end: selects a case-study scenario (or a custom config
// file), runs the sweeps, and writes curve CSVs plus a summary.json per
// sweep. Outputs are deterministic for a given seed and are written via
// temp-file rename.
//
//   fogsim --scenario cs1 --out results
//   fogsim --scenario cs2 --preset "Proactive H" --replications 10
//   fogsim --scenario custom --config my.cfg --seed 7
//
// Exit codes: 0 ok, 2 usage error, 3 configuration error, 4 runtime error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fogsim/fogsim.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string slug(const std::string& name) {
  std::string s;
  for (char c : name)
    s += c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

const char* axis_name(fogsim::SweepAxis axis) {
  switch (axis) {
    case fogsim::SweepAxis::ArrivalDensity: return "arrival_density";
    case fogsim::SweepAxis::CacheFraction: return "cache_fraction";
    case fogsim::SweepAxis::Congestion: return "congestion";
  }
  return "?";
}

ordered_json point_json(const fogsim::SweepPoint& p, std::uint32_t replications) {
  ordered_json j;
  j["x"] = p.x;
  j["ok"] = p.ok;
  if (!p.ok) {
    j["error"] = p.error;
    return j;
  }
  j["replications"] = replications;
  j["ie_mean"] = p.ie_mean;
  j["ci_low"] = p.ci_low;
  j["ci_high"] = p.ci_high;
  const fogsim::RunSummary& s = p.aggregate;
  j["total_tasks"] = s.total_tasks;
  j["met_deadline_count"] = s.met_deadline_count;
  j["immersive_experience"] = s.immersive_experience;
  j["mean_delay_ms"] = s.mean_delay_ms;
  j["median_delay_ms"] = s.median_delay_ms;
  j["p95_delay_ms"] = s.p95_delay_ms;
  j["cache_hit_fraction"] = s.cache_hit_fraction;
  j["local_count"] = s.local_count;
  j["fog_count"] = s.fog_count;
  j["cloud_count"] = s.cloud_count;
  return j;
}

void write_text_atomic(const fs::path& destination, const std::string& text) {
  if (destination.has_parent_path())
    fs::create_directories(destination.parent_path());
  const fs::path tmp = destination.string() + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << text;
  }
  fs::rename(tmp, destination);
}

struct Options {
  std::string scenario;
  std::string config_path;
  std::vector<std::string> preset_filter;
  std::uint64_t seed = 1;
  std::uint32_t replications = 10;
  double horizon_ms = 60000.0;
  double lambda = fogsim::kDefaultArrivalDensity;
  bool lambda_set = false;
  bool horizon_set = false;
  std::string out_dir = "out";
  std::string format = "both";  // csv | json | both
  std::uint32_t jobs = 1;
};

int run_presets(const Options& opt) {
  const std::vector<std::string>& all =
      opt.scenario == "cs1" ? fogsim::cs1_preset_names()
      : opt.scenario == "cs2" ? fogsim::cs2_preset_names()
                              : fogsim::cs3_preset_names();
  std::vector<std::string> names = opt.preset_filter.empty() ? all : opt.preset_filter;

  const bool write_csv = opt.format == "csv" || opt.format == "both";
  const bool write_json = opt.format == "json" || opt.format == "both";
  const fs::path dir = fs::path(opt.out_dir) / opt.scenario;

  ordered_json summary;
  summary["scenario"] = opt.scenario;
  summary["seed"] = opt.seed;
  summary["replications"] = opt.replications;
  summary["horizon_ms"] = opt.horizon_ms;
  summary["curves"] = ordered_json::array();

  for (const std::string& name : names) {
    fogsim::ScenarioPreset preset = fogsim::preset(opt.scenario, name);
    preset.config.horizon_ms = opt.horizon_ms;
    if (opt.lambda_set) preset.config.arrival_density = opt.lambda;

    const std::vector<fogsim::SweepPoint> points =
        fogsim::run_sweep(preset, opt.replications, opt.seed, opt.jobs);

    std::vector<fogsim::CurvePoint> curve;
    for (const fogsim::SweepPoint& p : points)
      if (p.ok) curve.push_back({p.x, p.ie_mean, p.ci_low, p.ci_high});

    const std::string file = slug(name) + ".csv";
    if (write_csv)
      fogsim::emit_curve(curve, dir / file, opt.replications > 1);

    ordered_json jc;
    jc["preset"] = name;
    jc["file"] = file;
    jc["axis"] = axis_name(preset.axis);
    jc["points"] = ordered_json::array();
    for (const fogsim::SweepPoint& p : points)
      jc["points"].push_back(point_json(p, opt.replications));
    summary["curves"].push_back(jc);

    std::size_t failures = points.size() - curve.size();
    if (curve.empty()) {
      std::printf("%s/%s  all %zu points failed: %s\n", opt.scenario.c_str(),
                  file.c_str(), points.size(), points.front().error.c_str());
    } else {
      std::printf("%s/%s  %zu points  ie %.4f -> %.4f%s\n", opt.scenario.c_str(),
                  file.c_str(), points.size(), curve.front().ie_mean,
                  curve.back().ie_mean,
                  failures ? "  (some points failed; see summary.json)" : "");
    }
  }

  if (write_json) write_text_atomic(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_custom(const Options& opt) {
  std::ifstream in(opt.config_path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open config file %s\n",
                 opt.config_path.c_str());
    return 3;
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());

  fogsim::SimConfig config = fogsim::parse_config(text);
  if (opt.horizon_set) config.horizon_ms = opt.horizon_ms;
  if (opt.lambda_set) config.arrival_density = opt.lambda;
  config.validate();

  fogsim::ScenarioPreset preset;
  preset.name = "custom";
  preset.config = config;
  preset.axis = fogsim::SweepAxis::ArrivalDensity;
  preset.axis_values = {config.arrival_density};

  const std::vector<fogsim::SweepPoint> points =
      fogsim::run_sweep(preset, opt.replications, opt.seed, opt.jobs);
  const fogsim::SweepPoint& p = points.front();
  if (!p.ok) throw std::runtime_error("run failed: " + p.error);

  const fs::path dir = fs::path(opt.out_dir) / "custom";
  const bool write_csv = opt.format == "csv" || opt.format == "both";
  const bool write_json = opt.format == "json" || opt.format == "both";
  if (write_csv) {
    std::vector<fogsim::CurvePoint> curve = {{p.x, p.ie_mean, p.ci_low, p.ci_high}};
    fogsim::emit_curve(curve, dir / "run.csv", opt.replications > 1);
  }
  if (write_json) {
    ordered_json summary;
    summary["scenario"] = "custom";
    summary["seed"] = opt.seed;
    summary["replications"] = opt.replications;
    summary["config"] = fogsim::serialize_config(config);
    summary["point"] = point_json(p, opt.replications);
    write_text_atomic(dir / "summary.json", summary.dump(2) + "\n");
  }
  std::printf("custom/run.csv  ie %.4f  (ci %.4f..%.4f, %u replications)\n",
              p.ie_mean, p.ci_low, p.ci_high, opt.replications);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"fogsim: task-offloading simulator for device/fog/cloud tiers"};
  app.add_option("--scenario", opt.scenario, "cs1 | cs2 | cs3 | custom")
      ->required()
      ->check(CLI::IsMember({"cs1", "cs2", "cs3", "custom"}));
  app.add_option("--config", opt.config_path,
                 "key = value config file (custom scenario)");
  app.add_option("--preset", opt.preset_filter,
                 "run only these presets (repeatable)");
  app.add_option("--seed", opt.seed, "base seed (replication r uses seed + r)");
  app.add_option("--replications", opt.replications, "independent runs per point")
      ->check(CLI::PositiveNumber);
  auto* horizon = app.add_option("--horizon-ms", opt.horizon_ms,
                                 "admission window in ms (default 60000)")
                      ->check(CLI::PositiveNumber);
  auto* lambda = app.add_option("--lambda", opt.lambda,
                                "device arrival density in shots/ms")
                     ->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out_dir, "output directory (default: out)");
  app.add_option("--format", opt.format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--jobs", opt.jobs, "parallel runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.horizon_set = horizon->count() > 0;
  opt.lambda_set = lambda->count() > 0;

  if (opt.scenario == "custom" && opt.config_path.empty()) {
    std::fprintf(stderr, "error: --scenario custom requires --config\n");
    return 2;
  }

  try {
    if (opt.scenario == "custom") return run_custom(opt);
    return run_presets(opt);
  } catch (const fogsim::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
