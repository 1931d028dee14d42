#pragma once
// Simulation configuration, the three case-study presets, and the sweep
// driver. A sweep point is estimated from independent seeded replications
// and reported as mean immersive experience with a normal-approximation 95%
// confidence interval. Replication seeds depend only on (base seed, rep
// index), so sweeps over cache size or congestion reuse the exact same
// workloads point to point (common random numbers).

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fogsim/engine.hpp"
#include "fogsim/metrics.hpp"
#include "fogsim/policy.hpp"
#include "fogsim/workload.hpp"

namespace fogsim {

// Default device arrival density (shots per ms), pinned at the load study's
// quoted operating point. The load sweep overrides it per point; the
// congestion study runs lighter so the wireless tier is not already the
// binding constraint at zero congestion.
inline constexpr double kDefaultArrivalDensity = 0.42;
inline constexpr double kCongestionStudyArrivalDensity = 0.02;

// Support ratio of the deadline law. Deadlines are render-latency budgets:
// they cluster tightly around the 10 ms mean (support roughly 6..17 ms)
// rather than spanning the decades the work distributions do.
inline constexpr double kDeadlineSupportRatio = 3.0;

// Support ratio of the tasks-per-device law; a device issues at most a few
// dozen requests while it dwells, not thousands.
inline constexpr double kTaskCountSupportRatio = 100.0;

struct SimConfig {
  // topology
  std::uint32_t fog_count = 4;
  double backhaul_mbps = 512.0;
  double wireless_mbps = 1024.0;
  double device_cpu_ghz = 13.6;     // 4 x 3.4 GHz
  double fog_cpu_ghz = 1740.8;      // 128 x 4 x 3.4 GHz
  double cloud_cpu_ghz = 13926.4;   // 1024 x 4 x 3.4 GHz

  // workload
  double horizon_ms = 60000.0;      // admission window (desk-scale default)
  double dwell_ms = 4.0;
  double arrival_density = kDefaultArrivalDensity;  // shots per ms
  double task_mean = 4.0;
  double alpha = 0.8;               // popularity skew and task-count exponent
  double compute_mean_gcycles = 100.0;
  double compute_exponent = 0.48;
  double delivery_mean_mbit = 100.0;
  double delivery_exponent = 0.48;
  double deadline_mean_ms = 10.0;
  double deadline_exponent = 0.48;
  std::uint32_t catalog_size = 100000;
  double pareto_ratio = 1e9;        // support ratio of the work distributions

  // policy
  double cache_fraction = 0.0;      // S
  double congestion = 0.0;          // x
  double p_local = 1.0 / 3.0;
  double p_fog = 1.0 / 3.0;
  double p_cloud = 1.0 / 3.0;

  Topology topology() const {
    Topology t;
    t.fog_count = fog_count;
    t.device_cpu_gcps = device_cpu_ghz;
    t.fog_cpu_gcps = fog_cpu_ghz;
    t.cloud_cpu_gcps = cloud_cpu_ghz;
    t.wireless_total_mbps = wireless_mbps;
    t.backhaul_total_mbps = backhaul_mbps;
    return t;
  }

  WorkloadParams workload_params() const {
    WorkloadParams w;
    w.arrival_density = arrival_density;
    w.horizon_ms = horizon_ms;
    w.dwell_ms = dwell_ms;
    w.task_count_spec = {task_mean, alpha, kTaskCountSupportRatio};
    w.compute_spec = {compute_mean_gcycles, compute_exponent, pareto_ratio};
    w.delivery_spec = {delivery_mean_mbit, delivery_exponent, pareto_ratio};
    w.deadline_spec = {deadline_mean_ms, deadline_exponent, kDeadlineSupportRatio};
    return w;
  }

  PlacementSplit placement_split() const { return {p_local, p_fog, p_cloud}; }

  void validate() const {
    topology().validate();
    workload_params().validate();
    placement_split().validate();
    if (!(alpha > 0.0 && alpha <= 2.0))
      throw std::invalid_argument("SimConfig: alpha must lie in (0, 2]");
    if (catalog_size == 0)
      throw std::invalid_argument("SimConfig: catalog_n must be >= 1");
    if (!(pareto_ratio >= 1.0))
      throw std::invalid_argument("SimConfig: pareto_ratio must be >= 1");
    if (!(cache_fraction >= 0.0 && cache_fraction <= 1.0))
      throw std::invalid_argument("SimConfig: cache_s must lie in [0, 1]");
    if (!(congestion >= 0.0 && congestion < 1.0))
      throw std::invalid_argument("SimConfig: congestion must lie in [0, 1)");
  }
};

struct WorkloadBundle {
  Catalog catalog;
  std::vector<DeviceShot> shots;
  std::vector<TaskRequest> tasks;  // placements assigned
};

// Builds the full workload of one run from a single sequential stream:
// catalog, then shots, then per-shot tasks with their placement draws.
inline WorkloadBundle build_workload(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  const WorkloadParams params = config.workload_params();
  const PlacementSplit split = config.placement_split();

  RngStream rng(seed);
  WorkloadBundle bundle;
  bundle.catalog = build_catalog(config.catalog_size, config.alpha,
                                 params.compute_spec, params.delivery_spec, rng);
  bundle.shots = generate_shots(params, config.fog_count, rng);
  for (const DeviceShot& shot : bundle.shots) {
    std::vector<TaskRequest> tasks = generate_tasks(
        shot, bundle.catalog, params, rng, bundle.tasks.size());
    for (TaskRequest& t : tasks) {
      t.placement = assign_placement(split, rng);
      bundle.tasks.push_back(t);
    }
  }
  return bundle;
}

inline std::vector<TaskRecord> run_records(const SimConfig& config,
                                           std::uint64_t seed) {
  const WorkloadBundle bundle = build_workload(config, seed);
  const CacheState cache = build_cache(bundle.catalog, config.cache_fraction);
  const Topology topology = apply_congestion(config.topology(), config.congestion);
  return run(topology, cache, bundle.tasks);
}

inline RunSummary run_single(const SimConfig& config, std::uint64_t seed) {
  const std::vector<TaskRecord> records = run_records(config, seed);
  return summarize(records);
}

enum class SweepAxis { ArrivalDensity, CacheFraction, Congestion };

struct ScenarioPreset {
  std::string name;
  SimConfig config;
  SweepAxis axis = SweepAxis::ArrivalDensity;
  std::vector<double> axis_values;
  bool axis_pinned = false;  // reactive curves keep S = 0 across the sweep
};

inline SimConfig with_axis_value(SimConfig config, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::ArrivalDensity: config.arrival_density = value; break;
    case SweepAxis::CacheFraction: config.cache_fraction = value; break;
    case SweepAxis::Congestion: config.congestion = value; break;
  }
  return config;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(n - 1);
  return v;
}

inline const std::vector<std::string>& cs1_preset_names() {
  static const std::vector<std::string> names = {
      "VR I", "VR II", "Fog I", "Fog II", "Cloud I", "Cloud II"};
  return names;
}

inline const std::vector<std::string>& cs2_preset_names() {
  static const std::vector<std::string> names = {
      "Reactive L", "Reactive M", "Reactive H",
      "Proactive L", "Proactive M", "Proactive H"};
  return names;
}

inline const std::vector<std::string>& cs3_preset_names() {
  static const std::vector<std::string> names = {
      "VR R", "VR P", "Fog R", "Fog P", "Cloud R", "Cloud P"};
  return names;
}

// Load sweep across device/fog/cloud-centric capacity mixes; no caching.
inline ScenarioPreset preset_cs1(std::string_view name) {
  ScenarioPreset p;
  p.name = std::string(name);
  SimConfig& c = p.config;
  c.cache_fraction = 0.0;
  auto split = [&](double l, double f, double cl) {
    c.p_local = l; c.p_fog = f; c.p_cloud = cl;
  };
  if (name == "VR I") {
    c.device_cpu_ghz = 2 * 3.2;
    split(0.37, 0.33, 0.30);
  } else if (name == "VR II") {
    c.device_cpu_ghz = 1 * 3.2;
    split(0.59, 0.25, 0.16);
  } else if (name == "Fog I") {
    c.fog_cpu_ghz = 256 * 4 * 3.4;
    c.wireless_mbps = 1024.0;
    split(0.30, 0.37, 0.33);
  } else if (name == "Fog II") {
    c.fog_cpu_ghz = 16 * 4 * 3.4;
    c.wireless_mbps = 256.0;
    split(0.16, 0.59, 0.25);
  } else if (name == "Cloud I") {
    c.cloud_cpu_ghz = 1024 * 4 * 3.4;
    c.backhaul_mbps = 512.0;
    split(0.30, 0.33, 0.37);
  } else if (name == "Cloud II") {
    c.cloud_cpu_ghz = 128 * 4 * 3.4;
    c.backhaul_mbps = 16.0;
    split(0.16, 0.25, 0.59);
  } else {
    throw std::invalid_argument("preset_cs1: unknown preset '" + p.name + "'");
  }
  p.axis = SweepAxis::ArrivalDensity;
  p.axis_values = linspace(0.02, 0.50, 13);
  return p;
}

// Proactivity sweep under low/medium/high task homogeneity; the placement
// mix is fixed and the backhaul is thin.
inline ScenarioPreset preset_cs2(std::string_view name) {
  ScenarioPreset p;
  p.name = std::string(name);
  SimConfig& c = p.config;
  c.backhaul_mbps = 64.0;
  c.p_local = 0.16;
  c.p_fog = 0.25;
  c.p_cloud = 0.59;

  const bool reactive = name.starts_with("Reactive ");
  const bool proactive = name.starts_with("Proactive ");
  const std::string_view level = name.size() >= 1 ? name.substr(name.size() - 1) : "";
  if ((!reactive && !proactive) ||
      (level != "L" && level != "M" && level != "H"))
    throw std::invalid_argument("preset_cs2: unknown preset '" + p.name + "'");
  c.alpha = level == "L" ? 0.1 : level == "M" ? 0.6 : 0.8;

  p.axis = SweepAxis::CacheFraction;
  p.axis_values = linspace(0.0, 1.0, 11);
  if (reactive) {
    c.cache_fraction = 0.0;
    p.axis_pinned = true;
  }
  return p;
}

// Wireless congestion sweep, reactive (S = 0) versus proactive (S = 0.8)
// for each placement mix.
inline ScenarioPreset preset_cs3(std::string_view name) {
  ScenarioPreset p;
  p.name = std::string(name);
  SimConfig& c = p.config;
  c.backhaul_mbps = 64.0;

  if (name.starts_with("VR ")) {
    c.p_local = 0.50; c.p_fog = 0.30; c.p_cloud = 0.20;
  } else if (name.starts_with("Fog ")) {
    c.p_local = 0.20; c.p_fog = 0.50; c.p_cloud = 0.30;
  } else if (name.starts_with("Cloud ")) {
    c.p_local = 0.20; c.p_fog = 0.30; c.p_cloud = 0.50;
  } else {
    throw std::invalid_argument("preset_cs3: unknown preset '" + p.name + "'");
  }
  const std::string_view mode = name.substr(name.find(' ') + 1);
  if (mode == "R") {
    c.cache_fraction = 0.0;
  } else if (mode == "P") {
    c.cache_fraction = 0.8;
  } else {
    throw std::invalid_argument("preset_cs3: unknown preset '" + p.name + "'");
  }
  c.arrival_density = kCongestionStudyArrivalDensity;

  p.axis = SweepAxis::Congestion;
  p.axis_values = linspace(0.0, 0.9, 10);
  // keep the quoted 42% operating point on the grid
  const double probe = 0.42;
  bool present = false;
  for (double v : p.axis_values) present = present || v == probe;
  if (!present) {
    p.axis_values.push_back(probe);
    std::sort(p.axis_values.begin(), p.axis_values.end());
  }
  return p;
}

inline ScenarioPreset preset(std::string_view scenario, std::string_view name) {
  if (scenario == "cs1") return preset_cs1(name);
  if (scenario == "cs2") return preset_cs2(name);
  if (scenario == "cs3") return preset_cs3(name);
  throw std::invalid_argument("preset: unknown scenario");
}

inline std::uint64_t replication_seed(std::uint64_t base_seed, std::uint32_t rep) {
  return base_seed + rep;
}

struct SweepPoint {
  double x = 0.0;
  bool ok = false;
  std::string error;
  double ie_mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<double> rep_ie;   // per-replication immersive experience
  RunSummary aggregate;         // counts summed across replications
};

namespace scenario_detail {

inline void fold_summary(RunSummary& into, const RunSummary& rep) {
  const auto n0 = static_cast<double>(into.total_tasks);
  const auto n1 = static_cast<double>(rep.total_tasks);
  const double n = n0 + n1;
  into.mean_delay_ms = (into.mean_delay_ms * n0 + rep.mean_delay_ms * n1) / n;
  into.cache_hit_fraction =
      (into.cache_hit_fraction * n0 + rep.cache_hit_fraction * n1) / n;
  into.total_tasks += rep.total_tasks;
  into.met_deadline_count += rep.met_deadline_count;
  into.local_count += rep.local_count;
  into.fog_count += rep.fog_count;
  into.cloud_count += rep.cloud_count;
}

}  // namespace scenario_detail

// Runs `replications` independent seeds per axis value. A failing point is
// reported in its SweepPoint and does not abort the remaining points.
inline std::vector<SweepPoint> run_sweep(const ScenarioPreset& preset,
                                         std::uint32_t replications,
                                         std::uint64_t base_seed,
                                         std::uint32_t jobs = 1) {
  if (replications == 0)
    throw std::invalid_argument("run_sweep: replications must be >= 1");
  const std::size_t n_points = preset.axis_values.size();
  const std::size_t n_runs = n_points * replications;

  std::vector<RunSummary> summaries(n_runs);
  std::vector<std::string> errors(n_runs);
  std::vector<char> failed(n_runs, 0);

  auto run_one = [&](std::size_t flat) {
    const std::size_t point = flat / replications;
    const auto rep = static_cast<std::uint32_t>(flat % replications);
    SimConfig config = preset.axis_pinned
        ? preset.config
        : with_axis_value(preset.config, preset.axis, preset.axis_values[point]);
    try {
      summaries[flat] = run_single(config, replication_seed(base_seed, rep));
    } catch (const std::exception& e) {
      failed[flat] = 1;
      errors[flat] = e.what();
    }
  };

  const std::uint32_t workers =
      std::max<std::uint32_t>(1, std::min<std::uint32_t>(
          jobs, static_cast<std::uint32_t>(n_runs)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n_runs; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = cursor.fetch_add(1); i < n_runs;
             i = cursor.fetch_add(1))
          run_one(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  std::vector<SweepPoint> points(n_points);
  for (std::size_t point = 0; point < n_points; ++point) {
    SweepPoint& sp = points[point];
    sp.x = preset.axis_values[point];
    double median_sum = 0.0;
    double p95_sum = 0.0;
    sp.ok = true;
    for (std::uint32_t rep = 0; rep < replications; ++rep) {
      const std::size_t flat = point * replications + rep;
      if (failed[flat]) {
        sp.ok = false;
        if (sp.error.empty()) sp.error = errors[flat];
        continue;
      }
      const RunSummary& s = summaries[flat];
      sp.rep_ie.push_back(s.immersive_experience);
      scenario_detail::fold_summary(sp.aggregate, s);
      median_sum += s.median_delay_ms;
      p95_sum += s.p95_delay_ms;
    }
    if (!sp.ok || sp.rep_ie.empty()) {
      sp.ok = false;
      continue;
    }
    const auto r = static_cast<double>(sp.rep_ie.size());
    double mean = 0.0;
    for (double v : sp.rep_ie) mean += v;
    mean /= r;
    double var = 0.0;
    for (double v : sp.rep_ie) var += (v - mean) * (v - mean);
    var = sp.rep_ie.size() > 1 ? var / (r - 1.0) : 0.0;
    const double half = 1.96 * std::sqrt(var / r);
    sp.ie_mean = mean;
    sp.ci_low = mean - half;
    sp.ci_high = mean + half;
    sp.aggregate.immersive_experience = mean;
    sp.aggregate.median_delay_ms = median_sum / r;
    sp.aggregate.p95_delay_ms = p95_sum / r;
  }
  return points;
}

}  // namespace fogsim
