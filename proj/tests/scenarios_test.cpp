#include "fogsim/scenarios.hpp"

#include <cmath>

#include "catch2/catch_amalgamated.hpp"

using namespace fogsim;

TEST_CASE("load-sweep presets carry the documented overrides") {
  const ScenarioPreset fog2 = preset_cs1("Fog II");
  REQUIRE(fog2.config.wireless_mbps == 256.0);
  REQUIRE(fog2.config.fog_cpu_ghz == Catch::Approx(16 * 4 * 3.4));
  REQUIRE(fog2.config.p_local == 0.16);
  REQUIRE(fog2.config.p_fog == 0.59);
  REQUIRE(fog2.config.p_cloud == 0.25);

  const ScenarioPreset vr1 = preset_cs1("VR I");
  REQUIRE(vr1.config.p_local == 0.37);
  REQUIRE(vr1.config.device_cpu_ghz == Catch::Approx(6.4));

  // parameters a preset does not override stay at the defaults
  const SimConfig defaults;
  REQUIRE(vr1.config.fog_cpu_ghz == defaults.fog_cpu_ghz);
  REQUIRE(vr1.config.cloud_cpu_ghz == defaults.cloud_cpu_ghz);
  REQUIRE(vr1.config.backhaul_mbps == defaults.backhaul_mbps);
  REQUIRE(vr1.config.catalog_size == defaults.catalog_size);

  for (const std::string& name : cs1_preset_names()) {
    const ScenarioPreset p = preset_cs1(name);
    REQUIRE(p.config.deadline_mean_ms == 10.0);
    REQUIRE(p.config.cache_fraction == 0.0);
    REQUIRE(p.axis == SweepAxis::ArrivalDensity);
    REQUIRE(p.axis_values.size() == 13);
    REQUIRE(p.axis_values.front() == Catch::Approx(0.02));
    REQUIRE(p.axis_values.back() == Catch::Approx(0.50));
    // the quoted 0.42 shots/ms operating point is a grid point
    bool has_probe = false;
    for (double v : p.axis_values)
      has_probe = has_probe || std::abs(v - 0.42) < 1e-12;
    REQUIRE(has_probe);
  }
  REQUIRE_THROWS_AS(preset_cs1("Fog III"), std::invalid_argument);
}

TEST_CASE("proactivity presets pin the split and homogeneity levels") {
  const ScenarioPreset ph = preset_cs2("Proactive H");
  REQUIRE(ph.config.alpha == 0.8);
  REQUIRE(ph.config.backhaul_mbps == 64.0);
  REQUIRE(ph.config.p_local == 0.16);
  REQUIRE(ph.config.p_fog == 0.25);
  REQUIRE(ph.config.p_cloud == 0.59);
  REQUIRE(ph.axis == SweepAxis::CacheFraction);
  REQUIRE(ph.axis_values.size() == 11);
  REQUIRE_FALSE(ph.axis_pinned);

  REQUIRE(preset_cs2("Proactive L").config.alpha == 0.1);
  REQUIRE(preset_cs2("Proactive M").config.alpha == 0.6);

  const ScenarioPreset rl = preset_cs2("Reactive L");
  REQUIRE(rl.axis_pinned);
  REQUIRE(rl.config.cache_fraction == 0.0);
  REQUIRE(rl.config.arrival_density == kDefaultArrivalDensity);

  REQUIRE_THROWS_AS(preset_cs2("Proactive X"), std::invalid_argument);
}

TEST_CASE("congestion presets cover reactive and proactive modes") {
  const ScenarioPreset cp = preset_cs3("Cloud P");
  REQUIRE(cp.config.p_local == 0.2);
  REQUIRE(cp.config.p_fog == 0.3);
  REQUIRE(cp.config.p_cloud == 0.5);
  REQUIRE(cp.config.cache_fraction == 0.8);
  REQUIRE(cp.config.backhaul_mbps == 64.0);

  const ScenarioPreset fr = preset_cs3("Fog R");
  REQUIRE(fr.config.cache_fraction == 0.0);
  REQUIRE(fr.config.p_fog == 0.5);
  REQUIRE(fr.config.arrival_density == kCongestionStudyArrivalDensity);

  for (const std::string& name : cs3_preset_names()) {
    const ScenarioPreset p = preset_cs3(name);
    REQUIRE(p.axis == SweepAxis::Congestion);
    bool has_probe = false;
    for (double v : p.axis_values) has_probe = has_probe || v == 0.42;
    REQUIRE(has_probe);
    REQUIRE(std::is_sorted(p.axis_values.begin(), p.axis_values.end()));
  }
  REQUIRE_THROWS_AS(preset_cs3("Fog Q"), std::invalid_argument);
}

TEST_CASE("a single axis value with one replication gives a degenerate CI") {
  ScenarioPreset p;
  p.name = "tiny";
  p.config.horizon_ms = 500.0;
  p.config.arrival_density = 0.2;
  p.config.catalog_size = 50;
  p.axis = SweepAxis::CacheFraction;
  p.axis_values = {0.5};
  const auto points = run_sweep(p, 1, 9);
  REQUIRE(points.size() == 1);
  REQUIRE(points[0].ok);
  REQUIRE(points[0].ci_low == points[0].ie_mean);
  REQUIRE(points[0].ci_high == points[0].ie_mean);
}

TEST_CASE("sweeps are deterministic and sized by the axis") {
  ScenarioPreset p;
  p.name = "tiny";
  p.config.horizon_ms = 1000.0;
  p.config.catalog_size = 50;
  p.axis = SweepAxis::ArrivalDensity;
  p.axis_values = {0.1, 0.2, 0.3};
  const auto a = run_sweep(p, 2, 5, /*jobs=*/2);
  const auto b = run_sweep(p, 2, 5, /*jobs=*/1);
  REQUIRE(a.size() == 3);
  REQUIRE(b.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].ok);
    REQUIRE(a[i].ie_mean == b[i].ie_mean);
    REQUIRE(a[i].ci_low == b[i].ci_low);
    REQUIRE(a[i].aggregate.total_tasks == b[i].aggregate.total_tasks);
  }
}

TEST_CASE("a failing point does not abort the sweep") {
  ScenarioPreset p;
  p.name = "tiny";
  p.config.horizon_ms = 500.0;
  p.config.arrival_density = 0.2;
  p.config.catalog_size = 50;
  p.axis = SweepAxis::Congestion;
  p.axis_values = {0.5, 1.0};  // congestion 1.0 violates the [0, 1) bound
  const auto points = run_sweep(p, 1, 3);
  REQUIRE(points[0].ok);
  REQUIRE_FALSE(points[1].ok);
  REQUIRE(points[1].error.find("congestion") != std::string::npos);
}

TEST_CASE("common seeds make cache sweeps workload-identical") {
  SimConfig base;
  base.horizon_ms = 1000.0;
  base.arrival_density = 0.1;
  base.catalog_size = 100;
  const WorkloadBundle w0 = build_workload(base, 11);
  SimConfig cached = base;
  cached.cache_fraction = 0.7;  // policy knob; workload untouched
  const WorkloadBundle w1 = build_workload(cached, 11);
  REQUIRE(w0.tasks.size() == w1.tasks.size());
  for (std::size_t i = 0; i < w0.tasks.size(); ++i) {
    REQUIRE(w0.tasks[i].release_ms == w1.tasks[i].release_ms);
    REQUIRE(w0.tasks[i].type_rank == w1.tasks[i].type_rank);
    REQUIRE(w0.tasks[i].placement == w1.tasks[i].placement);
  }
}

TEST_CASE("a larger cache never adds work to a task's plan") {
  SimConfig base;
  base.horizon_ms = 2000.0;
  base.arrival_density = 0.1;
  base.catalog_size = 100;
  const WorkloadBundle w = build_workload(base, 13);
  const Topology topo = base.topology();
  const CacheState small = build_cache(w.catalog, 0.2);
  const CacheState large = build_cache(w.catalog, 0.6);
  for (const TaskRequest& t : w.tasks) {
    auto total = [&](const CacheState& c) {
      const StagePlan plan = route(t, topo, c);
      double sum = 0.0;
      for (int s = 0; s < plan.stage_count; ++s) sum += plan.stages[s].work;
      return sum;
    };
    REQUIRE(total(large) <= total(small) + 1e-12);
  }
}

TEST_CASE("replication spread at the quoted operating point stays tight") {
  // ten replications of the default configuration at 0.42 shots/ms; the 95%
  // CI on the immersive experience should be narrower than two points
  SimConfig c;
  c.arrival_density = 0.42;
  ScenarioPreset p;
  p.name = "default";
  p.config = c;
  p.axis = SweepAxis::ArrivalDensity;
  p.axis_values = {0.42};
  const auto points = run_sweep(p, 10, 1, /*jobs=*/2);
  REQUIRE(points[0].ok);
  REQUIRE(points[0].ci_high - points[0].ci_low < 0.04);
}
