#pragma once
// Stochastic workload generation.
//
// Devices arrive as a shot-noise process: a Poisson stream of "shots", each a
// VR device that stays attached to one fog base station for a fixed dwell and
// issues a heavy-tailed number of task requests inside that window. Task
// types come from a fixed catalog with Zipf-like popularity; each type has
// compute and delivery demands drawn once when the catalog is built, so
// repeated requests for a popular type really are the same work (which is
// what makes caching computation results meaningful).

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "fogsim/power_law.hpp"
#include "fogsim/rng.hpp"
#include "fogsim/text.hpp"

namespace fogsim {

enum class Placement : std::uint8_t { Local, Fog, Cloud };

struct CatalogEntry {
  std::uint32_t rank = 0;       // 1-based; 1 = most popular
  double popularity = 0.0;      // request probability
  double compute_gcycles = 0.0; // fixed per type
  double delivery_mbit = 0.0;   // fixed per type
};

struct Catalog {
  double popularity_exponent = 0.0;
  std::vector<CatalogEntry> entries;   // ordered by rank
  std::vector<double> cumulative;      // cumulative popularity, back() == 1

  std::uint32_t size() const { return static_cast<std::uint32_t>(entries.size()); }
};

struct WorkloadParams {
  double arrival_density = 0.0;  // shots per ms
  double horizon_ms = 0.0;       // admission window
  double dwell_ms = 0.0;         // how long a device stays attached
  PowerLawSpec task_count_spec;  // tasks per device (rounded, clamped >= 1)
  PowerLawSpec compute_spec;     // gigacycles per task type
  PowerLawSpec delivery_spec;    // megabits per task type
  PowerLawSpec deadline_spec;    // ms per task

  void validate() const {
    if (!(arrival_density >= 0.0))
      throw std::invalid_argument("WorkloadParams: arrival_density must be >= 0");
    if (!(horizon_ms > 0.0))
      throw std::invalid_argument("WorkloadParams: horizon_ms must be > 0");
    if (!(dwell_ms > 0.0))
      throw std::invalid_argument("WorkloadParams: dwell_ms must be > 0");
    if (!(dwell_ms <= horizon_ms))
      throw std::invalid_argument("WorkloadParams: dwell_ms must be <= horizon_ms");
    if (!(task_count_spec.mean >= 1.0))
      throw std::invalid_argument("WorkloadParams: mean task count must be >= 1");
    task_count_spec.validate();
    compute_spec.validate();
    delivery_spec.validate();
    deadline_spec.validate();
  }
};

struct DeviceShot {
  std::uint32_t id = 0;
  double arrival_ms = 0.0;
  double dwell_ms = 0.0;
  std::uint32_t fog_id = 0;      // serving base station, 1..M
  std::uint32_t task_count = 0;  // >= 1
};

struct TaskRequest {
  std::uint64_t id = 0;
  std::uint32_t device_id = 0;
  std::uint32_t fog_id = 0;      // copied from the device's shot
  std::uint32_t type_rank = 0;   // 1..N
  double release_ms = 0.0;
  double deadline_ms = 0.0;      // relative to release
  double compute_gcycles = 0.0;  // copied from the catalog entry
  double delivery_mbit = 0.0;    // copied from the catalog entry
  std::optional<Placement> placement;  // assigned by the placement policy
};

// Ranked task-type catalog with popularity(rank i) proportional to i^-alpha.
// Demands are drawn once per type, not per request.
inline Catalog build_catalog(std::uint32_t size, double popularity_exponent,
                             const PowerLawSpec& compute_spec,
                             const PowerLawSpec& delivery_spec,
                             RngStream& rng) {
  if (size == 0) throw std::invalid_argument("build_catalog: size must be >= 1");
  if (!(popularity_exponent >= 0.0))
    throw std::invalid_argument("build_catalog: popularity exponent must be >= 0");
  const BoundedPareto compute(compute_spec);
  const BoundedPareto delivery(delivery_spec);

  Catalog cat;
  cat.popularity_exponent = popularity_exponent;
  cat.entries.resize(size);
  cat.cumulative.resize(size);

  double total = 0.0;
  for (std::uint32_t i = 0; i < size; ++i) {
    cat.entries[i].rank = i + 1;
    cat.entries[i].popularity =
        std::pow(static_cast<double>(i + 1), -popularity_exponent);
    total += cat.entries[i].popularity;
    cat.entries[i].compute_gcycles = compute.sample(rng);
    cat.entries[i].delivery_mbit = delivery.sample(rng);
  }
  double running = 0.0;
  for (std::uint32_t i = 0; i < size; ++i) {
    cat.entries[i].popularity /= total;
    running += cat.entries[i].popularity;
    cat.cumulative[i] = running;
  }
  cat.cumulative.back() = 1.0;  // absorb fp residue so sampling stays in range
  return cat;
}

// Rank i with probability popularity(i).
inline std::uint32_t sample_type(const Catalog& catalog, RngStream& rng) {
  const double u = rng.uniform();
  const auto it = std::upper_bound(catalog.cumulative.begin(),
                                   catalog.cumulative.end(), u);
  const auto idx = static_cast<std::uint32_t>(it - catalog.cumulative.begin());
  return std::min(idx, catalog.size() - 1) + 1;
}

inline std::uint32_t sample_task_count(const BoundedPareto& dist, RngStream& rng) {
  const double x = dist.sample(rng);
  const auto n = std::llround(std::min(x, 4e9));
  return static_cast<std::uint32_t>(std::max<long long>(n, 1));
}

inline std::uint32_t sample_task_count(const PowerLawSpec& spec, RngStream& rng) {
  if (!(spec.mean >= 1.0))
    throw std::invalid_argument("sample_task_count: mean must be >= 1");
  return sample_task_count(BoundedPareto(spec), rng);
}

// Poisson device arrivals on [0, horizon). Per shot the draw order is fixed:
// inter-arrival gap, fog assignment, task count.
inline std::vector<DeviceShot> generate_shots(const WorkloadParams& params,
                                              std::uint32_t fog_count,
                                              RngStream& rng) {
  params.validate();
  if (fog_count == 0)
    throw std::invalid_argument("generate_shots: fog_count must be >= 1");
  std::vector<DeviceShot> shots;
  if (params.arrival_density <= 0.0) return shots;

  const BoundedPareto count_dist(params.task_count_spec);
  for (double t = rng.exponential(params.arrival_density); t < params.horizon_ms;
       t += rng.exponential(params.arrival_density)) {
    DeviceShot shot;
    shot.id = static_cast<std::uint32_t>(shots.size());
    shot.arrival_ms = t;
    shot.dwell_ms = params.dwell_ms;
    shot.fog_id = static_cast<std::uint32_t>(rng.below(fog_count)) + 1;
    shot.task_count = sample_task_count(count_dist, rng);
    shots.push_back(shot);
  }
  return shots;
}

// Task requests of one shot. Releases are i.i.d. uniform over the dwell
// window; placement is left unassigned. Per task the draw order is fixed:
// release, type, deadline.
inline std::vector<TaskRequest> generate_tasks(const DeviceShot& shot,
                                               const Catalog& catalog,
                                               const WorkloadParams& params,
                                               RngStream& rng,
                                               std::uint64_t first_task_id = 0) {
  if (shot.task_count == 0)
    throw std::invalid_argument("generate_tasks: shot has no tasks");
  const BoundedPareto deadline(params.deadline_spec);

  std::vector<TaskRequest> tasks;
  tasks.reserve(shot.task_count);
  for (std::uint32_t i = 0; i < shot.task_count; ++i) {
    TaskRequest t;
    t.id = first_task_id + i;
    t.device_id = shot.id;
    t.fog_id = shot.fog_id;
    t.release_ms = rng.uniform(shot.arrival_ms, shot.arrival_ms + shot.dwell_ms);
    t.type_rank = sample_type(catalog, rng);
    t.deadline_ms = deadline.sample(rng);
    t.compute_gcycles = catalog.entries[t.type_rank - 1].compute_gcycles;
    t.delivery_mbit = catalog.entries[t.type_rank - 1].delivery_mbit;
    tasks.push_back(t);
  }
  return tasks;
}

// One CSV line per task:
// task_id,device_id,fog_id,type_rank,release_ms,deadline_ms,compute_gcycles,delivery_mbit
inline void write_trace(std::span<const TaskRequest> tasks, std::ostream& os) {
  for (const TaskRequest& t : tasks) {
    os << t.id << ',' << t.device_id << ',' << t.fog_id << ',' << t.type_rank
       << ',' << format_number(t.release_ms) << ',' << format_number(t.deadline_ms)
       << ',' << format_number(t.compute_gcycles) << ','
       << format_number(t.delivery_mbit) << '\n';
  }
}

}  // namespace fogsim
