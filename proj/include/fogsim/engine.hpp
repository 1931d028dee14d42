#pragma once
// Discrete-event kernel.
//
// Every CPU pool and link is an egalitarian processor-sharing resource: at
// any instant each resident job receives capacity/n. A task is a short
// pipeline of stages (compute on some CPU, then delivery over links) routed
// from its placement and the fog-cache state; each stage is one job on one
// resource, stages run back to back.
//
// PS bookkeeping uses a per-resource virtual service clock: since all
// resident jobs drain at the same rate, a job arriving with work w completes
// when the clock has advanced by exactly w. Active jobs live in a min-heap
// keyed by their clock target, so a membership change costs O(log n) and no
// per-job state is rewritten. Scheduled completions are invalidated by a
// version counter and skipped lazily when popped.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "fogsim/policy.hpp"
#include "fogsim/topology.hpp"
#include "fogsim/workload.hpp"

namespace fogsim {

// An engine fault is a broken internal invariant (work gone negative, a task
// left unfinished), never a user input error.
struct EngineFault : std::logic_error {
  using std::logic_error::logic_error;
};

enum class ResourceKind : std::uint8_t {
  DeviceCpu,
  FogCpu,
  CloudCpu,
  WirelessLink,
  BackhaulLink,
};

struct ResourceKey {
  ResourceKind kind = ResourceKind::CloudCpu;
  std::uint32_t index = 0;  // device id (0-based) or fog id (1-based)

  bool operator==(const ResourceKey&) const = default;
};

struct Stage {
  ResourceKey resource;
  double work = 0.0;  // Gcycles on CPUs, Mbit on links
};

struct StagePlan {
  std::array<Stage, 3> stages{};
  int stage_count = 0;
  bool cache_hit = false;
};

struct TaskRecord {
  std::uint64_t task_id = 0;
  double release_ms = 0.0;
  double completion_ms = 0.0;
  double deadline_ms = 0.0;
  Placement placement = Placement::Local;
  bool cache_hit = false;
  std::array<double, 3> stage_delay_ms{};
  int stage_count = 0;

  double total_delay_ms() const { return completion_ms - release_ms; }
  bool met_deadline() const { return total_delay_ms() <= deadline_ms; }
};

// Stage pipeline for one placed task.
//   Local:             device CPU.
//   Fog, cache miss:   fog CPU, then wireless delivery.
//   Fog, cache hit:    wireless delivery only.
//   Cloud, cache miss: cloud CPU, then backhaul, then wireless delivery.
//   Cloud, cache hit:  wireless delivery only (the fog replica intercepts).
inline StagePlan route(const TaskRequest& task, const Topology& topology,
                       const CacheState& cache) {
  if (!task.placement)
    throw std::invalid_argument("route: task has no placement assigned");
  if (task.fog_id < 1 || task.fog_id > topology.fog_count)
    throw std::invalid_argument("route: fog id outside 1..M");

  StagePlan plan;
  auto add = [&plan](ResourceKind kind, std::uint32_t index, double work) {
    plan.stages[plan.stage_count++] = Stage{ResourceKey{kind, index}, work};
  };

  switch (*task.placement) {
    case Placement::Local:
      add(ResourceKind::DeviceCpu, task.device_id, task.compute_gcycles);
      break;
    case Placement::Fog:
      plan.cache_hit = lookup(cache, task.type_rank);
      if (!plan.cache_hit)
        add(ResourceKind::FogCpu, task.fog_id, task.compute_gcycles);
      add(ResourceKind::WirelessLink, task.fog_id, task.delivery_mbit);
      break;
    case Placement::Cloud:
      plan.cache_hit = lookup(cache, task.type_rank);
      if (!plan.cache_hit) {
        add(ResourceKind::CloudCpu, 0, task.compute_gcycles);
        add(ResourceKind::BackhaulLink, 0, task.delivery_mbit);
      }
      add(ResourceKind::WirelessLink, task.fog_id, task.delivery_mbit);
      break;
  }
  return plan;
}

// One egalitarian processor-sharing resource. Capacity is in work units per
// ms. The virtual clock `served()` is the cumulative service every resident
// job has received since the resource last went idle; job tags are clock
// targets, so remaining(tag) = tag - served().
class PsResource {
 public:
  explicit PsResource(double capacity_per_ms) : capacity_(capacity_per_ms) {
    if (!(capacity_per_ms > 0.0))
      throw std::invalid_argument("PsResource: capacity must be > 0");
  }

  double capacity() const { return capacity_; }
  std::size_t active_count() const { return heap_.size(); }
  bool idle() const { return heap_.empty(); }
  std::uint64_t version() const { return version_; }
  double served() const { return served_; }
  double last_update_ms() const { return last_update_; }
  double busy_time_ms() const { return busy_time_; }
  double work_served() const { return work_served_; }

  double remaining(double tag) const { return tag - served_; }

  // Folds elapsed time into the virtual clock: every resident job has
  // received (now - last) * capacity / n more service. No job may cross zero
  // here; completions are collected by complete_due.
  void advance_to(double now_ms) {
    if (now_ms < last_update_ - 1e-9 * std::max(1.0, std::abs(last_update_)))
      throw EngineFault("PsResource: time moved backwards");
    if (now_ms <= last_update_) return;
    if (!heap_.empty()) {
      const double dt = now_ms - last_update_;
      served_ += dt * capacity_ / static_cast<double>(heap_.size());
      busy_time_ += dt;
      work_served_ += dt * capacity_;
      if (heap_.top().target < served_ - fault_slack(now_ms))
        throw EngineFault("PsResource: job work went negative (missed event)");
    }
    last_update_ = now_ms;
  }

  // Adds a job and returns its service tag.
  double add(double now_ms, double work, std::uint64_t payload) {
    if (!(work > 0.0))
      throw std::invalid_argument("PsResource: work must be > 0");
    advance_to(now_ms);
    const double tag = served_ + work;
    heap_.push(Entry{tag, payload});
    ++version_;
    return tag;
  }

  // Completes every job whose target is reached at `now` (ties pop together,
  // ordered by payload) and invokes fn(payload) for each. Resets the virtual
  // clock whenever the resource drains, which also keeps long runs exact.
  //
  // A scheduled completion with a still-current version is for the current
  // top job by construction, so the caller passes force_first = true and the
  // job pops even when the event time rounded to slightly before the exact
  // crossing (absolute event times cannot resolve leads below one ulp).
  template <typename Fn>
  void complete_due(double now_ms, Fn&& fn, bool force_first = false) {
    advance_to(now_ms);
    bool force = force_first;
    while (!heap_.empty()) {
      const Entry e = heap_.top();
      if (force) {
        if (e.target - served_ > fault_slack(now_ms))
          throw EngineFault("PsResource: completion event fired early");
        force = false;
      } else {
        const double slack = 1e-12 * std::max(1.0, std::abs(served_));
        if (e.target > served_ + slack) break;
      }
      heap_.pop();
      ++version_;
      if (e.target > served_) served_ = e.target;  // snap out ulp drift
      fn(e.payload);
    }
    if (heap_.empty()) served_ = 0.0;
  }

  // Absolute time of the next completion if membership does not change.
  double next_completion_ms() const {
    if (heap_.empty()) return std::numeric_limits<double>::infinity();
    const double lead = (heap_.top().target - served_) *
                        static_cast<double>(heap_.size()) / capacity_;
    return last_update_ + std::max(lead, 0.0);
  }

 private:
  // Work-unit tolerance for the broken-invariant checks: the configured
  // 1e-9 bound plus the work equivalent of one ulp of absolute event time.
  double fault_slack(double now_ms) const {
    const double time_noise = 4.0 * std::numeric_limits<double>::epsilon() *
                              std::abs(now_ms) * capacity_ /
                              std::max<std::size_t>(heap_.size(), 1);
    return 1e-9 * std::max(1.0, std::abs(served_)) + time_noise;
  }

  struct Entry {
    double target = 0.0;
    std::uint64_t payload = 0;
    bool operator>(const Entry& o) const {
      if (target != o.target) return target > o.target;
      return payload > o.payload;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  double capacity_;
  double served_ = 0.0;
  double last_update_ = 0.0;
  double busy_time_ = 0.0;
  double work_served_ = 0.0;
  std::uint64_t version_ = 0;
};

namespace engine_detail {

struct ScheduledEvent {
  double time_ms = 0.0;
  std::uint64_t seq = 0;  // insertion order breaks time ties deterministically
  std::uint32_t slot = 0;
  std::uint64_t version = 0;

  bool operator>(const ScheduledEvent& o) const {
    if (time_ms != o.time_ms) return time_ms > o.time_ms;
    return seq > o.seq;
  }
};

}  // namespace engine_detail

// Runs every task to completion (admission is bounded by the workload
// horizon; in-flight work drains afterwards) and returns one record per
// task, index-aligned with the input.
inline std::vector<TaskRecord> run(const Topology& topology,
                                   const CacheState& cache,
                                   std::span<const TaskRequest> tasks) {
  topology.validate();
  const std::uint32_t m = topology.fog_count;

  std::uint32_t device_count = 0;
  for (const TaskRequest& t : tasks)
    device_count = std::max(device_count, t.device_id + 1);

  // Slot layout: cloud, backhaul, M fog CPUs, M wireless links, then one
  // private CPU per device.
  const std::uint32_t slot_cloud = 0;
  const std::uint32_t slot_backhaul = 1;
  const std::uint32_t slot_fog = 2;
  const std::uint32_t slot_wireless = 2 + m;
  const std::uint32_t slot_device = 2 + 2 * m;

  std::vector<PsResource> resources;
  resources.reserve(slot_device + device_count);
  resources.emplace_back(topology.cloud_cpu_gcps / 1000.0);
  resources.emplace_back(topology.backhaul_total_mbps / 1000.0);
  for (std::uint32_t f = 0; f < m; ++f)
    resources.emplace_back(topology.fog_cpu_gcps / 1000.0);
  for (std::uint32_t f = 0; f < m; ++f)
    resources.emplace_back(topology.wireless_per_fog_mbps() / 1000.0);
  for (std::uint32_t d = 0; d < device_count; ++d)
    resources.emplace_back(topology.device_cpu_gcps / 1000.0);

  auto slot_for = [&](const ResourceKey& key) -> std::uint32_t {
    switch (key.kind) {
      case ResourceKind::CloudCpu: return slot_cloud;
      case ResourceKind::BackhaulLink: return slot_backhaul;
      case ResourceKind::FogCpu: return slot_fog + (key.index - 1);
      case ResourceKind::WirelessLink: return slot_wireless + (key.index - 1);
      case ResourceKind::DeviceCpu: return slot_device + key.index;
    }
    throw std::invalid_argument("slot_for: unknown resource kind");
  };

  struct TaskState {
    StagePlan plan;
    int next_stage = 0;
    double stage_start = 0.0;
  };
  std::vector<TaskState> state(tasks.size());
  std::vector<TaskRecord> records(tasks.size());

  std::vector<std::uint32_t> release_order(tasks.size());
  std::iota(release_order.begin(), release_order.end(), 0u);
  std::sort(release_order.begin(), release_order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              if (tasks[a].release_ms != tasks[b].release_ms)
                return tasks[a].release_ms < tasks[b].release_ms;
              return a < b;
            });

  std::priority_queue<engine_detail::ScheduledEvent,
                      std::vector<engine_detail::ScheduledEvent>,
                      std::greater<>> events;
  std::uint64_t seq = 0;

  auto schedule = [&](std::uint32_t slot) {
    const double t = resources[slot].next_completion_ms();
    if (std::isfinite(t))
      events.push({t, seq++, slot, resources[slot].version()});
  };

  auto submit_stage = [&](std::uint32_t ti, double now) {
    const Stage& stage = state[ti].plan.stages[state[ti].next_stage];
    const std::uint32_t slot = slot_for(stage.resource);
    resources[slot].add(now, stage.work, ti);
    schedule(slot);
  };

  std::size_t released = 0;
  std::size_t open_tasks = tasks.size();

  auto release_task = [&](std::uint32_t ti) {
    const TaskRequest& task = tasks[ti];
    TaskState& st = state[ti];
    st.plan = route(task, topology, cache);
    st.stage_start = task.release_ms;
    TaskRecord& rec = records[ti];
    rec.task_id = task.id;
    rec.release_ms = task.release_ms;
    rec.deadline_ms = task.deadline_ms;
    rec.placement = *task.placement;
    rec.cache_hit = st.plan.cache_hit;
    rec.stage_count = st.plan.stage_count;
    submit_stage(ti, task.release_ms);
  };

  while (released < release_order.size() || !events.empty()) {
    const double next_release = released < release_order.size()
        ? tasks[release_order[released]].release_ms
        : std::numeric_limits<double>::infinity();
    if (events.empty() || next_release <= events.top().time_ms) {
      release_task(release_order[released++]);
      continue;
    }

    const engine_detail::ScheduledEvent ev = events.top();
    events.pop();
    PsResource& res = resources[ev.slot];
    if (ev.version != res.version()) continue;  // superseded by a membership change

    res.complete_due(ev.time_ms, [&](std::uint64_t payload) {
      const auto ti = static_cast<std::uint32_t>(payload);
      TaskState& st = state[ti];
      records[ti].stage_delay_ms[st.next_stage] = ev.time_ms - st.stage_start;
      st.stage_start = ev.time_ms;
      ++st.next_stage;
      if (st.next_stage < st.plan.stage_count) {
        submit_stage(ti, ev.time_ms);
      } else {
        records[ti].completion_ms = ev.time_ms;
        --open_tasks;
      }
    }, /*force_first=*/true);
    schedule(ev.slot);
  }

  if (open_tasks != 0)
    throw EngineFault("run: event queue drained with unfinished tasks");
  return records;
}

// Single-resource runner over explicit (arrival, work) jobs; same kernel as
// the full network, used for queueing validation.
struct TimedJob {
  double arrival_ms = 0.0;
  double work = 0.0;
};

inline std::vector<double> run_single_resource(double capacity_per_ms,
                                               std::span<const TimedJob> jobs) {
  PsResource res(capacity_per_ms);

  std::vector<std::uint32_t> order(jobs.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (jobs[a].arrival_ms != jobs[b].arrival_ms)
      return jobs[a].arrival_ms < jobs[b].arrival_ms;
    return a < b;
  });

  std::vector<double> completion(jobs.size(), 0.0);
  std::size_t next = 0;
  std::size_t done = 0;
  while (done < jobs.size()) {
    const double t_arrival = next < order.size()
        ? jobs[order[next]].arrival_ms
        : std::numeric_limits<double>::infinity();
    const double t_completion = res.next_completion_ms();
    if (t_arrival <= t_completion) {
      res.add(t_arrival, jobs[order[next]].work, order[next]);
      ++next;
    } else {
      res.complete_due(t_completion, [&](std::uint64_t payload) {
        completion[payload] = t_completion;
        ++done;
      }, /*force_first=*/true);
    }
  }
  return completion;
}

}  // namespace fogsim
