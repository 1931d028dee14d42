#pragma once
// Independent validators for the event-driven kernel, used only by tests.
// dense_replay integrates the processor-sharing dynamics with small explicit
// time steps and shares no code with the engine; mm1_ps_mean_sojourn is the
// textbook M/M/1-PS sojourn identity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fogsim {

struct TinyInstance {
  struct Job {
    double arrival = 0.0;
    double work = 0.0;
  };
  std::vector<Job> jobs;
  double capacity = 1.0;

  void validate() const {
    if (jobs.empty() || jobs.size() > 50)
      throw std::invalid_argument("TinyInstance: 1..50 jobs");
    if (!(capacity > 0.0))
      throw std::invalid_argument("TinyInstance: capacity must be > 0");
    for (const Job& j : jobs) {
      if (!(j.work > 0.0))
        throw std::invalid_argument("TinyInstance: works must be > 0");
      if (!(j.arrival >= 0.0))
        throw std::invalid_argument("TinyInstance: arrivals must be >= 0");
    }
  }
};

// Mean sojourn of M/M/1-PS: (mean_work/capacity) / (1 - rho).
inline double mm1_ps_mean_sojourn(double arrival_rate, double mean_work,
                                  double capacity) {
  if (!(arrival_rate > 0.0) || !(mean_work > 0.0) || !(capacity > 0.0))
    throw std::invalid_argument("mm1_ps_mean_sojourn: inputs must be > 0");
  const double rho = arrival_rate * mean_work / capacity;
  if (!(rho < 1.0))
    throw std::invalid_argument("mm1_ps_mean_sojourn: utilization must be < 1");
  return (mean_work / capacity) / (1.0 - rho);
}

// Explicit time-stepping replay of egalitarian PS: every active job drains
// capacity/n per step. Steps are aligned to arrival instants so the only
// discretization error is completion detection, bounded by dt per crossing.
// Returns completion times index-aligned with instance.jobs.
inline std::vector<double> dense_replay(const TinyInstance& instance, double dt) {
  instance.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("dense_replay: dt must be > 0");

  const std::size_t n = instance.jobs.size();
  std::vector<std::size_t> by_arrival(n);
  for (std::size_t i = 0; i < n; ++i) by_arrival[i] = i;
  std::sort(by_arrival.begin(), by_arrival.end(),
            [&](std::size_t a, std::size_t b) {
              if (instance.jobs[a].arrival != instance.jobs[b].arrival)
                return instance.jobs[a].arrival < instance.jobs[b].arrival;
              return a < b;
            });

  std::vector<double> remaining(n, 0.0);
  std::vector<double> completion(n, 0.0);
  std::vector<std::size_t> active;
  active.reserve(n);

  std::size_t next = 0;
  std::size_t done = 0;
  double t = instance.jobs[by_arrival[0]].arrival;

  while (done < n) {
    while (next < n && instance.jobs[by_arrival[next]].arrival <= t) {
      remaining[by_arrival[next]] = instance.jobs[by_arrival[next]].work;
      active.push_back(by_arrival[next]);
      ++next;
    }
    if (active.empty()) {
      t = instance.jobs[by_arrival[next]].arrival;
      continue;
    }
    const double t_next_arrival = next < n
        ? instance.jobs[by_arrival[next]].arrival
        : std::numeric_limits<double>::infinity();
    const double step = std::min(dt, t_next_arrival - t);
    const double share = instance.capacity * step / static_cast<double>(active.size());
    t += step;
    for (std::size_t k = 0; k < active.size();) {
      remaining[active[k]] -= share;
      if (remaining[active[k]] <= 1e-15) {
        completion[active[k]] = t;
        ++done;
        active[k] = active.back();
        active.pop_back();
      } else {
        ++k;
      }
    }
  }
  return completion;
}

}  // namespace fogsim
