#pragma once
// Run aggregation and curve output. The headline metric is the immersive
// experience: the fraction of tasks whose end-to-end delay (compute plus
// delivery) lands within the task's own deadline, stored as a fraction in
// [0, 1]. Curve files are plain CSV rows `x,ie[,ci_low,ci_high]`.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <vector>

#include "fogsim/engine.hpp"
#include "fogsim/text.hpp"

namespace fogsim {

struct RunSummary {
  std::uint64_t total_tasks = 0;
  std::uint64_t met_deadline_count = 0;
  double immersive_experience = 0.0;
  double mean_delay_ms = 0.0;
  double median_delay_ms = 0.0;
  double p95_delay_ms = 0.0;
  double cache_hit_fraction = 0.0;
  std::uint64_t local_count = 0;
  std::uint64_t fog_count = 0;
  std::uint64_t cloud_count = 0;
};

inline double immersive_experience(std::span<const TaskRecord> records) {
  if (records.empty())
    throw std::invalid_argument("immersive_experience: no tasks recorded");
  std::uint64_t met = 0;
  for (const TaskRecord& r : records) met += r.met_deadline() ? 1 : 0;
  return static_cast<double>(met) / static_cast<double>(records.size());
}

inline RunSummary summarize(std::span<const TaskRecord> records) {
  if (records.empty())
    throw std::invalid_argument("summarize: no tasks recorded");

  RunSummary s;
  s.total_tasks = records.size();
  std::vector<double> delays;
  delays.reserve(records.size());
  double delay_sum = 0.0;
  std::uint64_t hits = 0;
  for (const TaskRecord& r : records) {
    const double d = r.total_delay_ms();
    delays.push_back(d);
    delay_sum += d;
    s.met_deadline_count += r.met_deadline() ? 1 : 0;
    hits += r.cache_hit ? 1 : 0;
    switch (r.placement) {
      case Placement::Local: ++s.local_count; break;
      case Placement::Fog: ++s.fog_count; break;
      case Placement::Cloud: ++s.cloud_count; break;
    }
  }
  std::sort(delays.begin(), delays.end());
  const std::size_t n = delays.size();
  s.immersive_experience =
      static_cast<double>(s.met_deadline_count) / static_cast<double>(n);
  s.mean_delay_ms = delay_sum / static_cast<double>(n);
  s.median_delay_ms = (n % 2 == 1)
      ? delays[n / 2]
      : 0.5 * (delays[n / 2 - 1] + delays[n / 2]);
  // nearest-rank 95th percentile
  const std::size_t rank = (n * 95 + 99) / 100;  // ceil(0.95 n)
  s.p95_delay_ms = delays[std::max<std::size_t>(rank, 1) - 1];
  s.cache_hit_fraction = static_cast<double>(hits) / static_cast<double>(n);
  return s;
}

struct CurvePoint {
  double x = 0.0;
  double ie_mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Writes `x,ie[,ci_low,ci_high]` rows; x must be strictly increasing. The
// file is written to a temporary sibling and renamed into place.
inline void emit_curve(std::span<const CurvePoint> points,
                       const std::filesystem::path& destination,
                       bool with_ci = true) {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].x > points[i - 1].x))
      throw std::invalid_argument("emit_curve: x values must be strictly increasing");

  if (destination.has_parent_path())
    std::filesystem::create_directories(destination.parent_path());
  const std::filesystem::path tmp = destination.string() + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os)
      throw std::runtime_error("emit_curve: cannot write " + tmp.string());
    for (const CurvePoint& p : points) {
      os << format_number(p.x) << ',' << format_number(p.ie_mean);
      if (with_ci)
        os << ',' << format_number(p.ci_low) << ',' << format_number(p.ci_high);
      os << '\n';
    }
  }
  std::filesystem::rename(tmp, destination);
}

}  // namespace fogsim
