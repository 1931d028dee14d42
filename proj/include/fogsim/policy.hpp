#pragma once
// Placement and caching policy.
//
// Placement is a categorical draw over {local device, fog, cloud}. The fog
// cache is proactive: before the run starts, the computation results of the
// top-ranked task types are replicated at every fog node, sized by a storage
// fraction S of the catalog. A hit short-circuits the compute stage (and the
// backhaul, for cloud-placed tasks) so only wireless delivery remains.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "fogsim/rng.hpp"
#include "fogsim/topology.hpp"
#include "fogsim/workload.hpp"

namespace fogsim {

struct PlacementSplit {
  double p_local = 0.0;
  double p_fog = 0.0;
  double p_cloud = 0.0;

  void validate() const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(p_local) || !in_unit(p_fog) || !in_unit(p_cloud))
      throw std::invalid_argument(
          "PlacementSplit: probabilities must lie in [0, 1]");
    if (std::abs(p_local + p_fog + p_cloud - 1.0) > 1e-12)
      throw std::invalid_argument("PlacementSplit: probabilities must sum to 1");
  }
};

inline Placement assign_placement(const PlacementSplit& split, RngStream& rng) {
  const double u = rng.uniform();
  if (u < split.p_local) return Placement::Local;
  if (u < split.p_local + split.p_fog) return Placement::Fog;
  return Placement::Cloud;
}

// Top-ceil(S*N) ranks, identical replicas at every fog node. Membership is a
// rank comparison because the cached set is always a popularity prefix.
struct CacheState {
  double storage_fraction = 0.0;  // S
  std::uint32_t cached_count = 0; // ceil(S * N)

  bool contains(std::uint32_t type_rank) const {
    return type_rank >= 1 && type_rank <= cached_count;
  }
};

inline CacheState build_cache(const Catalog& catalog, double storage_fraction) {
  if (!(storage_fraction >= 0.0 && storage_fraction <= 1.0))
    throw std::invalid_argument("build_cache: storage fraction must lie in [0, 1]");
  CacheState cache;
  cache.storage_fraction = storage_fraction;
  // The 1e-9 guard keeps S*N from ceiling up on fp residue (0.2 * 1000 is a
  // hair above 200 in binary).
  cache.cached_count = static_cast<std::uint32_t>(
      std::ceil(storage_fraction * catalog.size() - 1e-9));
  return cache;
}

inline bool lookup(const CacheState& cache, std::uint32_t type_rank) {
  return cache.contains(type_rank);
}

// Probability that a request hits the cache: total popularity mass of the
// cached ranks.
inline double analytic_hit_rate(const Catalog& catalog, double storage_fraction) {
  const CacheState cache = build_cache(catalog, storage_fraction);
  if (cache.cached_count == 0) return 0.0;
  return catalog.cumulative[cache.cached_count - 1];
}

// Wireless congestion between base stations and devices scales the wireless
// tier by (1 - x); other capacities are untouched.
inline Topology apply_congestion(Topology topology, double x) {
  if (!(x >= 0.0 && x < 1.0))
    throw std::invalid_argument("apply_congestion: x must lie in [0, 1)");
  topology.wireless_total_mbps *= (1.0 - x);
  return topology;
}

}  // namespace fogsim
