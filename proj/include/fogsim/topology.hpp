#pragma once
// Capacity description of the device/fog/cloud hierarchy. The wireless
// capacity is a network total split evenly across the M fog base stations;
// the backhaul between fog and cloud is a single shared link.

#include <cstdint>
#include <stdexcept>

namespace fogsim {

struct Topology {
  std::uint32_t fog_count = 4;          // M
  double device_cpu_gcps = 13.6;        // per device, Gcycles/s
  double fog_cpu_gcps = 1740.8;         // per fog node, Gcycles/s
  double cloud_cpu_gcps = 13926.4;      // one pool, Gcycles/s
  double wireless_total_mbps = 1024.0;  // split as total/M per fog node
  double backhaul_total_mbps = 512.0;   // one shared link

  double wireless_per_fog_mbps() const {
    return wireless_total_mbps / fog_count;
  }

  void validate() const {
    if (fog_count == 0)
      throw std::invalid_argument("Topology: fog_count must be >= 1");
    if (!(device_cpu_gcps > 0.0) || !(fog_cpu_gcps > 0.0) ||
        !(cloud_cpu_gcps > 0.0) || !(wireless_total_mbps > 0.0) ||
        !(backhaul_total_mbps > 0.0))
      throw std::invalid_argument("Topology: all capacities must be > 0");
  }
};

}  // namespace fogsim
