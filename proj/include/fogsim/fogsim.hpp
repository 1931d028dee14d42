#pragma once
// Umbrella header.

#include "fogsim/config.hpp"
#include "fogsim/engine.hpp"
#include "fogsim/metrics.hpp"
#include "fogsim/oracle.hpp"
#include "fogsim/policy.hpp"
#include "fogsim/power_law.hpp"
#include "fogsim/rng.hpp"
#include "fogsim/scenarios.hpp"
#include "fogsim/text.hpp"
#include "fogsim/topology.hpp"
#include "fogsim/workload.hpp"
