#pragma once

#include <cstdint>

namespace apxgrp {

inline constexpr const char* kVersion = "apxgrp-0.1.0";

/// Process-wide resource limits.  All guards abort with a resource error
/// rather than ever returning a truncated or approximate answer.
struct Limits {
  int64_t sumset_pair_cap = 10'000'000;    // |S|*|T| guard for one sumset
  int64_t universe_cap = 1'000'000;        // exact minimal-cover universe size
  int64_t enumeration_cap = 1'000'000;     // lattice box enumeration guard
  int64_t greedy_work_cap = 200'000'000;   // candidate*|hA| membership probes
  int64_t bb_work_cap = 20'000'000;        // stored coverage entries for B&B
  int64_t search_box_cap = 4'000'000;      // kernel-shift search guard
  int64_t default_bb_budget = 200'000;     // branch-and-bound node budget
  int64_t cache_point_cap = 4'000'000;     // rows retained in the power cache
  int fm_generator_cap = 6;                // variable cap for exact elimination
  int max_width = 32;                      // torsion + free coordinate count
};

/// Mutable singleton; universe_cap is seeded from APXGRP_MAX_UNIVERSE.
Limits& limits();

}  // namespace apxgrp
