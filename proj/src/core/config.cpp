#include "core/config.hpp"

#include <cstdlib>

namespace apxgrp {

namespace {

Limits make_default_limits() {
  Limits lim;
  if (const char* env = std::getenv("APXGRP_MAX_UNIVERSE")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) {
      lim.universe_cap = static_cast<int64_t>(v);
    }
  }
  return lim;
}

}  // namespace

Limits& limits() {
  static Limits lim = make_default_limits();
  return lim;
}

}  // namespace apxgrp
