#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "core/group.hpp"

namespace apxgrp::testing {

inline GroupSpec z_spec(int64_t rank = 1) { return GroupSpec({}, rank); }

inline GroupElement elem(const GroupSpec& spec, std::vector<int64_t> coords) {
  return GroupElement(spec, std::move(coords));
}

/// Subset of Z from a list of integers.
inline PointSet zset(const std::vector<int64_t>& values) {
  GroupSpec spec = z_spec(1);
  std::vector<int64_t> rows(values.begin(), values.end());
  return PointSet::from_rows(spec, std::move(rows));
}

/// Subset of Z^2 from coordinate pairs.
inline PointSet z2set(const std::vector<std::pair<int64_t, int64_t>>& pts) {
  GroupSpec spec = z_spec(2);
  std::vector<int64_t> rows;
  for (auto [x, y] : pts) {
    rows.push_back(x);
    rows.push_back(y);
  }
  return PointSet::from_rows(spec, std::move(rows));
}

inline PointSet make_set(const GroupSpec& spec,
                         const std::vector<std::vector<int64_t>>& pts) {
  std::vector<GroupElement> elems;
  for (const auto& p : pts) elems.emplace_back(spec, p);
  return PointSet::from_elements(spec, elems);
}

/// Independent brute-force h-fold sumset over std::set, for oracle checks.
inline std::set<std::vector<int64_t>> brute_hfold(
    const GroupSpec& spec, const std::vector<std::vector<int64_t>>& points,
    int64_t h) {
  std::set<std::vector<int64_t>> cur;
  for (const auto& p : points) {
    cur.insert(GroupElement(spec, p).coords());
  }
  for (int64_t step = 1; step < h; ++step) {
    std::set<std::vector<int64_t>> next;
    for (const auto& a : cur) {
      for (const auto& p : points) {
        GroupElement sum =
            add(GroupElement(spec, a), GroupElement(spec, p));
        next.insert(sum.coords());
      }
    }
    cur = std::move(next);
  }
  return cur;
}

inline std::set<std::vector<int64_t>> as_point_set(const PointSet& ps) {
  std::set<std::vector<int64_t>> out;
  for (size_t i = 0; i < ps.size(); ++i) {
    Row r = ps.row(i);
    out.insert(std::vector<int64_t>(r.begin(), r.end()));
  }
  return out;
}

/// Random nonempty subset of the given group with distinct elements.
inline PointSet random_set(std::mt19937_64& rng, const GroupSpec& spec,
                           size_t size, int64_t coord_lo, int64_t coord_hi) {
  std::uniform_int_distribution<int64_t> coord(coord_lo, coord_hi);
  std::set<std::vector<int64_t>> seen;
  std::vector<GroupElement> elems;
  size_t guard = 0;
  while (seen.size() < size && guard++ < 10000) {
    std::vector<int64_t> coords(spec.width());
    for (auto& c : coords) c = coord(rng);
    GroupElement e(spec, std::move(coords));
    if (seen.insert(e.coords()).second) {
      elems.push_back(std::move(e));
    }
  }
  return PointSet::from_elements(spec, elems);
}

}  // namespace apxgrp::testing
