#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/group.hpp"
#include "core/linear.hpp"

namespace apxgrp {

/// HNF basis of the integer span of {a_i - a_0}, with the generator list
/// (in canonical element order) that produced it.
struct LatticeBasis {
  lin::Hnf hnf;
  std::vector<std::vector<int64_t>> generators;  // k-1 rows, a_i - a_0
  size_t ambient = 0;
};

struct ParallelepipedPoint {
  std::vector<int64_t> point;  // coordinates relative to a_0
  std::vector<int64_t> rep;    // integers z with z . generators = point
  int64_t l1 = 0;
};

/// Rewrite data: the lattice points of the half-open generator cell, their
/// minimal-l1 integer representations, m = max l1, and c = k-1+m.
struct KhovanskiiData {
  std::vector<ParallelepipedPoint> entries;
  int64_t k = 0;
  int64_t m = 0;
  int64_t c = 0;
  std::string policy = "min-l1-lex";
};

LatticeBasis lattice_basis(const PointSet& A);

/// All points of the generated lattice inside {sum t_i g_i : 0 <= t_i < 1},
/// in coordinates relative to a_0.  Exact: the fast path solves uniquely
/// when the generators are independent, otherwise strict-aware elimination
/// decides the half-open membership.
std::vector<GroupElement> enumerate_parallelepiped(const PointSet& A);

/// Integer representation of p over {a_i - a_0} minimizing the l1 norm,
/// lexicographically least among minimizers.  p must lie in the lattice.
std::pair<std::vector<int64_t>, int64_t> minimal_representation(
    const GroupElement& p, const PointSet& A);

KhovanskiiData khovanskii_constant(const PointSet& A);

/// Order-sensitive variant used to check that m does not depend on how the
/// nonzero generators are listed.
KhovanskiiData khovanskii_for_generators(
    const GroupSpec& spec, const std::vector<std::vector<int64_t>>& gens);

/// Membership of v in the half-open cell {sum t_i g_i : 0 <= t_i < 1} by
/// the unique rational solve; the generators must be independent.
bool cell_member_fast(const std::vector<std::vector<int64_t>>& gens,
                      std::span<const int64_t> v);
/// The same membership through strict-aware elimination; any rank.
bool cell_member_elimination(const std::vector<std::vector<int64_t>>& gens,
                             std::span<const int64_t> v);

/// Exact check of the rewrite inclusion for one h >= c*k: every lattice
/// point of the region {sum x_i a_i : x_i >= c, sum x_i <= h-c} must lie in
/// the h-fold sumset.  A must contain 0 as its minimum.
bool verify_rewrite(const PointSet& A, const KhovanskiiData& data, int64_t h);

/// Range form sharing the per-point feasibility work across h values.
bool verify_rewrite_range(const PointSet& A, const KhovanskiiData& data,
                          int64_t h_lo, int64_t h_hi);

}  // namespace apxgrp
