#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/group.hpp"
#include "core/linear.hpp"

namespace apxgrp {

using lin::BigInt;
using lin::Rat;

/// Exact rational coefficient vector over the k-1 generators a_1-a_0, ...,
/// a_{k-1}-a_0; the a_0 translation is bookkept by the cover builders.
struct CoeffVector {
  int64_t k = 2;
  std::vector<Rat> entries;  // k-1 nonnegative rationals
  Rat budget;                // sum(entries) <= budget

  CoeffVector(int64_t k_, std::vector<Rat> entries_, Rat budget_);

  Rat total() const;
};

/// A cover element remembered together with the multiplier tuple that
/// produced it, so semigroup membership is explicit by construction.
struct ComboPoint {
  std::vector<int64_t> multipliers;  // k-1 nonnegative integers
  GroupElement embedded;
};

/// b(r,k) = C((r+1)(k-1)-1, k-1); the multiplier tuples with sum at most
/// r(k-1)-1 are counted by exactly this binomial.
BigInt binom_b(int64_t r, int64_t k);

/// Multiplier tuples with sum <= r(k-1)-1, embedded through the generators
/// of A with the (k-1)(r-1)a_0 translation applied.  List length is b(r,k).
std::vector<ComboPoint> build_Xr(const PointSet& A, int64_t r);

/// The same construction dilated by h; covers the h-dilated generating set.
std::vector<ComboPoint> dilated_cover(const PointSet& A, int64_t r, int64_t h);

/// Canonical PointSet of the embedded elements of a combo list.
PointSet embed_combo(const GroupSpec& spec,
                     const std::vector<ComboPoint>& combos);

struct Decomposition {
  std::vector<int64_t> multipliers;   // m, sum <= r(k-1)-1
  std::vector<Rat> remainder;         // lambda, each in [0, 1/(k-1))
  std::optional<size_t> unit_index;   // j in the all-integer case (0-based)
};

/// Splits mu (sum <= r) as mu_i = m_i/(k-1) + lambda_i, exactly.  When every
/// lambda vanishes and mu != 0, returns reduced multipliers plus the unit
/// index j with mu = m'/(k-1) + e_j/(k-1).
Decomposition decompose(const CoeffVector& mu, int64_t r);

/// Pigeonhole step on a full-length coefficient vector with sum h >= c*k:
/// returns the smallest index j with mu_j >= c and the vector with c removed
/// at j, so that mu = c*e_j + mu'.
std::pair<size_t, std::vector<Rat>> reduce_hK(const std::vector<Rat>& mu,
                                              int64_t c);

int64_t binom_b_i64(int64_t r, int64_t k);

}  // namespace apxgrp
