#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/group.hpp"
#include "core/khovanskii.hpp"

namespace apxgrp {

struct CoverPlan {
  std::string method;                    // simplex | main-zn | abelian
  int64_t r = 0;
  int64_t h = 0;
  int64_t k = 0;                         // generating-set size used
  std::optional<int64_t> khovanskii_c;
  int64_t h_min = 1;                     // c*k^2 where the rewrite is used
  std::optional<int64_t> paper_bound;
};

struct BuiltCover {
  PointSet cover;
  CoverPlan plan;
};

/// Drops cover elements x with (x + hA) disjoint from rhA; such translates
/// cover nothing and never affect validity.
PointSet prune_cover(const PointSet& X, const PointSet& A, int64_t r,
                     int64_t h);

/// Dilated simplex cover for a two-point set: valid for every h >= 1 with
/// at most b(r,2) = r elements.
BuiltCover build_cover_simplex(const PointSet& A, int64_t r, int64_t h);

/// Cover of size <= k*b(r,k) for the dilated set (k-1)*A, valid once
/// h >= c*k^2 with c the rewrite constant of A - a_0.
BuiltCover build_cover_Aprime(const PointSet& A, int64_t r, int64_t h);

/// Cover for an arbitrary lattice set: the (k-1)*A cover filtered down to
/// elements with every coordinate divisible by k-1, then divided by k-1.
/// Singletons are covered by {(r-1)h a}.
BuiltCover build_cover_Zn(const PointSet& A, int64_t r, int64_t h);

/// Composite cover G0 x Y for subsets of G0 x Z^n; pure-torsion sets are
/// covered by the full finite group for every r and h.
BuiltCover build_cover_abelian(const PointSet& A, int64_t r, int64_t h);

/// Transport of a verified cover along a translation: (r-1)h c + X covers
/// c + A at the same (r, h) with the same cardinality.
PointSet transport_cover(const PointSet& X, const PointSet& A,
                         const GroupElement& c, int64_t r, int64_t h);

/// X0 x X1 covers A0 x A1 when both factors are covers at the same (r, h).
PointSet product_cover(const PointSet& X0, const PointSet& A0, int64_t r0,
                       int64_t h0, const PointSet& X1, const PointSet& A1,
                       int64_t r1, int64_t h1);

/// Threshold ck^2 of the main lattice construction on A (1 for singletons).
int64_t cover_h_min(const PointSet& A);

/// Size bound certified by the construction that `auto` would choose.
std::optional<int64_t> paper_bound_for(const PointSet& A, int64_t r);

}  // namespace apxgrp
