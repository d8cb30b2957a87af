#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/group.hpp"

namespace apxgrp {

struct VerifyResult {
  bool ok = false;
  std::optional<GroupElement> witness;  // first missed point, canonical order
};

/// Exact containment rh*A within X + h*A, decided by hash membership.
VerifyResult verify_cover(const PointSet& A, int64_t r, int64_t h,
                          const PointSet& X);
/// Independent route: binary search over the sorted rows of h*A.
VerifyResult verify_cover_sorted(const PointSet& A, int64_t r, int64_t h,
                                 const PointSet& X);

/// ceil(|rhA| / |hA|): no cover can be smaller.
int64_t lower_bound_size(const PointSet& A, int64_t r, int64_t h);

/// Greedy cover over the candidate translates rhA - hA; picks the candidate
/// covering the most uncovered points, ties resolved by canonical order.
PointSet greedy_cover(const PointSet& A, int64_t r, int64_t h);

struct MinimalResult {
  PointSet cover;
  bool optimal = false;
  int64_t nodes = 0;
};

/// Exact minimum-cardinality cover by branch and bound seeded with greedy;
/// budget <= 0 uses the configured default.  Returns the lexicographically
/// least optimum; optimal=false with the best cover found when the node
/// budget runs out.
MinimalResult minimal_cover(const PointSet& A, int64_t r, int64_t h,
                            int64_t budget);

struct ScanRow {
  int64_t h = 0;
  int64_t greedy_size = 0;
  std::optional<int64_t> minimal_size;
  bool minimal_optimal = false;
  int64_t lower_bound = 0;
  std::optional<int64_t> paper_bound;
};

struct ScanResult {
  std::optional<int64_t> h0;  // empirical, valid only up to h_max
  int64_t h_max = 0;
  std::vector<ScanRow> rows;
};

/// Per-h cover sizes up to h_max; h0 is the least h0 with size <= ell for
/// every h in [h0, h_max], decided by greedy with exact fallback.
ScanResult scan_h0(const PointSet& A, int64_t r, int64_t ell, int64_t h_max,
                   bool exact);

struct CoverCertificate {
  PointSet set;
  int64_t r = 0;
  int64_t h = 0;
  PointSet cover;
  std::string method;
  bool verified = false;
  int64_t lower_bound = 0;
  std::optional<int64_t> paper_bound;
  std::optional<int64_t> khovanskii_c;
  std::string set_hash;
  std::string version;
};

struct CertifyOutcome {
  CoverCertificate certificate;
  VerifyResult verification;
};

/// Runs the exact containment check in-process and assembles the
/// certificate; verified is never inherited from a previous run.
CertifyOutcome certify(const PointSet& A, int64_t r, int64_t h,
                       const PointSet& X, const std::string& method,
                       std::optional<int64_t> paper_bound,
                       std::optional<int64_t> khovanskii_c);

}  // namespace apxgrp
