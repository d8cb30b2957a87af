#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/group.hpp"

namespace apxgrp {

/// Open-addressing hash set over flat coordinate rows.  Insertion order is
/// irrelevant: results are always canonicalized before leaving the engine.
class FlatAccumulator {
public:
  explicit FlatAccumulator(size_t width, size_t expected = 16);

  /// Returns true when the row was new.
  bool insert(const int64_t* row);
  bool contains(const int64_t* row) const;
  size_t size() const { return count_; }

  /// Sorted, deduplicated PointSet over the accumulated rows.
  PointSet take(GroupSpec spec);

private:
  size_t probe(const int64_t* row) const;
  void grow();

  size_t width_;
  std::vector<int64_t> arena_;
  std::vector<uint32_t> slots_;  // row index + 1; 0 marks an empty slot
  size_t count_ = 0;
  size_t mask_ = 0;
};

/// Hash membership index over an existing PointSet (one of the verifier's
/// two independent membership routes; the other is PointSet::contains).
class PointIndex {
public:
  explicit PointIndex(const PointSet& ps);
  bool contains(Row r) const;
  /// Canonical row index, or PointSet::npos.
  size_t find(Row r) const;

private:
  const PointSet* ps_;
  std::vector<uint32_t> slots_;
  size_t mask_ = 0;
};

/// {s + t : s in S, t in T}; hash-accumulation path.
PointSet sumset(const PointSet& S, const PointSet& T);
/// Same result via materialize-sort-unique; kept for cross-checks.
PointSet sumset_sorted(const PointSet& S, const PointSet& T);

/// h-fold sumset, h >= 1, computed incrementally through the power cache.
PointSet h_fold(const PointSet& A, int64_t h);

/// Drops all cached powers (test isolation / memory control).
void clear_power_cache();

PointSet dilate(const PointSet& A, int64_t t);
PointSet translate(const PointSet& A, const GroupElement& c);
PointSet negate_set(const PointSet& A);
/// rhA - hA style candidate universe: {u - b : u in U, b in B}.
PointSet difference_set(const PointSet& U, const PointSet& B);

PointSet direct_product(const PointSet& S0, const PointSet& S1);
/// Free parts of S over the torsion-free spec (rank must be positive).
PointSet project_free(const PointSet& S);

/// Homomorphism G -> G' given by images of the torsion generators and the
/// free basis vectors.  Validated so that d_i * torsion_image_i = 0.
struct Homomorphism {
  GroupSpec domain;
  GroupSpec codomain;
  std::vector<GroupElement> torsion_images;
  std::vector<GroupElement> free_images;

  static Homomorphism make(GroupSpec domain, GroupSpec codomain,
                           std::vector<GroupElement> torsion_images,
                           std::vector<GroupElement> free_images);
  static Homomorphism identity(const GroupSpec& spec);

  GroupElement apply(const GroupElement& x) const;
};

PointSet hom_image(const PointSet& S, const Homomorphism& f);

}  // namespace apxgrp
