#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace apxgrp {

using Row = std::span<const int64_t>;

int64_t checked_add_i64(int64_t a, int64_t b);
int64_t checked_sub_i64(int64_t a, int64_t b);
int64_t checked_mul_i64(int64_t a, int64_t b);
int64_t checked_neg_i64(int64_t a);

/// Residue of v modulo d, reduced into [0, d).
int64_t mod_reduce(int64_t v, int64_t d);

/// Ambient group G0 x Z^n with G0 = Z_{d1} x ... x Z_{dm}.  Coordinates of
/// an element are stored flat, torsion residues first, then free integers.
class GroupSpec {
public:
  GroupSpec() : rank_(0) {}
  GroupSpec(std::vector<int64_t> moduli, int64_t rank);

  const std::vector<int64_t>& moduli() const { return moduli_; }
  int64_t rank() const { return rank_; }
  size_t torsion_size() const { return moduli_.size(); }
  size_t width() const { return moduli_.size() + static_cast<size_t>(rank_); }
  bool torsion_free() const { return moduli_.empty(); }
  bool pure_torsion() const { return rank_ == 0; }
  bool trivial() const { return moduli_.empty() && rank_ == 0; }

  /// |G0|, the product of the moduli (1 for a torsion-free spec).
  int64_t group0_order() const;

  bool operator==(const GroupSpec&) const = default;

  std::string describe() const;

private:
  std::vector<int64_t> moduli_;
  int64_t rank_;
};

class GroupElement {
public:
  GroupElement() = default;
  /// Reduces torsion coordinates into canonical range.
  GroupElement(GroupSpec spec, std::vector<int64_t> coords);

  static GroupElement identity(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  const std::vector<int64_t>& coords() const { return coords_; }
  Row row() const { return Row(coords_); }
  bool is_identity() const;

  bool operator==(const GroupElement&) const = default;

private:
  GroupSpec spec_;
  std::vector<int64_t> coords_;
};

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement negate_elem(const GroupElement& a);
/// t-fold sum of a; t may be negative or zero.
GroupElement scale_elem(const GroupElement& a, int64_t t);

/// Lexicographic order on flat coordinates (torsion first, then free).
bool row_less(Row a, Row b);

/// Writes the reduced coordinate-wise sum of rows a and b into out.
void add_rows(const GroupSpec& spec, const int64_t* a, const int64_t* b,
              int64_t* out);

/// Canonical finite subset: rows sorted lexicographically, no duplicates.
class PointSet {
public:
  PointSet() = default;
  explicit PointSet(GroupSpec spec) : spec_(std::move(spec)) {}

  /// Sorts and deduplicates; rows must already carry reduced torsion.
  static PointSet from_rows(GroupSpec spec, std::vector<int64_t> rows);
  static PointSet from_elements(const GroupSpec& spec,
                                const std::vector<GroupElement>& elems,
                                bool require_nonempty = false);

  const GroupSpec& spec() const { return spec_; }
  size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  size_t width() const { return spec_.width(); }

  Row row(size_t i) const {
    return Row(data_.data() + i * spec_.width(), spec_.width());
  }
  GroupElement element(size_t i) const;
  const std::vector<int64_t>& data() const { return data_; }

  /// Exact membership by binary search over the sorted rows.
  bool contains(Row r) const;
  /// Index of r among the sorted rows, or npos.
  size_t index_of(Row r) const;
  static constexpr size_t npos = static_cast<size_t>(-1);

  /// First element in canonical order; the designated base point.
  GroupElement min_element() const;

  void require_nonempty(const char* what) const;

  bool operator==(const PointSet&) const = default;

private:
  GroupSpec spec_;
  std::vector<int64_t> data_;
  size_t count_ = 0;
};

/// Spec-checked canonicalization of a raw element list.
PointSet canonicalize(const GroupSpec& spec,
                      const std::vector<GroupElement>& raw,
                      bool require_nonempty = false);

/// Every element of the finite group G0 over (moduli, rank 0).
PointSet full_torsion_group(const GroupSpec& spec);

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 1469598103934665603ULL);
uint64_t hash_rows(const GroupSpec& spec, const std::vector<int64_t>& data);

}  // namespace apxgrp
