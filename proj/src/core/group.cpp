#include "core/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "core/config.hpp"

namespace apxgrp {

int64_t checked_add_i64(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    raise(ErrorCode::Overflow, "integer overflow in addition");
  }
  return r;
}

int64_t checked_sub_i64(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    raise(ErrorCode::Overflow, "integer overflow in subtraction");
  }
  return r;
}

int64_t checked_mul_i64(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    raise(ErrorCode::Overflow, "integer overflow in multiplication");
  }
  return r;
}

int64_t checked_neg_i64(int64_t a) {
  if (a == INT64_MIN) {
    raise(ErrorCode::Overflow, "integer overflow in negation");
  }
  return -a;
}

int64_t mod_reduce(int64_t v, int64_t d) {
  int64_t r = v % d;
  return r < 0 ? r + d : r;
}

namespace {

// (t * g) mod d without intermediate overflow.
int64_t mulmod(int64_t t, int64_t g, int64_t d) {
  __int128 p = static_cast<__int128>(t) * static_cast<__int128>(g);
  int64_t r = static_cast<int64_t>(p % d);
  return r < 0 ? r + d : r;
}

}  // namespace

GroupSpec::GroupSpec(std::vector<int64_t> moduli, int64_t rank)
    : moduli_(std::move(moduli)), rank_(rank) {
  if (rank_ < 0) {
    raise(ErrorCode::Domain, "group rank must be nonnegative");
  }
  for (int64_t d : moduli_) {
    if (d < 2) {
      raise(ErrorCode::Domain, "each modulus must be at least 2");
    }
  }
  if (width() > static_cast<size_t>(limits().max_width)) {
    raise(ErrorCode::Resource, "group width exceeds the configured cap");
  }
}

int64_t GroupSpec::group0_order() const {
  int64_t n0 = 1;
  for (int64_t d : moduli_) {
    n0 = checked_mul_i64(n0, d);
  }
  return n0;
}

std::string GroupSpec::describe() const {
  std::ostringstream os;
  os << "(moduli=[";
  for (size_t i = 0; i < moduli_.size(); ++i) {
    if (i) os << ",";
    os << moduli_[i];
  }
  os << "], rank=" << rank_ << ")";
  return os.str();
}

GroupElement::GroupElement(GroupSpec spec, std::vector<int64_t> coords)
    : spec_(std::move(spec)), coords_(std::move(coords)) {
  if (coords_.size() != spec_.width()) {
    raise(ErrorCode::Domain, "element coordinate count does not match group");
  }
  for (size_t i = 0; i < spec_.torsion_size(); ++i) {
    coords_[i] = mod_reduce(coords_[i], spec_.moduli()[i]);
  }
}

GroupElement GroupElement::identity(const GroupSpec& spec) {
  return GroupElement(spec, std::vector<int64_t>(spec.width(), 0));
}

bool GroupElement::is_identity() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](int64_t v) { return v == 0; });
}

static void check_same_spec(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) {
    raise(ErrorCode::SpecMismatch,
          "group mismatch: " + a.describe() + " vs " + b.describe());
  }
}

void add_rows(const GroupSpec& spec, const int64_t* a, const int64_t* b,
              int64_t* out) {
  size_t m = spec.torsion_size();
  const auto& moduli = spec.moduli();
  for (size_t i = 0; i < m; ++i) {
    int64_t s = a[i] + b[i];  // both reduced, so s < 2d fits
    out[i] = s >= moduli[i] ? s - moduli[i] : s;
  }
  size_t w = spec.width();
  for (size_t i = m; i < w; ++i) {
    out[i] = checked_add_i64(a[i], b[i]);
  }
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
  check_same_spec(a.spec(), b.spec());
  std::vector<int64_t> out(a.spec().width());
  add_rows(a.spec(), a.coords().data(), b.coords().data(), out.data());
  return GroupElement(a.spec(), std::move(out));
}

GroupElement negate_elem(const GroupElement& a) {
  const GroupSpec& spec = a.spec();
  std::vector<int64_t> out(spec.width());
  size_t m = spec.torsion_size();
  for (size_t i = 0; i < m; ++i) {
    out[i] = a.coords()[i] == 0 ? 0 : spec.moduli()[i] - a.coords()[i];
  }
  for (size_t i = m; i < spec.width(); ++i) {
    out[i] = checked_neg_i64(a.coords()[i]);
  }
  return GroupElement(spec, std::move(out));
}

GroupElement scale_elem(const GroupElement& a, int64_t t) {
  const GroupSpec& spec = a.spec();
  std::vector<int64_t> out(spec.width());
  size_t m = spec.torsion_size();
  for (size_t i = 0; i < m; ++i) {
    out[i] = mulmod(t, a.coords()[i], spec.moduli()[i]);
  }
  for (size_t i = m; i < spec.width(); ++i) {
    out[i] = checked_mul_i64(a.coords()[i], t);
  }
  return GroupElement(spec, std::move(out));
}

bool row_less(Row a, Row b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

PointSet PointSet::from_rows(GroupSpec spec, std::vector<int64_t> rows) {
  size_t w = spec.width();
  PointSet ps(spec);
  if (rows.empty()) {
    return ps;
  }
  if (w == 0) {
    // The trivial group: any nonempty input collapses to {identity}.
    ps.count_ = 1;
    return ps;
  }
  if (rows.size() % w != 0) {
    raise(ErrorCode::Internal, "flat row data not a multiple of the width");
  }
  size_t n = rows.size() / w;
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const int64_t* base = rows.data();
  std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
    return std::lexicographical_compare(base + x * w, base + (x + 1) * w,
                                        base + y * w, base + (y + 1) * w);
  });
  std::vector<int64_t> out;
  out.reserve(rows.size());
  for (size_t i = 0; i < n; ++i) {
    const int64_t* r = base + order[i] * w;
    if (!out.empty() &&
        std::equal(r, r + w, out.data() + out.size() - w)) {
      continue;
    }
    out.insert(out.end(), r, r + w);
  }
  ps.data_ = std::move(out);
  ps.count_ = ps.data_.size() / w;
  return ps;
}

PointSet PointSet::from_elements(const GroupSpec& spec,
                                 const std::vector<GroupElement>& elems,
                                 bool require_nonempty) {
  if (require_nonempty && elems.empty()) {
    raise(ErrorCode::Domain, "a nonempty set is required");
  }
  for (const auto& e : elems) {
    check_same_spec(spec, e.spec());
  }
  if (spec.width() == 0) {
    PointSet ps(spec);
    ps.count_ = elems.empty() ? 0 : 1;
    return ps;
  }
  std::vector<int64_t> rows;
  rows.reserve(elems.size() * spec.width());
  for (const auto& e : elems) {
    rows.insert(rows.end(), e.coords().begin(), e.coords().end());
  }
  return from_rows(spec, std::move(rows));
}

GroupElement PointSet::element(size_t i) const {
  Row r = row(i);
  return GroupElement(spec_, std::vector<int64_t>(r.begin(), r.end()));
}

bool PointSet::contains(Row r) const { return index_of(r) != npos; }

size_t PointSet::index_of(Row r) const {
  size_t w = spec_.width();
  if (w == 0) {
    return count_ > 0 ? 0 : npos;
  }
  if (r.size() != w) {
    return npos;
  }
  size_t lo = 0, hi = count_;
  while (lo < hi) {
    size_t mid = lo + (hi - lo) / 2;
    const int64_t* m = data_.data() + mid * w;
    if (std::lexicographical_compare(m, m + w, r.begin(), r.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count_) {
    const int64_t* m = data_.data() + lo * w;
    if (std::equal(m, m + w, r.begin(), r.end())) {
      return lo;
    }
  }
  return npos;
}

GroupElement PointSet::min_element() const {
  require_nonempty("min_element");
  return element(0);
}

void PointSet::require_nonempty(const char* what) const {
  if (empty()) {
    raise(ErrorCode::Domain, std::string(what) + " requires a nonempty set");
  }
}

PointSet canonicalize(const GroupSpec& spec,
                      const std::vector<GroupElement>& raw,
                      bool require_nonempty) {
  return PointSet::from_elements(spec, raw, require_nonempty);
}

PointSet full_torsion_group(const GroupSpec& spec) {
  if (!spec.pure_torsion()) {
    raise(ErrorCode::Domain, "full group enumeration needs rank 0");
  }
  int64_t n0 = spec.group0_order();
  if (n0 > limits().universe_cap) {
    raise(ErrorCode::Resource, "finite group too large to enumerate");
  }
  if (spec.trivial()) {
    return PointSet::from_elements(spec, {GroupElement::identity(spec)});
  }
  size_t m = spec.torsion_size();
  std::vector<int64_t> rows;
  rows.reserve(static_cast<size_t>(n0) * m);
  std::vector<int64_t> cur(m, 0);
  for (int64_t i = 0; i < n0; ++i) {
    rows.insert(rows.end(), cur.begin(), cur.end());
    for (size_t j = m; j-- > 0;) {
      if (++cur[j] < spec.moduli()[j]) break;
      cur[j] = 0;
    }
  }
  return PointSet::from_rows(spec, std::move(rows));
}

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t hash_rows(const GroupSpec& spec, const std::vector<int64_t>& data) {
  uint64_t h = fnv1a64(data.data(), data.size() * sizeof(int64_t));
  h = fnv1a64(spec.moduli().data(), spec.moduli().size() * sizeof(int64_t), h);
  int64_t r = spec.rank();
  return fnv1a64(&r, sizeof(r), h);
}

}  // namespace apxgrp
