#include "core/sumset.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <mutex>
#include <numeric>

#include "core/config.hpp"

namespace apxgrp {

namespace {

uint64_t hash_row(const int64_t* row, size_t width) {
  uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (size_t i = 0; i < width; ++i) {
    uint64_t x = static_cast<uint64_t>(row[i]);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    h = (h ^ x) * 0x94d049bb133111ebULL;
  }
  return h ^ (h >> 31);
}

size_t table_size_for(size_t expected) {
  size_t n = 16;
  while (n < expected * 2) n <<= 1;
  return n;
}

}  // namespace

FlatAccumulator::FlatAccumulator(size_t width, size_t expected)
    : width_(width) {
  size_t n = table_size_for(expected);
  slots_.assign(n, 0);
  mask_ = n - 1;
}

size_t FlatAccumulator::probe(const int64_t* row) const {
  size_t i = hash_row(row, width_) & mask_;
  while (true) {
    uint32_t s = slots_[i];
    if (s == 0) return i;
    const int64_t* stored = arena_.data() + static_cast<size_t>(s - 1) * width_;
    if (std::equal(stored, stored + width_, row)) return i;
    i = (i + 1) & mask_;
  }
}

void FlatAccumulator::grow() {
  size_t n = (mask_ + 1) << 1;
  std::vector<uint32_t> fresh(n, 0);
  size_t fresh_mask = n - 1;
  for (uint32_t s : slots_) {
    if (s == 0) continue;
    const int64_t* row = arena_.data() + static_cast<size_t>(s - 1) * width_;
    size_t i = hash_row(row, width_) & fresh_mask;
    while (fresh[i] != 0) i = (i + 1) & fresh_mask;
    fresh[i] = s;
  }
  slots_ = std::move(fresh);
  mask_ = fresh_mask;
}

bool FlatAccumulator::insert(const int64_t* row) {
  if (width_ == 0) {
    bool fresh = count_ == 0;
    count_ = 1;
    return fresh;
  }
  size_t i = probe(row);
  if (slots_[i] != 0) return false;
  arena_.insert(arena_.end(), row, row + width_);
  ++count_;
  if (count_ > UINT32_MAX - 2) {
    raise(ErrorCode::Resource, "sumset accumulator exceeded index range");
  }
  slots_[i] = static_cast<uint32_t>(count_);
  if (count_ * 10 >= (mask_ + 1) * 7) grow();
  return true;
}

bool FlatAccumulator::contains(const int64_t* row) const {
  if (width_ == 0) return count_ > 0;
  return slots_[probe(row)] != 0;
}

PointSet FlatAccumulator::take(GroupSpec spec) {
  if (spec.width() == 0) {
    std::vector<int64_t> none;
    return count_ > 0 ? PointSet::from_rows(std::move(spec), {0})
                      : PointSet(std::move(spec));
  }
  return PointSet::from_rows(std::move(spec), std::move(arena_));
}

PointIndex::PointIndex(const PointSet& ps) : ps_(&ps) {
  size_t n = table_size_for(ps.size() + 1);
  slots_.assign(n, 0);
  mask_ = n - 1;
  size_t w = ps.width();
  if (w == 0) return;
  for (size_t r = 0; r < ps.size(); ++r) {
    const int64_t* row = ps.data().data() + r * w;
    size_t i = hash_row(row, w) & mask_;
    while (slots_[i] != 0) i = (i + 1) & mask_;
    slots_[i] = static_cast<uint32_t>(r + 1);
  }
}

size_t PointIndex::find(Row r) const {
  size_t w = ps_->width();
  if (w == 0) return ps_->size() > 0 ? 0 : PointSet::npos;
  if (r.size() != w) return PointSet::npos;
  size_t i = hash_row(r.data(), w) & mask_;
  while (true) {
    uint32_t s = slots_[i];
    if (s == 0) return PointSet::npos;
    const int64_t* stored = ps_->data().data() + static_cast<size_t>(s - 1) * w;
    if (std::equal(stored, stored + w, r.begin())) return s - 1;
    i = (i + 1) & mask_;
  }
}

bool PointIndex::contains(Row r) const { return find(r) != PointSet::npos; }

namespace {

void check_specs(const PointSet& S, const PointSet& T) {
  if (!(S.spec() == T.spec())) {
    raise(ErrorCode::SpecMismatch, "sumset operands live in different groups");
  }
}

void check_pair_cap(size_t a, size_t b) {
  __int128 prod = static_cast<__int128>(a) * static_cast<__int128>(b);
  if (prod > limits().sumset_pair_cap) {
    raise(ErrorCode::Resource,
          "predicted sumset work exceeds the configured cap");
  }
}

}  // namespace

PointSet sumset(const PointSet& S, const PointSet& T) {
  check_specs(S, T);
  S.require_nonempty("sumset");
  T.require_nonempty("sumset");
  check_pair_cap(S.size(), T.size());
  const GroupSpec& spec = S.spec();
  size_t w = spec.width();
  FlatAccumulator acc(w, std::max(S.size(), T.size()) * 2);
  std::vector<int64_t> buf(w);
  for (size_t i = 0; i < S.size(); ++i) {
    const int64_t* s = S.data().data() + i * w;
    for (size_t j = 0; j < T.size(); ++j) {
      const int64_t* t = T.data().data() + j * w;
      add_rows(spec, s, t, buf.data());
      acc.insert(buf.data());
    }
  }
  return acc.take(spec);
}

PointSet sumset_sorted(const PointSet& S, const PointSet& T) {
  check_specs(S, T);
  S.require_nonempty("sumset");
  T.require_nonempty("sumset");
  check_pair_cap(S.size(), T.size());
  const GroupSpec& spec = S.spec();
  size_t w = spec.width();
  std::vector<int64_t> rows;
  rows.reserve(S.size() * T.size() * w);
  std::vector<int64_t> buf(w);
  for (size_t i = 0; i < S.size(); ++i) {
    const int64_t* s = S.data().data() + i * w;
    for (size_t j = 0; j < T.size(); ++j) {
      const int64_t* t = T.data().data() + j * w;
      add_rows(spec, s, t, buf.data());
      rows.insert(rows.end(), buf.begin(), buf.end());
    }
  }
  return PointSet::from_rows(spec, std::move(rows));
}

namespace {

// Memo table for iterated sumsets, keyed by (canonical base set, h).
// Determinism does not depend on the cache: entries are exact results.
struct CacheEntry {
  uint64_t key;
  GroupSpec spec;
  std::vector<int64_t> base;
  int64_t h;
  std::shared_ptr<const PointSet> result;
};

class PowerCache {
public:
  std::shared_ptr<const PointSet> find(uint64_t key, const PointSet& A,
                                       int64_t h) {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& e : entries_) {
      if (e.key == key && e.h == h && e.spec == A.spec() &&
          e.base == A.data()) {
        return e.result;
      }
    }
    return nullptr;
  }

  // Largest cached power below h for the same base set.
  std::pair<int64_t, std::shared_ptr<const PointSet>> best_below(
      uint64_t key, const PointSet& A, int64_t h) {
    std::lock_guard<std::mutex> lock(mu_);
    int64_t best = 0;
    std::shared_ptr<const PointSet> result;
    for (const auto& e : entries_) {
      if (e.key == key && e.h < h && e.h > best && e.spec == A.spec() &&
          e.base == A.data()) {
        best = e.h;
        result = e.result;
      }
    }
    return {best, result};
  }

  void store(uint64_t key, const PointSet& A, int64_t h,
             std::shared_ptr<const PointSet> result) {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& e : entries_) {
      if (e.key == key && e.h == h && e.spec == A.spec() &&
          e.base == A.data()) {
        return;
      }
    }
    points_ += static_cast<int64_t>(result->size());
    entries_.push_back({key, A.spec(), A.data(), h, std::move(result)});
    while (points_ > limits().cache_point_cap && entries_.size() > 1) {
      points_ -= static_cast<int64_t>(entries_.front().result->size());
      entries_.pop_front();
    }
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    entries_.clear();
    points_ = 0;
  }

private:
  std::mutex mu_;
  std::deque<CacheEntry> entries_;
  int64_t points_ = 0;
};

PowerCache& power_cache() {
  static PowerCache cache;
  return cache;
}

}  // namespace

void clear_power_cache() { power_cache().clear(); }

PointSet h_fold(const PointSet& A, int64_t h) {
  A.require_nonempty("h_fold");
  if (h < 1) {
    raise(ErrorCode::Domain, "h_fold requires h >= 1");
  }
  if (h == 1) return A;
  uint64_t key = hash_rows(A.spec(), A.data());
  if (auto hit = power_cache().find(key, A, h)) {
    return *hit;
  }
  auto [base_h, base] = power_cache().best_below(key, A, h);
  PointSet cur = base ? *base : A;
  int64_t cur_h = base ? base_h : 1;
  while (cur_h < h) {
    cur = sumset(cur, A);
    ++cur_h;
  }
  power_cache().store(key, A, h, std::make_shared<PointSet>(cur));
  return cur;
}

PointSet dilate(const PointSet& A, int64_t t) {
  const GroupSpec& spec = A.spec();
  std::vector<int64_t> rows;
  rows.reserve(A.data().size());
  for (size_t i = 0; i < A.size(); ++i) {
    GroupElement scaled = scale_elem(A.element(i), t);
    rows.insert(rows.end(), scaled.coords().begin(), scaled.coords().end());
  }
  return PointSet::from_rows(spec, std::move(rows));
}

PointSet translate(const PointSet& A, const GroupElement& c) {
  if (!(A.spec() == c.spec())) {
    raise(ErrorCode::SpecMismatch, "translate: element not in the set's group");
  }
  const GroupSpec& spec = A.spec();
  size_t w = spec.width();
  std::vector<int64_t> rows(A.data().size());
  for (size_t i = 0; i < A.size(); ++i) {
    add_rows(spec, A.data().data() + i * w, c.coords().data(),
             rows.data() + i * w);
  }
  return PointSet::from_rows(spec, std::move(rows));
}

PointSet negate_set(const PointSet& A) {
  std::vector<int64_t> rows;
  rows.reserve(A.data().size());
  for (size_t i = 0; i < A.size(); ++i) {
    GroupElement n = negate_elem(A.element(i));
    rows.insert(rows.end(), n.coords().begin(), n.coords().end());
  }
  return PointSet::from_rows(A.spec(), std::move(rows));
}

PointSet difference_set(const PointSet& U, const PointSet& B) {
  return sumset(U, negate_set(B));
}

PointSet direct_product(const PointSet& S0, const PointSet& S1) {
  const GroupSpec& a = S0.spec();
  const GroupSpec& b = S1.spec();
  std::vector<int64_t> moduli = a.moduli();
  moduli.insert(moduli.end(), b.moduli().begin(), b.moduli().end());
  GroupSpec prod(std::move(moduli), a.rank() + b.rank());
  check_pair_cap(S0.size(), S1.size());
  size_t w = prod.width();
  std::vector<int64_t> rows;
  rows.reserve(S0.size() * S1.size() * w);
  for (size_t i = 0; i < S0.size(); ++i) {
    Row r0 = S0.row(i);
    for (size_t j = 0; j < S1.size(); ++j) {
      Row r1 = S1.row(j);
      // torsion parts first, then both free parts
      rows.insert(rows.end(), r0.begin(), r0.begin() + a.torsion_size());
      rows.insert(rows.end(), r1.begin(), r1.begin() + b.torsion_size());
      rows.insert(rows.end(), r0.begin() + a.torsion_size(), r0.end());
      rows.insert(rows.end(), r1.begin() + b.torsion_size(), r1.end());
    }
  }
  return PointSet::from_rows(prod, std::move(rows));
}

PointSet project_free(const PointSet& S) {
  const GroupSpec& spec = S.spec();
  if (spec.rank() == 0) {
    raise(ErrorCode::Domain, "projection requires positive free rank");
  }
  GroupSpec target({}, spec.rank());
  size_t m = spec.torsion_size();
  size_t w = spec.width();
  std::vector<int64_t> rows;
  rows.reserve(S.size() * target.width());
  for (size_t i = 0; i < S.size(); ++i) {
    const int64_t* r = S.data().data() + i * w;
    rows.insert(rows.end(), r + m, r + w);
  }
  return PointSet::from_rows(target, std::move(rows));
}

Homomorphism Homomorphism::make(GroupSpec domain, GroupSpec codomain,
                                std::vector<GroupElement> torsion_images,
                                std::vector<GroupElement> free_images) {
  if (torsion_images.size() != domain.torsion_size() ||
      free_images.size() != static_cast<size_t>(domain.rank())) {
    raise(ErrorCode::Validation, "homomorphism image count mismatch");
  }
  for (size_t i = 0; i < torsion_images.size(); ++i) {
    const GroupElement& img = torsion_images[i];
    if (!(img.spec() == codomain)) {
      raise(ErrorCode::Validation, "torsion image in the wrong group");
    }
    if (!scale_elem(img, domain.moduli()[i]).is_identity()) {
      raise(ErrorCode::Validation,
            "torsion image violates the modulus relation");
    }
  }
  for (const GroupElement& img : free_images) {
    if (!(img.spec() == codomain)) {
      raise(ErrorCode::Validation, "free image in the wrong group");
    }
  }
  return Homomorphism{std::move(domain), std::move(codomain),
                      std::move(torsion_images), std::move(free_images)};
}

Homomorphism Homomorphism::identity(const GroupSpec& spec) {
  std::vector<GroupElement> torsion, free;
  for (size_t i = 0; i < spec.torsion_size(); ++i) {
    std::vector<int64_t> coords(spec.width(), 0);
    coords[i] = 1;
    torsion.emplace_back(spec, std::move(coords));
  }
  for (size_t j = 0; j < static_cast<size_t>(spec.rank()); ++j) {
    std::vector<int64_t> coords(spec.width(), 0);
    coords[spec.torsion_size() + j] = 1;
    free.emplace_back(spec, std::move(coords));
  }
  return Homomorphism{spec, spec, std::move(torsion), std::move(free)};
}

GroupElement Homomorphism::apply(const GroupElement& x) const {
  if (!(x.spec() == domain)) {
    raise(ErrorCode::SpecMismatch, "homomorphism applied outside its domain");
  }
  GroupElement acc = GroupElement::identity(codomain);
  for (size_t i = 0; i < torsion_images.size(); ++i) {
    acc = add(acc, scale_elem(torsion_images[i], x.coords()[i]));
  }
  size_t m = domain.torsion_size();
  for (size_t j = 0; j < free_images.size(); ++j) {
    acc = add(acc, scale_elem(free_images[j], x.coords()[m + j]));
  }
  return acc;
}

PointSet hom_image(const PointSet& S, const Homomorphism& f) {
  if (!(S.spec() == f.domain)) {
    raise(ErrorCode::SpecMismatch, "hom_image applied outside its domain");
  }
  std::vector<int64_t> rows;
  rows.reserve(S.size() * f.codomain.width());
  for (size_t i = 0; i < S.size(); ++i) {
    GroupElement y = f.apply(S.element(i));
    rows.insert(rows.end(), y.coords().begin(), y.coords().end());
  }
  return PointSet::from_rows(f.codomain, std::move(rows));
}

}  // namespace apxgrp
