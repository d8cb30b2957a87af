#include "core/simplex.hpp"

#include <algorithm>
#include <functional>

namespace apxgrp {

CoeffVector::CoeffVector(int64_t k_, std::vector<Rat> entries_, Rat budget_)
    : k(k_), entries(std::move(entries_)), budget(std::move(budget_)) {
  if (k < 2) {
    raise(ErrorCode::Domain, "coefficient vectors need k >= 2");
  }
  if (entries.size() != static_cast<size_t>(k - 1)) {
    raise(ErrorCode::Domain, "coefficient vector must have k-1 entries");
  }
  Rat sum = 0;
  for (const Rat& e : entries) {
    if (e < 0) {
      raise(ErrorCode::Domain, "coefficient entries must be nonnegative");
    }
    sum += e;
  }
  if (sum > budget) {
    raise(ErrorCode::Domain, "coefficient entries exceed the budget");
  }
}

Rat CoeffVector::total() const {
  Rat sum = 0;
  for (const Rat& e : entries) sum += e;
  return sum;
}

BigInt binom_b(int64_t r, int64_t k) {
  if (r < 2 || k < 2) {
    raise(ErrorCode::Domain, "binom_b requires r >= 2 and k >= 2");
  }
  BigInt n = BigInt(r + 1) * (k - 1) - 1;
  int64_t j = k - 1;
  BigInt num = 1, den = 1;
  for (int64_t i = 1; i <= j; ++i) {
    num *= n - (j - i);
    den *= i;
  }
  return num / den;
}

int64_t binom_b_i64(int64_t r, int64_t k) { return lin::big_to_i64(binom_b(r, k)); }

namespace {

// Multiplier tuples (m_1..m_{k-1}) with nonnegative entries and sum <= cap,
// in ascending lexicographic order.
void enumerate_tuples(size_t arity, int64_t cap,
                      const std::function<void(const std::vector<int64_t>&)>& emit) {
  std::vector<int64_t> cur(arity, 0);
  std::function<void(size_t, int64_t)> rec = [&](size_t pos, int64_t left) {
    if (pos == arity) {
      emit(cur);
      return;
    }
    for (int64_t v = 0; v <= left; ++v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
    cur[pos] = 0;
  };
  rec(0, cap);
}

}  // namespace

std::vector<ComboPoint> build_Xr(const PointSet& A, int64_t r) {
  A.require_nonempty("build_Xr");
  int64_t k = static_cast<int64_t>(A.size());
  if (k < 2) {
    raise(ErrorCode::Domain, "build_Xr requires at least two points");
  }
  if (r < 2) {
    raise(ErrorCode::Domain, "build_Xr requires r >= 2");
  }
  GroupElement a0 = A.min_element();
  GroupElement neg_a0 = negate_elem(a0);
  std::vector<GroupElement> gens;
  gens.reserve(k - 1);
  for (size_t i = 1; i < A.size(); ++i) {
    gens.push_back(add(A.element(i), neg_a0));
  }
  GroupElement base = scale_elem(a0, (k - 1) * (r - 1));
  int64_t cap = r * (k - 1) - 1;
  std::vector<ComboPoint> out;
  enumerate_tuples(gens.size(), cap, [&](const std::vector<int64_t>& m) {
    GroupElement acc = base;
    for (size_t i = 0; i < gens.size(); ++i) {
      if (m[i] != 0) acc = add(acc, scale_elem(gens[i], m[i]));
    }
    out.push_back(ComboPoint{m, std::move(acc)});
  });
  return out;
}

std::vector<ComboPoint> dilated_cover(const PointSet& A, int64_t r, int64_t h) {
  if (h < 1) {
    raise(ErrorCode::Domain, "dilated_cover requires h >= 1");
  }
  std::vector<ComboPoint> combos = build_Xr(A, r);
  if (h == 1) return combos;
  for (auto& c : combos) {
    c.embedded = scale_elem(c.embedded, h);
  }
  return combos;
}

PointSet embed_combo(const GroupSpec& spec,
                     const std::vector<ComboPoint>& combos) {
  std::vector<GroupElement> pts;
  pts.reserve(combos.size());
  for (const auto& c : combos) pts.push_back(c.embedded);
  return PointSet::from_elements(spec, pts);
}

Decomposition decompose(const CoeffVector& mu, int64_t r) {
  if (r < 2) {
    raise(ErrorCode::Domain, "decompose requires r >= 2");
  }
  if (mu.total() > r) {
    raise(ErrorCode::Domain, "coefficient sum exceeds the budget r");
  }
  int64_t k = mu.k;
  Rat unit = Rat(1, k - 1);
  size_t arity = mu.entries.size();
  Decomposition out;
  out.multipliers.resize(arity);
  out.remainder.resize(arity);
  bool all_integral = true;
  bool any_positive = false;
  for (size_t i = 0; i < arity; ++i) {
    Rat scaled = mu.entries[i] * (k - 1);
    Rat fl = lin::rat_floor(scaled);
    out.multipliers[i] = lin::big_to_i64(numerator(fl));
    out.remainder[i] = mu.entries[i] - fl * unit;
    if (out.remainder[i] != 0) all_integral = false;
    if (mu.entries[i] != 0) any_positive = true;
  }
  if (all_integral && any_positive) {
    // Every entry is an exact multiple of 1/(k-1): peel one unit off the
    // first positive multiplier and report it as the unit index.
    size_t j = 0;
    while (out.multipliers[j] == 0) ++j;
    out.multipliers[j] -= 1;
    out.unit_index = j;
    std::fill(out.remainder.begin(), out.remainder.end(), Rat(0));
  }
  int64_t msum = 0;
  for (int64_t m : out.multipliers) msum += m;
  if (msum > r * (k - 1) - 1) {
    raise(ErrorCode::Internal, "decomposition exceeded the multiplier bound");
  }
  return out;
}

std::pair<size_t, std::vector<Rat>> reduce_hK(const std::vector<Rat>& mu,
                                              int64_t c) {
  if (c < 1) {
    raise(ErrorCode::Domain, "reduce_hK requires a positive integer c");
  }
  if (mu.empty()) {
    raise(ErrorCode::Domain, "reduce_hK requires a nonempty vector");
  }
  Rat h = 0;
  for (const Rat& e : mu) {
    if (e < 0) {
      raise(ErrorCode::Domain, "reduce_hK entries must be nonnegative");
    }
    h += e;
  }
  Rat needed = Rat(c) * static_cast<int64_t>(mu.size());
  if (h < needed) {
    raise(ErrorCode::Domain,
          "reduce_hK needs sum >= c*k for the pigeonhole step");
  }
  for (size_t j = 0; j < mu.size(); ++j) {
    if (mu[j] >= c) {
      std::vector<Rat> reduced = mu;
      reduced[j] -= c;
      return {j, std::move(reduced)};
    }
  }
  raise(ErrorCode::Internal, "pigeonhole step found no index");
}

}  // namespace apxgrp
