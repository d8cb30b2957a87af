#include "core/cover.hpp"

#include <algorithm>
#include <sstream>

#include "core/config.hpp"
#include "core/simplex.hpp"
#include "core/sumset.hpp"

namespace apxgrp {

namespace {

[[noreturn]] void below_threshold(int64_t h, int64_t h_min) {
  std::ostringstream os;
  os << "h=" << h << " is below the construction threshold: h_min=" << h_min;
  throw ThresholdError(h_min, os.str());
}

// Bounding boxes make the disjointness test cheap before any hashing.
struct Box {
  std::vector<int64_t> lo, hi;
  explicit Box(const PointSet& ps) {
    size_t w = ps.width();
    lo.assign(w, 0);
    hi.assign(w, 0);
    for (size_t j = 0; j < w; ++j) {
      lo[j] = INT64_MAX;
      hi[j] = INT64_MIN;
    }
    for (size_t i = 0; i < ps.size(); ++i) {
      Row r = ps.row(i);
      for (size_t j = 0; j < w; ++j) {
        lo[j] = std::min(lo[j], r[j]);
        hi[j] = std::max(hi[j], r[j]);
      }
    }
  }
};

}  // namespace

PointSet prune_cover(const PointSet& X, const PointSet& A, int64_t r,
                     int64_t h) {
  if (!(X.spec() == A.spec())) {
    raise(ErrorCode::SpecMismatch, "cover and set live in different groups");
  }
  if (X.empty()) return X;
  PointSet hA = h_fold(A, h);
  PointSet rhA = h_fold(A, r * h);
  PointIndex universe(rhA);
  Box hbox(hA);
  Box ubox(rhA);
  size_t w = X.width();
  size_t m = X.spec().torsion_size();
  std::vector<int64_t> buf(w);
  std::vector<int64_t> keep;
  for (size_t i = 0; i < X.size(); ++i) {
    Row x = X.row(i);
    bool useful = true;
    // free coordinates admit an interval precheck; torsion wraps around
    for (size_t j = m; j < w && useful; ++j) {
      if (x[j] + hbox.hi[j] < ubox.lo[j] || x[j] + hbox.lo[j] > ubox.hi[j]) {
        useful = false;
      }
    }
    if (useful) {
      useful = false;
      for (size_t t = 0; t < hA.size() && !useful; ++t) {
        add_rows(X.spec(), x.data(), hA.row(t).data(), buf.data());
        useful = universe.contains(Row(buf));
      }
    }
    if (useful) keep.insert(keep.end(), x.begin(), x.end());
  }
  return PointSet::from_rows(X.spec(), std::move(keep));
}

BuiltCover build_cover_simplex(const PointSet& A, int64_t r, int64_t h) {
  A.require_nonempty("build_cover_simplex");
  if (A.size() != 2) {
    raise(ErrorCode::Domain,
          "the simplex method covers two-point sets; use main-zn or abelian");
  }
  if (r < 2) raise(ErrorCode::Domain, "covers require r >= 2");
  if (h < 1) raise(ErrorCode::Domain, "covers require h >= 1");
  PointSet X = embed_combo(A.spec(), dilated_cover(A, r, h));
  X = prune_cover(X, A, r, h);
  CoverPlan plan{"simplex", r, h, 2, std::nullopt, 1, binom_b_i64(r, 2)};
  return BuiltCover{std::move(X), std::move(plan)};
}

namespace {

// Shared skeleton of the lattice covers over the translated set A0 (with
// base point 0): elements
//     sum_i ceil(h*m_i/(k-1)) a_i  +  ck*a  -  c*sum_i a_i
// over the multiplier tuples with sum <= r(k-1)-1 and a in A0.  For h
// divisible by k-1 this is exactly the dilated simplex cover combined with
// the pigeonhole shift, divided by k-1; the ceiling keeps the elements in
// the lattice for every other h, and the rounding slack lands inside the
// rewrite region because the base-point coordinate absorbs it.
PointSet divided_cover_base(const PointSet& A0, int64_t r, int64_t h,
                            int64_t c) {
  int64_t k = static_cast<int64_t>(A0.size());
  std::vector<ComboPoint> combos = build_Xr(A0, r);
  GroupElement gsum = GroupElement::identity(A0.spec());
  for (size_t i = 1; i < A0.size(); ++i) {
    gsum = add(gsum, A0.element(i));
  }
  GroupElement shift = negate_elem(scale_elem(gsum, c));
  std::vector<GroupElement> middle;
  for (size_t i = 0; i < A0.size(); ++i) {
    middle.push_back(scale_elem(A0.element(i), checked_mul_i64(c, k)));
  }
  std::vector<GroupElement> out;
  out.reserve(combos.size() * middle.size());
  for (const ComboPoint& combo : combos) {
    GroupElement base = shift;
    for (size_t i = 0; i < combo.multipliers.size(); ++i) {
      int64_t m = combo.multipliers[i];
      if (m == 0) continue;
      int64_t scaled = checked_mul_i64(h, m);
      int64_t coeff = (scaled + k - 2) / (k - 1);  // ceil for nonnegative
      base = add(base, scale_elem(A0.element(i + 1), coeff));
    }
    for (const GroupElement& mid : middle) {
      out.push_back(add(base, mid));
    }
  }
  return PointSet::from_elements(A0.spec(), out);
}

struct LatticePlanInputs {
  GroupElement a0;
  PointSet A0;
  int64_t c = 0;
  int64_t h_min = 0;
  int64_t bound = 0;
};

LatticePlanInputs lattice_plan(const PointSet& A, int64_t r, int64_t h) {
  A.require_nonempty("lattice cover");
  if (!A.spec().torsion_free()) {
    raise(ErrorCode::Domain, "the lattice construction needs rank only");
  }
  if (r < 2) raise(ErrorCode::Domain, "covers require r >= 2");
  int64_t k = static_cast<int64_t>(A.size());
  LatticePlanInputs out{A.min_element(), PointSet(), 0, 0, 0};
  out.A0 = translate(A, negate_elem(out.a0));
  KhovanskiiData kd = khovanskii_constant(out.A0);
  out.c = kd.c;
  out.h_min = checked_mul_i64(out.c, checked_mul_i64(k, k));
  if (h < out.h_min) below_threshold(h, out.h_min);
  out.bound = lin::big_to_i64(BigInt(k) * binom_b(r, k));
  return out;
}

}  // namespace

BuiltCover build_cover_Aprime(const PointSet& A, int64_t r, int64_t h) {
  int64_t k = static_cast<int64_t>(A.size());
  if (k == 1) {
    raise(ErrorCode::Domain, "build_cover_Aprime needs at least two points");
  }
  LatticePlanInputs in = lattice_plan(A, r, h);
  PointSet Y0 = divided_cover_base(in.A0, r, h, in.c);
  PointSet X = dilate(Y0, k - 1);
  // transport from A0' back to A' = (k-1)a0 + A0'
  GroupElement carry = scale_elem(
      in.a0, checked_mul_i64(checked_mul_i64(r - 1, h), k - 1));
  X = translate(X, carry);
  if (static_cast<int64_t>(X.size()) > in.bound) {
    raise(ErrorCode::Internal, "constructed cover exceeds its size bound");
  }
  PointSet Aprime = dilate(A, k - 1);
  X = prune_cover(X, Aprime, r, h);
  CoverPlan plan{"main-zn", r, h, k, in.c, in.h_min, in.bound};
  return BuiltCover{std::move(X), std::move(plan)};
}

BuiltCover build_cover_Zn(const PointSet& A, int64_t r, int64_t h) {
  A.require_nonempty("build_cover_Zn");
  if (!A.spec().torsion_free()) {
    raise(ErrorCode::Domain, "the lattice construction needs rank only");
  }
  if (r < 2) raise(ErrorCode::Domain, "covers require r >= 2");
  if (h < 1) raise(ErrorCode::Domain, "covers require h >= 1");
  int64_t k = static_cast<int64_t>(A.size());
  if (k == 1) {
    GroupElement a = A.element(0);
    GroupElement y = scale_elem(a, checked_mul_i64(r - 1, h));
    PointSet Y = PointSet::from_elements(A.spec(), {y});
    CoverPlan plan{"main-zn", r, h, 1, std::nullopt, 1, 1};
    return BuiltCover{std::move(Y), std::move(plan)};
  }
  BuiltCover inner = build_cover_Aprime(A, r, h);
  const PointSet& X = inner.cover;
  size_t w = X.width();
  int64_t div = k - 1;
  std::vector<int64_t> rows;
  for (size_t i = 0; i < X.size(); ++i) {
    Row x = X.row(i);
    bool divisible = true;
    for (size_t j = 0; j < w && divisible; ++j) {
      divisible = x[j] % div == 0;
    }
    if (!divisible) continue;
    for (size_t j = 0; j < w; ++j) rows.push_back(x[j] / div);
  }
  PointSet Y = PointSet::from_rows(A.spec(), std::move(rows));
  Y = prune_cover(Y, A, r, h);
  CoverPlan plan = inner.plan;
  return BuiltCover{std::move(Y), std::move(plan)};
}

BuiltCover build_cover_abelian(const PointSet& A, int64_t r, int64_t h) {
  A.require_nonempty("build_cover_abelian");
  if (r < 2) raise(ErrorCode::Domain, "covers require r >= 2");
  if (h < 1) raise(ErrorCode::Domain, "covers require h >= 1");
  const GroupSpec& spec = A.spec();
  int64_t n0 = spec.group0_order();
  if (spec.pure_torsion()) {
    PointSet X = full_torsion_group(spec);
    CoverPlan plan{"abelian", r, h, static_cast<int64_t>(A.size()),
                   std::nullopt, 1, n0};
    return BuiltCover{std::move(X), std::move(plan)};
  }
  if (spec.torsion_free()) {
    return build_cover_Zn(A, r, h);
  }
  PointSet A1 = project_free(A);
  BuiltCover inner = build_cover_Zn(A1, r, h);
  GroupSpec torsion_spec(spec.moduli(), 0);
  PointSet G0 = full_torsion_group(torsion_spec);
  PointSet X = direct_product(G0, inner.cover);
  if (!(X.spec() == spec)) {
    raise(ErrorCode::Internal, "composite cover landed in the wrong group");
  }
  CoverPlan plan = inner.plan;
  plan.method = "abelian";
  if (plan.paper_bound) {
    plan.paper_bound = checked_mul_i64(*plan.paper_bound, n0);
  }
  return BuiltCover{std::move(X), std::move(plan)};
}

PointSet transport_cover(const PointSet& X, const PointSet& A,
                         const GroupElement& c, int64_t r, int64_t h) {
  if (!(X.spec() == A.spec()) || !(c.spec() == A.spec())) {
    raise(ErrorCode::SpecMismatch, "transport needs a shared group");
  }
  GroupElement shift = scale_elem(c, checked_mul_i64(r - 1, h));
  return translate(X, shift);
}

PointSet product_cover(const PointSet& X0, const PointSet& A0, int64_t r0,
                       int64_t h0, const PointSet& X1, const PointSet& A1,
                       int64_t r1, int64_t h1) {
  if (!(X0.spec() == A0.spec()) || !(X1.spec() == A1.spec())) {
    raise(ErrorCode::SpecMismatch, "cover and set live in different groups");
  }
  if (r0 != r1 || h0 != h1) {
    raise(ErrorCode::Domain, "product covers need matching (r, h)");
  }
  return direct_product(X0, X1);
}

int64_t cover_h_min(const PointSet& A) {
  A.require_nonempty("cover_h_min");
  const GroupSpec& spec = A.spec();
  if (spec.pure_torsion()) return 1;
  PointSet A1 = spec.torsion_free() ? A : project_free(A);
  int64_t k = static_cast<int64_t>(A1.size());
  if (k == 1) return 1;
  GroupElement a0 = A1.min_element();
  KhovanskiiData kd = khovanskii_constant(translate(A1, negate_elem(a0)));
  return checked_mul_i64(kd.c, checked_mul_i64(k, k));
}

std::optional<int64_t> paper_bound_for(const PointSet& A, int64_t r) {
  if (A.empty() || r < 2) return std::nullopt;
  const GroupSpec& spec = A.spec();
  if (spec.pure_torsion()) return spec.group0_order();
  PointSet A1 = spec.torsion_free() ? A : project_free(A);
  int64_t k = static_cast<int64_t>(A1.size());
  int64_t free_bound =
      k == 1 ? 1 : lin::big_to_i64(BigInt(k) * binom_b(r, k));
  if (spec.torsion_free()) return free_bound;
  return checked_mul_i64(spec.group0_order(), free_bound);
}

}  // namespace apxgrp
