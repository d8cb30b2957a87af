#include "core/khovanskii.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "core/config.hpp"
#include "core/sumset.hpp"

namespace apxgrp {

namespace {

void require_lattice_set(const PointSet& A, const char* what) {
  if (!A.spec().torsion_free()) {
    raise(ErrorCode::Domain,
          std::string(what) + " applies to torsion-free sets only");
  }
  if (A.size() < 2) {
    raise(ErrorCode::Domain, std::string(what) + " needs at least two points");
  }
}

std::vector<std::vector<int64_t>> generator_rows(const PointSet& A) {
  size_t w = A.width();
  Row a0 = A.row(0);
  std::vector<std::vector<int64_t>> gens;
  gens.reserve(A.size() - 1);
  for (size_t i = 1; i < A.size(); ++i) {
    Row r = A.row(i);
    std::vector<int64_t> g(w);
    for (size_t j = 0; j < w; ++j) g[j] = checked_sub_i64(r[j], a0[j]);
    gens.push_back(std::move(g));
  }
  return gens;
}

struct BoxIter {
  std::vector<int64_t> lo, hi, cur;
  bool done = false;

  BoxIter(std::vector<int64_t> lo_, std::vector<int64_t> hi_)
      : lo(std::move(lo_)), hi(std::move(hi_)), cur(lo) {
    __int128 cells = 1;
    for (size_t j = 0; j < lo.size(); ++j) {
      if (hi[j] < lo[j]) {
        done = true;
        return;
      }
      cells *= static_cast<__int128>(hi[j] - lo[j] + 1);
      if (cells > limits().enumeration_cap) {
        raise(ErrorCode::Resource, "lattice box enumeration exceeds the cap");
      }
    }
  }

  bool next(std::vector<int64_t>& out) {
    if (done) return false;
    out = cur;
    for (size_t j = cur.size(); j-- > 0;) {
      if (++cur[j] <= hi[j]) return true;
      cur[j] = lo[j];
    }
    done = true;
    return true;
  }
};

// Membership of v in the half-open cell {sum t_i g_i : 0 <= t_i < 1}.
bool in_half_open_cell(const std::vector<std::vector<int64_t>>& gens,
                       size_t rank, std::span<const int64_t> v) {
  size_t s = gens.size();
  if (rank == s) {
    auto t = lin::solve_unique(gens, v);
    if (!t) return false;
    for (const lin::Rat& ti : *t) {
      if (ti < 0 || ti >= 1) return false;
    }
    return true;
  }
  if (s > static_cast<size_t>(limits().fm_generator_cap)) {
    raise(ErrorCode::Resource, "generator count exceeds the elimination cap");
  }
  size_t n = v.size();
  std::vector<lin::Constraint> cs;
  for (size_t i = 0; i < n; ++i) {
    lin::Constraint le, ge;
    le.coef.resize(s);
    ge.coef.resize(s);
    for (size_t j = 0; j < s; ++j) {
      le.coef[j] = gens[j][i];
      ge.coef[j] = -gens[j][i];
    }
    le.rhs = v[i];
    ge.rhs = -v[i];
    cs.push_back(std::move(le));
    cs.push_back(std::move(ge));
  }
  for (size_t j = 0; j < s; ++j) {
    lin::Constraint nonneg, below_one;
    nonneg.coef.resize(s);
    nonneg.coef[j] = -1;
    nonneg.rhs = 0;
    below_one.coef.resize(s);
    below_one.coef[j] = 1;
    below_one.rhs = 1;
    below_one.strict = true;  // t_j < 1, the half-open side
    cs.push_back(std::move(nonneg));
    cs.push_back(std::move(below_one));
  }
  return lin::fm_feasible(std::move(cs), s);
}

std::vector<GroupElement> enumerate_cell(
    const GroupSpec& spec, const std::vector<std::vector<int64_t>>& gens) {
  if (gens.size() > static_cast<size_t>(limits().fm_generator_cap)) {
    raise(ErrorCode::Resource, "generator count exceeds the elimination cap");
  }
  lin::Hnf hnf = lin::hnf_rows(gens);
  size_t w = spec.width();
  std::vector<int64_t> lo(w, 0), hi(w, 0);
  for (const auto& g : gens) {
    for (size_t j = 0; j < w; ++j) {
      if (g[j] < 0) {
        lo[j] = checked_add_i64(lo[j], g[j]);
      } else {
        hi[j] = checked_add_i64(hi[j], g[j]);
      }
    }
  }
  std::vector<GroupElement> found;
  BoxIter box(lo, hi);
  std::vector<int64_t> v;
  while (box.next(v)) {
    if (!lin::hnf_member(hnf, v)) continue;
    if (!in_half_open_cell(gens, hnf.rank, v)) continue;
    found.emplace_back(spec, v);
  }
  std::sort(found.begin(), found.end(),
            [](const GroupElement& a, const GroupElement& b) {
              return row_less(a.row(), b.row());
            });
  return found;
}

int64_t l1_norm(const std::vector<int64_t>& v) {
  int64_t s = 0;
  for (int64_t x : v) s = checked_add_i64(s, std::llabs(x));
  return s;
}

// One pass of size reduction of z against the kernel rows; the l1 norm
// along z - t*w is convex in t, so a greedy walk finds each 1-D optimum.
bool reduce_once(std::vector<int64_t>& z,
                 const std::vector<std::vector<int64_t>>& kernel) {
  bool improved = false;
  for (const auto& w : kernel) {
    int64_t best_t = 0;
    int64_t best = l1_norm(z);
    for (int64_t dir : {-1, 1}) {
      int64_t t = dir;
      while (true) {
        std::vector<int64_t> cand(z.size());
        for (size_t i = 0; i < z.size(); ++i) {
          cand[i] = checked_sub_i64(z[i], checked_mul_i64(t, w[i]));
        }
        int64_t v = l1_norm(cand);
        if (v < best) {
          best = v;
          best_t = t;
          t += dir;
        } else {
          break;
        }
      }
    }
    if (best_t != 0) {
      for (size_t i = 0; i < z.size(); ++i) {
        z[i] = checked_sub_i64(z[i], checked_mul_i64(best_t, w[i]));
      }
      improved = true;
    }
  }
  return improved;
}

std::pair<std::vector<int64_t>, int64_t> minrep(
    const std::vector<std::vector<int64_t>>& gens,
    std::span<const int64_t> point) {
  lin::Hnf hnf = lin::hnf_rows(gens);
  auto particular = lin::hnf_solve(hnf, point);
  if (!particular) {
    raise(ErrorCode::Membership,
          "point is not in the lattice generated by the set");
  }
  std::vector<int64_t> z = *particular;
  const auto& kernel = hnf.kernel;
  if (kernel.empty()) {
    return {z, l1_norm(z)};
  }
  while (reduce_once(z, kernel)) {
  }
  int64_t b_red = l1_norm(z);
  if (b_red == 0) {
    return {z, 0};
  }
  // Exhaustive kernel-shift search.  Any solution with l1 <= b_red differs
  // from z by t*kernel with per-coordinate |t_j| bounded through the
  // rational pseudo-inverse of the kernel matrix.
  size_t s = kernel.size();
  size_t d = z.size();
  std::vector<std::vector<lin::Rat>> gram(s, std::vector<lin::Rat>(s));
  for (size_t i = 0; i < s; ++i) {
    for (size_t j = 0; j < s; ++j) {
      lin::Rat dot = 0;
      for (size_t t = 0; t < d; ++t) {
        dot += lin::Rat(kernel[i][t]) * kernel[j][t];
      }
      gram[i][j] = dot;
    }
  }
  std::vector<std::vector<lin::Rat>> inv(s, std::vector<lin::Rat>(s, 0));
  for (size_t i = 0; i < s; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < s; ++col) {
    size_t piv = col;
    while (piv < s && gram[piv][col] == 0) ++piv;
    if (piv == s) raise(ErrorCode::Internal, "kernel Gram matrix singular");
    std::swap(gram[piv], gram[col]);
    std::swap(inv[piv], inv[col]);
    lin::Rat f = gram[col][col];
    for (size_t j = 0; j < s; ++j) {
      gram[col][j] /= f;
      inv[col][j] /= f;
    }
    for (size_t i = 0; i < s; ++i) {
      if (i == col || gram[i][col] == 0) continue;
      lin::Rat g = gram[i][col];
      for (size_t j = 0; j < s; ++j) {
        gram[i][j] -= g * gram[col][j];
        inv[i][j] -= g * inv[col][j];
      }
    }
  }
  // t = (t*W) W^T (W W^T)^{-1}; bound |t_j| by colmax_j * l1(t*W).
  std::vector<int64_t> radius(s);
  __int128 cells = 1;
  for (size_t j = 0; j < s; ++j) {
    lin::Rat colmax = 0;
    for (size_t i = 0; i < d; ++i) {
      lin::Rat entry = 0;
      for (size_t t = 0; t < s; ++t) {
        entry += lin::Rat(kernel[t][i]) * inv[t][j];
      }
      if (entry < 0) entry = -entry;
      if (entry > colmax) colmax = entry;
    }
    lin::Rat bound = colmax * (2 * b_red);
    radius[j] = lin::big_to_i64(numerator(lin::rat_floor(bound)));
    cells *= 2 * static_cast<__int128>(radius[j]) + 1;
    if (cells > limits().search_box_cap) {
      raise(ErrorCode::Resource, "representation search box exceeds the cap");
    }
  }
  std::vector<int64_t> best = z;
  int64_t best_l1 = b_red;
  std::vector<int64_t> t(s);
  for (size_t j = 0; j < s; ++j) t[j] = -radius[j];
  bool done = false;
  while (!done) {
    std::vector<int64_t> cand = z;
    for (size_t j = 0; j < s; ++j) {
      if (t[j] == 0) continue;
      for (size_t i = 0; i < d; ++i) {
        cand[i] = checked_add_i64(cand[i], checked_mul_i64(t[j], kernel[j][i]));
      }
    }
    int64_t v = l1_norm(cand);
    if (v < best_l1 || (v == best_l1 && std::lexicographical_compare(
                                            cand.begin(), cand.end(),
                                            best.begin(), best.end()))) {
      best_l1 = v;
      best = cand;
    }
    done = true;
    for (size_t j = s; j-- > 0;) {
      if (++t[j] <= radius[j]) {
        done = false;
        break;
      }
      t[j] = -radius[j];
    }
  }
  return {best, best_l1};
}

KhovanskiiData pipeline(const GroupSpec& spec,
                        const std::vector<std::vector<int64_t>>& gens) {
  KhovanskiiData out;
  out.k = static_cast<int64_t>(gens.size()) + 1;
  std::vector<GroupElement> cell = enumerate_cell(spec, gens);
  for (const GroupElement& p : cell) {
    auto [z, l1] = minrep(gens, p.row());
    out.entries.push_back(
        ParallelepipedPoint{std::vector<int64_t>(p.coords()), z, l1});
    out.m = std::max(out.m, l1);
  }
  out.c = out.k - 1 + out.m;
  return out;
}

}  // namespace

LatticeBasis lattice_basis(const PointSet& A) {
  require_lattice_set(A, "lattice_basis");
  LatticeBasis out;
  out.generators = generator_rows(A);
  out.ambient = A.width();
  out.hnf = lin::hnf_rows(out.generators);
  return out;
}

std::vector<GroupElement> enumerate_parallelepiped(const PointSet& A) {
  require_lattice_set(A, "enumerate_parallelepiped");
  return enumerate_cell(A.spec(), generator_rows(A));
}

bool cell_member_fast(const std::vector<std::vector<int64_t>>& gens,
                      std::span<const int64_t> v) {
  return in_half_open_cell(gens, gens.size(), v);
}

bool cell_member_elimination(const std::vector<std::vector<int64_t>>& gens,
                             std::span<const int64_t> v) {
  return in_half_open_cell(gens, gens.size() + 1, v);  // force elimination
}

std::pair<std::vector<int64_t>, int64_t> minimal_representation(
    const GroupElement& p, const PointSet& A) {
  require_lattice_set(A, "minimal_representation");
  if (!(p.spec() == A.spec())) {
    raise(ErrorCode::SpecMismatch, "point lives in a different group");
  }
  return minrep(generator_rows(A), p.row());
}

KhovanskiiData khovanskii_constant(const PointSet& A) {
  require_lattice_set(A, "khovanskii_constant");
  return pipeline(A.spec(), generator_rows(A));
}

KhovanskiiData khovanskii_for_generators(
    const GroupSpec& spec, const std::vector<std::vector<int64_t>>& gens) {
  if (!spec.torsion_free()) {
    raise(ErrorCode::Domain, "rewrite data needs a torsion-free group");
  }
  if (gens.empty()) {
    raise(ErrorCode::Domain, "at least one generator is required");
  }
  for (const auto& g : gens) {
    if (g.size() != spec.width()) {
      raise(ErrorCode::Domain, "generator width mismatch");
    }
  }
  return pipeline(spec, gens);
}

bool verify_rewrite_range(const PointSet& A, const KhovanskiiData& data,
                          int64_t h_lo, int64_t h_hi) {
  require_lattice_set(A, "verify_rewrite");
  if (!A.min_element().is_identity()) {
    raise(ErrorCode::Domain, "verify_rewrite expects the base point 0");
  }
  int64_t k = static_cast<int64_t>(A.size());
  int64_t c = data.c;
  if (h_lo > h_hi) {
    raise(ErrorCode::Domain, "empty h range");
  }
  if (h_lo < c * k) {
    raise(ErrorCode::Domain, "verify_rewrite needs h >= c*k");
  }
  auto gens = generator_rows(A);
  lin::Hnf hnf = lin::hnf_rows(gens);
  size_t w = A.width();

  // Bounding box of the region at the largest h: the region is the convex
  // hull of c*sum(g) and its shifts by (h-ck)*g_i.
  std::vector<int64_t> v0(w, 0);
  for (const auto& g : gens) {
    for (size_t j = 0; j < w; ++j) v0[j] = checked_add_i64(v0[j], g[j]);
  }
  for (size_t j = 0; j < w; ++j) v0[j] = checked_mul_i64(v0[j], c);
  int64_t spread = h_hi - c * k;
  std::vector<int64_t> lo = v0, hi = v0;
  for (const auto& g : gens) {
    for (size_t j = 0; j < w; ++j) {
      int64_t shifted = checked_add_i64(v0[j], checked_mul_i64(spread, g[j]));
      lo[j] = std::min(lo[j], shifted);
      hi[j] = std::max(hi[j], shifted);
    }
  }

  // Least coordinate sum realizing q with every coordinate >= c decides
  // region membership for every h at once: q is in the h-region exactly
  // when that minimum is at most h-c.
  auto min_sum = [&](std::span<const int64_t> q) -> std::optional<lin::Rat> {
    if (hnf.rank == gens.size()) {
      auto x = lin::solve_unique(gens, q);
      if (!x) return std::nullopt;
      lin::Rat sum = 0;
      for (const lin::Rat& xi : *x) {
        if (xi < c) return std::nullopt;
        sum += xi;
      }
      return sum;
    }
    return lin::min_coordinate_sum(gens, q, lin::Rat(c));
  };

  struct Candidate {
    std::vector<int64_t> point;
    lin::Rat least_sum;
  };
  std::vector<Candidate> members;
  BoxIter box(lo, hi);
  std::vector<int64_t> v;
  while (box.next(v)) {
    if (!lin::hnf_member(hnf, v)) continue;
    auto ms = min_sum(v);
    if (!ms) continue;
    if (*ms > h_hi - c) continue;
    members.push_back(Candidate{v, *ms});
  }

  for (int64_t h = h_lo; h <= h_hi; ++h) {
    PointSet hA = h_fold(A, h);
    for (const Candidate& cand : members) {
      if (cand.least_sum > h - c) continue;
      if (!hA.contains(Row(cand.point))) return false;
    }
  }
  return true;
}

bool verify_rewrite(const PointSet& A, const KhovanskiiData& data, int64_t h) {
  return verify_rewrite_range(A, data, h, h);
}

}  // namespace apxgrp
