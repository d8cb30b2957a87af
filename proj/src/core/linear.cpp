#include "core/linear.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "core/config.hpp"
#include "core/group.hpp"

namespace apxgrp::lin {

int64_t big_to_i64(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) {
    raise(ErrorCode::Overflow, "value exceeds 64-bit range");
  }
  return v.convert_to<int64_t>();
}

Rat rat_floor(const Rat& q) {
  BigInt num = numerator(q);
  BigInt den = denominator(q);
  BigInt d = num / den;
  if (num < 0 && d * den != num) d -= 1;
  return Rat(d);
}

namespace {

constexpr size_t kConstraintCap = 20000;

// Scale so the first nonzero coefficient has absolute value 1; constraints
// with identical scaled coefficient vectors are interchangeable up to rhs.
void normalize(Constraint& c) {
  for (const Rat& v : c.coef) {
    if (v != 0) {
      Rat s = v < 0 ? Rat(-v) : v;
      for (Rat& x : c.coef) x /= s;
      c.rhs /= s;
      return;
    }
  }
}

// Keep only the tightest constraint per coefficient direction: smallest
// rhs wins, and at equal rhs the strict form dominates.
void dedupe(std::vector<Constraint>& cs) {
  std::map<std::vector<Rat>, std::pair<Rat, bool>> best;
  for (auto& c : cs) {
    normalize(c);
    auto it = best.find(c.coef);
    if (it == best.end()) {
      best.emplace(std::move(c.coef), std::make_pair(c.rhs, c.strict));
    } else {
      auto& [rhs, strict] = it->second;
      if (c.rhs < rhs) {
        rhs = c.rhs;
        strict = c.strict;
      } else if (c.rhs == rhs) {
        strict = strict || c.strict;
      }
    }
  }
  cs.clear();
  for (auto& [coef, v] : best) {
    cs.push_back(Constraint{coef, v.first, v.second});
  }
}

// True when the all-zero-coefficient constraint is violated.
bool constant_violated(const Constraint& c) {
  return c.strict ? !(Rat(0) < c.rhs) : !(Rat(0) <= c.rhs);
}

bool all_zero(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

}  // namespace

bool fm_feasible(std::vector<Constraint> cs, size_t nvars) {
  for (auto& c : cs) {
    if (c.coef.size() != nvars) {
      raise(ErrorCode::Internal, "constraint arity mismatch");
    }
  }
  for (size_t var = 0; var < nvars; ++var) {
    std::vector<Constraint> lower;  // coef[var] < 0
    std::vector<Constraint> upper;  // coef[var] > 0
    std::vector<Constraint> rest;
    for (auto& c : cs) {
      if (all_zero(c.coef)) {
        if (constant_violated(c)) return false;
        continue;
      }
      if (c.coef[var] > 0) {
        upper.push_back(std::move(c));
      } else if (c.coef[var] < 0) {
        lower.push_back(std::move(c));
      } else {
        rest.push_back(std::move(c));
      }
    }
    for (const auto& up : upper) {
      for (const auto& lo : lower) {
        // eliminate: up.coef[var] > 0, lo.coef[var] < 0
        Rat a = up.coef[var];
        Rat b = -lo.coef[var];
        Constraint combined;
        combined.coef.resize(nvars);
        for (size_t j = 0; j < nvars; ++j) {
          combined.coef[j] = up.coef[j] * b + lo.coef[j] * a;
        }
        combined.rhs = up.rhs * b + lo.rhs * a;
        combined.strict = up.strict || lo.strict;
        if (all_zero(combined.coef)) {
          if (constant_violated(combined)) return false;
        } else {
          rest.push_back(std::move(combined));
        }
      }
    }
    dedupe(rest);
    if (rest.size() > kConstraintCap) {
      raise(ErrorCode::Resource, "elimination exceeded the constraint cap");
    }
    cs = std::move(rest);
  }
  for (const auto& c : cs) {
    if (constant_violated(c)) return false;
  }
  return true;
}

std::optional<std::vector<Rat>> solve_unique(
    const std::vector<std::vector<int64_t>>& columns,
    std::span<const int64_t> target) {
  size_t s = columns.size();
  size_t n = target.size();
  for (const auto& col : columns) {
    if (col.size() != n) raise(ErrorCode::Internal, "column length mismatch");
  }
  // Augmented matrix [columns | target], Gaussian elimination over Q.
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(s + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < s; ++j) m[i][j] = columns[j][i];
    m[i][s] = target[i];
  }
  std::vector<size_t> pivot_row(s, SIZE_MAX);
  size_t r = 0;
  for (size_t col = 0; col < s && r < n; ++col) {
    size_t p = SIZE_MAX;
    for (size_t i = r; i < n; ++i) {
      if (m[i][col] != 0) {
        p = i;
        break;
      }
    }
    if (p == SIZE_MAX) continue;
    std::swap(m[r], m[p]);
    for (size_t i = 0; i < n; ++i) {
      if (i == r || m[i][col] == 0) continue;
      Rat f = m[i][col] / m[r][col];
      for (size_t j = col; j <= s; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_row[col] = r;
    ++r;
  }
  for (size_t col = 0; col < s; ++col) {
    if (pivot_row[col] == SIZE_MAX) {
      raise(ErrorCode::Internal, "solve_unique needs independent columns");
    }
  }
  for (size_t i = r; i < n; ++i) {
    if (m[i][s] != 0) return std::nullopt;  // inconsistent
  }
  std::vector<Rat> x(s);
  for (size_t col = 0; col < s; ++col) {
    size_t row = pivot_row[col];
    x[col] = m[row][s] / m[row][col];
  }
  return x;
}

std::optional<Rat> min_coordinate_sum(
    const std::vector<std::vector<int64_t>>& columns,
    std::span<const int64_t> target, const Rat& low) {
  size_t s = columns.size();
  size_t n = target.size();
  if (s == 0) raise(ErrorCode::Internal, "min_coordinate_sum with no columns");
  if (s > static_cast<size_t>(limits().fm_generator_cap)) {
    raise(ErrorCode::Resource, "generator count exceeds the elimination cap");
  }
  size_t nvars = s + 1;  // x_0..x_{s-1}, z
  std::vector<Constraint> cs;
  for (size_t i = 0; i < n; ++i) {
    Constraint le, ge;
    le.coef.resize(nvars);
    ge.coef.resize(nvars);
    for (size_t j = 0; j < s; ++j) {
      le.coef[j] = columns[j][i];
      ge.coef[j] = -columns[j][i];
    }
    le.rhs = target[i];
    ge.rhs = -target[i];
    cs.push_back(std::move(le));
    cs.push_back(std::move(ge));
  }
  for (size_t j = 0; j < s; ++j) {
    Constraint c;
    c.coef.resize(nvars);
    c.coef[j] = -1;
    c.rhs = -low;
    cs.push_back(std::move(c));
  }
  {
    Constraint link_le, link_ge;  // sum(x) - z = 0
    link_le.coef.assign(nvars, Rat(1));
    link_le.coef[s] = -1;
    link_le.rhs = 0;
    link_ge.coef.assign(nvars, Rat(-1));
    link_ge.coef[s] = 1;
    link_ge.rhs = 0;
    cs.push_back(std::move(link_le));
    cs.push_back(std::move(link_ge));
  }
  // Eliminate x_0..x_{s-1}, leaving constraints on z alone.
  for (size_t var = 0; var < s; ++var) {
    std::vector<Constraint> lower, upper, rest;
    for (auto& c : cs) {
      if (all_zero(c.coef)) {
        if (constant_violated(c)) return std::nullopt;
        continue;
      }
      if (c.coef[var] > 0) {
        upper.push_back(std::move(c));
      } else if (c.coef[var] < 0) {
        lower.push_back(std::move(c));
      } else {
        rest.push_back(std::move(c));
      }
    }
    for (const auto& up : upper) {
      for (const auto& lo : lower) {
        Rat a = up.coef[var];
        Rat b = -lo.coef[var];
        Constraint combined;
        combined.coef.resize(nvars);
        for (size_t j = 0; j < nvars; ++j) {
          combined.coef[j] = up.coef[j] * b + lo.coef[j] * a;
        }
        combined.rhs = up.rhs * b + lo.rhs * a;
        combined.strict = false;
        if (all_zero(combined.coef)) {
          if (constant_violated(combined)) return std::nullopt;
        } else {
          rest.push_back(std::move(combined));
        }
      }
    }
    dedupe(rest);
    if (rest.size() > kConstraintCap) {
      raise(ErrorCode::Resource, "elimination exceeded the constraint cap");
    }
    cs = std::move(rest);
  }
  bool has_lower = false;
  Rat max_lower, min_upper;
  bool has_upper = false;
  for (const auto& c : cs) {
    if (c.coef[s] == 0) {
      if (constant_violated(c)) return std::nullopt;
      continue;
    }
    Rat bound = c.rhs / c.coef[s];
    if (c.coef[s] > 0) {
      if (!has_upper || bound < min_upper) min_upper = bound;
      has_upper = true;
    } else {
      if (!has_lower || bound > max_lower) max_lower = bound;
      has_lower = true;
    }
  }
  if (!has_lower) {
    raise(ErrorCode::Internal, "objective unexpectedly unbounded below");
  }
  if (has_upper && max_lower > min_upper) return std::nullopt;
  return max_lower;
}

namespace {

using IVec = std::vector<int64_t>;
using IMat = std::vector<IVec>;

void row_axpy(IVec& dst, const IVec& src, int64_t q) {
  // dst -= q * src, checked
  for (size_t j = 0; j < dst.size(); ++j) {
    dst[j] = checked_sub_i64(dst[j], checked_mul_i64(q, src[j]));
  }
}

int64_t div_round_nearest(int64_t a, int64_t b) {
  int64_t q = a / b;
  int64_t r = a - q * b;
  if (std::llabs(r) * 2 > std::llabs(b)) {
    q += (a < 0) == (b < 0) ? 1 : -1;
  }
  return q;
}

int64_t div_floor(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Hnf hnf_rows(std::vector<std::vector<int64_t>> rows) {
  size_t m = rows.size();
  size_t n = m == 0 ? 0 : rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != n) raise(ErrorCode::Internal, "ragged HNF input");
  }
  IMat u(m, IVec(m, 0));
  for (size_t i = 0; i < m; ++i) u[i][i] = 1;

  size_t r = 0;
  std::vector<size_t> pivots;
  for (size_t col = 0; col < n && r < m; ++col) {
    // Euclid within the column until a single nonzero entry remains at r.
    while (true) {
      size_t best = SIZE_MAX;
      size_t nonzero = 0;
      for (size_t i = r; i < m; ++i) {
        if (rows[i][col] == 0) continue;
        ++nonzero;
        if (best == SIZE_MAX ||
            std::llabs(rows[i][col]) < std::llabs(rows[best][col])) {
          best = i;
        }
      }
      if (nonzero == 0) break;
      if (best != r) {
        std::swap(rows[best], rows[r]);
        std::swap(u[best], u[r]);
      }
      if (nonzero == 1) break;
      for (size_t i = r + 1; i < m; ++i) {
        if (rows[i][col] == 0) continue;
        // nearest division leaves |remainder| < |pivot|
        int64_t q = div_round_nearest(rows[i][col], rows[r][col]);
        if (q != 0) {
          row_axpy(rows[i], rows[r], q);
          row_axpy(u[i], u[r], q);
        }
      }
    }
    if (r < m && rows[r][col] != 0) {
      if (rows[r][col] < 0) {
        for (auto& v : rows[r]) v = checked_neg_i64(v);
        for (auto& v : u[r]) v = checked_neg_i64(v);
      }
      for (size_t i = 0; i < r; ++i) {
        int64_t q = div_floor(rows[i][col], rows[r][col]);
        if (q != 0) {
          row_axpy(rows[i], rows[r], q);
          row_axpy(u[i], u[r], q);
        }
      }
      pivots.push_back(col);
      ++r;
    }
  }

  Hnf out;
  out.rank = r;
  out.cols = n;
  out.pivot_cols = std::move(pivots);
  out.basis.assign(rows.begin(), rows.begin() + r);
  out.kernel.assign(u.begin() + r, u.end());
  out.transform = std::move(u);
  return out;
}

namespace {

// Back-substitute v against the echelon basis; returns the coefficients of
// the basis rows when v is in the lattice.
std::optional<std::vector<int64_t>> reduce_against_basis(
    const Hnf& h, std::span<const int64_t> v) {
  if (v.size() != h.cols) {
    raise(ErrorCode::Internal, "membership query width mismatch");
  }
  std::vector<int64_t> rem(v.begin(), v.end());
  std::vector<int64_t> coeffs(h.rank, 0);
  for (size_t i = 0; i < h.rank; ++i) {
    size_t p = h.pivot_cols[i];
    int64_t pivot = h.basis[i][p];
    if (rem[p] % pivot != 0) return std::nullopt;
    int64_t q = rem[p] / pivot;
    coeffs[i] = q;
    if (q != 0) row_axpy(rem, h.basis[i], q);
  }
  for (int64_t x : rem) {
    if (x != 0) return std::nullopt;
  }
  return coeffs;
}

}  // namespace

bool hnf_member(const Hnf& h, std::span<const int64_t> v) {
  return reduce_against_basis(h, v).has_value();
}

std::optional<std::vector<int64_t>> hnf_solve(const Hnf& h,
                                              std::span<const int64_t> v) {
  auto coeffs = reduce_against_basis(h, v);
  if (!coeffs) return std::nullopt;
  size_t m = h.transform.size();
  std::vector<int64_t> z(m, 0);
  for (size_t i = 0; i < h.rank; ++i) {
    if ((*coeffs)[i] == 0) continue;
    for (size_t j = 0; j < m; ++j) {
      z[j] = checked_add_i64(
          z[j], checked_mul_i64((*coeffs)[i], h.transform[i][j]));
    }
  }
  return z;
}

}  // namespace apxgrp::lin
