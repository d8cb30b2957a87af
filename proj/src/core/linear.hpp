#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "core/errors.hpp"

namespace apxgrp::lin {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// One linear constraint: coef . x <= rhs, with < when strict is set.
struct Constraint {
  std::vector<Rat> coef;
  Rat rhs;
  bool strict = false;
};

/// Exact Fourier-Motzkin feasibility over the reals.  Strictness is carried
/// through every combination step; no epsilon perturbation anywhere.
bool fm_feasible(std::vector<Constraint> cs, size_t nvars);

/// Unique rational solution x of (columns) . x = target when the columns are
/// linearly independent; nullopt when the system is inconsistent.
/// Raises Internal if the columns are dependent (wrong path chosen).
std::optional<std::vector<Rat>> solve_unique(
    const std::vector<std::vector<int64_t>>& columns,
    std::span<const int64_t> target);

/// min sum(x_i) subject to (columns) . x = target and x_i >= low, over the
/// reals; nullopt when infeasible.  All constraints are non-strict, so the
/// minimum is attained whenever it exists.
std::optional<Rat> min_coordinate_sum(
    const std::vector<std::vector<int64_t>>& columns,
    std::span<const int64_t> target, const Rat& low);

/// Row-style Hermite normal form with unimodular transform.
///   transform * input = [basis; 0], pivots strictly increasing, pivot
///   entries positive, entries above each pivot reduced into [0, pivot).
struct Hnf {
  std::vector<std::vector<int64_t>> basis;      // rank rows, echelon
  std::vector<std::vector<int64_t>> transform;  // m x m unimodular
  std::vector<std::vector<int64_t>> kernel;     // m-rank rows, basis of
                                                // the left kernel lattice
  std::vector<size_t> pivot_cols;
  size_t rank = 0;
  size_t cols = 0;
};

Hnf hnf_rows(std::vector<std::vector<int64_t>> rows);

/// Exact membership of v in the row span.
bool hnf_member(const Hnf& h, std::span<const int64_t> v);

/// Integer coefficients z over the ORIGINAL input rows with z . rows = v,
/// or nullopt when v is outside the lattice.
std::optional<std::vector<int64_t>> hnf_solve(const Hnf& h,
                                              std::span<const int64_t> v);

int64_t big_to_i64(const BigInt& v);
Rat rat_floor(const Rat& q);  // largest integer <= q, as a rational

}  // namespace apxgrp::lin
