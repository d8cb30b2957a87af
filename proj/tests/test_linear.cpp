#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "core/linear.hpp"

using namespace apxgrp;
using namespace apxgrp::lin;

namespace {

Constraint le(std::vector<Rat> coef, Rat rhs, bool strict = false) {
  return Constraint{std::move(coef), std::move(rhs), strict};
}

}  // namespace

TEST_CASE("feasibility with strict bounds tracks the half-open side") {
  // x >= 0, x < 1, x = 1/2  -> feasible
  std::vector<Constraint> cs;
  cs.push_back(le({-1}, 0));
  cs.push_back(le({1}, 1, true));
  cs.push_back(le({1}, Rat(1, 2)));
  cs.push_back(le({-1}, Rat(-1, 2)));
  CHECK(fm_feasible(cs, 1));

  // x >= 0, x < 1, x = 1 -> infeasible precisely because of strictness
  std::vector<Constraint> bad;
  bad.push_back(le({-1}, 0));
  bad.push_back(le({1}, 1, true));
  bad.push_back(le({1}, 1));
  bad.push_back(le({-1}, -1));
  CHECK_FALSE(fm_feasible(bad, 1));

  // the closed end x = 0 stays feasible
  std::vector<Constraint> zero;
  zero.push_back(le({-1}, 0));
  zero.push_back(le({1}, 1, true));
  zero.push_back(le({1}, 0));
  zero.push_back(le({-1}, 0));
  CHECK(fm_feasible(zero, 1));
}

TEST_CASE("two-variable feasibility") {
  // x + y <= 1, x >= 0, y >= 0, x + 2y >= 3/2
  std::vector<Constraint> cs;
  cs.push_back(le({1, 1}, 1));
  cs.push_back(le({-1, 0}, 0));
  cs.push_back(le({0, -1}, 0));
  cs.push_back(le({-1, -2}, Rat(-3, 2)));
  CHECK(fm_feasible(cs, 2));
  cs.push_back(le({-1, -2}, Rat(-5, 2)));  // x + 2y >= 5/2 is too much
  CHECK_FALSE(fm_feasible(cs, 2));
}

TEST_CASE("unique rational solve") {
  // columns (2,1) and (1,3); target (4,7) -> x = (5/8? ...) check exactly
  std::vector<std::vector<int64_t>> cols = {{2, 1}, {1, 3}};
  auto x = solve_unique(cols, std::vector<int64_t>{4, 7});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(1));
  CHECK((*x)[1] == Rat(2));

  // inconsistent overdetermined system
  std::vector<std::vector<int64_t>> one = {{1, 1}};
  CHECK_FALSE(solve_unique(one, std::vector<int64_t>{1, 2}).has_value());
}

TEST_CASE("min coordinate sum") {
  // one generator 2 on the line, low bound 1: target 6 -> x=3
  std::vector<std::vector<int64_t>> g1 = {{2}};
  auto v = min_coordinate_sum(g1, std::vector<int64_t>{6}, Rat(1));
  REQUIRE(v.has_value());
  CHECK(*v == Rat(3));
  CHECK_FALSE(
      min_coordinate_sum(g1, std::vector<int64_t>{1}, Rat(1)).has_value());

  // generators 2 and 3 on the line, low 0: target 7 -> 2+3+... min sum
  std::vector<std::vector<int64_t>> g2 = {{2}, {3}};
  auto w = min_coordinate_sum(g2, std::vector<int64_t>{7}, Rat(0));
  REQUIRE(w.has_value());
  CHECK(*w == Rat(7, 3));  // 7/3 copies of 3 is the cheapest real solution
}

TEST_CASE("hnf of line sets") {
  Hnf h1 = hnf_rows({{2}, {3}});
  CHECK(h1.rank == 1);
  CHECK(h1.basis[0][0] == 1);  // gcd(2,3)

  Hnf h2 = hnf_rows({{2}, {4}});
  CHECK(h2.rank == 1);
  CHECK(h2.basis[0][0] == 2);

  CHECK(hnf_member(h2, std::vector<int64_t>{6}));
  CHECK_FALSE(hnf_member(h2, std::vector<int64_t>{3}));
}

TEST_CASE("hnf identity basis") {
  Hnf h = hnf_rows({{1, 0}, {0, 1}});
  CHECK(h.rank == 2);
  CHECK(h.basis[0] == std::vector<int64_t>{1, 0});
  CHECK(h.basis[1] == std::vector<int64_t>{0, 1});
  CHECK(h.kernel.empty());
}

TEST_CASE("hnf transform and kernel on random inputs") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int64_t> entry(-6, 6);
  for (int iter = 0; iter < 300; ++iter) {
    size_t m = 1 + iter % 4;
    size_t n = 1 + (iter / 3) % 3;
    std::vector<std::vector<int64_t>> rows(m, std::vector<int64_t>(n));
    for (auto& r : rows) {
      for (auto& v : r) v = entry(rng);
    }
    Hnf h = hnf_rows(rows);
    // transform * rows == [basis; 0]
    for (size_t i = 0; i < m; ++i) {
      std::vector<int64_t> combo(n, 0);
      for (size_t j = 0; j < m; ++j) {
        for (size_t t = 0; t < n; ++t) {
          combo[t] += h.transform[i][j] * rows[j][t];
        }
      }
      if (i < h.rank) {
        CHECK(combo == h.basis[i]);
      } else {
        for (int64_t v : combo) CHECK(v == 0);
      }
    }
    // every input row is a member, and hnf_solve reproduces it
    for (const auto& r : rows) {
      auto z = hnf_solve(h, r);
      REQUIRE(z.has_value());
      std::vector<int64_t> back(n, 0);
      for (size_t j = 0; j < m; ++j) {
        for (size_t t = 0; t < n; ++t) back[t] += (*z)[j] * rows[j][t];
      }
      CHECK(back == r);
    }
  }
}

TEST_CASE("pivot entries positive and columns reduced") {
  Hnf h = hnf_rows({{-3, 1}, {4, 2}});
  for (size_t i = 0; i < h.rank; ++i) {
    int64_t pivot = h.basis[i][h.pivot_cols[i]];
    CHECK(pivot > 0);
    for (size_t above = 0; above < i; ++above) {
      int64_t v = h.basis[above][h.pivot_cols[i]];
      CHECK(v >= 0);
      CHECK(v < pivot);
    }
  }
}
