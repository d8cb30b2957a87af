#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "core/simplex.hpp"
#include "helpers.hpp"

using namespace apxgrp;
using namespace apxgrp::testing;

TEST_CASE("binomial b(r,k)") {
  for (int64_t r = 2; r <= 10; ++r) {
    CHECK(binom_b(r, 2) == BigInt(r));
  }
  CHECK(binom_b(2, 3) == 10);  // C(5,2)
  CHECK(binom_b(3, 3) == 21);  // C(7,2)
  CHECK_THROWS_AS(binom_b(1, 3), Error);
  CHECK_THROWS_AS(binom_b(2, 1), Error);
}

TEST_CASE("multiplier tuples are counted by the binomial") {
  for (int64_t k = 2; k <= 4; ++k) {
    for (int64_t r = 2; r <= 4; ++r) {
      GroupSpec spec({}, 1);
      std::vector<std::vector<int64_t>> pts;
      for (int64_t i = 0; i < k; ++i) pts.push_back({10 * i + 1});
      PointSet A = make_set(spec, pts);
      auto combos = build_Xr(A, r);
      CHECK(BigInt(combos.size()) == binom_b(r, k));
      for (const auto& cp : combos) {
        int64_t sum = 0;
        for (int64_t m : cp.multipliers) sum += m;
        CHECK(sum <= r * (k - 1) - 1);
      }
    }
  }
}

TEST_CASE("interval construction matches the closed form") {
  PointSet A = zset({0, 1});
  auto x2 = build_Xr(A, 2);
  CHECK(embed_combo(A.spec(), x2) == zset({0, 1}));
  auto x3 = build_Xr(A, 3);
  CHECK(embed_combo(A.spec(), x3) == zset({0, 1, 2}));

  // with a shifted base point the (k-1)(r-1)a0 translation applies:
  // X_r = {(r-i)a0 + (i-1)a1 : i = 1..r} = {10, 11, 12} for A = {5,6}, r=3
  PointSet B = zset({5, 6});
  auto xr = build_Xr(B, 3);
  CHECK(embed_combo(B.spec(), xr) == zset({10, 11, 12}));
}

TEST_CASE("build_Xr domain errors") {
  CHECK_THROWS_AS(build_Xr(zset({7}), 2), Error);
  CHECK_THROWS_AS(build_Xr(zset({0, 1}), 1), Error);
}

TEST_CASE("decompose splits exactly") {
  // k=3, r=2, mu=(7/10, 9/10)
  CoeffVector mu(3, {Rat(7, 10), Rat(9, 10)}, Rat(2));
  Decomposition d = decompose(mu, 2);
  CHECK(d.multipliers == std::vector<int64_t>{1, 1});
  CHECK(d.remainder[0] == Rat(1, 5));
  CHECK(d.remainder[1] == Rat(2, 5));
  CHECK_FALSE(d.unit_index.has_value());
  for (size_t i = 0; i < 2; ++i) {
    CHECK(mu.entries[i] == Rat(d.multipliers[i], 2) + d.remainder[i]);
  }
}

TEST_CASE("decompose all-integer case peels a unit") {
  CoeffVector mu(3, {Rat(1), Rat(1)}, Rat(2));
  Decomposition d = decompose(mu, 2);
  REQUIRE(d.unit_index.has_value());
  CHECK(*d.unit_index == 0);
  CHECK(d.multipliers == std::vector<int64_t>{1, 2});
  for (const Rat& l : d.remainder) CHECK(l == 0);
  // mu = m'/(k-1) + e_j/(k-1) exactly
  for (size_t i = 0; i < 2; ++i) {
    Rat unit = (i == *d.unit_index) ? Rat(1, 2) : Rat(0);
    CHECK(mu.entries[i] == Rat(d.multipliers[i], 2) + unit);
  }
  int64_t sum = d.multipliers[0] + d.multipliers[1];
  CHECK(sum <= 2 * 2 - 1);
}

TEST_CASE("decompose of zero is zero") {
  CoeffVector mu(4, {Rat(0), Rat(0), Rat(0)}, Rat(3));
  Decomposition d = decompose(mu, 3);
  CHECK(d.multipliers == std::vector<int64_t>{0, 0, 0});
  CHECK_FALSE(d.unit_index.has_value());
}

TEST_CASE("decompose validation") {
  CHECK_THROWS_AS(CoeffVector(3, {Rat(-1, 2), Rat(0)}, Rat(2)), Error);
  CoeffVector over(3, {Rat(3, 2), Rat(1)}, Rat(3));
  CHECK_THROWS_AS(decompose(over, 2), Error);  // sum 5/2 > r = 2
}

TEST_CASE("decomposition soundness on random rationals") {
  std::mt19937_64 rng(41);
  for (int64_t k = 2; k <= 5; ++k) {
    for (int64_t r = 2; r <= 4; ++r) {
      std::uniform_int_distribution<int64_t> den(1, 60);
      for (int iter = 0; iter < 1200; ++iter) {
        std::vector<Rat> entries;
        for (int64_t i = 0; i < k - 1; ++i) {
          int64_t d = den(rng);
          std::uniform_int_distribution<int64_t> num(
              0, r * d / (k - 1));  // keeps the sum within budget
          entries.emplace_back(num(rng), d);
        }
        CoeffVector mu(k, entries, Rat(r));
        Decomposition dec = decompose(mu, r);
        int64_t msum = 0;
        Rat lsum = 0;
        for (int64_t m : dec.multipliers) msum += m;
        CHECK(msum <= r * (k - 1) - 1);
        for (size_t i = 0; i < entries.size(); ++i) {
          Rat unit = dec.unit_index && *dec.unit_index == i ? Rat(1, k - 1)
                                                            : Rat(0);
          CHECK(entries[i] ==
                Rat(dec.multipliers[i], k - 1) + dec.remainder[i] + unit);
          CHECK(dec.remainder[i] >= 0);
          CHECK(dec.remainder[i] < Rat(1, k - 1));
          lsum += dec.remainder[i];
        }
        CHECK(lsum < 1);
      }
    }
  }
}

TEST_CASE("reduce_hK pigeonhole step") {
  {
    auto [j, reduced] = reduce_hK({Rat(1, 2), Rat(3, 2)}, 1);
    CHECK(j == 1);
    CHECK(reduced == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
  }
  {
    auto [j, reduced] = reduce_hK({Rat(2), Rat(0)}, 1);
    CHECK(j == 0);
    CHECK(reduced == std::vector<Rat>{Rat(1), Rat(0)});
  }
  {
    auto [j, reduced] = reduce_hK({Rat(1), Rat(2), Rat(3)}, 2);
    CHECK(j == 1);
    CHECK(reduced == std::vector<Rat>{Rat(1), Rat(0), Rat(3)});
  }
  CHECK_THROWS_AS(reduce_hK({Rat(1), Rat(1)}, 2), Error);  // sum 2 < ck = 4
}

TEST_CASE("repeated reduction transports the budget down") {
  // start at sum h, reduce (h - h') times by c, land at sum h'
  std::vector<Rat> mu = {Rat(5, 2), Rat(7, 2), Rat(6)};  // k=3, sum 12
  int64_t c = 2;
  int64_t steps = 3;  // 12 -> 6 in steps of c=2, and 6 >= ck = 6 holds
  std::vector<std::pair<size_t, int64_t>> peeled;
  for (int64_t s = 0; s < steps; ++s) {
    auto [j, reduced] = reduce_hK(mu, c);
    peeled.push_back({j, c});
    mu = reduced;
  }
  Rat total = 0;
  for (const Rat& e : mu) total += e;
  CHECK(total == Rat(6));
  CHECK(peeled.size() == 3);
}

TEST_CASE("dilated cover") {
  PointSet A = zset({0, 1});
  auto combos = dilated_cover(A, 2, 3);
  CHECK(embed_combo(A.spec(), combos) == zset({0, 3}));

  auto same = dilated_cover(A, 2, 1);
  auto base = build_Xr(A, 2);
  REQUIRE(same.size() == base.size());
  for (size_t i = 0; i < same.size(); ++i) {
    CHECK(same[i].embedded == base[i].embedded);
  }

  GroupSpec z2({}, 2);
  for (int64_t k = 2; k <= 4; ++k) {
    std::vector<std::vector<int64_t>> pts;
    for (int64_t i = 0; i < k; ++i) pts.push_back({i, i * i});
    PointSet B = make_set(z2, pts);
    for (int64_t r = 2; r <= 4; ++r) {
      for (int64_t h = 1; h <= 10; h += 3) {
        CHECK(BigInt(dilated_cover(B, r, h).size()) == binom_b(r, k));
      }
    }
  }
}

TEST_CASE("budget-1 vectors add up like the convexity law says") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int64_t> den(1, 12);
  for (int iter = 0; iter < 300; ++iter) {
    int64_t k = 3;
    int64_t h = 1 + iter % 5;
    Rat total = 0;
    std::vector<Rat> sum(k - 1, Rat(0));
    for (int64_t copy = 0; copy < h; ++copy) {
      std::vector<Rat> entries;
      Rat budget_left = 1;
      for (int64_t i = 0; i < k - 1; ++i) {
        int64_t d = den(rng);
        std::uniform_int_distribution<int64_t> num(0, d / (k - 1));
        Rat e(num(rng), d);
        entries.push_back(e);
        budget_left -= e;
      }
      CoeffVector v(k, entries, Rat(1));
      for (int64_t i = 0; i < k - 1; ++i) sum[i] += entries[i];
    }
    for (const Rat& s : sum) total += s;
    CHECK(total <= h);
    // and scaling back down produces a budget-1 vector again
    std::vector<Rat> scaled;
    for (const Rat& s : sum) scaled.push_back(s / h);
    CHECK_NOTHROW(CoeffVector(k, scaled, Rat(1)));
  }
}
