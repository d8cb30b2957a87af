#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "core/khovanskii.hpp"
#include "core/sumset.hpp"
#include "helpers.hpp"

using namespace apxgrp;
using namespace apxgrp::testing;

namespace {

// Brute-force minimal l1 representation over a +/- radius box; oracle for
// the module's particular-solution + kernel-shift search.
std::optional<int64_t> brute_min_l1(
    const std::vector<std::vector<int64_t>>& gens,
    const std::vector<int64_t>& target, int64_t radius) {
  size_t s = gens.size();
  size_t n = target.size();
  std::vector<int64_t> z(s, -radius);
  std::optional<int64_t> best;
  while (true) {
    std::vector<int64_t> acc(n, 0);
    int64_t l1 = 0;
    for (size_t j = 0; j < s; ++j) {
      l1 += std::llabs(z[j]);
      for (size_t t = 0; t < n; ++t) acc[t] += z[j] * gens[j][t];
    }
    if (acc == target && (!best || l1 < *best)) best = l1;
    size_t j = s;
    bool done = true;
    while (j-- > 0) {
      if (++z[j] <= radius) {
        done = false;
        break;
      }
      z[j] = -radius;
    }
    if (done) break;
  }
  return best;
}

}  // namespace

TEST_CASE("lattice basis examples") {
  LatticeBasis b1 = lattice_basis(zset({0, 2, 3}));
  CHECK(b1.hnf.rank == 1);
  CHECK(b1.hnf.basis[0] == std::vector<int64_t>{1});

  LatticeBasis b2 = lattice_basis(zset({0, 2, 4}));
  CHECK(b2.hnf.rank == 1);
  CHECK(b2.hnf.basis[0] == std::vector<int64_t>{2});

  LatticeBasis b3 = lattice_basis(z2set({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(b3.hnf.rank == 2);
  CHECK(b3.hnf.basis[0] == std::vector<int64_t>{1, 0});
  CHECK(b3.hnf.basis[1] == std::vector<int64_t>{0, 1});
}

TEST_CASE("lattice basis rejects torsion and singletons") {
  GroupSpec z6({6}, 0);
  CHECK_THROWS_AS(lattice_basis(make_set(z6, {{0}, {1}})), Error);
  CHECK_THROWS_AS(lattice_basis(zset({3})), Error);
}

TEST_CASE("parallelepiped enumeration") {
  auto p1 = enumerate_parallelepiped(zset({0, 2, 3}));
  REQUIRE(p1.size() == 5);
  for (int64_t v = 0; v <= 4; ++v) {
    CHECK(p1[v].coords() == std::vector<int64_t>{v});
  }

  auto p2 = enumerate_parallelepiped(z2set({{0, 0}, {1, 0}, {0, 1}}));
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].is_identity());

  auto p3 = enumerate_parallelepiped(zset({0, 1}));
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].is_identity());
}

TEST_CASE("parallelepiped respects the half-open boundary") {
  // generators 2 and -2: the cell is the segment (-2, 2) on the line and
  // contains exactly the lattice multiples of gcd = 2 inside it, half-open
  PointSet A = zset({0, 2, -2});  // canonical min is -2; generators 2, 4
  auto pts = enumerate_parallelepiped(A);
  // generators relative to -2 are {2, 4}: cell = [0, 6), gcd lattice = 2Z
  std::vector<int64_t> got;
  for (const auto& p : pts) got.push_back(p.coords()[0]);
  CHECK(got == std::vector<int64_t>{0, 2, 4});
}

TEST_CASE("minimal representations on the line") {
  PointSet A = zset({0, 2, 3});
  GroupSpec z = A.spec();

  auto [z1, l1] = minimal_representation(elem(z, {1}), A);
  CHECK(l1 == 2);
  CHECK(z1 == std::vector<int64_t>{-1, 1});
  auto oracle1 = brute_min_l1({{2}, {3}}, {1}, 5);
  CHECK(*oracle1 == l1);

  auto [z0, l0] = minimal_representation(elem(z, {0}), A);
  CHECK(l0 == 0);
  CHECK(z0 == std::vector<int64_t>{0, 0});

  auto [z4, l4] = minimal_representation(elem(z, {4}), A);
  CHECK(l4 == 2);
  CHECK(z4 == std::vector<int64_t>{2, 0});
  CHECK(*brute_min_l1({{2}, {3}}, {4}, 5) == 2);
}

TEST_CASE("minimal representation matches brute force on random inputs") {
  std::mt19937_64 rng(47);
  GroupSpec z2({}, 2);
  std::uniform_int_distribution<int64_t> val(-3, 3);
  int done = 0;
  while (done < 60) {
    PointSet A = random_set(rng, z2, 2 + done % 3, -3, 3);
    if (A.size() < 2) continue;
    std::vector<std::vector<int64_t>> gens;
    Row a0 = A.row(0);
    for (size_t i = 1; i < A.size(); ++i) {
      gens.push_back({A.row(i)[0] - a0[0], A.row(i)[1] - a0[1]});
    }
    // pick a random lattice combination as the target
    std::vector<int64_t> target(2, 0);
    for (const auto& g : gens) {
      int64_t w = val(rng);
      target[0] += w * g[0];
      target[1] += w * g[1];
    }
    auto [zrep, l1] =
        minimal_representation(GroupElement(z2, target), A);
    std::vector<int64_t> back(2, 0);
    for (size_t j = 0; j < gens.size(); ++j) {
      back[0] += zrep[j] * gens[j][0];
      back[1] += zrep[j] * gens[j][1];
    }
    CHECK(back == target);
    auto oracle = brute_min_l1(gens, target, 12);
    REQUIRE(oracle.has_value());
    CHECK(*oracle == l1);
    ++done;
  }
}

TEST_CASE("membership errors") {
  PointSet A = zset({0, 2, 4});
  CHECK_THROWS_AS(minimal_representation(elem(A.spec(), {1}), A), Error);
  try {
    minimal_representation(elem(A.spec(), {1}), A);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Membership);
  }
}

TEST_CASE("rewrite constants") {
  KhovanskiiData d1 = khovanskii_constant(zset({0, 2, 3}));
  CHECK(d1.m == 2);
  CHECK(d1.c == 4);
  // the zero point is recorded with the zero representation
  bool has_zero = false;
  for (const auto& e : d1.entries) {
    if (e.point == std::vector<int64_t>{0}) {
      has_zero = true;
      CHECK(e.rep == std::vector<int64_t>{0, 0});
    }
    CHECK(e.l1 <= d1.m);
    // every stored representation reproduces its point
    int64_t back = 2 * e.rep[0] + 3 * e.rep[1];
    CHECK(back == e.point[0]);
  }
  CHECK(has_zero);

  KhovanskiiData d2 = khovanskii_constant(zset({0, 1}));
  CHECK(d2.m == 0);
  CHECK(d2.c == 1);

  KhovanskiiData d3 = khovanskii_constant(z2set({{0, 0}, {1, 0}, {0, 1}}));
  CHECK(d3.m == 0);
  CHECK(d3.c == 2);
}

TEST_CASE("m is invariant under permuting the generators") {
  std::vector<std::vector<int64_t>> gens = {{2, 0}, {3, 0}, {0, 3}};
  GroupSpec z2({}, 2);
  KhovanskiiData base = khovanskii_for_generators(z2, gens);
  std::sort(gens.begin(), gens.end());
  do {
    KhovanskiiData perm = khovanskii_for_generators(z2, gens);
    CHECK(perm.m == base.m);
    CHECK(perm.c == base.c);
    CHECK(perm.entries.size() == base.entries.size());
  } while (std::next_permutation(gens.begin(), gens.end()));
}

TEST_CASE("fast path and elimination agree on independent generators") {
  std::vector<std::vector<int64_t>> gens = {{2, 1}, {1, 3}};
  for (int64_t x = -2; x <= 5; ++x) {
    for (int64_t y = -2; y <= 6; ++y) {
      std::vector<int64_t> v = {x, y};
      CHECK(cell_member_fast(gens, v) == cell_member_elimination(gens, v));
    }
  }

  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int64_t> entry(-4, 4);
  int instances = 0;
  while (instances < 30) {
    std::vector<std::vector<int64_t>> g = {{entry(rng), entry(rng)},
                                           {entry(rng), entry(rng)}};
    if (g[0][0] * g[1][1] - g[0][1] * g[1][0] == 0) continue;  // dependent
    for (int probe = 0; probe < 40; ++probe) {
      std::vector<int64_t> v = {entry(rng), entry(rng)};
      CHECK(cell_member_fast(g, v) == cell_member_elimination(g, v));
    }
    ++instances;
  }
}

TEST_CASE("verify_rewrite on the worked instances") {
  PointSet A = zset({0, 2, 3});
  KhovanskiiData d = khovanskii_constant(A);
  REQUIRE(d.c == 4);
  CHECK(verify_rewrite(A, d, 12));

  PointSet B = zset({0, 1});
  KhovanskiiData dB = khovanskii_constant(B);
  REQUIRE(dB.c == 1);
  for (int64_t h = 2; h <= 12; ++h) {
    CHECK(verify_rewrite(B, dB, h));
  }

  PointSet T = z2set({{0, 0}, {1, 0}, {0, 1}});
  KhovanskiiData dT = khovanskii_constant(T);
  REQUIRE(dT.c == 2);
  CHECK(verify_rewrite_range(T, dT, 6, 12));
}

TEST_CASE("verify_rewrite preconditions") {
  PointSet A = zset({0, 2, 3});
  KhovanskiiData d = khovanskii_constant(A);
  CHECK_THROWS_AS(verify_rewrite(A, d, 11), Error);  // h < ck = 12
  PointSet shifted = zset({1, 3, 4});
  CHECK_THROWS_AS(verify_rewrite(shifted, d, 12), Error);  // base not 0
}

TEST_CASE("rewrite verification across the lemma range") {
  std::mt19937_64 rng(53);
  GroupSpec z2({}, 2);
  int instances = 0;
  while (instances < 8) {
    PointSet raw = random_set(rng, z2, 2 + instances % 3, 0, 3);
    if (raw.size() < 2) continue;
    PointSet A = translate(raw, negate_elem(raw.min_element()));
    KhovanskiiData d = khovanskii_constant(A);
    int64_t k = static_cast<int64_t>(A.size());
    CHECK(verify_rewrite_range(A, d, d.c * k, d.c * k + 10));
    ++instances;
  }
}
