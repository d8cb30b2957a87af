#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <thread>

#include "core/config.hpp"
#include "core/sumset.hpp"
#include "helpers.hpp"

using namespace apxgrp;
using namespace apxgrp::testing;

TEST_CASE("pairwise sumset basics") {
  CHECK(sumset(zset({0, 1}), zset({0, 1})) == zset({0, 1, 2}));
  // oracle: all 9 pairwise sums of {0,2,3}
  auto oracle = brute_hfold(z_spec(), {{0}, {2}, {3}}, 2);
  PointSet got = sumset(zset({0, 2, 3}), zset({0, 2, 3}));
  CHECK(as_point_set(got) == oracle);
  CHECK(got == zset({0, 2, 3, 4, 5, 6}));

  PointSet s = zset({4, 7, 9});
  CHECK(sumset(s, zset({0})) == s);
}

TEST_CASE("sumset preconditions") {
  CHECK_THROWS_AS(sumset(zset({0}), PointSet(z_spec())), Error);
  GroupSpec other({}, 2);
  CHECK_THROWS_AS(sumset(zset({0}), make_set(other, {{0, 0}})), Error);
}

TEST_CASE("h_fold examples") {
  CHECK(h_fold(zset({0, 1}), 5) == zset({0, 1, 2, 3, 4, 5}));
  CHECK(h_fold(zset({0, 2, 3}), 2) == zset({0, 2, 3, 4, 5, 6}));

  GroupSpec z2({}, 2);
  PointSet tri = make_set(z2, {{0, 0}, {1, 0}, {0, 1}});
  auto oracle = brute_hfold(z2, {{0, 0}, {1, 0}, {0, 1}}, 2);
  PointSet got = h_fold(tri, 2);
  CHECK(as_point_set(got) == oracle);
  CHECK(got.size() == 6);

  CHECK_THROWS_AS(h_fold(zset({0, 1}), 0), Error);
}

TEST_CASE("dilate") {
  CHECK(dilate(zset({0, 2, 3}), 2) == zset({0, 4, 6}));
  PointSet s = zset({1, 5});
  CHECK(dilate(s, 1) == s);
  GroupSpec z6({6}, 0);
  CHECK(dilate(make_set(z6, {{0}, {2}, {4}}), 3) == make_set(z6, {{0}}));
}

TEST_CASE("translate") {
  GroupSpec z = z_spec();
  CHECK(translate(zset({0, 2, 3}), elem(z, {5})) == zset({5, 7, 8}));
  PointSet s = zset({1, 9});
  CHECK(translate(s, GroupElement::identity(z)) == s);
  GroupElement c = elem(z, {-4});
  CHECK(translate(translate(s, c), negate_elem(c)) == s);
}

TEST_CASE("direct product") {
  PointSet p = direct_product(zset({0, 1}), zset({0}));
  GroupSpec z2({}, 2);
  CHECK(p == make_set(z2, {{0, 0}, {1, 0}}));

  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    PointSet a = random_set(rng, z_spec(), 4, -4, 4);
    PointSet b = random_set(rng, GroupSpec({3}, 0), 2, 0, 2);
    CHECK(direct_product(a, b).size() == a.size() * b.size());
  }

  PointSet square = direct_product(zset({0, 1}), zset({0, 1}));
  PointSet two = h_fold(square, 2);
  CHECK(as_point_set(two) ==
        brute_hfold(z2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 2));
  CHECK(two.size() == 9);
}

TEST_CASE("torsion mixes into the product layout torsion-first") {
  GroupSpec za({2}, 1);
  GroupSpec zb({3}, 1);
  PointSet a = make_set(za, {{1, 7}});
  PointSet b = make_set(zb, {{2, -1}});
  PointSet p = direct_product(a, b);
  GroupSpec expect({2, 3}, 2);
  CHECK(p == make_set(expect, {{1, 2, 7, -1}}));
}

TEST_CASE("projection to the free part") {
  GroupSpec spec({6}, 1);
  PointSet s = make_set(spec, {{4, 3}, {5, 3}});
  CHECK(project_free(s) == zset({3}));

  GroupSpec z6({6}, 0);
  CHECK_THROWS_AS(project_free(make_set(z6, {{1}})), Error);

  // projection of a product recovers the free factor
  PointSet g0 = make_set(z6, {{0}, {3}});
  PointSet free_part = zset({0, 2});
  CHECK(project_free(direct_product(g0, free_part)) == free_part);
}

TEST_CASE("projection commutes with h_fold") {
  std::mt19937_64 rng(11);
  GroupSpec spec({4}, 2);
  for (int iter = 0; iter < 40; ++iter) {
    PointSet a = random_set(rng, spec, 3, -2, 2);
    for (int64_t h = 1; h <= 5; ++h) {
      CHECK(project_free(h_fold(a, h)) == h_fold(project_free(a), h));
    }
  }
}

TEST_CASE("homomorphic images") {
  GroupSpec z = z_spec();
  GroupSpec z6({6}, 0);
  Homomorphism reduction =
      Homomorphism::make(z, z6, {}, {elem(z6, {1})});
  CHECK(hom_image(zset({0, 2, 3, 8}), reduction) ==
        make_set(z6, {{0}, {2}, {3}}));

  PointSet s = zset({-3, 0, 9});
  CHECK(hom_image(s, Homomorphism::identity(z)) == s);

  GroupSpec z2({}, 2);
  Homomorphism coord_sum =
      Homomorphism::make(z2, z, {}, {elem(z, {1}), elem(z, {1})});
  CHECK(hom_image(make_set(z2, {{0, 0}, {1, 0}, {0, 1}}), coord_sum) ==
        zset({0, 1}));
}

TEST_CASE("inconsistent residue maps are rejected") {
  GroupSpec z4({4}, 0);
  GroupSpec z6({6}, 0);
  // 4 * 1 = 4 != 0 in Z_6, so e_1 -> 1 is not a homomorphism
  CHECK_THROWS_AS(Homomorphism::make(z4, z6, {elem(z6, {1})}, {}), Error);
  // 4 * 3 = 12 = 0 in Z_6 works
  CHECK_NOTHROW(Homomorphism::make(z4, z6, {elem(z6, {3})}, {}));
}

TEST_CASE("hom_image distributes over sumsets") {
  std::mt19937_64 rng(13);
  GroupSpec z2({}, 2);
  GroupSpec target({6}, 1);
  Homomorphism f = Homomorphism::make(
      z2, target, {}, {elem(target, {1, 2}), elem(target, {5, -1})});
  for (int iter = 0; iter < 60; ++iter) {
    PointSet s = random_set(rng, z2, 3, -3, 3);
    PointSet t = random_set(rng, z2, 3, -3, 3);
    CHECK(hom_image(sumset(s, t), f) ==
          sumset(hom_image(s, f), hom_image(t, f)));
  }
}

TEST_CASE("h_fold splits over any partition of h") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 60; ++iter) {
    PointSet a = random_set(rng, z_spec(), 1 + iter % 5, 0, 4);
    for (int64_t h1 = 1; h1 <= 4; ++h1) {
      for (int64_t h2 = 1; h2 <= 4; ++h2) {
        CHECK(h_fold(a, h1 + h2) == sumset(h_fold(a, h1), h_fold(a, h2)));
      }
    }
  }
}

TEST_CASE("dilation sits inside the matching fold and commutes with it") {
  std::mt19937_64 rng(19);
  GroupSpec z2({}, 2);
  for (int iter = 0; iter < 40; ++iter) {
    PointSet a = random_set(rng, z2, 3, -3, 3);
    for (int64_t h = 1; h <= 5; ++h) {
      PointSet folded = h_fold(a, h);
      PointSet dilated = dilate(a, h);
      for (size_t i = 0; i < dilated.size(); ++i) {
        CHECK(folded.contains(dilated.row(i)));
      }
    }
    for (int64_t t = 1; t <= 3; ++t) {
      for (int64_t h = 1; h <= 4; ++h) {
        CHECK(h_fold(dilate(a, t), h) == dilate(h_fold(a, h), t));
      }
    }
  }
}

TEST_CASE("hash and sorted-merge sumset paths agree bit for bit") {
  std::mt19937_64 rng(23);
  GroupSpec spec({4}, 2);
  for (int iter = 0; iter < 100; ++iter) {
    PointSet s = random_set(rng, spec, 1 + iter % 6, -6, 6);
    PointSet t = random_set(rng, spec, 1 + (iter / 2) % 6, -6, 6);
    PointSet a = sumset(s, t);
    PointSet b = sumset_sorted(s, t);
    CHECK(a == b);
    CHECK(a.data() == b.data());
  }
}

TEST_CASE("the pair guard aborts oversized requests") {
  Limits& lim = limits();
  int64_t saved = lim.sumset_pair_cap;
  lim.sumset_pair_cap = 10;
  PointSet a = zset({0, 1, 2, 3});
  CHECK_THROWS_AS(sumset(a, a), Error);
  try {
    sumset(a, a);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Resource);
  }
  lim.sumset_pair_cap = saved;
  CHECK_NOTHROW(sumset(a, a));
}

TEST_CASE("power cache returns identical results and survives threads") {
  clear_power_cache();
  PointSet a = zset({0, 2, 3});
  PointSet first = h_fold(a, 9);
  PointSet second = h_fold(a, 9);
  CHECK(first == second);
  CHECK(first.data() == second.data());

  std::vector<std::thread> workers;
  std::vector<PointSet> results(4);
  for (int i = 0; i < 4; ++i) {
    workers.emplace_back([&, i] { results[i] = h_fold(a, 12); });
  }
  for (auto& t : workers) t.join();
  for (int i = 1; i < 4; ++i) {
    CHECK(results[i] == results[0]);
  }
  clear_power_cache();
}
