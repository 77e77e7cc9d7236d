#include <random>

#include "doctest.h"
#include "logpic/errors.hpp"
#include "logpic/monoid.hpp"

using namespace logpic;

TEST_CASE("hom_apply") {
  MonoidHom sum = MonoidHom::from_images(1, {MonoidElement({1}), MonoidElement({1})});
  CHECK(hom_apply(sum, MonoidElement({2, 3})) == MonoidElement({5}));

  // Every edge generator to 1 in N.
  MonoidHom edges = MonoidHom::from_images(1, std::vector<MonoidElement>(4, MonoidElement({1})));
  CHECK(hom_apply(edges, MonoidElement::unit(4, 2)) == MonoidElement({1}));

  CHECK(hom_apply(MonoidHom::zero(3, 2), MonoidElement({4, 5, 6})).is_zero());
  CHECK_THROWS_AS(hom_apply(sum, MonoidElement({1})), InputError);
}

TEST_CASE("hom_apply is additive and preserves zero") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> coord(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    MonoidHom h = MonoidHom::zero(3, 2);
    for (auto& row : h.matrix)
      for (auto& x : row) x = coord(rng);
    MonoidElement a({coord(rng), coord(rng), coord(rng)});
    MonoidElement b({coord(rng), coord(rng), coord(rng)});
    CHECK(hom_apply(h, a + b) == hom_apply(h, a) + hom_apply(h, b));
    CHECK(hom_apply(h, MonoidElement::zero(3)).is_zero());
  }
}

TEST_CASE("node presentations") {
  auto semistable = node_presentation(MonoidElement({1}));
  CHECK(semistable.p == MonoidElement({1}));
  CHECK(semistable.relation() == std::vector<std::int64_t>{1, 1, -1});
  CHECK(semistable.generator_count() == 3);

  auto two = node_presentation(MonoidElement({1, 0}));
  CHECK(two.relation() == std::vector<std::int64_t>{1, 1, -1, 0});
  CHECK_THROWS_AS(node_presentation(MonoidElement({0})), InputError);
}

TEST_CASE("is_unit") {
  CHECK(is_unit(MonoidElement({1})));
  CHECK_FALSE(is_unit(MonoidElement({2})));
  CHECK_THROWS_AS(is_unit(MonoidElement({1, 0})), InputError);
}
