#include <random>

#include "doctest.h"
#include "logpic/component.hpp"
#include "logpic/errors.hpp"

using namespace logpic;

namespace {

ComponentModel rational3() { return ComponentModel::rational({"p", "q", "r"}); }

std::vector<ComponentModel> models() {
  return {rational3(), ComponentModel::elliptic({}), ComponentModel::elliptic({5}), ComponentModel::elliptic({2, 2}),
          ComponentModel::elliptic({6}), ComponentModel::elliptic({2, 4})};
}

}  // namespace

TEST_CASE("class_of examples") {
  auto p1 = rational3();
  CHECK(class_of(p1, {{{"p", 2}, {"q", -1}}}) == ComponentClass{1, {}});
  auto e5 = ComponentModel::elliptic({5});
  CHECK(class_of(e5, {{{"p2", 1}, {"p3", 1}}}) == ComponentClass{2, {0}});
  CHECK(class_of(e5, {}) == ComponentClass{0, {0}});
  CHECK_THROWS_AS(class_of(e5, {{{"nowhere", 1}}}), InputError);
}

TEST_CASE("h0, effectivity and canonical class examples") {
  auto p1 = rational3();
  auto e5 = ComponentModel::elliptic({5});
  CHECK(h0(p1, {3, {}}) == 4);
  CHECK(h0(p1, {-2, {}}) == 0);
  CHECK(h0(e5, {0, {0}}) == 1);
  CHECK(h0(e5, {0, {3}}) == 0);
  for (Chips s = 0; s < 5; ++s) {
    CHECK(h0(e5, {2, {s}}) == 2);
    CHECK(is_effective_class(e5, {1, {s}}));
  }
  CHECK_FALSE(is_effective_class(p1, {-1, {}}));
  CHECK_FALSE(is_effective_class(e5, {0, {1}}));
  CHECK(canonical_class(p1) == ComponentClass{-2, {}});
  CHECK(canonical_class(e5) == ComponentClass{0, {0}});
  for (const auto& m : models()) CHECK(h0(m, canonical_class(m)) == m.genus());
}

TEST_CASE("component Riemann-Roch over every class in degrees -4..4") {
  for (const auto& m : models()) {
    const auto k = canonical_class(m);
    for (Chips d = -4; d <= 4; ++d)
      for (const auto& t : m.group().elements()) {
        ComponentClass c{d, t};
        CHECK(h0(m, c) - h0(m, sub(m, k, c)) == d - m.genus() + 1);
      }
  }
}

TEST_CASE("class_of is additive") {
  std::mt19937_64 rng(11);
  for (const auto& m : models()) {
    if (m.points().empty()) continue;
    for (int trial = 0; trial < 200; ++trial) {
      ComponentDivisor a, b, ab;
      for (int i = 0; i < 4; ++i) {
        const auto& pa = m.points()[rng() % m.points().size()].id;
        const auto& pb = m.points()[rng() % m.points().size()].id;
        Chips ka = static_cast<Chips>(rng() % 7) - 3, kb = static_cast<Chips>(rng() % 7) - 3;
        a.terms.emplace_back(pa, ka);
        b.terms.emplace_back(pb, kb);
        ab.terms.emplace_back(pa, ka);
        ab.terms.emplace_back(pb, kb);
      }
      CHECK(class_of(m, ab) == add(m, class_of(m, a), class_of(m, b)));
    }
  }
}

TEST_CASE("genus 1: positive degree is always effective") {
  for (const auto& m : models()) {
    if (m.genus() != 1) continue;
    for (Chips d = 1; d <= 4; ++d)
      for (const auto& t : m.group().elements()) CHECK(is_effective_class(m, {d, t}));
  }
}

TEST_CASE("group arithmetic and rosters") {
  FiniteAbelianGroup g({2, 3});
  CHECK(g.order() == 6);
  CHECK(g.elements().size() == 6);
  CHECK(g.add({1, 2}, {1, 2}) == Torsion{0, 1});
  CHECK(g.neg({1, 1}) == Torsion{1, 2});
  CHECK(g.scale({1, 2}, -1) == Torsion{1, 1});
  CHECK_THROWS_AS(FiniteAbelianGroup({0}), InputError);

  auto e5 = ComponentModel::elliptic({5});
  CHECK(e5.points().size() == 5);
  CHECK(e5.point_class("p3") == Torsion{3});
  CHECK(e5.problems().empty());
  CHECK(ComponentModel::elliptic({2, 2}).has_point("p1_0"));
}

TEST_CASE("invalid models are reported") {
  ComponentModel twice(1, FiniteAbelianGroup({3}), {{"a", {1}}, {"b", {1}}});
  REQUIRE_FALSE(twice.problems().empty());
  CHECK(twice.problems()[0].find("distinct classes") != std::string::npos);
  ComponentModel out_of_range(1, FiniteAbelianGroup({3}), {{"a", {3}}});
  CHECK_FALSE(out_of_range.problems().empty());
  ComponentModel dup(0, FiniteAbelianGroup(), {{"a", {}}, {"a", {}}});
  CHECK_FALSE(dup.problems().empty());
}

TEST_CASE("genus 2 is data only") {
  ComponentModel g2(2, FiniteAbelianGroup(), {{"a", {}}});
  CHECK(g2.problems().empty());
  CHECK(class_of(g2, {{{"a", 3}}}).degree == 3);
  CHECK_THROWS_AS(h0(g2, {1, {}}), UnsupportedModel);
  CHECK_THROWS_AS(canonical_class(g2), UnsupportedModel);
}
