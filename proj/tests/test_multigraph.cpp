#include <set>

#include "doctest.h"
#include "logpic/errors.hpp"
#include "logpic/graph_zoo.hpp"
#include "logpic/multigraph.hpp"

using namespace logpic;

namespace {

EdgeSpec edge(std::string id, std::string h0, std::string v0, std::string h1, std::string v1,
              std::vector<std::uint64_t> len = {1}) {
  return EdgeSpec{std::move(id), {HalfEdgeSpec{std::move(h0), std::move(v0)}, HalfEdgeSpec{std::move(h1), std::move(v1)}},
                  MonoidElement(std::move(len))};
}

Multigraph b2_with_lengths(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  return Multigraph({{"v1", 0}, {"v2", 0}}, {edge("a", "a1", "v1", "a2", "v2", a), edge("b", "b1", "v1", "b2", "v2", b)},
                    a.size());
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(fixtures::c3()).ok());

  Multigraph isolated({{"v1", 0}, {"v2", 0}}, {});
  auto v = validate(isolated);
  CHECK_FALSE(v.ok());
  CHECK(v.message().find("graph must be connected") != std::string::npos);
  CHECK_THROWS_AS(laplacian(isolated), InputError);

  Multigraph shared({{"v1", 0}, {"v2", 0}}, {edge("e1", "h", "v1", "h2", "v2"), edge("e2", "h", "v1", "h3", "v2")});
  CHECK_FALSE(validate(shared).ok());

  Multigraph unknown({{"v1", 0}}, {edge("e1", "h1", "v1", "h2", "nope")});
  CHECK_FALSE(validate(unknown).ok());

  Multigraph empty({}, {});
  CHECK_FALSE(validate(empty).ok());
}

TEST_CASE("valence") {
  CHECK(valence(fixtures::loop1(), "v1") == 2);
  CHECK(valence(fixtures::c3(), "v1") == 2);
  CHECK(valence(fixtures::b3(), "v1") == 3);
  CHECK_THROWS_AS(valence(fixtures::c3(), "v9"), InputError);
}

TEST_CASE("invariants") {
  CHECK(invariants(make_graph(2, {{0, 1}, {0, 1}, {0, 1}}, {1, 0})) == GraphInvariants{2, 3});
  CHECK(invariants(fixtures::k1()) == GraphInvariants{0, 0});
  CHECK(invariants(fixtures::loop1()) == GraphInvariants{1, 1});
}

TEST_CASE("laplacian") {
  CHECK(laplacian(fixtures::c3()) == IntMatrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
  CHECK(laplacian(fixtures::loop1()) == IntMatrix{{0}});
  CHECK(laplacian(fixtures::b2()) == IntMatrix{{2, -2}, {-2, 2}});
}

TEST_CASE("canonical divisor") {
  CHECK(canonical_divisor(fixtures::b3()) == GraphDivisor(std::vector<Chips>{1, 1}));
  CHECK(canonical_divisor(fixtures::c3()) == GraphDivisor(std::vector<Chips>{0, 0, 0}));
  CHECK(canonical_divisor(fixtures::loop1()) == GraphDivisor(std::vector<Chips>{0}));
}

TEST_CASE("subdivide_loops") {
  auto s = subdivide_loops(fixtures::loop1());
  CHECK(s.graph.num_vertices() == 2);
  CHECK(s.graph.num_edges() == 2);
  CHECK(laplacian(s.graph) == laplacian(fixtures::b2()));
  CHECK(s.midpoint[0] != kNoIndex);

  auto c = subdivide_loops(fixtures::c3());
  CHECK(c.graph.vertices().size() == 3);
  CHECK(laplacian(c.graph) == laplacian(fixtures::c3()));

  auto two = subdivide_loops(make_graph(1, {{0, 0}, {0, 0}}));
  CHECK(two.graph.num_vertices() == 3);
  CHECK(two.graph.num_edges() == 4);
  CHECK(invariants(two.graph).b1 == 2);
}

TEST_CASE("graph-level properties over the small multigraph zoo") {
  for (const auto& g : enumerate_multigraphs(3, 4)) {
    const IntMatrix l = laplacian(g);
    for (std::size_t i = 0; i < l.rows(); ++i) {
      Integer row = 0, col = 0;
      for (std::size_t j = 0; j < l.cols(); ++j) {
        row += l(i, j);
        col += l(j, i);
        CHECK(l(i, j) == l(j, i));
      }
      CHECK(row == 0);
      CHECK(col == 0);
    }
    Chips total = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) total += valence(g, v);
    CHECK(total == 2 * static_cast<Chips>(g.num_edges()));
    CHECK(invariants(subdivide_loops(g).graph) == invariants(g));
  }
}

TEST_CASE("enumerated zoo is small and connected") {
  auto zoo = enumerate_multigraphs(2, 2);
  // K1, K1+loop, K1+2 loops, P2, P2+loop, B2.
  CHECK(zoo.size() == 6);
  for (const auto& g : zoo) CHECK(validate(g).ok());
}

TEST_CASE("automorphisms") {
  CHECK(automorphisms(fixtures::c3()).size() == 6);
  CHECK(automorphisms(fixtures::b2()).size() == 4);
  CHECK(automorphisms(b2_with_lengths({1, 0}, {0, 1})).size() == 2);
  CHECK(automorphisms(fixtures::loop1()).size() == 2);  // the half-edge flip
  CHECK_THROWS_AS(automorphisms(make_graph(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}})),
                  InputError);
}

TEST_CASE("automorphisms form a group") {
  for (const auto& g : {fixtures::c3(), fixtures::b3(), make_graph(2, {{0, 0}, {0, 1}, {1, 1}}),
                        make_graph(3, {{0, 1}, {0, 1}, {1, 2}, {2, 2}})}) {
    auto group = automorphisms(g);
    std::set<GraphAutomorphism> members(group.begin(), group.end());
    CHECK(members.count(identity_automorphism(g)) == 1);
    for (const auto& a : group) {
      CHECK(check_graph_automorphism(g, a).empty());
      CHECK(members.count(inverse(a)) == 1);
      CHECK(compose(a, inverse(a)) == identity_automorphism(g));
      for (const auto& b : group) CHECK(members.count(compose(a, b)) == 1);
    }
  }
}
