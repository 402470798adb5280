#include <doctest.h>

#include "support.hpp"
#include "tqft/cellgraph.hpp"
#include "tqft/errors.hpp"

using namespace tqft;
using namespace testsupport;

namespace {

CellGraph one_vertex(int degree, std::vector<std::pair<int, int>> pairs) {
  std::vector<std::pair<HalfEdge, HalfEdge>> m;
  for (auto [a, b] : pairs) m.push_back({{0, a}, {0, b}});
  return CellGraph({degree}, m);
}

// Degree profiles with positive entries and even sum at most 2 * max_edges.
std::vector<std::vector<int>> profiles(int max_edges) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (!cur.empty() && left % 2 == 0 && left < 2 * max_edges) out.push_back(cur);
    for (int d = 1; d <= left; ++d) {
      cur.push_back(d);
      rec(left - d);
      cur.pop_back();
    }
  };
  rec(2 * max_edges);
  return out;
}

}  // namespace

TEST_CASE("genus from face tracing") {
  auto disk = one_vertex(2, {{0, 1}});
  CHECK(disk.num_faces() == 2);
  CHECK(disk.genus() == 0);
  auto crossing = one_vertex(4, {{0, 2}, {1, 3}});
  CHECK(crossing.num_faces() == 1);
  CHECK(crossing.genus() == 1);
  auto planar = one_vertex(4, {{0, 1}, {2, 3}});
  CHECK(planar.num_faces() == 3);
  CHECK(planar.genus() == 0);
  CellGraph lone({0}, std::vector<std::pair<HalfEdge, HalfEdge>>{});
  CHECK(lone.genus() == 0);
  CellGraph apart({1, 1, 0}, {{{0, 0}, {1, 0}}});
  CHECK_FALSE(apart.connected());
  CHECK_THROWS(apart.genus());
}

TEST_CASE("malformed graphs are rejected") {
  CHECK_THROWS(CellGraph({2}, std::vector<std::pair<HalfEdge, HalfEdge>>{{{0, 0}, {0, 0}}}));
  CHECK_THROWS(CellGraph({3}, std::vector<std::pair<HalfEdge, HalfEdge>>{{{0, 0}, {0, 1}}}));
  CHECK_THROWS(CellGraph({2}, std::vector<std::pair<HalfEdge, HalfEdge>>{{{0, 0}, {0, 5}}}));
}

TEST_CASE("arrowed graph counts") {
  CHECK(count_arrowed_graphs(0, {2}) == 1);
  CHECK(count_arrowed_graphs(0, {4}) == 2);
  CHECK(count_arrowed_graphs(1, {4}) == 1);
  CHECK(count_arrowed_graphs(0, {6}) == 5);
  CHECK(count_arrowed_graphs(0, {8}) == 14);
  CHECK(count_arrowed_graphs(0, {3}) == 0);
  CHECK(count_arrowed_graphs(0, {1, 1}) == 1);
  CHECK_THROWS_AS(count_arrowed_graphs(0, {18}), BudgetError);
}

TEST_CASE("census conserves matchings") {
  for (const auto& mu : profiles(5)) {
    auto c = arrowed_census(mu);
    Integer sum = c.disconnected;
    for (const auto& [g, k] : c.by_genus) sum += k;
    int half = 0;
    for (int m : mu) half += m;
    Integer all = 1;
    for (int k = half - 1; k > 0; k -= 2) all *= k;
    CHECK(sum == c.total);
    CHECK(c.total == all);
  }
}

TEST_CASE("lattice point catalogue") {
  CHECK(count_lattice_points(0, {1, 1, 1}) == 0);
  CHECK(count_lattice_points(0, {1, 1, 2}) == 1);
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b)
      for (int c = 1; c <= 6; ++c)
        CHECK(count_lattice_points(0, {a, b, c}) == ((a + b + c) % 2 == 0 ? 1 : 0));
  for (int b = 1; b <= 12; ++b) {
    Rational expect = b % 2 == 0 ? Rational(frac(b * b - 4, 48)) : Rational(0);
    CHECK(count_lattice_points(1, {b}) == expect);
  }
  CHECK_THROWS_AS(count_lattice_points(0, {1, 1, 1, 1}), BudgetError);
}

TEST_CASE("edge contraction on small graphs") {
  for (const auto& [name, A] : small_algebras()) {
    CAPTURE(name);
    CellGraph lone({0}, std::vector<std::pair<HalfEdge, HalfEdge>>{});
    for (int i = 0; i < A->dim(); ++i) CHECK(eca_evaluate(lone, A, {A->basis(i)}) == A->eps(A->basis(i)));
    auto loop = one_vertex(2, {{0, 1}});
    for (int i = 0; i < A->dim(); ++i)
      CHECK(eca_evaluate(loop, A, {A->basis(i)}) == A->omega_basis(0, {i}));
  }
  auto K = trivial_algebra();
  for (const auto& mu : profiles(4))
    for_each_matching(mu, [&](const CellGraph& g) {
      CHECK(eca_evaluate(g, K, std::vector<Element>(mu.size(), Element{1})) == 1);
    });
  CellGraph apart({1, 1, 0}, {{{0, 0}, {1, 0}}});
  CHECK_THROWS(eca_evaluate(apart, K, {{1}, {1}, {1}}));
}

TEST_CASE("contraction kinds") {
  CellGraph bar({1, 1}, {{{0, 0}, {1, 0}}});
  auto c = contract(bar, {0, 0});
  CHECK(c.kind == Contraction::Join);
  CHECK(c.graph.degrees() == std::vector<int>{0});
  auto planar = one_vertex(4, {{0, 1}, {2, 3}});
  auto s = contract(planar, {0, 0});
  CHECK(s.kind == Contraction::LoopSplit);
  REQUIRE(s.parts.size() == 2);
  auto crossing = one_vertex(4, {{0, 2}, {1, 3}});
  auto l = contract(crossing, {0, 0});
  CHECK(l.kind == Contraction::LoopConnected);
  CHECK(l.graph.num_vertices() == 2);
  CHECK(l.graph.genus() == 0);
}

TEST_CASE("edge contraction is path and graph independent") {
  for (const auto& [name, A] : small_algebras()) {
    CAPTURE(name);
    for (const auto& mu : profiles(3))
      for_each_matching(mu, [&](const CellGraph& g) {
        const int n = g.num_vertices();
        auto expect = omega_functional(A, g.genus(), n);
        auto first = eca_functional(g, A);
        CHECK(first == expect);
        for (const auto& f : eca_all_orders(g, A)) CHECK(f == expect);
      });
  }
}

TEST_CASE("cell graph json round trip") {
  auto g = one_vertex(4, {{0, 2}, {1, 3}});
  auto j = to_json(g);
  auto h = cell_graph_from_json(j);
  CHECK(h.degrees() == g.degrees());
  CHECK(h.edges() == g.edges());
  CHECK(to_json(h).dump() == j.dump());
}
