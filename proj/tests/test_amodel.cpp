#include <doctest.h>

#include <algorithm>
#include <functional>

#include "support.hpp"
#include "tqft/amodel.hpp"
#include "tqft/cellgraph.hpp"

using namespace tqft;
using namespace testsupport;

namespace {

AlgebraPtr z2() { return orbifold_frobenius(builtin_group("Z2")); }

std::vector<std::vector<int>> boxes(int n, int lo, int hi) {
  std::vector<std::vector<int>> out;
  for (const auto& t : all_tuples(hi - lo + 1, n)) {
    std::vector<int> mu;
    for (int x : t) mu.push_back(x + lo);
    out.push_back(mu);
  }
  return out;
}

}  // namespace

TEST_CASE("catalan values") {
  CHECK(catalan(0, {0}) == 1);
  CHECK(catalan(0, {2}) == 1);
  CHECK(catalan(0, {4}) == 2);
  CHECK(catalan(0, {6}) == 5);
  CHECK(catalan(0, {8}) == 14);
  CHECK(catalan(1, {4}) == 1);
  CHECK(catalan(0, {1, 1}) == 1);
  CHECK(catalan(0, {0, 2}) == 0);
  CHECK(catalan(0, {3}) == 0);
  CHECK(catalan(1, {1, 2}) == 0);
}

TEST_CASE("catalan recursion agrees with matching enumeration") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& mu : boxes(n, 1, 12 / n)) {
      int s = 0;
      for (int m : mu) s += m;
      if (s > 12) continue;
      auto census = arrowed_census(mu);
      for (int g = 0; g <= 3; ++g) {
        auto it = census.by_genus.find(g);
        Integer expect = it == census.by_genus.end() ? Integer(0) : it->second;
        CAPTURE(g);
        CAPTURE(s);
        CHECK(catalan(g, mu) == expect);
      }
    }
}

TEST_CASE("canonical and literal memo keys agree") {
  CatalanTable literal(false), canonical(true);
  for (int n = 1; n <= 3; ++n)
    for (const auto& mu : boxes(n, 1, 5))
      for (int g = 0; g <= 2; ++g) CHECK(literal.value(g, mu) == canonical.value(g, mu));
}

TEST_CASE("twisted catalan examples") {
  auto A = z2();
  auto e1 = A->basis(0);
  CHECK(twisted_catalan(1, {4}, A, {e1}) == 2);
  CHECK(twisted_catalan(0, {2, 2, 2}, A, {e1, e1, e1}) ==
        Rational(catalan(0, {2, 2, 2})) * frac(1, 2));
  auto K = trivial_algebra();
  for (int n = 1; n <= 3; ++n)
    for (const auto& mu : boxes(n, 1, 4))
      for (int g = 0; g <= 1; ++g)
        CHECK(twisted_catalan(g, mu, K, std::vector<Element>(n, Element{1})) == catalan(g, mu));
}

TEST_CASE("twisted catalan factorizes on small profiles") {
  for (const auto& name : {"Z2", "S3", "Z2xZ2"}) {
    auto A = orbifold_frobenius(builtin_group(name));
    TwistedCatalanTable table(A);
    for (int g = 0; g <= 1; ++g)
      for (int n = 1; n <= 3; ++n) {
        auto omega = omega_functional(A, g, n);
        for (const auto& mu : boxes(n, 1, 4)) {
          auto F = table.functional(g, mu);
          CHECK(F == omega * Rational(catalan(g, mu)));
        }
      }
  }
  auto A = truncated_polynomial_algebra(3);
  TwistedCatalanTable table(A);
  for (int g = 0; g <= 2; ++g)
    for (const auto& mu : boxes(2, 1, 5))
      CHECK(table.functional(g, mu) == omega_functional(A, g, 2) * Rational(catalan(g, mu)));
}

TEST_CASE("twisted catalan is symmetric without canonical keys") {
  std::mt19937 rng(4);
  auto A = random_semisimple(rng, 2);
  TwistedCatalanTable literal(A, false);
  for (const auto& mu : boxes(3, 1, 4)) {
    std::vector<int> p{0, 1, 2};
    auto base = literal.functional(0, mu);
    do {
      std::vector<int> permuted{mu[p[0]], mu[p[1]], mu[p[2]]};
      CHECK(literal.functional(0, permuted) == base.permuted(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("odd perimeter gives zero for every decoration") {
  auto A = orbifold_frobenius(builtin_group("S3"));
  TwistedCatalanTable table(A);
  for (const auto& mu : boxes(2, 1, 5)) {
    if ((mu[0] + mu[1]) % 2 == 0) continue;
    for (int g = 0; g <= 1; ++g) CHECK(table.functional(g, mu) == ScalarFunctional(A, 2));
  }
}

TEST_CASE("dessin counts") {
  auto A = z2();
  auto e1 = A->basis(0), es = A->basis(1);
  CHECK(twisted_dessin(1, {4}, A, {e1}) == frac(1, 2));
  auto K = trivial_algebra();
  CHECK(twisted_dessin(0, {2, 2, 2}, K, {{1}, {1}, {1}}) ==
        Rational(catalan(0, {2, 2, 2})) / 8);
  CHECK(twisted_dessin(0, {3, 3}, A, {es, es}) == default_d02(3, 3) * frac(1, 2));
  CHECK(twisted_dessin(0, {3, 3}, A, {e1, es}) == 0);
  auto custom = [](int a, int b) { return Rational(a == b ? frac(1, a) : Rational(0)); };
  CHECK(twisted_dessin(0, {2, 2}, A, {e1, e1}, custom) == frac(1, 4));
  CHECK_THROWS(twisted_dessin(0, {0, 2, 2}, A, {e1, e1, e1}));
}

// Lattice count by brute force on dual cell graphs: n labeled vertices
// of degree d_i <= mu_i, faces of length >= 3, positive edge lengths summing
// to mu_i around vertex i, each arrowed matching weighted 1 / prod d_i.
Rational lattice_oracle(int g, const std::vector<int>& mu) {
  const int n = static_cast<int>(mu.size());
  int s = 0;
  for (int m : mu) s += m;
  if (s % 2 != 0) return 0;
  const int max_edges = 3 * (2 * g - 2 + n);
  Rational total = 0;
  std::vector<int> d(n, 1);
  std::function<void(int)> degrees = [&](int i) {
    if (i == n) {
      int half = 0;
      Integer weight = 1;
      for (int x : d) half += x, weight *= x;
      if (half % 2 != 0 || half / 2 > max_edges) return;
      for_each_matching(d, [&](const CellGraph& gr) {
        if (gr.genus() != g) return;
        std::vector<int> offset(n, 0);
        for (int v = 1; v < n; ++v) offset[v] = offset[v - 1] + d[v - 1];
        auto flat = [&](HalfEdge h) { return offset[h.vertex] + h.slot; };
        // faces: next(h) = partner(h) advanced by one slot
        std::vector<char> seen(half, 0);
        for (int v = 0; v < n; ++v)
          for (int k = 0; k < d[v]; ++k) {
            HalfEdge h{v, k};
            if (seen[flat(h)]) continue;
            int len = 0;
            while (!seen[flat(h)]) {
              seen[flat(h)] = 1;
              ++len;
              HalfEdge p = gr.partner(h);
              h = {p.vertex, (p.slot + 1) % d[p.vertex]};
            }
            if (len < 3) return;
          }
        auto edges = gr.edges();
        std::vector<int> left = mu;
        Integer count = 0;
        std::function<void(std::size_t)> lengths = [&](std::size_t e) {
          if (e == edges.size()) {
            if (std::all_of(left.begin(), left.end(), [](int x) { return x == 0; })) ++count;
            return;
          }
          int a = edges[e].first.vertex, b = edges[e].second.vertex;
          for (int L = 1; L <= left[a] && L <= left[b]; ++L) {
            left[a] -= L;
            left[b] -= L;
            if (left[a] >= 0 && left[b] >= 0) lengths(e + 1);
            left[a] += L;
            left[b] += L;
          }
        };
        lengths(0);
        total += Rational(count) / Rational(weight);
      });
      return;
    }
    for (d[i] = 1; d[i] <= mu[i]; ++d[i]) degrees(i + 1);
  };
  degrees(0);
  return total;
}

TEST_CASE("lattice oracle reproduces the catalogue") {
  for (const auto& mu : boxes(3, 1, 4)) CHECK(lattice_oracle(0, mu) == count_lattice_points(0, mu));
  for (int b = 1; b <= 8; ++b) CHECK(lattice_oracle(1, {b}) == count_lattice_points(1, {b}));
}

TEST_CASE("lattice recursion against brute force") {
  auto K = trivial_algebra();
  auto base = catalogue_lattice_base();
  for (const auto& mu : boxes(3, 1, 6))
    CHECK(lattice_twisted(0, mu, K, base).at({0, 0, 0}) == count_lattice_points(0, mu));
  for (int b = 1; b <= 12; ++b)
    CHECK(lattice_twisted(1, {b}, K, base).at({0}) == count_lattice_points(1, {b}));
  for (const auto& mu : boxes(4, 1, 3)) {
    CAPTURE(mu[0] * 1000 + mu[1] * 100 + mu[2] * 10 + mu[3]);
    CHECK(lattice_twisted(0, mu, K, base).at({0, 0, 0, 0}) == lattice_oracle(0, mu));
  }
  for (const auto& mu : boxes(2, 1, 5)) {
    CAPTURE(mu[0] * 10 + mu[1]);
    CHECK(lattice_twisted(1, mu, K, base).at({0, 0}) == lattice_oracle(1, mu));
  }
}

TEST_CASE("twisted lattice recursion factorizes") {
  auto base = catalogue_lattice_base();
  auto K = trivial_algebra();
  for (const auto& name : {"Z2", "S3"}) {
    auto A = orbifold_frobenius(builtin_group(name));
    for (const auto& mu : boxes(4, 1, 3)) {
      Rational n = lattice_twisted(0, mu, K, base).at({0, 0, 0, 0});
      CHECK(lattice_twisted(0, mu, A, base) == omega_functional(A, 0, 4) * n);
    }
    for (const auto& mu : boxes(2, 1, 5)) {
      Rational n = lattice_twisted(1, mu, K, base).at({0, 0});
      CHECK(lattice_twisted(1, mu, A, base) == omega_functional(A, 1, 2) * n);
    }
  }
}

TEST_CASE("lattice recursion base handling") {
  auto K = trivial_algebra();
  LatticeBase empty = [](int, const std::vector<int>&) -> std::optional<Rational> {
    return std::nullopt;
  };
  CHECK_THROWS_WITH(lattice_twisted(0, {2, 2, 2, 2}, K, empty), doctest::Contains("mu=(2,2,2)"));
  CHECK(lattice_twisted(0, {0, 2, 2, 2}, K, catalogue_lattice_base()).at({0, 0, 0, 0}) == 0);
  CHECK(lattice_twisted(0, {1, 2, 2, 2}, K, empty).at({0, 0, 0, 0}) == 0);
}
