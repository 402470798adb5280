#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>

#include "support.hpp"
#include "tqft/errors.hpp"

using namespace tqft;
using namespace testsupport;

namespace {

std::vector<int> class_sizes(const ConjugacyData& c) {
  std::vector<int> out;
  for (const auto& cl : c.classes) out.push_back(static_cast<int>(cl.size()));
  return out;
}

}  // namespace

TEST_CASE("builtin groups and conjugacy data") {
  auto Z2 = builtin_group("Z2");
  CHECK(Z2.order() == 2);
  CHECK(conjugacy(Z2).num_classes() == 2);
  CHECK(conjugacy(Z2).centralizer_order == std::vector<int>{2, 2});

  auto S3 = builtin_group("S3");
  auto c = conjugacy(S3);
  CHECK(S3.order() == 6);
  std::map<std::string, std::pair<int, int>> expect{
      {"1", {1, 6}}, {"(1 2)", {3, 2}}, {"(1 2 3)", {2, 3}}};
  REQUIRE(c.num_classes() == 3);
  for (const auto& [label, sizes] : expect) {
    int k = c.class_index(label);
    REQUIRE(k >= 0);
    CHECK(static_cast<int>(c.classes[k].size()) == sizes.first);
    CHECK(c.centralizer_order[k] == sizes.second);
  }

  CHECK(conjugacy(builtin_group("trivial")).num_classes() == 1);
  auto q = class_sizes(conjugacy(builtin_group("Q8")));
  std::sort(q.begin(), q.end());
  CHECK(q == std::vector<int>{1, 1, 2, 2, 2});
  CHECK(conjugacy(builtin_group("Z2xZ2")).num_classes() == 4);
  CHECK(conjugacy(builtin_group("Z4")).num_classes() == 4);
}

TEST_CASE("conjugacy invariants on every builtin") {
  for (const auto& name : builtin_group_names()) {
    CAPTURE(name);
    auto G = builtin_group(name);
    auto c = conjugacy(G);
    int total = 0;
    for (int k = 0; k < c.num_classes(); ++k) {
      total += static_cast<int>(c.classes[k].size());
      CHECK(static_cast<int>(c.classes[k].size()) * c.centralizer_order[k] == G.order());
      CHECK(c.inverse_class[c.inverse_class[k]] == k);
      for (int x : c.classes[k]) CHECK(c.class_of[x] == k);
      // members really are conjugate to the first one
      int r = c.classes[k][0];
      for (int x : c.classes[k]) {
        bool found = false;
        for (int h = 0; h < G.order() && !found; ++h)
          found = G.mul(G.mul(h, r), G.inv(h)) == x;
        CHECK(found);
      }
    }
    CHECK(total == G.order());
    CHECK(c.labels[c.class_of[G.identity()]] == "1");
  }
}

TEST_CASE("group tables are validated") {
  nlohmann::json ok = {{"order", 2}, {"table", {{0, 1}, {1, 0}}}};
  CHECK(group_from_table(ok).order() == 2);
  nlohmann::json not_closed = {{"order", 2}, {"table", {{0, 2}, {1, 0}}}};
  CHECK_THROWS_AS(group_from_table(not_closed), AxiomError);
  nlohmann::json no_inverse = {{"order", 2}, {"table", {{0, 1}, {1, 1}}}};
  CHECK_THROWS_AS(group_from_table(no_inverse), AxiomError);
  // a Latin square with identity 0 that is not associative
  nlohmann::json loop = {{"order", 5},
                         {"table",
                          {{0, 1, 2, 3, 4},
                           {1, 0, 3, 4, 2},
                           {2, 4, 0, 1, 3},
                           {3, 2, 4, 0, 1},
                           {4, 3, 1, 2, 0}}}};
  CHECK_THROWS_WITH_AS(group_from_table(loop), doctest::Contains("non-associative"), AxiomError);
  // identity not first is reordered
  nlohmann::json shifted = {{"order", 2}, {"table", {{1, 0}, {0, 1}}}};
  auto G = group_from_table(shifted);
  CHECK(G.mul(0, 1) == 1);
  CHECK(G.mul(1, 1) == 0);
}

TEST_CASE("permutation generators") {
  CHECK(cycle_string(parse_cycles("(1 2 3)(4 5)", 5)) == "(1 2 3)(4 5)");
  CHECK(cycle_string(parse_cycles("", 3)) == "()");
  CHECK_THROWS(parse_cycles("(1 2", 3));
  CHECK_THROWS(parse_cycles("(1 1)", 3));
  auto G = group_from_generators("(1 2 3)\n(1 2)\n");
  CHECK(G.order() == 6);
  auto D4 = group_from_generators("(1 2 3 4)\n(1 3)\n");
  CHECK(D4.order() == 8);
  CHECK(conjugacy(D4).num_classes() == 5);
  std::string path = "/tmp/tqft_test_gens.txt";
  {
    std::ofstream f(path);
    f << "(1 2)(3 4)\n(1 3)(2 4)\n";
  }
  CHECK(load_group(path).order() == 4);
  CHECK(load_group("builtin:S3").order() == 6);
  CHECK_THROWS(load_group("builtin:nope"));
}

TEST_CASE("orbifold algebra structure") {
  auto Z2 = orbifold_frobenius(builtin_group("Z2"));
  CHECK(Z2->pairing() == Matrix{{frac(1, 2), 0}, {0, frac(1, 2)}});
  CHECK(Z2->eps(Z2->basis(0)) == frac(1, 2));
  auto K = orbifold_frobenius(builtin_group("trivial"));
  CHECK(K->dim() == 1);
  CHECK(K->pairing() == Matrix{{1}});
  for (const auto& name : builtin_group_names()) {
    auto A = orbifold_frobenius(builtin_group(name));
    CHECK(A->unit() == A->basis(0));
    for (int r = 0; r < A->dim(); ++r) CHECK(A->multiply(A->basis(0), A->basis(r)) == A->basis(r));
  }
}

TEST_CASE("tuple counting examples") {
  auto K = builtin_group("trivial");
  CHECK(omega_brute(K, 2, {0, 0}) == 1);
  auto Z2 = builtin_group("Z2");
  CHECK(omega_brute(Z2, 1, {0}) == 2);
  auto S3 = builtin_group("S3");
  auto c = conjugacy(S3);
  int tau = c.class_index("(1 2)"), one = c.class_index("1");
  CHECK(omega_brute(S3, 0, {tau, tau, one}) == frac(1, 2));
  CHECK_THROWS_AS(omega_brute(S3, 2, {0, 0}, 1000), BudgetError);
}

TEST_CASE("tuple counts agree with the algebra") {
  for (const auto& name : builtin_group_names()) {
    CAPTURE(name);
    auto G = builtin_group(name);
    auto A = orbifold_frobenius(G);
    for (int g = 0; g <= 2; ++g)
      for (int n = 1; n <= 3; ++n) {
        if (G.order() > 6 && 2 * g + n > 5) continue;
        for (const auto& idx : all_tuples(A->dim(), n))
          CHECK(omega_brute(G, g, idx) == A->omega_basis(g, idx));
      }
    // genus zero three-point values are the three-point function
    for (const auto& idx : all_tuples(A->dim(), 3))
      CHECK(A->omega_basis(0, idx) ==
            A->three_point(A->basis(idx[0]), A->basis(idx[1]), A->basis(idx[2])));
  }
}
