#pragma once

#include <random>
#include <string>
#include <vector>

#include "tqft/frobenius.hpp"
#include "tqft/group.hpp"
#include "tqft/verify.hpp"

namespace testsupport {

using namespace tqft;

using verify::NamedAlgebra;
using verify::random_semisimple;
using verify::small_algebras;

inline std::vector<std::vector<int>> all_tuples(int s, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(n, 0);
  for (;;) {
    out.push_back(idx);
    int p = n - 1;
    while (p >= 0 && ++idx[p] == s) idx[p--] = 0;
    if (p < 0) return out;
  }
}

inline std::vector<Element> basis_tuple(const AlgebraPtr& A, const std::vector<int>& idx) {
  std::vector<Element> vs;
  for (int i : idx) vs.push_back(A->basis(i));
  return vs;
}

inline Element random_element(std::mt19937& rng, int s) {
  std::uniform_int_distribution<int> d(-3, 3);
  Element v(s);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace testsupport
