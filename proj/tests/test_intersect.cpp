#include <doctest.h>

#include <algorithm>
#include <functional>

#include "support.hpp"
#include "tqft/intersect.hpp"

using namespace tqft;
using namespace testsupport;

namespace {

// Exponent vectors of length n with sum s.
std::vector<std::vector<int>> compositions(int n, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(cur.size()) == n - 1) {
      cur.push_back(left);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int x = 0; x <= left; ++x) {
      cur.push_back(x);
      rec(left - x);
      cur.pop_back();
    }
  };
  if (n >= 1 && s >= 0) rec(s);
  return out;
}

}  // namespace

TEST_CASE("correlator values") {
  CHECK(correlator(0, {0, 0, 0}) == 1);
  CHECK(correlator(1, {1}) == frac(1, 24));
  CHECK(correlator(0, {1, 0, 0, 0}) == 1);
  CHECK(correlator(0, {2, 0, 0, 0, 0}) == 1);
  CHECK(correlator(0, {1, 1, 0, 0, 0}) == 2);
  CHECK(correlator(1, {1, 1}) == frac(1, 24));
  CHECK(correlator(1, {2, 0}) == frac(1, 24));
  CHECK(correlator(2, {4}) == frac(1, 1152));
  CHECK(correlator(2, {2, 3}) == frac(29, 5760));
  CHECK(correlator(2, {1, 4}) == frac(1, 384));
  CHECK(correlator(0, {0, 0}) == 0);
  CHECK(correlator(1, {2}) == 0);
  CHECK(correlator(0, {1, 1, 1}) == 0);
  CHECK(correlator(0, {-1, 2, 0}) == 0);
}

TEST_CASE("string and dilaton equations") {
  for (int g = 0; g <= 2; ++g)
    for (int n = 1; n <= 4; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      const int dim = 3 * g - 3 + n;
      for (const auto& k : compositions(n, dim)) {
        // string: <tau_0 X>_{g,n+1} = sum_j <.. tau_{k_j - 1} ..>_{g,n}
        std::vector<int> up{0};
        up.insert(up.end(), k.begin(), k.end());
        Rational sum = 0;
        for (int j = 0; j < n; ++j) {
          auto lower = k;
          --lower[j];
          sum += correlator(g, lower);
        }
        CHECK(correlator(g, up) == sum);
        // dilaton: <tau_1 X>_{g,n+1} = (2g - 2 + n) <X>_{g,n}
        for (const auto& kk : compositions(n, dim)) {
          std::vector<int> d{1};
          d.insert(d.end(), kk.begin(), kk.end());
          CHECK(correlator(g, d) == correlator(g, kk) * (2 * g - 2 + n));
        }
      }
    }
}

TEST_CASE("shifted double factorial breaks dilaton") {
  CHECK(correlator(0, {1, 0, 0, 0}, DvvConvention::Shifted) == 3);
  CHECK(correlator(0, {1, 0, 0, 0}, DvvConvention::Standard) == 1);
}

TEST_CASE("correlator key canonical form") {
  CorrelatorKey key{1, {2, 0, 1}, {1, 2, 0}};
  auto c = key.canonical();
  CHECK(c.k == std::vector<int>{0, 1, 2});
  CHECK(c.decor == std::vector<int>{2, 0, 1});
  CorrelatorKey bare{0, {1, 0}, {}};
  CHECK(bare.canonical().decor.empty());
}

TEST_CASE("twisted correlator examples") {
  auto K = trivial_algebra();
  for (int g = 0; g <= 2; ++g)
    for (int n = 1; n <= 3; ++n)
      for (const auto& k : compositions(n, 3 * g - 3 + n))
        CHECK(twisted_correlator(g, n, k, K, std::vector<Element>(n, Element{1})) ==
              correlator(g, k));
  auto A = orbifold_frobenius(builtin_group("Z2"));
  auto e1 = A->basis(0);
  CHECK(twisted_correlator(1, 1, {1}, A, {e1}) == frac(1, 12));
  CHECK(twisted_correlator(0, 3, {0, 0, 0}, A, {e1, e1, e1}) == frac(1, 2));
  CHECK_THROWS(twisted_correlator(1, 1, {1}, A, {Element{1}}));
  CHECK_THROWS(twisted_correlator(1, 2, {1}, A, {e1}));
}

TEST_CASE("orbifold DVV factorizes") {
  for (const auto& name : builtin_group_names()) {
    auto G = builtin_group(name);
    if (G.order() > 6) continue;
    auto A = orbifold_frobenius(G);
    CAPTURE(name);
    TwistedCorrelatorTable table(A);
    for (int g = 0; g <= 2; ++g)
      for (int n = 1; n <= 3; ++n) {
        auto omega = omega_functional(A, g, n);
        for (const auto& k : compositions(n, 3 * g - 3 + n)) {
          auto F = table.functional(g, k);
          CHECK(F == omega * correlator(g, k));
        }
      }
  }
  auto S3 = orbifold_frobenius(builtin_group("S3"));
  for (const auto& idx : all_tuples(S3->dim(), 3)) {
    auto r = check_tauG(0, 3, {0, 0, 0}, S3, basis_tuple(S3, idx));
    CHECK(r.equal);
  }
  for (int i = 0; i < S3->dim(); ++i) CHECK(check_tauG(1, 1, {1}, S3, {S3->basis(i)}).equal);
  auto bad = check_tauG(1, 1, {2}, S3, {S3->basis(1)});
  CHECK(bad.lhs == 0);
  CHECK(bad.rhs == 0);
  CHECK(bad.equal);
}

TEST_CASE("orbifold DVV on other algebras") {
  std::mt19937 rng(5);
  std::vector<AlgebraPtr> algebras{truncated_polynomial_algebra(3), random_semisimple(rng, 3)};
  for (const auto& A : algebras) {
    TwistedCorrelatorTable table(A);
    for (int g = 0; g <= 2; ++g)
      for (int n = 1; n <= 3; ++n)
        for (const auto& k : compositions(n, 3 * g - 3 + n))
          CHECK(table.functional(g, k) == omega_functional(A, g, n) * correlator(g, k));
  }
}

TEST_CASE("twisted correlator is symmetric") {
  auto A = orbifold_frobenius(builtin_group("S3"));
  TwistedCorrelatorTable table(A);
  for (const auto& k : compositions(3, 3)) {
    auto base = table.functional(1, k);
    std::vector<int> p{0, 1, 2};
    do {
      std::vector<int> kp{k[p[0]], k[p[1]], k[p[2]]};
      CHECK(table.functional(1, kp) == base.permuted(p));
    } while (std::next_permutation(p.begin(), p.end()));
  }
}
