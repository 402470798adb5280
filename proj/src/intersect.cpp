#include "tqft/intersect.hpp"

#include <algorithm>
#include <numeric>

namespace tqft {

namespace {

int dimension(int g, int n) { return 3 * g - 3 + n; }

bool admissible(int g, const std::vector<int>& k) {
  const int n = static_cast<int>(k.size());
  if (g < 0 || n < 1) return false;
  if (std::any_of(k.begin(), k.end(), [](int x) { return x < 0; })) return false;
  return std::accumulate(k.begin(), k.end(), 0) == dimension(g, n);
}

std::size_t distinguished(const std::vector<int>& k) {
  return static_cast<std::size_t>(std::max_element(k.begin(), k.end()) - k.begin());
}

std::vector<int> without(const std::vector<int>& k, std::size_t i) {
  std::vector<int> out;
  for (std::size_t j = 0; j < k.size(); ++j)
    if (j != i) out.push_back(k[j]);
  return out;
}

Rational join_coefficient(int k1, int kj, DvvConvention conv) {
  const int top = conv == DvvConvention::Standard ? 2 * k1 + 1 : 2 * k1 - 1;
  return double_factorial(2 * k1 + 2 * kj - 1) / (double_factorial(top) * double_factorial(2 * kj - 1));
}

Rational pair_coefficient(int k1, int l, int m) {
  return double_factorial(2 * l + 1) * double_factorial(2 * m + 1) /
         (double_factorial(2 * k1 + 1) * 2);
}

}  // namespace

CorrelatorKey CorrelatorKey::canonical() const {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < k.size(); ++i) pairs.push_back({k[i], decor.empty() ? 0 : decor[i]});
  std::sort(pairs.begin(), pairs.end());
  CorrelatorKey out{g, {}, {}};
  for (const auto& [a, b] : pairs) {
    out.k.push_back(a);
    if (!decor.empty()) out.decor.push_back(b);
  }
  return out;
}

Rational CorrelatorTable::value(int g, const std::vector<int>& k) {
  if (!admissible(g, k)) return 0;
  std::vector<int> key = k;
  std::sort(key.begin(), key.end());
  auto it = memo_.find({g, key});
  if (it != memo_.end()) return it->second;
  Rational v = compute(g, key);
  memo_.emplace(std::make_pair(g, key), v);
  return v;
}

Rational CorrelatorTable::compute(int g, const std::vector<int>& k_in) {
  const int n = static_cast<int>(k_in.size());
  if (g == 0 && n == 3) return 1;
  if (g == 1 && n == 1) return frac(1, 24);
  const std::size_t d = distinguished(k_in);
  const int k1 = k_in[d];
  const std::vector<int> rest = without(k_in, d);
  Rational total = 0;
  for (std::size_t j = 0; j < rest.size(); ++j) {
    std::vector<int> lower = without(rest, j);
    lower.insert(lower.begin(), k1 + rest[j] - 1);
    total += join_coefficient(k1, rest[j], conv_) * value(g, lower);
  }
  for (int l = 0; l <= k1 - 2; ++l) {
    const int m = k1 - 2 - l;
    const Rational w = pair_coefficient(k1, l, m);
    if (g >= 1) {
      std::vector<int> lower{l, m};
      lower.insert(lower.end(), rest.begin(), rest.end());
      total += w * value(g - 1, lower);
    }
    const int r = static_cast<int>(rest.size());
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      std::vector<int> a{l}, b{m};
      for (int p = 0; p < r; ++p) ((mask >> p) & 1u ? a : b).push_back(rest[p]);
      for (int g1 = 0; g1 <= g; ++g1) total += w * value(g1, a) * value(g - g1, b);
    }
  }
  return total;
}

Rational correlator(int g, const std::vector<int>& k, DvvConvention conv) {
  static CorrelatorTable standard(DvvConvention::Standard), shifted(DvvConvention::Shifted);
  return (conv == DvvConvention::Standard ? standard : shifted).value(g, k);
}

ScalarFunctional TwistedCorrelatorTable::functional(int g, const std::vector<int>& k) {
  const int n = static_cast<int>(k.size());
  if (!admissible(g, k)) return ScalarFunctional(A_, n);
  auto it = memo_.find({g, k});
  if (it != memo_.end()) return it->second;
  ScalarFunctional f = compute(g, k);
  memo_.emplace(std::make_pair(g, k), f);
  return f;
}

ScalarFunctional TwistedCorrelatorTable::compute(int g, const std::vector<int>& k_in) {
  const int n = static_cast<int>(k_in.size());
  if (g == 0 && n == 3) {
    // three-point function eta(v1 v2, v3)
    ScalarFunctional phi(A_, 3);
    for_each_tuple(A_->dim(), 3, [&](const std::vector<int>& idx) {
      phi.at(idx) = A_->eta(A_->multiply(A_->basis(idx[0]), A_->basis(idx[1])), A_->basis(idx[2]));
    });
    return phi;
  }
  if (g == 1 && n == 1) {
    ScalarFunctional eta(A_, 2);
    for_each_tuple(A_->dim(), 2, [&](const std::vector<int>& idx) {
      eta.at(idx) = A_->pairing()[idx[0]][idx[1]];
    });
    return delta_star(eta) * frac(1, 24);
  }
  const std::size_t d = distinguished(k_in);
  if (d != 0) {
    std::vector<int> front{k_in[d]};
    std::vector<int> perm{static_cast<int>(d)};
    for (std::size_t i = 0; i < k_in.size(); ++i)
      if (i != d) front.push_back(k_in[i]), perm.push_back(static_cast<int>(i));
    return functional(g, front).permuted(perm);
  }
  const int k1 = k_in[0];
  const std::vector<int> rest(k_in.begin() + 1, k_in.end());
  ScalarFunctional total(A_, n);
  for (std::size_t j = 0; j < rest.size(); ++j) {
    std::vector<int> lower = without(rest, j);
    lower.insert(lower.begin(), k1 + rest[j] - 1);
    total += m_star(functional(g, lower), static_cast<int>(j) + 1) *
             join_coefficient(k1, rest[j], conv_);
  }
  for (int l = 0; l <= k1 - 2; ++l) {
    const int m = k1 - 2 - l;
    const Rational w = pair_coefficient(k1, l, m);
    if (g >= 1) {
      std::vector<int> lower{l, m};
      lower.insert(lower.end(), rest.begin(), rest.end());
      total += delta_star(functional(g - 1, lower)) * w;
    }
    const int r = static_cast<int>(rest.size());
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      std::vector<int> a{l}, b{m}, first;
      for (int p = 0; p < r; ++p) {
        if ((mask >> p) & 1u) {
          a.push_back(rest[p]);
          first.push_back(p);
        } else {
          b.push_back(rest[p]);
        }
      }
      for (int g1 = 0; g1 <= g; ++g1) {
        if (!admissible(g1, a) || !admissible(g - g1, b)) continue;
        total += delta_star_split(functional(g1, a), functional(g - g1, b), first) * w;
      }
    }
  }
  return total;
}

Rational TwistedCorrelatorTable::value(int g, const std::vector<int>& k,
                                       const std::vector<Element>& vs) {
  return functional(g, k).evaluate(vs);
}

Rational twisted_correlator(int g, int n, const std::vector<int>& k, const AlgebraPtr& A,
                            const std::vector<Element>& vs, DvvConvention conv) {
  if (static_cast<int>(k.size()) != n) throw Error("k has the wrong length for n");
  if (static_cast<int>(vs.size()) != n) throw Error("decoration count does not match n");
  for (const auto& v : vs)
    if (static_cast<int>(v.size()) != A->dim()) throw Error("decoration is not in the algebra");
  TwistedCorrelatorTable table(A, conv);
  return table.value(g, k, vs);
}

TauReport check_tauG(int g, int n, const std::vector<int>& k, const AlgebraPtr& A,
                     const std::vector<Element>& vs) {
  TauReport r;
  r.lhs = twisted_correlator(g, n, k, A, vs);
  r.rhs = admissible(g, k) ? correlator(g, k) * omega_functional(A, g, n).evaluate(vs) : Rational(0);
  r.equal = r.lhs == r.rhs;
  return r;
}

}  // namespace tqft
