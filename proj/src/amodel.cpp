#include "tqft/amodel.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tqft/cellgraph.hpp"

namespace tqft {

namespace {

int sum_of(const std::vector<int>& mu) { return std::accumulate(mu.begin(), mu.end(), 0); }

// Cheap vanishing tests shared by both Catalan tables.
// Returns 1 for the seed, 0 when the profile is known to vanish, -1 otherwise.
int catalan_shortcut(int g, const std::vector<int>& mu) {
  const int n = static_cast<int>(mu.size());
  if (g < 0 || n == 0) return 0;
  for (int m : mu)
    if (m < 0) return 0;
  const int s = sum_of(mu);
  if (s % 2 != 0) return 0;
  if (std::find(mu.begin(), mu.end(), 0) != mu.end()) return (g == 0 && n == 1) ? 1 : 0;
  // a connected graph has at least n - 1 + 2g edges
  if (s / 2 < n - 1 + 2 * g) return 0;
  return -1;
}

int distinguished(const std::vector<int>& mu) {
  return static_cast<int>(std::max_element(mu.begin(), mu.end()) - mu.begin());
}

std::vector<int> without(const std::vector<int>& v, int i) {
  std::vector<int> out;
  out.reserve(v.size());
  for (int k = 0; k < static_cast<int>(v.size()); ++k)
    if (k != i) out.push_back(v[k]);
  return out;
}

std::vector<int> sorting_permutation(const std::vector<int>& mu) {
  std::vector<int> p(mu.size());
  std::iota(p.begin(), p.end(), 0);
  std::stable_sort(p.begin(), p.end(), [&](int a, int b) { return mu[a] < mu[b]; });
  return p;
}

std::string profile_string(int g, const std::vector<int>& mu) {
  std::ostringstream os;
  os << "(g=" << g << ", mu=(";
  for (std::size_t i = 0; i < mu.size(); ++i) os << (i ? "," : "") << mu[i];
  os << "))";
  return os.str();
}

// Calls fn(I, J) for each split of rest into two ordered sub-lists, I given by
// positions in rest.
template <class Fn>
void for_each_subset(int m, Fn&& fn) {
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> first;
    for (int p = 0; p < m; ++p)
      if (mask & (1u << p)) first.push_back(p);
    fn(mask, first);
  }
}

}  // namespace

Integer CatalanTable::value(int g, const std::vector<int>& mu) {
  const int quick = catalan_shortcut(g, mu);
  if (quick >= 0) return quick;
  ProfileKey key{g, mu};
  if (canonicalize_) std::sort(key.second.begin(), key.second.end());
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Integer v = compute(g, key.second);
  memo_.emplace(std::move(key), v);
  return v;
}

Integer CatalanTable::compute(int g, const std::vector<int>& mu) {
  const int i1 = distinguished(mu);
  const int m1 = mu[i1];
  const std::vector<int> rest = without(mu, i1);
  const int r = static_cast<int>(rest.size());
  Integer total = 0;

  for (int j = 0; j < r; ++j) {
    std::vector<int> sub{m1 + rest[j] - 2};
    for (int k = 0; k < r; ++k)
      if (k != j) sub.push_back(rest[k]);
    total += Integer(rest[j]) * value(g, sub);
  }
  for (int a = 0; a <= m1 - 2; ++a) {
    const int b = m1 - 2 - a;
    if (g >= 1) {
      std::vector<int> sub{a, b};
      sub.insert(sub.end(), rest.begin(), rest.end());
      total += value(g - 1, sub);
    }
    for_each_subset(r, [&](unsigned mask, const std::vector<int>&) {
      std::vector<int> s1{a}, s2{b};
      for (int p = 0; p < r; ++p) ((mask & (1u << p)) ? s1 : s2).push_back(rest[p]);
      for (int g1 = 0; g1 <= g; ++g1) {
        Integer x = value(g1, s1);
        if (x == 0) continue;
        total += x * value(g - g1, s2);
      }
    });
  }
  return total;
}

Integer catalan(int g, const std::vector<int>& mu) {
  static CatalanTable table;
  return table.value(g, mu);
}

ScalarFunctional TwistedCatalanTable::functional(int g, const std::vector<int>& mu) {
  const int n = static_cast<int>(mu.size());
  const int quick = catalan_shortcut(g, mu);
  if (quick == 0) return zero(n);
  if (quick == 1) return omega_functional(A_, 0, 1);
  if (!canonicalize_) return lookup(g, mu);
  const std::vector<int> perm = sorting_permutation(mu);
  std::vector<int> sorted(mu.size());
  for (int i = 0; i < n; ++i) sorted[i] = mu[perm[i]];
  const ScalarFunctional& f = lookup(g, sorted);
  // slot i of f is mu[perm[i]]; place it back at position perm[i]
  std::vector<int> inv(perm.size());
  for (int i = 0; i < n; ++i) inv[perm[i]] = i;
  return f.permuted(inv);
}

const ScalarFunctional& TwistedCatalanTable::lookup(int g, const std::vector<int>& mu) {
  ProfileKey key{g, mu};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  ScalarFunctional f = compute(g, mu);
  return memo_.emplace(std::move(key), std::move(f)).first->second;
}

ScalarFunctional TwistedCatalanTable::compute(int g, const std::vector<int>& mu) {
  const int n = static_cast<int>(mu.size());
  const int i1 = distinguished(mu);
  const int m1 = mu[i1];
  const std::vector<int> rest = without(mu, i1);
  const int r = n - 1;
  // built with slot order (i1, rest...)
  ScalarFunctional total = zero(n);

  for (int j = 0; j < r; ++j) {
    std::vector<int> sub{m1 + rest[j] - 2};
    for (int k = 0; k < r; ++k)
      if (k != j) sub.push_back(rest[k]);
    ScalarFunctional f = functional(g, sub);
    total += m_star(f, j + 1) * Rational(rest[j]);
  }
  for (int a = 0; a <= m1 - 2; ++a) {
    const int b = m1 - 2 - a;
    if (g >= 1) {
      std::vector<int> sub{a, b};
      sub.insert(sub.end(), rest.begin(), rest.end());
      total += delta_star(functional(g - 1, sub));
    }
    for_each_subset(r, [&](unsigned mask, const std::vector<int>& first) {
      std::vector<int> s1{a}, s2{b};
      for (int p = 0; p < r; ++p) ((mask & (1u << p)) ? s1 : s2).push_back(rest[p]);
      for (int g1 = 0; g1 <= g; ++g1) {
        if (catalan_shortcut(g1, s1) == 0 || catalan_shortcut(g - g1, s2) == 0) continue;
        total += delta_star_split(functional(g1, s1), functional(g - g1, s2), first);
      }
    });
  }

  std::vector<int> order{i1};
  for (int k = 0; k < n; ++k)
    if (k != i1) order.push_back(k);
  std::vector<int> inv(order.size());
  for (int i = 0; i < n; ++i) inv[order[i]] = i;
  return total.permuted(inv);
}

Rational TwistedCatalanTable::value(int g, const std::vector<int>& mu,
                                    const std::vector<Element>& vs) {
  if (vs.size() != mu.size()) throw Error("decoration count does not match profile");
  return functional(g, mu).evaluate(vs);
}

Rational twisted_catalan(int g, const std::vector<int>& mu, const AlgebraPtr& A,
                         const std::vector<Element>& vs) {
  TwistedCatalanTable table(A);
  return table.value(g, mu, vs);
}

Rational default_d02(int mu1, int mu2) {
  if (mu1 <= 0 || mu2 <= 0) throw Error("D_{0,2} needs positive degrees");
  return Rational(catalan(0, {mu1, mu2})) / (mu1 * mu2);
}

Rational twisted_dessin(int g, const std::vector<int>& mu, const AlgebraPtr& A,
                        const std::vector<Element>& vs, const D02Convention& d02) {
  for (int m : mu)
    if (m <= 0) throw Error("dessin counts need positive degrees " + profile_string(g, mu));
  if (g == 0 && mu.size() == 2) {
    if (vs.size() != 2) throw Error("decoration count does not match profile");
    return d02(mu[0], mu[1]) * A->eta(vs[0], vs[1]);
  }
  Rational c = twisted_catalan(g, mu, A, vs);
  for (int m : mu) c /= m;
  return c;
}

LatticeBase catalogue_lattice_base() {
  return [](int g, const std::vector<int>& mu) -> std::optional<Rational> {
    if (!((g == 0 && mu.size() == 3) || (g == 1 && mu.size() == 1))) return std::nullopt;
    for (int m : mu)
      if (m < 1 || m > 12) return std::nullopt;
    return count_lattice_points(g, mu);
  };
}

namespace {

class LatticeEngine {
 public:
  LatticeEngine(AlgebraPtr A, const LatticeBase& base) : A_(std::move(A)), base_(base) {}

  const ScalarFunctional& get(int g, const std::vector<int>& mu) {
    ProfileKey key{g, mu};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ScalarFunctional f = compute(g, mu);
    return memo_.emplace(std::move(key), std::move(f)).first->second;
  }

 private:
  ScalarFunctional compute(int g, const std::vector<int>& mu) {
    const int n = static_cast<int>(mu.size());
    if (n == 0 || g < 0) throw Error("lattice recursion needs n >= 1 and g >= 0");
    ScalarFunctional zero(A_, n);
    if (sum_of(mu) % 2 != 0) return zero;
    if (2 * g - 2 + n <= 1) {
      auto b = base_(g, mu);
      if (!b) throw Error("missing lattice base case " + profile_string(g, mu));
      return omega_functional(A_, g, n) * *b;
    }
    const int m1 = mu[0];
    if (m1 == 0) {
      auto b = base_(g, mu);
      return b ? omega_functional(A_, g, n) * *b : zero;
    }
    const std::vector<int> rest(mu.begin() + 1, mu.end());
    const int r = n - 1;
    ScalarFunctional total = zero;

    for (int j = 0; j < r; ++j) {
      const int mj = rest[j];
      std::vector<int> others;
      for (int k = 0; k < r; ++k)
        if (k != j) others.push_back(rest[k]);
      // sum over q of q (L - q) N(q, others), with the sign of the branch
      auto branch = [&](int L, int sign) {
        for (int q = 1; q < L; ++q) {
          std::vector<int> sub{q};
          sub.insert(sub.end(), others.begin(), others.end());
          total += m_star(get(g, sub), j + 1) * Rational(sign * q * (L - q));
        }
      };
      branch(m1 + mj, 1);
      if (m1 > mj) branch(m1 - mj, 1);
      if (mj > m1) branch(mj - m1, -1);
    }
    for (int q1 = 1; q1 < m1; ++q1)
      for (int q2 = 1; q1 + q2 < m1; ++q2) {
        const Rational w = q1 * q2 * (m1 - q1 - q2);
        if (g >= 1) {
          std::vector<int> sub{q1, q2};
          sub.insert(sub.end(), rest.begin(), rest.end());
          total += delta_star(get(g - 1, sub)) * w;
        }
        for_each_subset(r, [&](unsigned mask, const std::vector<int>& first) {
          std::vector<int> s1{q1}, s2{q2};
          for (int p = 0; p < r; ++p) ((mask & (1u << p)) ? s1 : s2).push_back(rest[p]);
          const int n1 = static_cast<int>(s1.size()), n2 = static_cast<int>(s2.size());
          for (int g1 = 0; g1 <= g; ++g1) {
            const int g2 = g - g1;
            if (2 * g1 - 2 + n1 <= 0 || 2 * g2 - 2 + n2 <= 0) continue;
            total += delta_star_split(get(g1, s1), get(g2, s2), first) * w;
          }
        });
      }
    total *= frac(1, 2 * m1);
    return total;
  }

  AlgebraPtr A_;
  const LatticeBase& base_;
  std::map<ProfileKey, ScalarFunctional> memo_;
};

}  // namespace

ScalarFunctional lattice_twisted(int g, const std::vector<int>& mu, const AlgebraPtr& A,
                                 const LatticeBase& base) {
  LatticeEngine engine(A, base);
  return engine.get(g, mu);
}

}  // namespace tqft
