#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tqft/functional.hpp"

namespace tqft {

using ProfileKey = std::pair<int, std::vector<int>>;  // (g, mu)

/// Generalized Catalan numbers C_{g,n}(mu) from the edge-removal recursion.
/// C_{0,1}(0) = 1 and every other profile with a zero entry vanishes.
/// Not thread-safe; use one table per thread.
class CatalanTable {
 public:
  /// With `canonicalize` the memo is keyed by the sorted profile.
  explicit CatalanTable(bool canonicalize = true) : canonicalize_(canonicalize) {}
  Integer value(int g, const std::vector<int>& mu);
  std::size_t size() const { return memo_.size(); }

 private:
  Integer compute(int g, const std::vector<int>& mu);
  bool canonicalize_;
  std::map<ProfileKey, Integer> memo_;
};

Integer catalan(int g, const std::vector<int>& mu);

/// Twisted Catalan numbers as functionals A^{(x)n} -> Q, by the same recursion
/// with m* on edge joins, delta* on connected loops and split delta* on
/// separating loops. Slot i of the result corresponds to mu[i].
class TwistedCatalanTable {
 public:
  explicit TwistedCatalanTable(AlgebraPtr A, bool canonicalize = true)
      : A_(std::move(A)), canonicalize_(canonicalize) {}
  ScalarFunctional functional(int g, const std::vector<int>& mu);
  Rational value(int g, const std::vector<int>& mu, const std::vector<Element>& vs);
  const AlgebraPtr& algebra() const { return A_; }

 private:
  const ScalarFunctional& lookup(int g, const std::vector<int>& mu);
  ScalarFunctional compute(int g, const std::vector<int>& mu);
  ScalarFunctional zero(int n) const { return ScalarFunctional(A_, n); }

  AlgebraPtr A_;
  bool canonicalize_;
  std::map<ProfileKey, ScalarFunctional> memo_;
};

Rational twisted_catalan(int g, const std::vector<int>& mu, const AlgebraPtr& A,
                         const std::vector<Element>& vs);

/// D_{0,2}(mu1, mu2) for the unstable dessin count.
using D02Convention = std::function<Rational(int, int)>;
/// C_{0,2}(mu1, mu2) / (mu1 mu2).
Rational default_d02(int mu1, int mu2);

/// Decorated dessin count: twisted Catalan / prod mu_i, or D_{0,2} eta(v1, v2) for (0,2).
Rational twisted_dessin(int g, const std::vector<int>& mu, const AlgebraPtr& A,
                        const std::vector<Element>& vs, const D02Convention& d02 = default_d02);

/// Untwisted base values for the lattice recursion; nullopt when unknown.
using LatticeBase = std::function<std::optional<Rational>(int g, const std::vector<int>& mu)>;
/// N_{0,3} and N_{1,1} from the lattice-point catalogue, for entries 1..12.
LatticeBase catalogue_lattice_base();

/// Twisted lattice counts from the edge-length recursion with Heaviside gates,
/// returned as a functional (slot i for mu[i]). Types with 2g - 2 + n <= 1 are
/// taken from `base` times the matching Omega; a missing base value throws
/// naming the profile. Odd perimeter sums vanish.
ScalarFunctional lattice_twisted(int g, const std::vector<int>& mu, const AlgebraPtr& A,
                                 const LatticeBase& base);

}  // namespace tqft
