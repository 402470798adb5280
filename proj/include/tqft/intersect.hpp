#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tqft/functional.hpp"

namespace tqft {

/// Denominator of the DVV join term: (2k1+1)!! for Standard, (2k1-1)!! for
/// Shifted. Shifted breaks the dilaton equation.
enum class DvvConvention { Standard, Shifted };

/// <tau_k1 ... tau_kn>_{g,n}, with decoration class indices when present.
struct CorrelatorKey {
  int g = 0;
  std::vector<int> k;
  std::vector<int> decor;
  int n() const { return static_cast<int>(k.size()); }
  /// Sorts the (k_i, decor_i) pairs.
  CorrelatorKey canonical() const;
  friend bool operator<(const CorrelatorKey& a, const CorrelatorKey& b) {
    return std::tie(a.g, a.k, a.decor) < std::tie(b.g, b.k, b.decor);
  }
};

/// psi-class intersection numbers from the DVV recursion on the largest k_i.
/// Zero unless sum k = 3g - 3 + n. Not thread-safe.
class CorrelatorTable {
 public:
  explicit CorrelatorTable(DvvConvention conv = DvvConvention::Standard) : conv_(conv) {}
  Rational value(int g, const std::vector<int>& k);

 private:
  Rational compute(int g, const std::vector<int>& k);
  DvvConvention conv_;
  std::map<std::pair<int, std::vector<int>>, Rational> memo_;
};

Rational correlator(int g, const std::vector<int>& k,
                    DvvConvention conv = DvvConvention::Standard);

/// Decorated correlators as functionals (slot i carries tau_{k_i}): joins by
/// m*, loops by delta*, splits by the split delta*. Bases are the three-point
/// function at <tau_0^3> and (1/24) delta*(eta) at <tau_1>.
class TwistedCorrelatorTable {
 public:
  explicit TwistedCorrelatorTable(AlgebraPtr A, DvvConvention conv = DvvConvention::Standard)
      : A_(std::move(A)), conv_(conv) {}
  ScalarFunctional functional(int g, const std::vector<int>& k);
  Rational value(int g, const std::vector<int>& k, const std::vector<Element>& vs);
  const AlgebraPtr& algebra() const { return A_; }

 private:
  ScalarFunctional compute(int g, const std::vector<int>& k);
  AlgebraPtr A_;
  DvvConvention conv_;
  std::map<std::pair<int, std::vector<int>>, ScalarFunctional> memo_;
};

/// Throws if a decoration has the wrong dimension or n != k.size().
Rational twisted_correlator(int g, int n, const std::vector<int>& k, const AlgebraPtr& A,
                            const std::vector<Element>& vs,
                            DvvConvention conv = DvvConvention::Standard);

struct TauReport {
  Rational lhs;  // twisted recursion
  Rational rhs;  // correlator times Omega
  bool equal = false;
};
TauReport check_tauG(int g, int n, const std::vector<int>& k, const AlgebraPtr& A,
                     const std::vector<Element>& vs);

}  // namespace tqft
