#pragma once

#include <functional>
#include <vector>

#include "tqft/errors.hpp"
#include "tqft/frobenius.hpp"
#include "tqft/rational_function.hpp"

namespace tqft {

inline bool value_is_zero(const Rational& v) { return v == 0; }
inline bool value_is_zero(const RationalFunction& v) { return v.is_zero(); }

/// Calls fn(tuple) for every tuple in {0..s-1}^n, slot 0 most significant.
inline void for_each_tuple(int s, int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    fn(idx);
    int p = n - 1;
    while (p >= 0 && ++idx[p] == s) idx[p--] = 0;
    if (p < 0) return;
  }
}

/// Multilinear map A^{(x)n} -> V stored by its values on basis tuples.
/// V is Rational or RationalFunction.
template <class V>
class TwistedFunctional {
 public:
  TwistedFunctional(AlgebraPtr algebra, int arity, V zero = V())
      : algebra_(std::move(algebra)), arity_(arity), zero_(zero) {
    std::size_t size = 1;
    for (int i = 0; i < arity_; ++i) size *= static_cast<std::size_t>(algebra_->dim());
    values_.assign(size, zero_);
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  int arity() const { return arity_; }
  int dim() const { return algebra_->dim(); }
  const V& zero() const { return zero_; }
  const std::vector<V>& values() const { return values_; }

  std::size_t offset(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != arity_) throw Error("tuple length does not match arity");
    std::size_t off = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim()) throw Error("basis index out of range");
      off = off * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(i);
    }
    return off;
  }
  const V& at(const std::vector<int>& idx) const { return values_[offset(idx)]; }
  V& at(const std::vector<int>& idx) { return values_[offset(idx)]; }
  const V& at_offset(std::size_t off) const { return values_[off]; }
  V& at_offset(std::size_t off) { return values_[off]; }

  /// Multilinear extension to arbitrary elements.
  V evaluate(const std::vector<Element>& vs) const {
    if (static_cast<int>(vs.size()) != arity_) throw Error("argument count does not match arity");
    V out = zero_;
    for_each_tuple(dim(), arity_, [&](const std::vector<int>& idx) {
      Rational coeff = 1;
      for (int i = 0; i < arity_ && coeff != 0; ++i) coeff *= vs[i][idx[i]];
      if (coeff != 0 && !value_is_zero(at(idx))) out += at(idx) * coeff;
    });
    return out;
  }

  /// G(v_0..v_{n-1}) = F(v_{perm[0]}, ..., v_{perm[n-1]}).
  TwistedFunctional permuted(const std::vector<int>& perm) const {
    TwistedFunctional out(algebra_, arity_, zero_);
    std::vector<int> src(static_cast<std::size_t>(arity_));
    for_each_tuple(dim(), arity_, [&](const std::vector<int>& idx) {
      for (int i = 0; i < arity_; ++i) src[i] = idx[perm[i]];
      out.at(idx) = at(src);
    });
    return out;
  }

  TwistedFunctional& operator+=(const TwistedFunctional& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!value_is_zero(o.values_[i])) values_[i] += o.values_[i];
    return *this;
  }
  TwistedFunctional& operator*=(const Rational& c) {
    for (auto& v : values_) v *= c;
    return *this;
  }
  friend TwistedFunctional operator+(TwistedFunctional a, const TwistedFunctional& b) {
    return a += b;
  }
  friend TwistedFunctional operator*(TwistedFunctional a, const Rational& c) { return a *= c; }

  friend bool operator==(const TwistedFunctional& a, const TwistedFunctional& b) {
    return a.algebra_ == b.algebra_ && a.arity_ == b.arity_ && a.values_ == b.values_;
  }

  void check_compatible(const TwistedFunctional& o) const {
    if (o.algebra_ != algebra_) throw Error("functionals over different algebras");
    if (o.arity_ != arity_) throw Error("functionals of different arity");
  }

 private:
  AlgebraPtr algebra_;
  int arity_;
  V zero_;
  std::vector<V> values_;
};

using ScalarFunctional = TwistedFunctional<Rational>;

/// Kernel contraction on the first two slots:
///   out(v_1, rest) = sum delta(v_1)_{ab} F(e_a, e_b, rest).
/// F has arity n+1, the result arity n.
template <class V>
TwistedFunctional<V> delta_star(const TwistedFunctional<V>& f) {
  if (f.arity() < 2) throw Error("delta_star needs a functional of arity >= 2");
  const AlgebraPtr& A = f.algebra();
  const int s = A->dim();
  const int n = f.arity() - 1;
  TwistedFunctional<V> out(A, n, f.zero());
  std::size_t rest_size = 1;
  for (int i = 1; i < n; ++i) rest_size *= static_cast<std::size_t>(s);
  const std::size_t ss = static_cast<std::size_t>(s);
  for (int i = 0; i < s; ++i)
    for (std::size_t r = 0; r < rest_size; ++r) {
      V acc = f.zero();
      for (const auto& e : A->coproduct_entries(i)) {
        const V& val = f.at_offset((static_cast<std::size_t>(e.a) * ss + e.b) * rest_size + r);
        if (!value_is_zero(val)) acc += val * e.c;
      }
      out.at_offset(static_cast<std::size_t>(i) * rest_size + r) = std::move(acc);
    }
  return out;
}

/// Split kernel contraction:
///   out(v_1, w) = sum delta(v_1)_{ab} F1(e_a, w_I) F2(e_b, w_J)
/// where `first` lists (in increasing order) the positions of w, numbered
/// from 0, that feed F1; the remaining positions feed F2 in order.
template <class V>
TwistedFunctional<V> delta_star_split(const TwistedFunctional<V>& f1, const TwistedFunctional<V>& f2,
                                      const std::vector<int>& first) {
  if (f1.algebra() != f2.algebra()) throw Error("functionals over different algebras");
  const AlgebraPtr& A = f1.algebra();
  const int s = A->dim();
  const int k1 = f1.arity() - 1, k2 = f2.arity() - 1;
  if (k1 < 0 || k2 < 0) throw Error("delta_star_split needs functionals of arity >= 1");
  if (static_cast<int>(first.size()) != k1) throw Error("slot partition does not match arity");
  const int m = k1 + k2;
  std::vector<char> in_first(static_cast<std::size_t>(m), 0);
  for (int p : first) {
    if (p < 0 || p >= m) throw Error("slot index out of range");
    in_first[p] = 1;
  }
  TwistedFunctional<V> out(A, m + 1, f1.zero());
  std::vector<int> i1(static_cast<std::size_t>(k1 + 1)), i2(static_cast<std::size_t>(k2 + 1));
  for_each_tuple(s, m, [&](const std::vector<int>& w) {
    int p1 = 1, p2 = 1;
    for (int p = 0; p < m; ++p) (in_first[p] ? i1[p1++] : i2[p2++]) = w[p];
    std::vector<int> full(static_cast<std::size_t>(m + 1));
    std::copy(w.begin(), w.end(), full.begin() + 1);
    for (int i = 0; i < s; ++i) {
      V acc = f1.zero();
      for (const auto& e : A->coproduct_entries(i)) {
        i1[0] = e.a;
        i2[0] = e.b;
        const V& a = f1.at(i1);
        if (value_is_zero(a)) continue;
        const V& b = f2.at(i2);
        if (value_is_zero(b)) continue;
        acc += a * b * e.c;
      }
      full[0] = i;
      out.at(full) = std::move(acc);
    }
  });
  return out;
}

/// Cokernel contraction: out(v_1..v_n) = F(v_1 v_j, v_2, .., v_j omitted, .., v_n)
/// for 1 <= j < n (slots numbered from 0). F has arity n-1.
template <class V>
TwistedFunctional<V> m_star(const TwistedFunctional<V>& f, int j) {
  const int n = f.arity() + 1;
  if (j < 1 || j >= n) throw Error("m_star slot out of range");
  const AlgebraPtr& A = f.algebra();
  const int s = A->dim();
  TwistedFunctional<V> out(A, n, f.zero());
  std::vector<int> src(static_cast<std::size_t>(n - 1));
  for_each_tuple(s, n, [&](const std::vector<int>& idx) {
    int q = 1;
    for (int p = 1; p < n; ++p)
      if (p != j) src[q++] = idx[p];
    V acc = f.zero();
    for (const auto& e : A->product_entries(idx[0], idx[j])) {
      src[0] = e.a;
      const V& val = f.at(src);
      if (!value_is_zero(val)) acc += val * e.c;
    }
    out.at(idx) = std::move(acc);
  });
  return out;
}

/// Omega_{g,n}(v) = eps(v_1 .. v_n e^g) as a functional (n >= 1).
/// Omega_{0,1} is eps and Omega_{0,2} is eta.
ScalarFunctional omega_functional(const AlgebraPtr& A, int g, int n);

/// Replaces each value by value * scale (a scalar functional times a fixed V).
template <class V>
TwistedFunctional<V> scaled_by(const ScalarFunctional& f, const V& scale, const V& zero) {
  TwistedFunctional<V> out(f.algebra(), f.arity(), zero);
  for (std::size_t i = 0; i < f.values().size(); ++i)
    if (f.at_offset(i) != 0) out.at_offset(i) = scale * f.at_offset(i);
  return out;
}

}  // namespace tqft
