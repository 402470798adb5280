#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tqft/rational.hpp"

namespace tqft {

using Element = std::vector<Rational>;
using Matrix = std::vector<std::vector<Rational>>;
using Tensor3 = std::vector<std::vector<std::vector<Rational>>>;

/// Finite-dimensional commutative Frobenius algebra given by structure
/// constants e_i e_j = sum_k c[i][j][k] e_k and a pairing eta[i][j].
///
/// The unit is recovered from the product, the counit is eps(v) = eta(1, v),
/// and the coproduct is
///   delta(v) = sum phi(v, e_i, e_j) eta^{ia} eta^{jb} e_a (x) e_b.
/// Construction verifies the algebra axioms unless told not to.
class FrobeniusAlgebra {
 public:
  struct SparseEntry {
    int a;
    int b;
    Rational c;
  };

  FrobeniusAlgebra(std::vector<std::string> labels, Tensor3 product, Matrix pairing,
                   bool verify = true);

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int label_index(const std::string& label) const;  // -1 if absent

  const Tensor3& product_tensor() const { return c_; }
  const Matrix& pairing() const { return eta_; }
  const Matrix& pairing_inverse() const { return eta_inv_; }
  const Tensor3& three_point_tensor() const { return phi_; }
  /// delta(e_i) = sum_{a,b} coproduct_tensor()[i][a][b] e_a (x) e_b
  const Tensor3& coproduct_tensor() const { return delta_; }
  const Element& unit() const { return unit_; }
  const Element& counit() const { return eps_; }
  const Element& euler() const { return euler_; }

  /// Nonzero entries of delta(e_i) as (a, b, coefficient).
  const std::vector<SparseEntry>& coproduct_entries(int i) const { return delta_sparse_[i]; }
  /// Nonzero entries of e_i e_j as (k, -, coefficient); b is unused.
  const std::vector<SparseEntry>& product_entries(int i, int j) const {
    return c_sparse_[i * dim_ + j];
  }

  Element basis(int i) const;
  Element multiply(const Element& u, const Element& v) const;
  Rational eps(const Element& v) const;
  Rational eta(const Element& u, const Element& v) const;
  Rational three_point(const Element& u, const Element& v, const Element& w) const;
  Matrix coproduct(const Element& v) const;
  /// m(delta(v)).
  Element handle(const Element& v) const;
  Element euler_power(int g) const;

  /// eps(v_1 ... v_n e^g).
  Rational omega(int g, const std::vector<Element>& vs) const;
  Rational omega_basis(int g, const std::vector<int>& indices) const;

  /// Checks every axiom, throwing AxiomError on the first failure.
  void verify() const;

 private:
  void check_element(const Element& v) const;
  void derive();

  int dim_;
  std::vector<std::string> labels_;
  Tensor3 c_;
  Matrix eta_;
  Matrix eta_inv_;
  Tensor3 phi_;
  Tensor3 delta_;
  Element unit_;
  Element eps_;
  Element euler_;
  std::vector<std::vector<SparseEntry>> delta_sparse_;
  std::vector<std::vector<SparseEntry>> c_sparse_;
};

using AlgebraPtr = std::shared_ptr<const FrobeniusAlgebra>;

AlgebraPtr make_algebra(std::vector<std::string> labels, Tensor3 product, Matrix pairing,
                        bool verify = true);

/// The one-dimensional algebra K.
AlgebraPtr trivial_algebra();
/// K[x]/(x^k) with eps(x^(k-1)) = 1 and eps(x^j) = 0 otherwise.
AlgebraPtr truncated_polynomial_algebra(int k);

/// Inverse of a square matrix by Gauss-Jordan elimination; nullopt if singular.
std::optional<Matrix> invert(const Matrix& m);

/// {"dim", "labels", "product", "pairing"} with "p/q" entries.
nlohmann::json to_json(const FrobeniusAlgebra& a);
AlgebraPtr algebra_from_json(const nlohmann::json& j, bool verify = true);

}  // namespace tqft
