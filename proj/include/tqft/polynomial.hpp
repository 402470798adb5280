#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "tqft/rational.hpp"

namespace tqft {

using Exponents = std::vector<int>;

/// Graded-lex order, largest first: total degree, then lexicographic on the
/// exponent vector (variable 0 most significant).
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are kept in graded-lex order, so the first term is the leading one.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational, GradedLexGreater>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial term(Exponents exps, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_term() const;

  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  int degree_in(std::size_t var) const;
  int min_degree_in(std::size_t var) const;
  int total_degree() const;
  /// Componentwise minimum exponent over all terms (the monomial content).
  Exponents min_exponents() const;

  /// Coefficients as polynomials in the remaining variables (same nvars,
  /// exponent of `var` zeroed); index k holds the coefficient of var^k.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;

  void add_term(const Exponents& exps, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(int e) const;
  Polynomial derivative(std::size_t var) const;
  /// Multiplies by the monomial x^shift (shift may be negative if divisible).
  Polynomial shifted(const Exponents& shift) const;
  /// Re-embeds into `new_nvars` variables; old variable i goes to map[i].
  /// Several old variables may land on the same new variable.
  Polynomial remapped(std::size_t new_nvars, const std::vector<std::size_t>& map) const;

  /// Makes the polynomial integral and primitive with positive leading coefficient.
  Polynomial primitive_scalar() const;
  /// Scales so the leading coefficient is 1.
  Polynomial monic() const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Exact quotient a/b if b divides a, otherwise nullopt.
std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);

/// Pseudo-remainder of a by b with respect to variable `var`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var);

/// Greatest common divisor, normalized to leading coefficient 1.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace tqft
