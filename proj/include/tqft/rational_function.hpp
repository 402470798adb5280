#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tqft/polynomial.hpp"

namespace tqft {

/// Multivariate rational function over Q in named variables.
///
/// Always held in canonical form: numerator and denominator coprime, and the
/// graded-lex leading coefficient of the denominator equal to 1. Binary
/// operations on functions with different variable lists first extend both to
/// the union (left operand's variables first, then new ones in order).
class RationalFunction {
 public:
  RationalFunction() : RationalFunction(std::vector<std::string>{}) {}
  explicit RationalFunction(std::vector<std::string> vars);
  RationalFunction(std::vector<std::string> vars, const Rational& c);

  /// Builds num/den and reduces it. Throws DivisionByZero if den is zero.
  static RationalFunction from_fraction(std::vector<std::string> vars, Polynomial num,
                                        Polynomial den);
  static RationalFunction variable(std::vector<std::string> vars, const std::string& name);

  const std::vector<std::string>& vars() const { return vars_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  std::size_t var_index(const std::string& name) const;  // throws on unknown name
  bool has_var(const std::string& name) const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;  // requires is_constant()

  /// Same function written over `vars`, which must contain all current variables.
  RationalFunction with_vars(const std::vector<std::string>& vars) const;
  /// Renames variables; several may map to the same new name (this merges them).
  RationalFunction renamed(const std::map<std::string, std::string>& mapping,
                           const std::vector<std::string>& new_vars) const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  RationalFunction& operator*=(const Rational& c);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator*(RationalFunction a, const Rational& c) { return a *= c; }
  RationalFunction operator-() const;
  RationalFunction pow(int e) const;

  /// Equality by cross-multiplication, after aligning variables.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  RationalFunction derivative(const std::string& var) const;
  /// Replaces `var` by g. The result keeps this function's variables (minus
  /// `var` if g does not mention it) plus any new variables of g.
  RationalFunction substitute(const std::string& var, const RationalFunction& g) const;

  /// Coefficients of var^(-k) in the expansion at var -> infinity, for k up to
  /// `order` (inclusive). Negative k appear when the function has a pole at infinity.
  std::map<int, RationalFunction> series_at_infinity(const std::string& var, int order) const;

  /// Denominator is a single monomial (poles only on coordinate hyperplanes).
  bool has_monomial_denominator() const;
  /// Laurent polynomial in the squares of the variables: monomial denominator
  /// and every exponent in numerator and denominator even.
  bool is_laurent_in_squares() const;

  /// Text rendering with variables in stored order, e.g. "(t1^2 - 1)/(4*t1^2)".
  std::string to_string() const;

 private:
  RationalFunction(std::vector<std::string> vars, Polynomial num, Polynomial den, bool reduce);
  void normalize();
  static std::vector<std::string> merged_vars(const std::vector<std::string>& a,
                                              const std::vector<std::string>& b);

  std::vector<std::string> vars_;
  Polynomial num_;
  Polynomial den_;
};

std::string to_string(const Polynomial& p, const std::vector<std::string>& vars);

/// {"vars": [...], "num": [[coeff, [exps]]...], "den": [...]} with "p/q" coefficients.
nlohmann::json to_json(const RationalFunction& f);
RationalFunction rational_function_from_json(const nlohmann::json& j);

}  // namespace tqft
