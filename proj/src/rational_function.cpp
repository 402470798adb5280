#include "tqft/rational_function.hpp"

#include <algorithm>
#include <sstream>

#include "tqft/errors.hpp"

namespace tqft {

RationalFunction::RationalFunction(std::vector<std::string> vars)
    : vars_(std::move(vars)),
      num_(vars_.size()),
      den_(Polynomial::constant(vars_.size(), 1)) {}

RationalFunction::RationalFunction(std::vector<std::string> vars, const Rational& c)
    : vars_(std::move(vars)),
      num_(Polynomial::constant(vars_.size(), c)),
      den_(Polynomial::constant(vars_.size(), 1)) {}

RationalFunction::RationalFunction(std::vector<std::string> vars, Polynomial num, Polynomial den,
                                   bool reduce)
    : vars_(std::move(vars)), num_(std::move(num)), den_(std::move(den)) {
  if (reduce) normalize();
}

RationalFunction RationalFunction::from_fraction(std::vector<std::string> vars, Polynomial num,
                                                 Polynomial den) {
  const std::size_t n = vars.size();
  if (num.is_zero()) num = Polynomial(n);
  if ((!num.is_zero() && num.nvars() != n) || (!den.is_zero() && den.nvars() != n))
    throw Error("polynomial arity does not match variable list");
  return RationalFunction(std::move(vars), std::move(num), std::move(den), true);
}

RationalFunction RationalFunction::variable(std::vector<std::string> vars, const std::string& name) {
  RationalFunction f(std::move(vars));
  f.num_ = Polynomial::variable(f.vars_.size(), f.var_index(name));
  return f;
}

std::size_t RationalFunction::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw Error("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

bool RationalFunction::has_var(const std::string& name) const {
  return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw Error("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

void RationalFunction::normalize() {
  const std::size_t n = vars_.size();
  if (den_.is_zero()) throw DivisionByZero();
  if (num_.is_zero()) {
    num_ = Polynomial(n);
    den_ = Polynomial::constant(n, 1);
    return;
  }
  Polynomial g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *exact_divide(num_, g);
    den_ = *exact_divide(den_, g);
  }
  Rational lc = 1 / den_.leading_coefficient();
  num_ *= lc;
  den_ *= lc;
}

std::vector<std::string> RationalFunction::merged_vars(const std::vector<std::string>& a,
                                                       const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

RationalFunction RationalFunction::with_vars(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<std::size_t> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end()) {
      if (num_.degree_in(i) > 0 || den_.degree_in(i) > 0)
        throw Error("variable '" + vars_[i] + "' missing from target variable list");
      map[i] = 0;  // absent from both polynomials, any target works
      continue;
    }
    map[i] = static_cast<std::size_t>(it - vars.begin());
  }
  RationalFunction out(vars);
  if (vars.empty()) {
    out.num_ = Polynomial::constant(0, constant_value());
    if (out.num_.is_zero()) out.num_ = Polynomial(0);
    return out;
  }
  out.num_ = num_.remapped(vars.size(), map);
  out.den_ = den_.remapped(vars.size(), map);
  return out;
}

RationalFunction RationalFunction::renamed(const std::map<std::string, std::string>& mapping,
                                           const std::vector<std::string>& new_vars) const {
  std::vector<std::size_t> map(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto m = mapping.find(vars_[i]);
    const std::string& target = m == mapping.end() ? vars_[i] : m->second;
    auto it = std::find(new_vars.begin(), new_vars.end(), target);
    if (it == new_vars.end()) throw Error("rename target '" + target + "' not in variable list");
    map[i] = static_cast<std::size_t>(it - new_vars.begin());
  }
  bool injective = true;
  for (std::size_t i = 0; i < map.size() && injective; ++i)
    for (std::size_t j = i + 1; j < map.size(); ++j)
      if (map[i] == map[j]) injective = false;
  return RationalFunction(new_vars, num_.remapped(new_vars.size(), map),
                          den_.remapped(new_vars.size(), map), !injective);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.vars_ != vars_) {
    auto vars = merged_vars(vars_, o.vars_);
    *this = with_vars(vars);
    return *this += o.with_vars(vars);
  }
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (num_.is_zero()) {
      den_ = Polynomial::constant(vars_.size(), 1);
      return *this;
    }
    if (!den_.is_constant()) {
      Polynomial g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = *exact_divide(num_, g);
        den_ = *exact_divide(den_, g);
        Rational lc = 1 / den_.leading_coefficient();
        num_ *= lc;
        den_ *= lc;
      }
    }
    return *this;
  }
  // a/b + c/d = (a*(d/g) + c*(b/g)) / (b*d/g) with g = gcd(b, d)
  Polynomial g = gcd(den_, o.den_);
  Polynomial bg = *exact_divide(den_, g);
  Polynomial dg = *exact_divide(o.den_, g);
  num_ = num_ * dg + o.num_ * bg;
  den_ = den_ * dg;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (o.vars_ != vars_) {
    auto vars = merged_vars(vars_, o.vars_);
    *this = with_vars(vars);
    return *this *= o.with_vars(vars);
  }
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalFunction(vars_);
  // Cross-cancel before multiplying to keep the gcd work small.
  Polynomial g1 = gcd(num_, o.den_);
  Polynomial g2 = gcd(o.num_, den_);
  Polynomial a = g1.is_constant() ? num_ : *exact_divide(num_, g1);
  Polynomial d = g1.is_constant() ? o.den_ : *exact_divide(o.den_, g1);
  Polynomial c = g2.is_constant() ? o.num_ : *exact_divide(o.num_, g2);
  Polynomial b = g2.is_constant() ? den_ : *exact_divide(den_, g2);
  num_ = a * c;
  den_ = b * d;
  Rational lc = 1 / den_.leading_coefficient();
  num_ *= lc;
  den_ *= lc;
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw DivisionByZero();
  RationalFunction inv = o;
  std::swap(inv.num_, inv.den_);
  Rational lc = 1 / inv.den_.leading_coefficient();
  inv.num_ *= lc;
  inv.den_ *= lc;
  return *this *= inv;
}

RationalFunction& RationalFunction::operator*=(const Rational& c) {
  if (c == 0) return *this = RationalFunction(vars_);
  num_ *= c;
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return RationalFunction(vars_, 1) / pow(-e);
  RationalFunction out = *this;
  out.num_ = num_.pow(e);
  out.den_ = den_.pow(e);
  Rational lc = 1 / out.den_.leading_coefficient();
  out.num_ *= lc;
  out.den_ *= lc;
  return out;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  if (a.vars_ != b.vars_) {
    auto vars = RationalFunction::merged_vars(a.vars_, b.vars_);
    return a.with_vars(vars) == b.with_vars(vars);
  }
  if (a.num_ == b.num_ && a.den_ == b.den_) return true;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFunction RationalFunction::derivative(const std::string& var) const {
  const std::size_t v = var_index(var);
  Polynomial dn = num_.derivative(v);
  Polynomial dd = den_.derivative(v);
  if (dd.is_zero()) {
    RationalFunction out = *this;
    out.num_ = dn;
    out.normalize();
    return out;
  }
  // (n/d)' = (n' d - n d') / d^2; divide through by g = gcd(d, d') first.
  Polynomial g = gcd(den_, dd);
  Polynomial d_g = *exact_divide(den_, g);
  Polynomial dd_g = *exact_divide(dd, g);
  return RationalFunction(vars_, dn * d_g - num_ * dd_g, den_ * d_g, true);
}

namespace {

// Evaluates p with variable `var` replaced by P/Q, returned as (numerator, deg)
// meaning numerator / Q^deg, all over `vars` of the host.
Polynomial substitute_poly(const Polynomial& p, std::size_t var, const Polynomial& P,
                           const Polynomial& Q, int deg) {
  auto coeffs = p.coefficients_in(var);
  Polynomial out(p.nvars());
  std::vector<Polynomial> ppow{Polynomial::constant(p.nvars(), 1)};
  std::vector<Polynomial> qpow{Polynomial::constant(p.nvars(), 1)};
  for (int i = 1; i <= deg; ++i) {
    ppow.push_back(ppow.back() * P);
    qpow.push_back(qpow.back() * Q);
  }
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    out += coeffs[i] * ppow[i] * qpow[static_cast<std::size_t>(deg) - i];
  }
  return out;
}

}  // namespace

RationalFunction RationalFunction::substitute(const std::string& var,
                                              const RationalFunction& g) const {
  const std::size_t v = var_index(var);
  std::vector<std::string> vars = merged_vars(vars_, g.vars_);
  RationalFunction self = with_vars(vars);
  RationalFunction gg = g.with_vars(vars);
  const int dn = std::max(0, self.num_.degree_in(v));
  const int dd = std::max(0, self.den_.degree_in(v));
  Polynomial n = substitute_poly(self.num_, v, gg.num_, gg.den_, dn);
  Polynomial d = substitute_poly(self.den_, v, gg.num_, gg.den_, dd);
  if (d.is_zero()) throw DivisionByZero("substitution makes the denominator identically zero");
  // n / Q^dn  over  d / Q^dd
  const Polynomial& Q = gg.den_;
  if (dd >= dn)
    n = n * Q.pow(dd - dn);
  else
    d = d * Q.pow(dn - dd);
  RationalFunction out(vars, std::move(n), std::move(d), true);
  // Drop the substituted variable when it no longer occurs.
  if (!g.has_var(var)) {
    std::vector<std::string> kept;
    for (const auto& x : vars)
      if (x != var) kept.push_back(x);
    out = out.with_vars(kept);
  }
  return out;
}

std::map<int, RationalFunction> RationalFunction::series_at_infinity(const std::string& var,
                                                                     int order) const {
  const std::size_t v = var_index(var);
  std::vector<std::string> rest;
  for (const auto& x : vars_)
    if (x != var) rest.push_back(x);
  auto to_rest = [&](const Polynomial& p) {
    return RationalFunction(vars_, p, Polynomial::constant(vars_.size(), 1), false).with_vars(rest);
  };
  const auto nc = num_.coefficients_in(v);
  const auto dc = den_.coefficients_in(v);
  std::map<int, RationalFunction> out;
  if (num_.is_zero()) return out;
  const int p = static_cast<int>(nc.size()) - 1;
  const int q = static_cast<int>(dc.size()) - 1;
  // f = var^(p-q) * Nrev(u) / Drev(u), u = 1/var, Nrev(u) = sum nc[p-i] u^i.
  std::vector<RationalFunction> nrev, drev;
  for (int i = 0; i <= p; ++i) nrev.push_back(to_rest(nc[static_cast<std::size_t>(p - i)]));
  for (int i = 0; i <= q; ++i) drev.push_back(to_rest(dc[static_cast<std::size_t>(q - i)]));
  // f = sum_i a_i var^(p-q-i); coefficient of var^(-k) is a_{k+p-q}.
  const int shift = p - q;
  const int terms = order + shift + 1;
  std::vector<RationalFunction> a;
  const RationalFunction inv_d0 = RationalFunction(rest, 1) / drev[0];
  for (int i = 0; i < terms; ++i) {
    RationalFunction acc = i <= p ? nrev[static_cast<std::size_t>(i)] : RationalFunction(rest);
    for (int j = 1; j <= std::min(i, q); ++j)
      acc -= drev[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(i - j)];
    a.push_back(acc * inv_d0);
  }
  for (int i = 0; i < terms; ++i) {
    const int k = i - shift;
    if (!a[static_cast<std::size_t>(i)].is_zero()) out.emplace(k, a[static_cast<std::size_t>(i)]);
  }
  return out;
}

bool RationalFunction::has_monomial_denominator() const { return den_.is_monomial(); }

bool RationalFunction::is_laurent_in_squares() const {
  if (!den_.is_monomial()) return false;
  auto even = [](const Polynomial& p) {
    for (const auto& [e, c] : p.terms())
      for (int x : e)
        if (x % 2 != 0) return false;
    return true;
  };
  return even(num_) && even(den_);
}

std::string to_string(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rational a = abs(c);
    const bool unit_monomial = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (a != 1 || unit_monomial) {
      os << a.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << vars[i];
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::string RationalFunction::to_string() const {
  std::string n = tqft::to_string(num_, vars_);
  if (den_.is_constant() && den_.constant_term() == 1) return n;
  std::string d = tqft::to_string(den_, vars_);
  if (num_.size() > 1) n = "(" + n + ")";
  if (den_.size() > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

namespace {

nlohmann::json poly_json(const Polynomial& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) arr.push_back({tqft::to_string(c), e});
  return arr;
}

Polynomial poly_from_json(const nlohmann::json& j, std::size_t n) {
  Polynomial p(n);
  for (const auto& term : j) {
    Exponents e = term.at(1).get<Exponents>();
    if (e.size() != n) throw Error("exponent vector length does not match variable count");
    const auto& cj = term.at(0);
    Rational c = cj.is_string() ? parse_rational(cj.get<std::string>())
                                : Rational(cj.get<long>());
    p.add_term(e, c);
  }
  return p;
}

}  // namespace

nlohmann::json to_json(const RationalFunction& f) {
  return {{"vars", f.vars()}, {"num", poly_json(f.numerator())}, {"den", poly_json(f.denominator())}};
}

RationalFunction rational_function_from_json(const nlohmann::json& j) {
  auto vars = j.at("vars").get<std::vector<std::string>>();
  Polynomial num = poly_from_json(j.at("num"), vars.size());
  Polynomial den = poly_from_json(j.at("den"), vars.size());
  return RationalFunction::from_fraction(std::move(vars), std::move(num), std::move(den));
}

}  // namespace tqft
