#include "tqft/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "tqft/errors.hpp"

namespace tqft {

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  return a > b;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  Exponents e(nvars, 0);
  e.at(index) = 1;
  return term(std::move(e), 1);
}

Polynomial Polynomial::term(Exponents exps, const Rational& c) {
  Polynomial p(exps.size());
  p.add_term(exps, c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

int Polynomial::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first[var];
  for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
  return d;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

Exponents Polynomial::min_exponents() const {
  if (terms_.empty()) return Exponents(nvars_, 0);
  Exponents m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::vector<Polynomial> out(static_cast<std::size_t>(std::max(0, degree_in(var) + 1)),
                              Polynomial(nvars_));
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    rest[var] = 0;
    out[static_cast<std::size_t>(e[var])].terms_.emplace(std::move(rest), c);
  }
  return out;
}

void Polynomial::add_term(const Exponents& exps, const Rational& c) {
  assert(exps.size() == nvars_);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = other.nvars_;
  assert(other.is_zero() || other.nvars_ == nvars_);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = other.nvars_;
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = std::max(a.nvars_, b.nvars_);
  Polynomial out(n);
  if (a.is_zero() || b.is_zero()) return out;
  Exponents e(n);
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

Polynomial Polynomial::shifted(const Exponents& shift) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    for (std::size_t i = 0; i < nvars_; ++i) {
      d[i] += shift[i];
      if (d[i] < 0) throw Error("negative exponent in monomial shift");
    }
    out.terms_.emplace(std::move(d), c);
  }
  return out;
}

Polynomial Polynomial::remapped(std::size_t new_nvars, const std::vector<std::size_t>& map) const {
  Polynomial out(new_nvars);
  Exponents d(new_nvars);
  for (const auto& [e, c] : terms_) {
    std::fill(d.begin(), d.end(), 0);
    for (std::size_t i = 0; i < nvars_; ++i) d[map[i]] += e[i];
    out.add_term(d, c);
  }
  return out;
}

Polynomial Polynomial::primitive_scalar() const {
  if (terms_.empty()) return *this;
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& [e, c] : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (leading_coefficient() < 0) scale = -scale;
  Polynomial out = *this;
  return out *= scale;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / leading_coefficient();
  Polynomial out = *this;
  return out *= inv;
}

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  const std::size_t n = std::max(a.nvars(), b.nvars());
  if (a.is_zero()) return Polynomial(n);
  const Exponents& lb = b.leading_exponents();
  const Rational& cb = b.leading_coefficient();
  if (b.is_monomial()) {
    Polynomial q(n);
    Exponents neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -lb[i];
    for (const auto& [e, c] : a.terms()) {
      Exponents d = e;
      for (std::size_t i = 0; i < n; ++i) {
        d[i] += neg[i];
        if (d[i] < 0) return std::nullopt;
      }
      q.add_term(d, c / cb);
    }
    return q;
  }
  Polynomial rem = a;
  Polynomial q(n);
  Exponents d(n);
  while (!rem.is_zero()) {
    const Exponents& lr = rem.leading_exponents();
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = lr[i] - lb[i];
      if (d[i] < 0) return std::nullopt;
    }
    Rational c = rem.leading_coefficient() / cb;
    Polynomial t = Polynomial::term(d, c);
    q += t;
    rem -= t * b;
  }
  return q;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const int db = b.degree_in(var);
  if (db < 0) throw DivisionByZero();
  const auto bc = b.coefficients_in(var);
  const Polynomial& lcb = bc.back();
  Polynomial r = a;
  int dr = r.degree_in(var);
  while (!r.is_zero() && dr >= db) {
    const auto rc = r.coefficients_in(var);
    Exponents shift(r.nvars(), 0);
    shift[var] = dr - db;
    Polynomial lead_r = rc.back();
    r = lcb * r - (lead_r * b).shifted(shift);
    dr = r.degree_in(var);
  }
  return r;
}

namespace {

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

// Content of p viewed as a polynomial in `var`: gcd of its coefficients.
Polynomial content_in(const Polynomial& p, std::size_t var) {
  auto coeffs = p.coefficients_in(var);
  Polynomial g(p.nvars());
  // Process smallest coefficients first: they tend to give a small gcd quickly.
  std::sort(coeffs.begin(), coeffs.end(),
            [](const Polynomial& x, const Polynomial& y) { return x.size() < y.size(); });
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.primitive_scalar() : gcd_impl(g, c);
    if (g.is_constant()) return Polynomial::constant(p.nvars(), 1);
  }
  return g;
}

Polynomial primitive_part_in(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return p;
  Polynomial c = content_in(p, var);
  auto q = exact_divide(p, c);
  assert(q);
  return q->primitive_scalar();
}

Polynomial monomial_from(const Exponents& e) { return Polynomial::term(e, 1); }

Polynomial gcd_impl(const Polynomial& a_in, const Polynomial& b_in) {
  const std::size_t n = std::max(a_in.nvars(), b_in.nvars());
  if (a_in.is_zero()) return b_in.primitive_scalar();
  if (b_in.is_zero()) return a_in.primitive_scalar();
  if (a_in.is_constant() || b_in.is_constant()) return Polynomial::constant(n, 1);

  // Pull out the monomial content first; handles monomial arguments outright.
  Exponents ma = a_in.min_exponents(), mb = b_in.min_exponents(), mg(n);
  for (std::size_t i = 0; i < n; ++i) mg[i] = std::min(ma[i], mb[i]);
  for (auto& x : ma) x = -x;
  for (auto& x : mb) x = -x;
  Polynomial a = a_in.shifted(ma).primitive_scalar();
  Polynomial b = b_in.shifted(mb).primitive_scalar();
  const Polynomial mono = monomial_from(mg);
  if (a.is_constant() || b.is_constant()) return mono;
  if (a == b) return a * mono;
  if (a.size() <= b.size()) {
    if (exact_divide(b, a)) return a * mono;
  } else if (exact_divide(a, b)) {
    return b * mono;
  }

  std::size_t var = n;
  for (std::size_t i = 0; i < n && var == n; ++i)
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) var = i;
  assert(var < n);

  if (a.degree_in(var) == 0) return gcd_impl(a, content_in(b, var)) * mono;
  if (b.degree_in(var) == 0) return gcd_impl(content_in(a, var), b) * mono;

  Polynomial ca = content_in(a, var), cb = content_in(b, var);
  Polynomial c = gcd_impl(ca, cb);
  Polynomial pa = exact_divide(a, ca)->primitive_scalar();
  Polynomial pb = exact_divide(b, cb)->primitive_scalar();
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      pb = Polynomial::constant(n, 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part_in(r, var);
  }
  return (primitive_part_in(pb, var) * c).primitive_scalar() * mono;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return Polynomial(std::max(a.nvars(), b.nvars()));
  return gcd_impl(a, b).monic();
}

}  // namespace tqft
