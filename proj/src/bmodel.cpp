#include "tqft/bmodel.hpp"

#include <algorithm>
#include <mutex>

#include "tqft/errors.hpp"

namespace tqft {

namespace {

using RF = RationalFunction;

RF var(const std::vector<std::string>& vars, const std::string& name) {
  return RF::variable(vars, name);
}

RF cst(const Rational& c) { return RF(std::vector<std::string>{}, c); }

std::string tn(int i) { return "t" + std::to_string(i); }

// (t^2 - 1)^3 in the named variable.
RF cube_factor(const std::string& name) {
  RF t = var({name}, name);
  return (t * t - cst(1)).pow(3);
}


// N / prod F_k^e_k with each F_k a primitive linear form. Sums and
// derivatives stay in this shape, so no multivariate gcd is needed.
struct Factored {
  Polynomial num;
  std::vector<std::pair<Polynomial, int>> den;

  explicit Factored(std::size_t nv = 0) : num(nv) {}

  std::size_t nvars() const { return num.nvars(); }

  int exponent_of(const Polynomial& f) const {
    for (const auto& [g, e] : den)
      if (g == f) return e;
    return 0;
  }

  // Multiplies the denominator by lin^e (e may be negative).
  void divide_by(const Polynomial& lin, int e) {
    if (e == 0) return;
    if (lin.is_zero()) throw DivisionByZero();
    if (lin.is_constant()) {
      num *= Rational(1) / pow(lin.constant_term(), e);
      return;
    }
    Polynomial p = lin.primitive_scalar();
    num *= Rational(1) / pow(lin.leading_coefficient() / p.leading_coefficient(), e);
    for (auto it = den.begin(); it != den.end(); ++it)
      if (it->first == p) {
        it->second += e;
        if (it->second < 0) {
          num = num * p.pow(-it->second);
          it->second = 0;
        }
        if (it->second == 0) den.erase(it);
        return;
      }
    if (e > 0)
      den.emplace_back(std::move(p), e);
    else
      num = num * p.pow(-e);
  }

  static Rational pow(Rational c, int e) {
    Rational out = 1;
    for (int i = 0; i < std::abs(e); ++i) out *= c;
    return e < 0 ? Rational(1 / out) : out;
  }

  Factored& operator*=(const Factored& o) {
    num = num * o.num;
    for (const auto& [f, e] : o.den) divide_by(f, e);
    return *this;
  }

  Factored& operator+=(const Factored& o) {
    if (o.num.is_zero()) return *this;
    if (num.is_zero()) return *this = o;
    Polynomial a = num, b = o.num;
    std::vector<std::pair<Polynomial, int>> common = den;
    for (auto& [f, e] : common) {
      int eo = o.exponent_of(f);
      if (eo < e) b = b * f.pow(e - eo);
    }
    for (const auto& [f, eo] : o.den) {
      int e = exponent_of(f);
      if (e < eo) {
        a = a * f.pow(eo - e);
        if (e == 0)
          common.emplace_back(f, eo);
        else
          for (auto& c : common)
            if (c.first == f) c.second = eo;
      }
    }
    num = a + b;
    den = std::move(common);
    if (num.is_zero()) den.clear();
    return *this;
  }

  Factored operator-() const {
    Factored out = *this;
    out.num = -out.num;
    return out;
  }

  Factored derivative(std::size_t var) const {
    Factored out = *this;
    if (den.empty()) {
      out.num = num.derivative(var);
      return out;
    }
    // d(N/D) = (N' prod F - N sum e_k F_k' prod_{l != k} F_l) / (D prod F)
    Polynomial all = Polynomial::constant(nvars(), 1);
    for (const auto& [f, e] : den) all = all * f;
    Polynomial top = num.derivative(var) * all;
    for (std::size_t k = 0; k < den.size(); ++k) {
      const Polynomial df = den[k].first.derivative(var);
      if (df.is_zero()) continue;
      Polynomial rest = Polynomial::constant(nvars(), Rational(den[k].second));
      for (std::size_t l = 0; l < den.size(); ++l)
        if (l != k) rest = rest * den[l].first;
      top -= num * df * rest;
    }
    out.num = top;
    for (auto& [f, e] : out.den) ++e;
    return out;
  }

  void reduce() {
    for (auto it = den.begin(); it != den.end();) {
      while (it->second > 0) {
        auto q = exact_divide(num, it->first);
        if (!q) break;
        num = std::move(*q);
        --it->second;
      }
      it = it->second == 0 ? den.erase(it) : it + 1;
    }
    if (num.is_zero()) den.clear();
  }
};

Polynomial substitute_poly(const Polynomial& p, std::size_t var, const Polynomial& lin) {
  const auto coeffs = p.coefficients_in(var);
  if (coeffs.empty()) return Polynomial(p.nvars());
  Polynomial out = coeffs.back();
  for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k) out = out * lin + coeffs[k];
  return out;
}

Factored substitute(const Factored& f, std::size_t var, const Polynomial& lin) {
  Factored out(f.nvars());
  out.num = substitute_poly(f.num, var, lin);
  for (const auto& [g, e] : f.den) out.divide_by(substitute_poly(g, var, lin), e);
  return out;
}

// Linear forms v_i and v_i +- v_j: every denominator met here factors over them.
std::vector<Polynomial> candidate_factors(std::size_t nv) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < nv; ++i) {
    Polynomial vi = Polynomial::variable(nv, i);
    out.push_back(vi);
    for (std::size_t j = i + 1; j < nv; ++j) {
      Polynomial vj = Polynomial::variable(nv, j);
      out.push_back(vi + vj);
      out.push_back(vi - vj);
    }
  }
  return out;
}

Factored to_factored(const RF& f, const std::vector<std::string>& vars) {
  const RF g = f.with_vars(vars);
  Factored out(vars.size());
  out.num = g.numerator();
  Polynomial d = g.denominator();
  const Exponents m = d.min_exponents();
  d = d.shifted([&] {
    Exponents neg(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) neg[i] = -m[i];
    return neg;
  }());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > 0) out.divide_by(Polynomial::variable(vars.size(), i), m[i]);
  for (const auto& c : candidate_factors(vars.size())) {
    if (d.is_constant()) break;
    int e = 0;
    while (auto q = exact_divide(d, c)) {
      d = std::move(*q);
      ++e;
    }
    out.divide_by(c, e);
  }
  if (!d.is_constant()) throw Error("denominator does not split into linear forms");
  out.divide_by(d, 1);
  return out;
}

RF to_rf(Factored f, const std::vector<std::string>& vars) {
  f.reduce();
  Polynomial d = Polynomial::constant(vars.size(), 1);
  for (const auto& [g, e] : f.den) d = d * g.pow(e);
  return RF::from_fraction(vars, f.num, d);
}

// Scalars and functionals share the recursion through their value entries.
std::size_t entry_count(const RF&) { return 1; }
std::size_t entry_count(const DifferentialFunctional& f) { return f.values().size(); }
const RF& entry(const RF& f, std::size_t) { return f; }
const RF& entry(const DifferentialFunctional& f, std::size_t i) { return f.at_offset(i); }
void set_entry(RF& f, std::size_t, RF v) { f = std::move(v); }
void set_entry(DifferentialFunctional& f, std::size_t i, RF v) { f.at_offset(i) = std::move(v); }

RF map_entries(const RF& f, const std::function<RF(const RF&)>& fn) { return fn(f); }
DifferentialFunctional map_entries(const DifferentialFunctional& f,
                                   const std::function<RF(const RF&)>& fn) {
  DifferentialFunctional out(f.algebra(), f.arity(), f.zero());
  for (std::size_t i = 0; i < f.values().size(); ++i)
    if (!f.at_offset(i).is_zero()) out.at_offset(i) = fn(f.at_offset(i));
  return out;
}

RF join(const RF& f, int) { return f; }
DifferentialFunctional join(const DifferentialFunctional& f, int j) { return m_star(f, j); }

RF loop(const RF& f) { return f; }
DifferentialFunctional loop(const DifferentialFunctional& f) { return delta_star(f); }

RF split(const RF& a, const RF& b, const std::vector<int>&) { return a * b; }
DifferentialFunctional split(const DifferentialFunctional& a, const DifferentialFunctional& b,
                             const std::vector<int>& first) {
  return delta_star_split(a, b, first);
}

bool stable(int g, int n) { return 2 * g - 2 + n > 0; }

void require_stable(int g, int n) {
  if (g < 0 || n < 1 || !stable(g, n))
    throw Error("w_{" + std::to_string(g) + "," + std::to_string(n) +
                "} is unstable; use w02 or the (0,1) closed form w01_x");
}

// Renames t1..tk of a value to the given targets.
template <class V>
V placed(const V& f, const std::vector<std::string>& targets, const std::vector<std::string>& vars) {
  std::map<std::string, std::string> mapping;
  for (std::size_t i = 0; i < targets.size(); ++i) mapping[tn(static_cast<int>(i) + 1)] = targets[i];
  return map_entries(f, [&](const RF& x) { return x.renamed(mapping, vars); });
}

// The assembled differential recursion, generic in the carrier. Joins, loops
// and splits act on clean lower values; the kernels act entrywise.
template <class V>
class Recursion {
 public:
  Recursion(std::function<V()> w02, std::function<V(int)> zero)
      : w02_(std::move(w02)), zero_(std::move(zero)) {}

  const V& get(int g, int n) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    auto key = std::make_pair(g, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    V value = (g == 0 && n == 2) ? w02_() : compute(g, n);
    return memo_.emplace(key, std::move(value)).first->second;
  }

 private:
  V compute(int g, int n) {
    const auto vars = coordinate_names(n);
    const std::size_t nv = vars.size();
    const RF t1 = var(vars, "t1");
    const RF t1sq = t1 * t1;
    V out = zero_(n);
    const std::size_t count = entry_count(out);
    std::vector<Factored> total(count, Factored(nv));
    auto add_scaled = [&](const V& term, const Factored& k) {
      for (std::size_t i = 0; i < count; ++i)
        if (!entry(term, i).is_zero()) {
          Factored f = to_factored(entry(term, i), vars);
          f *= k;
          total[i] += f;
        }
    };

    for (int j = 2; j <= n; ++j) {
      const RF tj = var(vars, tn(j));
      const RF tjsq = tj * tj;
      std::vector<std::string> at_tj{tn(j)}, at_t1{"t1"};
      for (int k = 2; k <= n; ++k)
        if (k != j) at_tj.push_back(tn(k)), at_t1.push_back(tn(k));
      const V& lower = get(g, n - 1);
      const Factored a = to_factored(cube_factor(tn(j)) / (tj * (t1sq - tjsq) * Rational(16)), vars);
      const Factored b = to_factored(cube_factor("t1") * (t1sq + tjsq) /
                                         (t1sq * (t1sq - tjsq).pow(2) * Rational(16)),
                                     vars);
      const V first = join(placed(lower, at_tj, vars), j - 1);
      V second = join(placed(lower, at_t1, vars), j - 1);
      Factored bj = b;
      if (!stable(g, n - 1)) {
        // the lower (0,2) form is not even in its first variable; both j see the
        // same (0,2) x (0,2) bracket, so the +-t1 residues are halved
        const RF minus_t1 = -t1;
        second = map_entries(second, [&](const RF& w) {
          return (w.substitute("t1", minus_t1) / (t1 + tj).pow(2) + w / (t1 - tj).pow(2))
              .with_vars(vars);
        });
        bj = to_factored(cube_factor("t1") / (t1sq * Rational(64)), vars);
      }
      const std::size_t dj = static_cast<std::size_t>(j - 1);
      for (std::size_t i = 0; i < count; ++i) {
        if (!entry(first, i).is_zero()) {
          Factored f = to_factored(entry(first, i), vars);
          f *= a;
          total[i] += f.derivative(dj);
        }
        if (!entry(second, i).is_zero()) {
          Factored f = to_factored(entry(second, i), vars);
          f *= bj;
          total[i] += -f;
        }
      }
    }

    const Factored c = to_factored(-cube_factor("t1") / (t1sq * Rational(32)), vars);
    if (g >= 1) {
      std::vector<std::string> targets{"t1", "t1"};
      for (int k = 2; k <= n; ++k) targets.push_back(tn(k));
      add_scaled(loop(placed(get(g - 1, n + 1), targets, vars)), c);
    }
    const int r = n - 1;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      std::vector<int> first;
      std::vector<std::string> ti{"t1"}, tj{"t1"};
      for (int p = 0; p < r; ++p) {
        if (mask & (1u << p)) {
          first.push_back(p);
          ti.push_back(tn(p + 2));
        } else {
          tj.push_back(tn(p + 2));
        }
      }
      const int n1 = static_cast<int>(ti.size()), n2 = static_cast<int>(tj.size());
      for (int g1 = 0; g1 <= g; ++g1) {
        if (!stable(g1, n1) || !stable(g - g1, n2)) continue;
        add_scaled(split(placed(get(g1, n1), ti, vars), placed(get(g - g1, n2), tj, vars), first),
                   c);
      }
    }
    for (std::size_t i = 0; i < count; ++i)
      if (!total[i].num.is_zero()) set_entry(out, i, to_rf(total[i], vars));
    return out;
  }

  std::function<V()> w02_;
  std::function<V(int)> zero_;
  std::map<std::pair<int, int>, V> memo_;
  std::recursive_mutex mutex_;
};

Recursion<RF>& untwisted() {
  static Recursion<RF> r([] { return w02(); }, [](int n) { return RF(coordinate_names(n)); });
  return r;
}

}  // namespace


std::vector<std::string> coordinate_names(int n, const std::string& prefix) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

SpectralCurve spectral_curve() {
  SpectralCurve c;
  RF z = var({"z"}, "z");
  RF t = var({"t"}, "t");
  c.x_of_z = z + cst(1) / z;
  c.y_of_z = -z;
  c.z_of_t = (t + cst(1)) / (t - cst(1));
  c.x_of_t = c.x_of_z.substitute("z", c.z_of_t);
  return c;
}

RF w02() {
  const auto v = coordinate_names(2);
  return cst(1) / (var(v, "t1") + var(v, "t2")).pow(2);
}

DifferentialFunctional twisted_w02(const AlgebraPtr& A) {
  DifferentialFunctional out(A, 2, RF(coordinate_names(2)));
  const RF w = w02();
  for (int i = 0; i < A->dim(); ++i)
    for (int j = 0; j < A->dim(); ++j)
      if (A->pairing()[i][j] != 0) out.at({i, j}) = w * A->pairing()[i][j];
  return out;
}

RF w02_from_subtraction() {
  const auto v = coordinate_names(2);
  const RF x = spectral_curve().x_of_t;
  const RF x1 = x.renamed({{"t", "t1"}}, v), x2 = x.renamed({{"t", "t2"}}, v);
  const RF t1 = var(v, "t1"), t2 = var(v, "t2");
  return cst(1) / (t1 - t2).pow(2) -
         x1.derivative("t1") * x2.derivative("t2") / (x1 - x2).pow(2);
}

RF w01_x() { return -spectral_curve().z_of_t; }

RF eo_kernel() {
  const std::vector<std::string> v{"t", "t1"};
  const RF t = var(v, "t"), t1 = var(v, "t1");
  return (cst(1) / (t + t1) + cst(1) / (t - t1)) * (t * t - cst(1)).pow(3) / (t * t) *
         frac(1, 64);
}

RF eo_kernel_from_integral() {
  const std::vector<std::string> v{"t", "t1", "s"};
  const RF t = var(v, "t"), t1 = var(v, "t1"), s = var(v, "s");
  // antiderivative of 1/(s + t1)^2 in s
  const RF prim = -cst(1) / (s + t1);
  const RF integral = prim.substitute("s", -t) - prim.substitute("s", t);
  // W_{0,1}(t) = y dx as a multiple of dt, and its pullback under t -> -t
  const auto curve = spectral_curve();
  const RF w = (curve.y_of_z.substitute("z", curve.z_of_t) * curve.x_of_t.derivative("t"))
                   .with_vars({"t"});
  const RF w_minus = -w.substitute("t", -var({"t"}, "t"));
  return (integral / (w_minus - w) * frac(1, 2)).with_vars({"t", "t1"});
}

RF wgn(int g, int n) {
  require_stable(g, n);
  return untwisted().get(g, n);
}

DifferentialFunctional twisted_wgn(int g, int n, const AlgebraPtr& A) {
  require_stable(g, n);
  Recursion<DifferentialFunctional> r([&] { return twisted_w02(A); }, [&](int k) {
    return DifferentialFunctional(A, k, RF(coordinate_names(k)));
  });
  return r.get(g, n);
}

Frame parse_frame(const std::string& name) {
  if (name == "t") return Frame::T;
  if (name == "x") return Frame::X;
  if (name == "z") return Frame::Z;
  throw Error("unknown frame '" + name + "' (expected t, x or z)");
}

RF x_frame_in_t(const RF& wD, int n) {
  RF out = wD;
  for (int i = 1; i <= n; ++i) {
    const RF t = var({tn(i)}, tn(i));
    out *= (t * t - cst(1)).pow(2) / (t * Rational(8));
  }
  if (n % 2 != 0) out = -out;
  return out.with_vars(coordinate_names(n));
}

RF convert_frame(const RF& wD, int n, Frame frame) {
  if (frame == Frame::T) return wD;
  RF f = frame == Frame::X ? x_frame_in_t(wD, n) : wD;
  const auto zs = coordinate_names(n, "z");
  for (int i = 1; i <= n; ++i) {
    const RF z = var({zs[i - 1]}, zs[i - 1]);
    f = f.substitute(tn(i), (z + cst(1)) / (z - cst(1)));
    if (frame == Frame::Z) f *= cst(-2) / (z - cst(1)).pow(2);
  }
  return f.with_vars(zs);
}

namespace {

Polynomial linear_form(const RF& point, const std::vector<std::string>& vars) {
  const RF p = point.with_vars(vars);
  if (!p.denominator().is_constant() || p.numerator().total_degree() > 1)
    throw Error("residue point must be a linear form");
  return p.numerator() * (Rational(1) / p.denominator().constant_term());
}

Factored residue_factored(const Factored& f, std::size_t v, const Polynomial& point, int order) {
  Factored g = f;
  g.divide_by(Polynomial::variable(f.nvars(), v) - point, -order);
  for (int k = 1; k < order; ++k) g = g.derivative(v);
  g = substitute(g, v, point);
  g.num *= Rational(1) / factorial(order - 1);
  return g;
}

std::vector<std::string> union_vars(std::vector<std::string> a, const std::vector<std::string>& b) {
  for (const auto& x : b)
    if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
  return a;
}

}  // namespace

RF residue_at(const RF& f, const std::string& v, const RF& point, int order) {
  const auto vars = union_vars(union_vars(f.vars(), {v}), point.vars());
  const Factored g = to_factored(f, vars);
  const std::size_t iv = static_cast<std::size_t>(
      std::find(vars.begin(), vars.end(), v) - vars.begin());
  RF out = to_rf(residue_factored(g, iv, linear_form(point, vars), order), vars);
  std::vector<std::string> rest;
  for (const auto& x : vars)
    if (x != v) rest.push_back(x);
  return out.with_vars(rest);
}

namespace {
RF residue_value(int g, int n) {
  const auto vars = coordinate_names(n);
  std::vector<std::string> all = vars;
  all.push_back("t");
  const std::size_t it = all.size() - 1;
  const RF t = var(all, "t"), t1 = var(all, "t1");
  // kernel; the contour leaves minus the residues in the annulus
  Factored integrand = to_factored(
      (cst(1) / (t + t1) + cst(1) / (t - t1)) * (t * t - cst(1)).pow(3) / (t * t) * frac(-1, 64),
      all);
  Factored bracket(all.size());
  std::vector<std::pair<RF, int>> poles{{t1, 1}, {-t1, 1}};
  if (g == 1) {
    // W_{0,2}(t, -t) with d(-t) = -dt
    bracket = to_factored(-(cst(1) / (t * t * Rational(4))), all);
  } else {
    // W_{0,2}(t, t_j) W_{0,2}(-t, t_k) over the two ordered splits
    for (int j = 2; j <= 3; ++j) {
      const int k = 5 - j;
      const RF tj = var(all, tn(j)), tk = var(all, tn(k));
      bracket += to_factored(-(cst(1) / ((t + tj).pow(2) * (t - tk).pow(2))), all);
      poles.push_back({tj, 2});
      poles.push_back({-tj, 2});
    }
  }
  integrand *= bracket;
  Factored total(all.size());
  for (const auto& [point, order] : poles)
    total += -residue_factored(integrand, it, linear_form(point, all), order);
  return to_rf(total, all).with_vars(vars);
}

}  // namespace

ResidueReport residue_check(int g, int n) {
  ResidueReport report;
  if (!((g == 1 && n == 1) || (g == 0 && n == 3))) {
    report.message = "not in budget: residue check covers (1,1) and (0,3)";
    return report;
  }
  report.in_budget = true;
  report.residue_value = residue_value(g, n);
  report.recursion_value = wgn(g, n);
  report.equal = report.residue_value == report.recursion_value;
  report.message = report.equal ? "residue path agrees with the recursion"
                                : "residue path differs from the recursion";
  return report;
}

namespace {

using Series = std::vector<Rational>;

Series mul(const Series& a, const Series& b, int order) {
  Series out(order + 1, Rational(0));
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series inverse(const Series& a, int order) {
  if (a.empty() || a[0] == 0) throw Error("series has no inverse");
  Series out(order + 1, Rational(0));
  out[0] = 1 / a[0];
  for (int k = 1; k <= order; ++k) {
    Rational acc = 0;
    for (int i = 1; i <= k && i < static_cast<int>(a.size()); ++i) acc += a[i] * out[k - i];
    out[k] = -acc / a[0];
  }
  return out;
}

// t(u) on the small branch, as a power series in u = 1/x.
Series t_series(int order) {
  Series z = z_series(order);
  Series num = z, den = z;
  num[0] += 1;
  den[0] -= 1;
  return mul(num, inverse(den, order), order);
}

// Dense multivariate series on the box [0, order]^n, index i_1 most significant.
struct Box {
  int n, side;
  std::vector<Rational> c;
  Box(int n_, int order) : n(n_), side(order + 1) {
    std::size_t size = 1;
    for (int i = 0; i < n; ++i) size *= static_cast<std::size_t>(side);
    c.assign(size, Rational(0));
  }
  std::vector<int> index(std::size_t off) const {
    std::vector<int> idx(n);
    for (int i = n - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(off % side);
      off /= side;
    }
    return idx;
  }
  std::size_t offset(const std::vector<int>& idx) const {
    std::size_t off = 0;
    for (int i : idx) off = off * side + static_cast<std::size_t>(i);
    return off;
  }
};

Box box_mul(const Box& a, const Box& b) {
  Box out(a.n, a.side - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    auto ia = a.index(i);
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      auto ib = b.index(j);
      bool fits = true;
      for (int k = 0; k < a.n && fits; ++k) fits = ia[k] + ib[k] < a.side;
      if (!fits) continue;
      for (int k = 0; k < a.n; ++k) ib[k] += ia[k];
      out.c[out.offset(ib)] += a.c[i] * b.c[j];
    }
  }
  return out;
}

// Quotient a / b of series with b(0) != 0, coefficient by coefficient in
// increasing total degree.
Box box_div(const Box& a, const Box& b) {
  if (b.c[0] == 0) throw Error("series has no inverse");
  Box out(a.n, a.side - 1);
  std::vector<std::size_t> order(a.c.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto total = [&](std::size_t off) {
    int s = 0;
    for (int x : a.index(off)) s += x;
    return s;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return total(x) < total(y); });
  for (std::size_t off : order) {
    auto idx = a.index(off);
    Rational acc = a.c[off];
    for (std::size_t j = 1; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      auto ib = b.index(j);
      bool fits = true;
      std::vector<int> rest(a.n);
      for (int k = 0; k < a.n && fits; ++k) {
        rest[k] = idx[k] - ib[k];
        fits = rest[k] >= 0;
      }
      if (fits) acc -= b.c[j] * out.c[out.offset(rest)];
    }
    out.c[off] = acc / b.c[0];
  }
  return out;
}

}  // namespace

std::vector<Rational> z_series(int order) {
  // z = u (1 + z^2); [u^k] z = (1/k) [w^(k-1)] (1 + w^2)^k
  Series out(order + 1, Rational(0));
  Series phi{1, 0, 1};
  Series power{1};
  for (int k = 1; k <= order; ++k) {
    power = mul(power, phi, order);
    if (k - 1 < static_cast<int>(power.size())) out[k] = power[k - 1] / k;
  }
  return out;
}

std::map<std::vector<int>, Rational> inverse_laplace_coeffs(int g, int n, int mu_max) {
  if (mu_max < 1) throw Error("mu_max must be positive");
  if (mu_max > 8) throw BudgetError("inverse Laplace budget is mu_max <= 8");
  const int order = mu_max + 1;
  const RF w = (g == 0 && n == 2) ? w02() : wgn(g, n);
  const RF wx = x_frame_in_t(w, n);
  const Series t = t_series(order);
  const Series tinv = inverse(t, order);
  auto power = [&](int e) {
    Series out{1};
    const Series& base = e >= 0 ? t : tinv;
    for (int i = 0; i < std::abs(e); ++i) out = mul(out, base, order);
    out.resize(order + 1, Rational(0));
    return out;
  };
  std::map<int, Series> powers;
  auto pw = [&](int e) -> const Series& {
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, power(e)).first;
    return it->second;
  };

  std::map<std::vector<int>, Rational> out;
  std::vector<int> mu(n, 1);
  auto each_mu = [&](auto&& fn) {
    std::fill(mu.begin(), mu.end(), 1);
    for (;;) {
      fn(mu);
      int p = n - 1;
      while (p >= 0 && ++mu[p] > mu_max) mu[p--] = 1;
      if (p < 0) return;
    }
  };

  if (wx.has_monomial_denominator()) {
    const auto& den = wx.denominator();
    const Exponents d = den.leading_exponents();
    const Rational dc = den.leading_coefficient();
    each_mu([&](const std::vector<int>& m) {
      Rational acc = 0;
      for (const auto& [e, c] : wx.numerator().terms()) {
        Rational prod = c / dc;
        for (int i = 0; i < n && prod != 0; ++i) prod *= pw(e[i] - d[i])[m[i] + 1];
        acc += prod;
      }
      out[m] = acc;
    });
    return out;
  }

  auto evaluate = [&](const Polynomial& p) {
    Box b(n, order);
    for (const auto& [e, c] : p.terms()) {
      Box term(n, order);
      term.c[0] = c;
      for (int i = 0; i < n; ++i) {
        Box f(n, order);
        const Series& s = pw(e[i]);
        for (int k = 0; k <= order; ++k) {
          std::vector<int> idx(n, 0);
          idx[i] = k;
          f.c[f.offset(idx)] = s[k];
        }
        term = box_mul(term, f);
      }
      for (std::size_t i = 0; i < b.c.size(); ++i) b.c[i] += term.c[i];
    }
    return b;
  };
  Box q = box_div(evaluate(wx.numerator()), evaluate(wx.denominator()));
  each_mu([&](const std::vector<int>& m) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = m[i] + 1;
    out[m] = q.c[q.offset(idx)];
  });
  return out;
}

}  // namespace tqft
