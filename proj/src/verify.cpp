#include "tqft/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "tqft/amodel.hpp"
#include "tqft/bmodel.hpp"
#include "tqft/cellgraph.hpp"
#include "tqft/group.hpp"
#include "tqft/intersect.hpp"

namespace tqft::verify {

namespace {

constexpr std::size_t kKeptMessages = 5;

std::string show(const std::vector<int>& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

std::string where(const std::string& what, int g, const std::vector<int>& v) {
  return what + " g=" + std::to_string(g) + " " + show(v);
}

/// Non-negative vectors of length n with sum s.
std::vector<std::vector<int>> compositions(int n, int s) {
  std::vector<std::vector<int>> out;
  if (n < 1 || s < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int p, int left) {
    if (p == n - 1) {
      cur[p] = left;
      out.push_back(cur);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      cur[p] = x;
      rec(p + 1, left - x);
    }
  };
  rec(0, s);
  return out;
}

/// Positive vectors of any length with sum s.
std::vector<std::vector<int>> positive_compositions(int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int x = 1; x <= left; ++x) {
      cur.push_back(x);
      rec(left - x);
      cur.pop_back();
    }
  };
  if (s > 0) rec(s);
  return out;
}

/// Partitions of s into positive parts, largest first.
std::vector<std::vector<int>> partitions(int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int top) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int x = std::min(left, top); x >= 1; --x) {
      cur.push_back(x);
      rec(left - x, x);
      cur.pop_back();
    }
  };
  if (s > 0) rec(s, s);
  return out;
}

/// {lo..hi}^n.
std::vector<std::vector<int>> boxes(int n, int lo, int hi) {
  std::vector<std::vector<int>> out;
  for_each_tuple(hi - lo + 1, n, [&](const std::vector<int>& idx) {
    std::vector<int> v(idx);
    for (auto& x : v) x += lo;
    out.push_back(v);
  });
  return out;
}

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<int> apply(const std::vector<int>& v, const std::vector<int>& perm) {
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[perm[i]];
  return out;
}

std::vector<NamedAlgebra> group_algebras(int max_order) {
  std::vector<NamedAlgebra> out;
  for (const auto& name : builtin_group_names()) {
    auto G = builtin_group(name);
    if (G.order() <= max_order) out.push_back({name, orbifold_frobenius(G)});
  }
  return out;
}

bool stable(int g, int n) { return 2 * g - 2 + n > 0; }

RationalFunction random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int terms,
                             int maxdeg) {
  std::uniform_int_distribution<int> coeff(-4, 4), deg(0, maxdeg);
  Polynomial p(vars.size());
  for (int i = 0; i < terms; ++i) {
    Exponents e(vars.size());
    for (auto& x : e) x = deg(rng);
    p.add_term(e, coeff(rng));
  }
  return RationalFunction::from_fraction(vars, p, Polynomial::constant(vars.size(), 1));
}

RationalFunction random_fraction(std::mt19937& rng, const std::vector<std::string>& vars) {
  for (;;) {
    auto d = random_poly(rng, vars, 3, 2);
    if (!d.is_zero()) return random_poly(rng, vars, 3, 2) / d;
  }
}

// exact

void exact_suite(Level level, Checker& c) {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> d(-60, 60), q(1, 40);
  const int triples = level == Level::Full ? 400 : 100;
  for (int i = 0; i < triples; ++i) {
    Rational a = frac(d(rng), q(rng)), b = frac(d(rng), q(rng)), e = frac(d(rng), q(rng));
    c.check((a + b) + e == a + (b + e) && (a * b) * e == a * (b * e),
            [&] { return "associativity " + to_string(a) + " " + to_string(b); });
    c.check(a * (b + e) == a * b + a * e, [&] { return "distributivity " + to_string(a); });
    if (a != 0) c.check(a * (1 / a) == 1 && a + (-a) == 0, [&] { return "inverse " + to_string(a); });
  }
  const std::vector<std::string> xy{"x", "y"}, X{"x"}, T{"t"}, S{"s"};
  const int rounds = level == Level::Full ? 40 : 10;
  for (int i = 0; i < rounds; ++i) {
    auto f = random_fraction(rng, xy);
    auto g = random_fraction(rng, xy);
    if (!g.is_zero()) c.check(f * g / g == f, [&] { return "f g / g for f = " + f.to_string(); });
  }
  for (int i = 0; i < rounds; ++i) {
    auto f = random_fraction(rng, X);
    auto sf = f.series_at_infinity("x", 8);
    auto sd = f.derivative("x").series_at_infinity("x", 9);
    for (const auto& [k, coeff] : sf) {
      if (k + 1 > 9) continue;
      auto it = sd.find(k + 1);
      RationalFunction got = it == sd.end() ? RationalFunction(std::vector<std::string>{}, 0) : it->second;
      c.check(got == coeff * Rational(-k), [&] { return "series of derivative, f = " + f.to_string(); });
    }
  }
  for (int i = 0; i < rounds; ++i) {
    auto f = random_fraction(rng, T);
    auto g = random_fraction(rng, S);
    auto lhs = f.substitute("t", g).derivative("s");
    auto rhs = f.derivative("t").substitute("t", g) * g.derivative("s");
    c.check(lhs == rhs, [&] { return "chain rule, f = " + f.to_string() + ", g = " + g.to_string(); });
  }
}

// criterion 1: tuple counts

void tqft_oracle_suite(Level level, Checker& c) {
  const int gmax = level == Level::Full ? 2 : 1;
  for (const auto& name : builtin_group_names()) {
    auto G = builtin_group(name);
    auto A = orbifold_frobenius(G);
    const int s = A->dim();
    for (int g = 0; g <= gmax; ++g)
      for (int n = 0; n <= 3; ++n)
        for_each_tuple(s, n, [&](const std::vector<int>& idx) {
          Rational formula = A->omega_basis(g, idx);
          Rational brute = omega_brute(G, g, idx);
          c.check(formula == brute, [&] {
            return where(name, g, idx) + ": formula " + to_string(formula) + ", brute " + to_string(brute);
          });
        });
    const int unit = 0;
    for (int r = 0; r < s; ++r)
      c.check(A->multiply(A->basis(unit), A->basis(r)) == A->basis(r),
              [&] { return name + ": unit law fails on class " + std::to_string(r); });
    auto omega03 = omega_functional(A, 0, 3);
    for_each_tuple(s, 3, [&](const std::vector<int>& idx) {
      c.check(omega03.at(idx) == A->three_point_tensor()[idx[0]][idx[1]][idx[2]],
              [&] { return name + ": Omega_{0,3} differs from phi at " + show(idx); });
    });
  }
}

// criterion 2: edge contraction

void eca_suite(Level level, Checker& c) {
  const int max_edges = level == Level::Full ? 4 : 3;
  const auto algebras = small_algebras();
  std::map<std::tuple<int, int, int>, ScalarFunctional> omega;
  std::size_t graphs = 0;
  for (std::size_t ai = 0; ai < algebras.size(); ++ai) {
    const auto& [name, A] = algebras[ai];
    auto expected = [&](int g, int n) -> const ScalarFunctional& {
      auto key = std::make_tuple(static_cast<int>(ai), g, n);
      auto it = omega.find(key);
      if (it == omega.end()) it = omega.emplace(key, omega_functional(A, g, n)).first;
      return it->second;
    };
    std::vector<std::vector<int>> degree_lists{{0}};
    for (int e = 1; e <= max_edges; ++e)
      for (auto& d : positive_compositions(2 * e))
        if (e <= 3 || std::is_sorted(d.rbegin(), d.rend())) degree_lists.push_back(d);
    for (const auto& degrees : degree_lists)
      for_each_matching(degrees, [&](const CellGraph& gamma) {
        ++graphs;
        const auto& want = expected(gamma.genus(), gamma.num_vertices());
        for (const auto& f : eca_all_orders(gamma, A))
          c.check(f == want, [&] {
            return name + ": contraction differs from Omega on " + to_json(gamma).dump();
          });
      });
  }
  c.check(graphs > 0, [] { return std::string("no graphs enumerated"); });
  // Catalan numbers from binomials
  for (int m = 1; m <= 4; ++m) {
    Integer expect = binomial(2 * m, m).get_num() / (m + 1);
    c.check(count_arrowed_graphs(0, {2 * m}) == expect,
            [&] { return "arrowed graphs with one vertex of degree " + std::to_string(2 * m); });
  }
  // conservation: connected by genus plus disconnected is every matching
  const int max_sum = level == Level::Full ? 10 : 8;
  for (int s = 2; s <= max_sum; s += 2)
    for (const auto& mu : positive_compositions(s)) {
      auto census = arrowed_census(mu);
      Integer connected = 0;
      for (const auto& [g, count] : census.by_genus) {
        connected += count;
        c.check(count_arrowed_graphs(g, mu) == count, [&] { return where("census", g, mu); });
      }
      Integer all = double_factorial(s - 1).get_num();
      c.check(connected + census.disconnected == census.total && census.total == all,
              [&] { return "matching conservation for " + show(mu); });
    }
}

// criterion 3: Catalan recursion against matchings

void catalan_suite(Level level, Checker& c) {
  c.check(catalan(0, {2}) == 1 && catalan(0, {4}) == 2 && catalan(0, {6}) == 5,
          [] { return std::string("C_{0,1}(2,4,6) should be 1, 2, 5"); });
  c.check(catalan(1, {4}) == 1, [] { return std::string("C_{1,1}(4) should be 1"); });
  const int max_sum = level == Level::Full ? 14 : 8;
  for (int s = 1; s <= max_sum; ++s)
    for (const auto& mu : partitions(s)) {
      auto census = arrowed_census(mu);
      const int n = static_cast<int>(mu.size());
      // 2 - 2g = V - E + F with F >= 1
      const int gmax = (s / 2 - n + 1) / 2 + 1;
      for (int g = 0; g <= gmax; ++g) {
        auto it = census.by_genus.find(g);
        Integer counted = it == census.by_genus.end() ? Integer(0) : it->second;
        Integer recursed = catalan(g, mu);
        c.check(recursed == counted, [&] {
          return where("C", g, mu) + ": recursion " + recursed.get_str() + ", matchings " +
                 counted.get_str();
        });
      }
    }
  const int sym_sum = level == Level::Full ? 10 : 6;
  for (int s = 1; s <= sym_sum; ++s)
    for (const auto& mu : positive_compositions(s)) {
      auto sorted = mu;
      std::sort(sorted.begin(), sorted.end());
      for (int g = 0; g <= 2; ++g)
        c.check(catalan(g, mu) == catalan(g, sorted), [&] { return where("C symmetry", g, mu); });
    }
}

// criterion 4: twisted Catalan factorization

void twisted_catalan_suite(Level level, Checker& c) {
  const int gmax = level == Level::Full ? 2 : 1;
  const int mu_max = level == Level::Full ? 6 : 3;
  for (const auto& [name, A] : group_algebras(6)) {
    TwistedCatalanTable table(A);
    for (int g = 0; g <= gmax; ++g)
      for (int n = 1; n <= 3; ++n) {
        auto omega = omega_functional(A, g, n);
        for (const auto& mu : boxes(n, 1, mu_max)) {
          auto lhs = table.functional(g, mu);
          c.check(lhs == omega * Rational(catalan(g, mu)),
                  [&] { return where(name + " twisted C", g, mu); });
        }
      }
    // simultaneous permutation of (mu_i, v_i)
    for (const auto& mu : std::vector<std::vector<int>>{{1, 2, 3}, {2, 2, 4}, {1, 3, 6}}) {
      auto base = table.functional(1, mu);
      for (const auto& p : permutations(3))
        c.check(table.functional(1, apply(mu, p)) == base.permuted(p),
                [&] { return where(name + " twisted C symmetry", 1, apply(mu, p)); });
    }
  }
  // parity on algebras that are not group algebras
  std::mt19937 rng(23);
  std::vector<NamedAlgebra> others{{"K[x]/x^3", truncated_polynomial_algebra(3)},
                                   {"random", random_semisimple(rng, 3)}};
  for (const auto& [name, A] : others) {
    TwistedCatalanTable table(A);
    for (int g = 0; g <= gmax; ++g)
      for (int n = 1; n <= 3; ++n)
        for (const auto& mu : boxes(n, 1, std::min(mu_max, 5))) {
          int s = 0;
          for (int x : mu) s += x;
          if (s % 2 == 0) continue;
          c.check(table.functional(g, mu) == ScalarFunctional(A, n),
                  [&] { return where(name + " odd-sum twisted C", g, mu); });
        }
  }
}

// criterion 5: the differential recursion

const std::vector<std::pair<int, int>> kTypes{{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}};

void bmodel_suite(Level level, Checker& c) {
  auto t = RationalFunction::variable({"t1"}, "t1");
  auto one = RationalFunction(std::vector<std::string>{"t1"}, 1);
  auto w11 = -(t * t - one).pow(3) / (t.pow(4) * Rational(128));
  c.check(wgn(1, 1) == w11, [&] { return "w_{1,1} = " + wgn(1, 1).to_string(); });
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}}) {
    auto r = residue_check(g, n);
    c.check(r.in_budget && r.equal, [&, g = g, n = n] {
      return "residue check (" + std::to_string(g) + "," + std::to_string(n) + "): " + r.message;
    });
  }
  for (auto [g, n] : kTypes) {
    auto w = wgn(g, n);
    auto tag = [g = g, n = n] { return "(" + std::to_string(g) + "," + std::to_string(n) + ")"; };
    c.check(w.has_monomial_denominator(), [&] { return "poles remain in w" + tag(); });
    c.check(w.is_laurent_in_squares(), [&] { return "w" + tag() + " is not Laurent in t^2"; });
    if (level == Level::Quick) continue;
    const auto vars = coordinate_names(n);
    for (const auto& p : permutations(n)) {
      std::map<std::string, std::string> rename;
      for (int i = 0; i < n; ++i) rename[vars[i]] = vars[p[i]];
      c.check(w.renamed(rename, vars) == w, [&] { return "w" + tag() + " not symmetric under " + show(p); });
    }
  }
}

// criterion 6: inverse Laplace against Catalan counts

void mirror_suite(Level level, Checker& c) {
  const int mu_max = level == Level::Full ? 8 : 4;
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
    auto coeffs = inverse_laplace_coeffs(g, n, mu_max);
    std::size_t expected_size = 1;
    for (int i = 0; i < n; ++i) expected_size *= static_cast<std::size_t>(mu_max);
    c.check(coeffs.size() == expected_size, [g = g, n = n] {
      return "missing inverse Laplace coefficients for (" + std::to_string(g) + "," + std::to_string(n) + ")";
    });
    for (const auto& [mu, value] : coeffs) {
      Rational expect = catalan(g, mu);
      if (n % 2 != 0) expect = -expect;
      c.check(value == expect, [&, g = g] {
        return where("inverse Laplace", g, mu) + ": " + to_string(value) + " vs " + to_string(expect);
      });
    }
  }
}

// criterion 7: twisted differential recursion

void twisted_bmodel_suite(Level level, Checker& c) {
  auto algebras = group_algebras(6);
  if (level == Level::Quick)
    algebras.erase(std::remove_if(algebras.begin(), algebras.end(),
                                  [](const NamedAlgebra& a) { return a.name != "Z2" && a.name != "S3"; }),
                   algebras.end());
  for (const auto& [name, A] : algebras)
    for (auto [g, n] : kTypes) {
      if (level == Level::Quick && g + n > 3) continue;
      auto W = twisted_wgn(g, n, A);
      auto omega = omega_functional(A, g, n);
      auto w = wgn(g, n);
      for (std::size_t i = 0; i < omega.values().size(); ++i)
        c.check(W.at_offset(i) == w * omega.at_offset(i), [&, g = g, n = n] {
          return name + ": twisted w(" + std::to_string(g) + "," + std::to_string(n) +
                 ") differs at offset " + std::to_string(i);
        });
    }
}

// criterion 8: orbifold DVV

void dvv_suite(Level level, Checker& c) {
  c.check(correlator(0, {0, 0, 0}) == 1 && correlator(1, {1}) == frac(1, 24) &&
              correlator(2, {4}) == frac(1, 1152),
          [] { return std::string("basic correlators"); });
  const int gmax = level == Level::Full ? 2 : 1;
  for (int g = 0; g <= gmax; ++g)
    for (int n = 1; n <= 4; ++n) {
      if (!stable(g, n)) continue;
      for (const auto& k : compositions(n, 3 * g - 3 + n)) {
        std::vector<int> up{0};
        up.insert(up.end(), k.begin(), k.end());
        Rational sum = 0;
        for (int j = 0; j < n; ++j) {
          auto lower = k;
          --lower[j];
          sum += correlator(g, lower);
        }
        c.check(correlator(g, up) == sum, [&] { return where("string equation", g, up); });
        up[0] = 1;
        c.check(correlator(g, up) == correlator(g, k) * (2 * g - 2 + n),
                [&] { return where("dilaton equation", g, up); });
      }
    }
  auto Z2 = orbifold_frobenius(builtin_group("Z2"));
  c.check(twisted_correlator(1, 1, {1}, Z2, {Z2->basis(0)}) == frac(1, 12),
          [] { return std::string("<tau_1(e_[1])>^{Z2}_{1,1} should be 1/12"); });
  for (const auto& [name, A] : group_algebras(6)) {
    TwistedCorrelatorTable table(A);
    for (int g = 0; g <= gmax; ++g)
      for (int n = 1; n <= 3; ++n) {
        if (!stable(g, n)) continue;
        auto omega = omega_functional(A, g, n);
        for (const auto& k : compositions(n, 3 * g - 3 + n))
          c.check(table.functional(g, k) == omega * correlator(g, k),
                  [&] { return where(name + " twisted correlator", g, k); });
      }
    for (const auto& k : compositions(3, 3)) {
      auto base = table.functional(1, k);
      for (const auto& p : permutations(3))
        c.check(table.functional(1, apply(k, p)) == base.permuted(p),
                [&] { return where(name + " twisted correlator symmetry", 1, apply(k, p)); });
    }
  }
}

// criterion 9: Frobenius axioms and the contraction equivalences

void axiom_suite(Level level, Checker& c) {
  const int gmax_sym = level == Level::Full ? 3 : 1;
  for (const auto& [name, A] : built_algebras()) {
    try {
      A->verify();
      c.check(true, [] { return std::string(); });
    } catch (const AxiomError& e) {
      c.fail(name + ": " + e.what());
    }
    const int s = A->dim();
    // m = (1 x eta) o (delta x 1)
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) {
        Element lhs(static_cast<std::size_t>(s), 0);
        for (const auto& e : A->coproduct_entries(a)) lhs[e.a] += e.c * A->pairing()[e.b][b];
        c.check(lhs == A->multiply(A->basis(a), A->basis(b)), [&] {
          return name + ": m != (1 x eta)(delta x 1) on " + show({a, b});
        });
      }
    if (s > 6) continue;
    for (int g = 0; g <= gmax_sym; ++g)
      for (int n = 1; n <= 4; ++n) {
        if (level == Level::Quick && n > 3) continue;
        auto omega = omega_functional(A, g, n);
        for (const auto& p : permutations(n))
          c.check(omega.permuted(p) == omega, [&] { return where(name + " Omega symmetry", g, p); });
      }
    const int gmax = level == Level::Full ? 2 : 1;
    for (int g = 0; g <= gmax; ++g)
      for (int n = 1; n <= 3; ++n) {
        auto omega = omega_functional(A, g, n);
        if (g >= 1)
          c.check(delta_star(omega_functional(A, g - 1, n + 1)) == omega,
                  [&] { return where(name + " delta* of Omega", g, {n}); });
        for (int j = 1; j < n; ++j)
          c.check(m_star(omega_functional(A, g, n - 1), j) == omega,
                  [&] { return where(name + " m* of Omega", g, {n, j}); });
        // split form of the loop contraction, first slot plus a subset of the rest
        const int r = n - 1;
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
          std::vector<int> first;
          for (int p = 0; p < r; ++p)
            if ((mask >> p) & 1u) first.push_back(p);
          const int k1 = static_cast<int>(first.size()), k2 = r - k1;
          ScalarFunctional sum(A, n);
          for (int g1 = 0; g1 <= g; ++g1) {
            auto part = delta_star_split(omega_functional(A, g1, k1 + 1),
                                         omega_functional(A, g - g1, k2 + 1), first);
            c.check(part == omega, [&] { return where(name + " split delta* of Omega", g, first); });
            sum += part;
          }
          // direct: sum over g1 of eps(v_1 v_I v_J e^g), evaluated from the product
          ScalarFunctional direct(A, n);
          for_each_tuple(s, n, [&](const std::vector<int>& idx) {
            Element prod = A->euler_power(g);
            for (int i : idx) prod = A->multiply(prod, A->basis(i));
            direct.at(idx) = A->eps(prod) * (g + 1);
          });
          c.check(sum == direct, [&] { return where(name + " split sum", g, first); });
        }
      }
  }
}

}  // namespace

Level parse_level(const std::string& name) {
  if (name == "quick") return Level::Quick;
  if (name == "full") return Level::Full;
  throw Error("unknown verify level '" + name + "' (expected quick or full)");
}

void Checker::check(bool ok, const std::function<std::string()>& message) {
  ++checks_;
  if (!ok) {
    ++failures_;
    if (messages_.size() < kKeptMessages) messages_.push_back(message());
  }
}

void Checker::fail(const std::string& message) {
  ++checks_;
  ++failures_;
  if (messages_.size() < kKeptMessages) messages_.push_back(message);
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"tqft-oracle", "Omega equals tuple counts on builtin groups", 60, tqft_oracle_suite},
      {"eca", "edge contraction is order and graph independent", 120, eca_suite},
      {"catalan", "Catalan recursion equals matching counts", 60, catalan_suite},
      {"twisted-catalan", "twisted Catalan factorizes as C times Omega", 300, twisted_catalan_suite},
      {"b-model", "differential recursion: closed forms, residues, poles", 120, bmodel_suite},
      {"mirror", "inverse Laplace coefficients equal signed Catalan counts", 300, mirror_suite},
      {"twisted-b-model", "twisted differential recursion factorizes", 120, twisted_bmodel_suite},
      {"dvv", "orbifold DVV factorizes; string and dilaton", 60, dvv_suite},
      {"axioms", "Frobenius axioms and contraction equivalences", 30, axiom_suite},
      {"exact", "rational and rational-function arithmetic", 30, exact_suite},
  };
  return all;
}

const Suite& find_suite(const std::string& name) {
  for (const auto& s : suites())
    if (s.name == name) return s;
  throw Error("unknown suite '" + name + "'");
}

SuiteResult run_suite(const Suite& suite, Level level) {
  SuiteResult r;
  r.name = suite.name;
  r.description = suite.description;
  r.budget_seconds = suite.budget_seconds;
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  try {
    suite.body(level, c);
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.checks = c.checks();
  r.failures = c.failures();
  const bool in_time = level == Level::Quick || r.seconds <= r.budget_seconds;
  r.passed = r.failures == 0 && in_time;
  if (!c.messages().empty())
    r.detail = c.messages().front();
  else if (!in_time)
    r.detail = "over the time budget";
  return r;
}

std::vector<SuiteResult> run_suites(Level level, const std::vector<std::string>& only) {
  std::vector<SuiteResult> out;
  for (const auto& s : suites())
    if (only.empty() || std::find(only.begin(), only.end(), s.name) != only.end())
      out.push_back(run_suite(s, level));
  return out;
}

AlgebraPtr random_semisimple(std::mt19937& rng, int s) {
  std::uniform_int_distribution<int> small(-3, 3), pos(1, 5);
  std::vector<Rational> lambda(static_cast<std::size_t>(s));
  for (auto& l : lambda) l = frac(pos(rng) * (small(rng) < 0 ? -1 : 1), pos(rng));
  Matrix P;
  std::optional<Matrix> Q;
  do {
    P.assign(s, std::vector<Rational>(s));
    for (auto& row : P)
      for (auto& x : row) x = small(rng);
    Q = invert(P);
  } while (!Q);
  Tensor3 c(s, Matrix(s, std::vector<Rational>(s)));
  Matrix eta(s, std::vector<Rational>(s));
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      for (int i = 0; i < s; ++i) {
        Rational w = P[a][i] * P[b][i];
        if (w == 0) continue;
        eta[a][b] += w * lambda[i];
        for (int k = 0; k < s; ++k) c[a][b][k] += w * (*Q)[i][k];
      }
  std::vector<std::string> labels;
  for (int i = 0; i < s; ++i) labels.push_back("f" + std::to_string(i));
  return make_algebra(labels, c, eta);
}

std::vector<NamedAlgebra> small_algebras() {
  return {{"K", trivial_algebra()},
          {"Z2", orbifold_frobenius(builtin_group("Z2"))},
          {"Z3", orbifold_frobenius(builtin_group("Z3"))},
          {"S3", orbifold_frobenius(builtin_group("S3"))},
          {"K[x]/x^2", truncated_polynomial_algebra(2)},
          {"K[x]/x^3", truncated_polynomial_algebra(3)}};
}

std::vector<NamedAlgebra> built_algebras() {
  std::vector<NamedAlgebra> out{{"K", trivial_algebra()}};
  for (auto& a : group_algebras(1 << 20)) out.push_back(a);
  for (int k = 2; k <= 4; ++k)
    out.push_back({"K[x]/x^" + std::to_string(k), truncated_polynomial_algebra(k)});
  std::mt19937 rng(17);
  for (int s = 2; s <= 4; ++s) out.push_back({"semisimple" + std::to_string(s), random_semisimple(rng, s)});
  return out;
}

}  // namespace tqft::verify
