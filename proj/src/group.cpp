#include "tqft/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "tqft/errors.hpp"

namespace tqft {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names,
                         std::string source, std::vector<Permutation> perms)
    : source_(std::move(source)) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error("group table is empty");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) throw Error("group table is not square");
    for (int b = 0; b < n; ++b)
      if (table[a][b] < 0 || table[a][b] >= n) throw AxiomError("table not closed", {a, b});
  }
  int e = -1;
  for (int x = 0; x < n && e < 0; ++x) {
    bool ok = true;
    for (int y = 0; y < n && ok; ++y) ok = table[x][y] == y && table[y][x] == y;
    if (ok) e = x;
  }
  if (e < 0) throw AxiomError("table has no identity", {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw AxiomError("non-associative table", {a, b, c});
  std::vector<int> inverse(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == e && table[b][a] == e) inverse[a] = b;
    if (inverse[a] < 0) throw AxiomError("element has no inverse", {a});
  }
  if (!perms.empty() && static_cast<int>(perms.size()) != n)
    throw Error("permutation list does not match group order");
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back("");
  if (static_cast<int>(names.size()) != n) throw Error("name list does not match group order");

  // Identity first, input order otherwise.
  std::vector<int> order{e};
  for (int x = 0; x < n; ++x)
    if (x != e) order.push_back(x);
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  table_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  inverse_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) table_[i][j] = pos[table[order[i]][order[j]]];
    inverse_[i] = pos[inverse[order[i]]];
    names_.push_back(names[order[i]].empty() ? (i == 0 ? "1" : "g" + std::to_string(i))
                                             : names[order[i]]);
    if (!perms.empty()) perms_.push_back(perms[order[i]]);
  }
}

int ConjugacyData::class_index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

ConjugacyData conjugacy(const FiniteGroup& g) {
  const int n = g.order();
  ConjugacyData d;
  d.class_of.assign(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    if (d.class_of[x] >= 0) continue;
    const int k = d.num_classes();
    std::vector<int> cls;
    for (int y = 0; y < n; ++y) {
      int c = g.mul(g.mul(y, x), g.inv(y));
      if (d.class_of[c] < 0) {
        d.class_of[c] = k;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    d.classes.push_back(cls);
    d.centralizer_order.push_back(n / static_cast<int>(cls.size()));
  }
  for (const auto& cls : d.classes) d.inverse_class.push_back(d.class_of[g.inv(cls.front())]);
  for (int k = 0; k < d.num_classes(); ++k) {
    const auto& cls = d.classes[k];
    if (k == 0) {
      d.labels.push_back("1");
    } else if (!g.permutations().empty()) {
      std::string best;
      for (int x : cls) {
        std::string s = cycle_string(g.permutations()[x]);
        if (best.empty() || s < best) best = s;
      }
      d.labels.push_back(best);
    } else {
      d.labels.push_back(g.name(cls.front()));
    }
  }
  return d;
}

std::string cycle_string(const Permutation& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Permutation parse_cycles(const std::string& text, int degree) {
  Permutation p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[i] = i;
  std::vector<char> used(static_cast<std::size_t>(degree), 0);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw Error("bad cycle notation '" + text + "': " + why); };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '('");
    std::size_t close = text.find(')', i);
    if (close == std::string::npos) fail("unbalanced parenthesis");
    std::istringstream cyc(text.substr(i + 1, close - i - 1));
    std::vector<int> pts;
    std::string tok;
    while (cyc >> tok) {
      int v = 0;
      try {
        std::size_t used_chars = 0;
        v = std::stoi(tok, &used_chars);
        if (used_chars != tok.size()) fail("non-numeric point '" + tok + "'");
      } catch (const std::logic_error&) {
        fail("non-numeric point '" + tok + "'");
      }
      if (v < 1 || v > degree) fail("point out of range");
      if (used[v - 1]) fail("cycles are not disjoint");
      used[v - 1] = 1;
      pts.push_back(v - 1);
    }
    for (std::size_t k = 0; k < pts.size(); ++k) p[pts[k]] = pts[(k + 1) % pts.size()];
    i = close + 1;
  }
  return p;
}

namespace {

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

FiniteGroup closure(const std::vector<Permutation>& gens, int degree, const std::string& source) {
  Permutation id(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) id[i] = i;
  std::vector<Permutation> elems{id};
  std::map<Permutation, int> index{{id, 0}};
  auto add = [&](const Permutation& p) {
    if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(p);
  };
  for (const auto& s : gens) add(s);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems.size() > 5000) throw BudgetError("permutation group too large (over 5000 elements)");
    for (const auto& s : gens) add(compose(elems[i], s));
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  std::vector<std::string> names;
  for (const auto& p : elems) names.push_back(cycle_string(p));
  return FiniteGroup(std::move(table), std::move(names), source, std::move(elems));
}

FiniteGroup quaternion_group() {
  // Elements (sign, unit) with unit 0=1, 1=i, 2=j, 3=k; index = 2*unit + (sign<0).
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const char* unit_name[4] = {"1", "i", "j", "k"};
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  std::vector<std::string> names;
  for (int a = 0; a < 8; ++a) {
    names.push_back(std::string(a % 2 ? "-" : "") + unit_name[a / 2]);
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, ub = b / 2;
      int s = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * sign_mul[ua][ub];
      table[a][b] = 2 * unit_mul[ua][ub] + (s < 0 ? 1 : 0);
    }
  }
  return FiniteGroup(std::move(table), std::move(names), "builtin:Q8");
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    out.push_back(line.substr(b));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& builtin_group_names() {
  static const std::vector<std::string> names{"trivial", "Z2", "Z3", "Z4", "Z2xZ2", "S3", "Q8"};
  return names;
}

FiniteGroup builtin_group(const std::string& name) {
  const std::string src = "builtin:" + name;
  if (name == "trivial") return closure({}, 1, src);
  if (name == "Z2") return group_from_generators("(1 2)", src);
  if (name == "Z3") return group_from_generators("(1 2 3)", src);
  if (name == "Z4") return group_from_generators("(1 2 3 4)", src);
  if (name == "Z2xZ2") return group_from_generators("(1 2)\n(3 4)", src);
  if (name == "S3") return group_from_generators("(1 2 3)\n(1 2)", src);
  if (name == "Q8") return quaternion_group();
  throw Error("unknown builtin group '" + name + "'");
}

FiniteGroup group_from_table(const nlohmann::json& j, const std::string& source) {
  const int n = j.at("order").get<int>();
  auto table = j.at("table").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(table.size()) != n) throw Error("table size does not match order");
  return FiniteGroup(std::move(table), {}, source);
}

FiniteGroup group_from_generators(const std::string& text, const std::string& source) {
  auto lines = nonempty_lines(text);
  int degree = 1;
  for (const auto& line : lines) {
    std::string digits;
    for (char ch : line) {
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        digits += ch;
      } else {
        if (!digits.empty()) degree = std::max(degree, std::stoi(digits));
        digits.clear();
      }
    }
    if (!digits.empty()) degree = std::max(degree, std::stoi(digits));
  }
  std::vector<Permutation> gens;
  for (const auto& line : lines) gens.push_back(parse_cycles(line, degree));
  return closure(gens, degree, source);
}

FiniteGroup load_group(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin_group(source.substr(prefix.size()));
  std::ifstream in(source);
  if (!in) throw Error("cannot open group file '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return group_from_table(nlohmann::json::parse(text), source);
  return group_from_generators(text, source);
}

AlgebraPtr orbifold_frobenius(const FiniteGroup& g) {
  const ConjugacyData d = conjugacy(g);
  const int s = d.num_classes();
  const auto ss = static_cast<std::size_t>(s);
  const int n = g.order();
  Tensor3 c(ss, Matrix(ss, std::vector<Rational>(ss)));
  Matrix eta(ss, std::vector<Rational>(ss));
  for (int i = 0; i < s; ++i) {
    eta[i][d.inverse_class[i]] = frac(1, d.centralizer_order[i]);
    for (int j = 0; j < s; ++j)
      for (int a : d.classes[i])
        for (int b : d.classes[j]) {
          const int k = d.class_of[g.mul(a, b)];
          c[i][j][k] += frac(d.centralizer_order[k], n);
        }
  }
  try {
    return make_algebra(d.labels, std::move(c), std::move(eta));
  } catch (const AxiomError& e) {
    throw Error(std::string("internal: orbifold algebra failed its axioms: ") + e.what());
  }
}

std::uint64_t iteration_budget() {
  if (const char* env = std::getenv("TQFT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 100000000ULL;
}

Rational omega_brute(const FiniteGroup& g, int genus, const std::vector<int>& classes,
                     std::uint64_t budget) {
  const int n = g.order();
  const int k = static_cast<int>(classes.size());
  if (genus < 0) throw Error("genus must be non-negative");
  const ConjugacyData d = conjugacy(g);
  for (int c : classes)
    if (c < 0 || c >= d.num_classes()) throw Error("class index out of range");
  // N^(2g+n) with saturation.
  std::uint64_t work = 1;
  for (int i = 0; i < 2 * genus + k; ++i) {
    if (work > budget / static_cast<std::uint64_t>(n) + 1) {
      work = budget + 1;
      break;
    }
    work *= static_cast<std::uint64_t>(n);
  }
  if (work > budget)
    throw BudgetError("brute-force count needs |G|^(2g+n) = " + std::to_string(n) + "^" +
                      std::to_string(2 * genus + k) + " iterations, over the budget of " +
                      std::to_string(budget) + "; use smaller g, n or |G|");

  // Odometer over (alpha_1, beta_1, ..., alpha_g, beta_g) in G and sigma_j in class_j.
  const int slots = 2 * genus + k;
  std::vector<int> digit(static_cast<std::size_t>(slots), 0);
  auto range = [&](int p) {
    return p < 2 * genus ? n : static_cast<int>(d.classes[classes[p - 2 * genus]].size());
  };
  auto element = [&](int p) {
    return p < 2 * genus ? digit[p] : d.classes[classes[p - 2 * genus]][digit[p]];
  };
  std::uint64_t count = 0;
  for (;;) {
    int lhs = g.identity();
    for (int i = 0; i < genus; ++i) {
      int a = element(2 * i), b = element(2 * i + 1);
      int comm = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
      lhs = g.mul(lhs, comm);
    }
    int rhs = g.identity();
    for (int j = 0; j < k; ++j) rhs = g.mul(rhs, element(2 * genus + j));
    if (lhs == rhs) ++count;
    int p = slots - 1;
    while (p >= 0 && ++digit[p] == range(p)) digit[p--] = 0;
    if (p < 0) break;
  }
  return frac(Integer(static_cast<unsigned long>(count)), n);
}

}  // namespace tqft
