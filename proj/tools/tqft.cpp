// tqft: command-line front end for the library.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "tqft/amodel.hpp"
#include "tqft/bmodel.hpp"
#include "tqft/group.hpp"
#include "tqft/intersect.hpp"
#include "tqft/verify.hpp"

using namespace tqft;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3, kInternal = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rows of named cells. JSON emits an array of objects (or `json_override`),
/// csv a header plus rows, text `name=value` lines or an aligned table.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::optional<json> json_override;

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

std::string cell_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string emit(const Report& r, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    if (r.json_override) {
      out << r.json_override->dump(2) << '\n';
      return out.str();
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < r.columns.size(); ++i) obj[r.columns[i]] = row[i];
      arr.push_back(obj);
    }
    out << arr.dump(2) << '\n';
    return out.str();
  }
  if (format == "csv") {
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_field(r.columns[i]);
    out << '\n';
    for (const auto& row : r.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
      out << '\n';
    }
    return out.str();
  }
  if (r.rows.size() == 1) {
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      out << r.columns[i] << '=' << cell_text(r.rows[0][i]) << '\n';
    return out.str();
  }
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
  for (const auto& row : r.rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], cell_text(row[i]).size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    s.erase(s.find_last_not_of(' ') + 1);
    out << s << '\n';
  };
  line(r.columns);
  for (const auto& row : r.rows) {
    std::vector<std::string> cells;
    for (const auto& v : row) cells.push_back(cell_text(v));
    line(cells);
  }
  return out.str();
}

json rat(const Rational& q) { return to_string(q); }

// input parsing

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::string s = text;
  for (char& ch : s)
    if (ch == '[' || ch == ']' || ch == ',' || ch == '(' || ch == ')') ch = ' ';
  std::istringstream in(s);
  std::vector<int> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw UsageError(what + ": '" + token + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

/// Tokens of a decoration list: JSON when it parses, else comma separated.
std::vector<json> decoration_tokens(const std::string& text) {
  auto parsed = json::parse(text, nullptr, false);
  if (!parsed.is_discarded()) {
    if (!parsed.is_array()) return {parsed};
    return std::vector<json>(parsed.begin(), parsed.end());
  }
  std::string s = text;
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) return {};
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::vector<json> out;
  std::istringstream in(s);
  std::string token;
  while (std::getline(in, token, ',')) {
    auto a = token.find_first_not_of(" \t"), b = token.find_last_not_of(" \t");
    if (a == std::string::npos) throw UsageError("empty decoration token in '" + text + "'");
    out.push_back(token.substr(a, b - a + 1));
  }
  return out;
}

Element parse_decoration(const json& token, const FrobeniusAlgebra& A) {
  if (token.is_array()) {
    if (static_cast<int>(token.size()) != A.dim())
      throw UsageError("decoration " + token.dump() + " has " + std::to_string(token.size()) +
                       " coefficients, the algebra has dimension " + std::to_string(A.dim()));
    Element v;
    for (const auto& x : token) {
      try {
        v.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
      } catch (const Error&) {
        throw UsageError("decoration coefficient '" + cell_text(x) + "' is not a rational");
      }
    }
    return v;
  }
  const std::string label = cell_text(token);
  int i = A.label_index(label);
  if (i < 0) {
    std::string known;
    for (const auto& l : A.labels()) known += (known.empty() ? "" : ", ") + l;
    throw UsageError("unknown decoration '" + label + "' (labels: " + known + ")");
  }
  return A.basis(i);
}

std::vector<Element> parse_decorations(const std::string& text, const FrobeniusAlgebra& A) {
  std::vector<Element> out;
  for (const auto& t : decoration_tokens(text)) out.push_back(parse_decoration(t, A));
  return out;
}

std::string show_list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct Source {
  std::string group;
  std::string algebra;
  std::optional<FiniteGroup> G;
  AlgebraPtr A;

  bool given() const { return !group.empty() || !algebra.empty(); }

  void load(bool required) {
    if (!group.empty() && !algebra.empty()) throw UsageError("give either --group or --algebra, not both");
    if (!group.empty()) {
      G = load_group(group);
      A = orbifold_frobenius(*G);
    } else if (!algebra.empty()) {
      if (algebra == "trivial") {
        A = trivial_algebra();
      } else if (algebra.rfind("truncated:", 0) == 0) {
        auto ks = parse_int_list(algebra.substr(10), "--algebra");
        if (ks.size() != 1 || ks[0] < 1) throw UsageError("truncated:k needs one integer k >= 1");
        const int k = ks[0];
        A = truncated_polynomial_algebra(k);
      } else {
        std::ifstream in(algebra);
        if (!in) throw UsageError("cannot open algebra file '" + algebra + "'");
        A = algebra_from_json(json::parse(in));
      }
    } else if (required) {
      throw UsageError("this command needs --group or --algebra");
    }
  }
};

struct Options {
  std::string format = "text";
  std::string cache;
  std::uint64_t budget = 0;
  Source source;
  int g = 0;
  int n = -1;
  std::string mu;
  std::string k;
  std::string decor;
  std::string method = "both";
  std::string coords = "t";
  bool shifted = false;
  std::string level = "quick";
  std::vector<std::string> suites;
};

/// Decorations from --decor, or every basis tuple when absent.
std::vector<std::pair<std::string, std::vector<Element>>> decoration_sets(const Options& o,
                                                                           const AlgebraPtr& A, int n) {
  std::vector<std::pair<std::string, std::vector<Element>>> out;
  if (!o.decor.empty()) {
    auto vs = parse_decorations(o.decor, *A);
    if (static_cast<int>(vs.size()) != n)
      throw UsageError("--decor has " + std::to_string(vs.size()) + " entries, expected " + std::to_string(n));
    out.push_back({o.decor, vs});
    return out;
  }
  for_each_tuple(A->dim(), n, [&](const std::vector<int>& idx) {
    std::string name;
    std::vector<Element> vs;
    for (int i : idx) {
      name += (name.empty() ? "" : ";") + A->labels()[i];
      vs.push_back(A->basis(i));
    }
    out.push_back({name, vs});
  });
  return out;
}

int resolve_n(const Options& o, std::size_t inferred, const std::string& from) {
  if (o.n >= 0 && static_cast<std::size_t>(o.n) != inferred)
    throw UsageError("--n " + std::to_string(o.n) + " does not match " + from + " of length " +
                     std::to_string(inferred));
  return static_cast<int>(inferred);
}

// commands

Report group_info(Options& o) {
  if (o.source.group.empty()) throw UsageError("group-info needs --group");
  o.source.load(true);
  const auto& G = *o.source.G;
  auto d = conjugacy(G);
  Report r{{"class", "size", "centralizer", "inverse", "representative"}, {}, {}};
  json classes = json::array();
  for (int i = 0; i < d.num_classes(); ++i) {
    std::string rep = G.permutations().empty() ? G.name(d.classes[i].front())
                                               : cycle_string(G.permutations()[d.classes[i].front()]);
    r.add({d.labels[i], static_cast<int>(d.classes[i].size()), d.centralizer_order[i],
           d.labels[d.inverse_class[i]], rep});
    classes.push_back({{"label", d.labels[i]},
                       {"size", d.classes[i].size()},
                       {"centralizer", d.centralizer_order[i]},
                       {"inverse", d.labels[d.inverse_class[i]]},
                       {"representative", rep}});
  }
  r.json_override = json{{"source", G.source()}, {"order", G.order()}, {"classes", classes}};
  return r;
}

Report frobenius(Options& o) {
  o.source.load(true);
  const auto& A = *o.source.A;
  Report r{{"tensor", "i", "j", "k", "value"}, {}, to_json(A)};
  const auto& L = A.labels();
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j)
      for (int k = 0; k < A.dim(); ++k)
        if (A.product_tensor()[i][j][k] != 0) r.add({"product", L[i], L[j], L[k], rat(A.product_tensor()[i][j][k])});
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j)
      if (A.pairing()[i][j] != 0) r.add({"pairing", L[i], L[j], "", rat(A.pairing()[i][j])});
  for (int i = 0; i < A.dim(); ++i)
    for (int a = 0; a < A.dim(); ++a)
      for (int b = 0; b < A.dim(); ++b)
        if (A.coproduct_tensor()[i][a][b] != 0) r.add({"coproduct", L[i], L[a], L[b], rat(A.coproduct_tensor()[i][a][b])});
  for (int i = 0; i < A.dim(); ++i) {
    if (A.unit()[i] != 0) r.add({"unit", L[i], "", "", rat(A.unit()[i])});
    if (A.counit()[i] != 0) r.add({"counit", L[i], "", "", rat(A.counit()[i])});
    if (A.euler()[i] != 0) r.add({"euler", L[i], "", "", rat(A.euler()[i])});
  }
  return r;
}

Report omega(Options& o) {
  o.source.load(true);
  const auto& A = o.source.A;
  if (o.g < 0) throw UsageError("--g must be non-negative");
  int n = o.n;
  if (!o.decor.empty()) n = resolve_n(o, decoration_tokens(o.decor).size(), "--decor");
  if (n < 0) throw UsageError("omega needs --n or --decor");
  const bool formula = o.method != "brute", brute = o.method != "formula";
  if (brute && !o.source.G) throw UsageError("--method brute needs --group");
  std::optional<ConjugacyData> d;
  if (brute) d = conjugacy(*o.source.G);
  const std::uint64_t budget = o.budget ? o.budget : iteration_budget();
  Report r;
  r.columns = {"g", "n", "decor"};
  if (formula) r.columns.push_back("formula");
  if (brute) r.columns.push_back("brute");
  if (formula && brute) r.columns.push_back("match");
  for (const auto& [name, vs] : decoration_sets(o, A, n)) {
    std::vector<json> row{o.g, n, name};
    Rational f = 0, b = 0;
    if (formula) {
      f = A->omega(o.g, vs);
      row.push_back(rat(f));
    }
    if (brute) {
      // multilinear in the decorations; basis elements are class sums
      for_each_tuple(A->dim(), n, [&](const std::vector<int>& idx) {
        Rational coeff = 1;
        for (int i = 0; i < n && coeff != 0; ++i) coeff *= vs[i][idx[i]];
        if (coeff != 0) b += coeff * omega_brute(*o.source.G, o.g, idx, budget);
      });
      row.push_back(rat(b));
    }
    if (formula && brute) row.push_back(f == b);
    r.add(row);
  }
  return r;
}

Report catalan_cmd(Options& o, bool dessin) {
  auto mu = parse_int_list(o.mu, "--mu");
  if (mu.empty()) throw UsageError("--mu is required");
  const int n = resolve_n(o, mu.size(), "--mu");
  if (o.g < 0) throw UsageError("--g must be non-negative");
  for (int m : mu)
    if (m < 0) throw UsageError("--mu entries must be non-negative");
  Report r{{"g", "n", "mu"}, {}, {}};
  if (!o.source.given() && o.decor.empty()) {
    r.columns.push_back("value");
    Rational v = catalan(o.g, mu);
    if (dessin) v = twisted_dessin(o.g, mu, trivial_algebra(), std::vector<Element>(n, Element{1}));
    r.add({o.g, n, show_list(mu), rat(v)});
    return r;
  }
  o.source.load(true);
  r.columns.push_back("decor");
  r.columns.push_back("value");
  for (const auto& [name, vs] : decoration_sets(o, o.source.A, n)) {
    Rational v = dessin ? twisted_dessin(o.g, mu, o.source.A, vs) : twisted_catalan(o.g, mu, o.source.A, vs);
    r.add({o.g, n, show_list(mu), name, rat(v)});
  }
  return r;
}

Report wgn_cmd(Options& o) {
  if (o.n < 0 && o.decor.empty()) throw UsageError("wgn needs --n");
  const Frame frame = parse_frame(o.coords);
  Report r{{"g", "n", "coords"}, {}, {}};
  if (!o.source.given()) {
    const int n = o.n;
    if (!o.decor.empty()) throw UsageError("--decor needs --group or --algebra");
    r.columns.push_back("value");
    r.add({o.g, n, o.coords, convert_frame(wgn(o.g, n), n, frame).to_string()});
    return r;
  }
  o.source.load(true);
  int n = o.n;
  if (!o.decor.empty()) n = resolve_n(o, decoration_tokens(o.decor).size(), "--decor");
  auto W = twisted_wgn(o.g, n, o.source.A);
  r.columns.push_back("decor");
  r.columns.push_back("value");
  for (const auto& [name, vs] : decoration_sets(o, o.source.A, n))
    r.add({o.g, n, o.coords, name, convert_frame(W.evaluate(vs), n, frame).to_string()});
  return r;
}

Report correlator_cmd(Options& o) {
  auto k = parse_int_list(o.k, "--k");
  if (k.empty()) throw UsageError("--k is required");
  const int n = resolve_n(o, k.size(), "--k");
  const auto conv = o.shifted ? DvvConvention::Shifted : DvvConvention::Standard;
  Report r{{"g", "n", "k"}, {}, {}};
  if (!o.source.given()) {
    if (!o.decor.empty()) throw UsageError("--decor needs --group or --algebra");
    r.columns.push_back("value");
    r.add({o.g, n, show_list(k), rat(correlator(o.g, k, conv))});
    return r;
  }
  o.source.load(true);
  TwistedCorrelatorTable table(o.source.A, conv);
  r.columns.push_back("decor");
  r.columns.push_back("value");
  for (const auto& [name, vs] : decoration_sets(o, o.source.A, n))
    r.add({o.g, n, show_list(k), name, rat(table.value(o.g, k, vs))});
  return r;
}

Report verify_cmd(Options& o, bool& all_passed) {
  const auto level = verify::parse_level(o.level);
  for (const auto& s : o.suites) verify::find_suite(s);
  Report r{{"suite", "status", "checks", "failures", "seconds", "budget", "detail"}, {}, {}};
  all_passed = true;
  for (const auto& res : verify::run_suites(level, o.suites)) {
    all_passed = all_passed && res.passed;
    std::ostringstream secs;
    secs.setf(std::ios::fixed);
    secs.precision(2);
    secs << res.seconds;
    r.add({res.name, res.passed ? "pass" : "FAIL", res.checks, res.failures, secs.str(),
           static_cast<int>(res.budget_seconds), res.detail});
  }
  return r;
}

// cache of rendered outputs, keyed by the normalized command line

std::optional<std::string> cache_lookup(const std::string& path, const std::string& key) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  auto j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains(key) || !j[key].is_string()) return std::nullopt;
  return j[key].get<std::string>();
}

void cache_store(const std::string& path, const std::string& key, const std::string& value) {
  json j = json::object();
  {
    std::ifstream in(path);
    if (in) {
      auto old = json::parse(in, nullptr, false);
      if (!old.is_discarded() && old.is_object()) j = old;
    }
  }
  j[key] = value;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw UsageError("cannot write cache file '" + path + "'");
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact twisted topological recursion: TQFT amplitudes, Catalan counts, B-model forms, correlators"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--cache", o.cache, "cache file for rendered results (opt-in)");
    sub->add_option("--budget", o.budget, "iteration budget for brute-force loops")->check(CLI::PositiveNumber);
  };
  auto source = [&](CLI::App* sub) {
    sub->add_option("--group", o.source.group, "builtin:NAME, a .json table or a generator file");
    sub->add_option("--algebra", o.source.algebra, "algebra .json file, trivial or truncated:k");
  };

  auto* c_group = app.add_subcommand("group-info", "conjugacy classes of a group");
  common(c_group);
  c_group->add_option("--group", o.source.group, "builtin:NAME, a .json table or a generator file")->required();

  auto* c_frob = app.add_subcommand("frobenius", "structure tensors of a Frobenius algebra");
  common(c_frob);
  source(c_frob);

  auto* c_omega = app.add_subcommand("omega", "TQFT amplitude eps(v_1 .. v_n e^g)");
  common(c_omega);
  source(c_omega);
  c_omega->add_option("--g", o.g, "genus")->required();
  c_omega->add_option("--n", o.n, "number of insertions");
  c_omega->add_option("--decor", o.decor, "class labels or coefficient vectors, e.g. '[\"1\", [0, 1]]'");
  c_omega->add_option("--method", o.method, "formula, brute or both")
      ->check(CLI::IsMember({"formula", "brute", "both"}));

  auto* c_cat = app.add_subcommand("catalan", "generalized Catalan numbers, twisted when decorated");
  auto* c_des = app.add_subcommand("dessin", "dessin counts, twisted when decorated");
  for (auto* sub : {c_cat, c_des}) {
    common(sub);
    source(sub);
    sub->add_option("--g", o.g, "genus")->required();
    sub->add_option("--n", o.n, "number of vertices");
    sub->add_option("--mu", o.mu, "degrees, e.g. 2,3")->required();
    sub->add_option("--decor", o.decor, "decorations");
  }

  auto* c_wgn = app.add_subcommand("wgn", "B-model differential w_{g,n}");
  common(c_wgn);
  source(c_wgn);
  c_wgn->add_option("--g", o.g, "genus")->required();
  c_wgn->add_option("--n", o.n, "number of points");
  c_wgn->add_option("--decor", o.decor, "decorations");
  c_wgn->add_option("--coords", o.coords, "t, x or z")->check(CLI::IsMember({"t", "x", "z"}));

  auto* c_corr = app.add_subcommand("correlator", "psi-class intersection numbers");
  common(c_corr);
  source(c_corr);
  c_corr->add_option("--g", o.g, "genus")->required();
  c_corr->add_option("--n", o.n, "number of points");
  c_corr->add_option("--k", o.k, "psi exponents, e.g. 1,0,0,0")->required();
  c_corr->add_option("--decor", o.decor, "decorations");
  c_corr->add_flag("--shifted", o.shifted, "use (2k1-1)!! in the join coefficient");

  auto* c_verify = app.add_subcommand("verify", "run the invariant suites");
  common(c_verify);
  c_verify->add_option("--level", o.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  c_verify->add_option("--suite", o.suites, "run only these suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (const char* env = std::getenv("TQFT_BUDGET")) {
    std::string s = env;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || std::stoull(s) == 0) {
      std::cerr << "error: TQFT_BUDGET must be a positive integer, got '" << s << "'\n";
      return kUsage;
    }
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    std::string key;
    if (!o.cache.empty() && name != "verify") {
      key = name;
      for (int i = 2; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--cache") {
          ++i;
          continue;
        }
        if (a.rfind("--cache=", 0) == 0) continue;
        key += '\x1f' + a;
      }
      if (auto hit = cache_lookup(o.cache, key)) {
        std::cout << *hit;
        return kOk;
      }
    }
    Report r;
    bool passed = true;
    if (name == "group-info") r = group_info(o);
    else if (name == "frobenius") r = frobenius(o);
    else if (name == "omega") r = omega(o);
    else if (name == "catalan") r = catalan_cmd(o, false);
    else if (name == "dessin") r = catalan_cmd(o, true);
    else if (name == "wgn") r = wgn_cmd(o);
    else if (name == "correlator") r = correlator_cmd(o);
    else r = verify_cmd(o, passed);
    const std::string text = emit(r, o.format);
    if (!key.empty()) cache_store(o.cache, key, text);
    std::cout << text;
    return passed ? kOk : kVerifyFailed;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON input: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
