#include "tqft/frobenius.hpp"

#include <algorithm>

#include "tqft/errors.hpp"
#include "tqft/functional.hpp"

namespace tqft {

namespace {

// Solves rows * x = rhs (possibly overdetermined). nullopt if inconsistent
// or underdetermined.
std::optional<std::vector<Rational>> solve(Matrix rows, std::vector<Rational> rhs, int unknowns) {
  const int m = static_cast<int>(rows.size());
  int r = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < unknowns && r < m; ++col) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[r]);
    std::swap(rhs[p], rhs[r]);
    Rational inv = 1 / rows[r][col];
    for (int j = col; j < unknowns; ++j) rows[r][j] *= inv;
    rhs[r] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rational f = rows[i][col];
      for (int j = col; j < unknowns; ++j) rows[i][j] -= f * rows[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (int i = r; i < m; ++i)
    if (rhs[i] != 0) return std::nullopt;
  if (r < unknowns) return std::nullopt;
  std::vector<Rational> x(unknowns);
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

}  // namespace

std::optional<Matrix> invert(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  Matrix a = m;
  Matrix inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (a[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) return std::nullopt;
    std::swap(a[p], a[col]);
    std::swap(inv[p], inv[col]);
    Rational f = 1 / a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] *= f;
      inv[col][j] *= f;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rational g = a[i][col];
      for (int j = 0; j < n; ++j) {
        a[i][j] -= g * a[col][j];
        inv[i][j] -= g * inv[col][j];
      }
    }
  }
  return inv;
}

FrobeniusAlgebra::FrobeniusAlgebra(std::vector<std::string> labels, Tensor3 product,
                                   Matrix pairing, bool verify)
    : dim_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      c_(std::move(product)),
      eta_(std::move(pairing)) {
  const auto s = static_cast<std::size_t>(dim_);
  if (dim_ < 1) throw Error("algebra dimension must be positive");
  if (c_.size() != s) throw Error("product tensor has wrong shape");
  for (const auto& m : c_) {
    if (m.size() != s) throw Error("product tensor has wrong shape");
    for (const auto& row : m)
      if (row.size() != s) throw Error("product tensor has wrong shape");
  }
  if (eta_.size() != s) throw Error("pairing has wrong shape");
  for (const auto& row : eta_)
    if (row.size() != s) throw Error("pairing has wrong shape");

  if (verify) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          if (c_[i][j][k] != c_[j][i][k]) throw AxiomError("non-commutative product", {i, j});
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          for (int l = 0; l < dim_; ++l) {
            Rational lhs = 0, rhs = 0;
            for (int m = 0; m < dim_; ++m) {
              lhs += c_[i][j][m] * c_[m][k][l];
              rhs += c_[j][k][m] * c_[i][m][l];
            }
            if (lhs != rhs) throw AxiomError("non-associative product", {i, j, k});
          }
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        if (eta_[i][j] != eta_[j][i]) throw AxiomError("asymmetric pairing", {i, j});
  }
  auto inv = invert(eta_);
  if (!inv) throw AxiomError("degenerate pairing", {});
  eta_inv_ = std::move(*inv);

  // Unit: sum_i u_i c[i][j][k] = delta_jk.
  Matrix rows;
  std::vector<Rational> rhs;
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k) {
      std::vector<Rational> row(s);
      for (int i = 0; i < dim_; ++i) row[i] = c_[i][j][k];
      rows.push_back(std::move(row));
      rhs.push_back(j == k ? 1 : 0);
    }
  auto u = solve(std::move(rows), std::move(rhs), dim_);
  if (!u) throw AxiomError("product has no unit", {});
  unit_ = std::move(*u);

  derive();
  if (verify) this->verify();
}

void FrobeniusAlgebra::derive() {
  const auto s = static_cast<std::size_t>(dim_);
  eps_.assign(s, 0);
  for (int i = 0; i < dim_; ++i)
    for (int a = 0; a < dim_; ++a) eps_[i] += unit_[a] * eta_[a][i];

  phi_.assign(s, Matrix(s, std::vector<Rational>(s)));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int m = 0; m < dim_; ++m) phi_[i][j][k] += c_[i][j][m] * eta_[m][k];

  // delta[i][a][b] = sum_{k,l} phi(i,k,l) eta^{ka} eta^{lb}
  delta_.assign(s, Matrix(s, std::vector<Rational>(s)));
  for (int i = 0; i < dim_; ++i) {
    Matrix tmp(s, std::vector<Rational>(s));  // tmp[k][b] = sum_l phi(i,k,l) eta^{lb}
    for (int k = 0; k < dim_; ++k)
      for (int l = 0; l < dim_; ++l) {
        if (phi_[i][k][l] == 0) continue;
        for (int b = 0; b < dim_; ++b) tmp[k][b] += phi_[i][k][l] * eta_inv_[l][b];
      }
    for (int k = 0; k < dim_; ++k)
      for (int a = 0; a < dim_; ++a) {
        if (eta_inv_[k][a] == 0) continue;
        for (int b = 0; b < dim_; ++b) delta_[i][a][b] += eta_inv_[k][a] * tmp[k][b];
      }
  }

  delta_sparse_.assign(s, {});
  c_sparse_.assign(s * s, {});
  for (int i = 0; i < dim_; ++i)
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) {
        if (delta_[i][a][b] != 0) delta_sparse_[i].push_back({a, b, delta_[i][a][b]});
        if (c_[i][a][b] != 0) c_sparse_[i * dim_ + a].push_back({b, 0, c_[i][a][b]});
      }

  euler_ = handle(unit_);
}

int FrobeniusAlgebra::label_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

void FrobeniusAlgebra::check_element(const Element& v) const {
  if (static_cast<int>(v.size()) != dim_) throw Error("element does not belong to this algebra");
}

Element FrobeniusAlgebra::basis(int i) const {
  if (i < 0 || i >= dim_) throw Error("basis index out of range");
  Element e(static_cast<std::size_t>(dim_));
  e[i] = 1;
  return e;
}

Element FrobeniusAlgebra::multiply(const Element& u, const Element& v) const {
  check_element(u);
  check_element(v);
  Element out(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (v[j] == 0) continue;
      Rational f = u[i] * v[j];
      for (const auto& e : product_entries(i, j)) out[e.a] += f * e.c;
    }
  }
  return out;
}

Rational FrobeniusAlgebra::eps(const Element& v) const {
  check_element(v);
  Rational out = 0;
  for (int i = 0; i < dim_; ++i) out += eps_[i] * v[i];
  return out;
}

Rational FrobeniusAlgebra::eta(const Element& u, const Element& v) const {
  check_element(u);
  check_element(v);
  Rational out = 0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) out += u[i] * eta_[i][j] * v[j];
  return out;
}

Rational FrobeniusAlgebra::three_point(const Element& u, const Element& v, const Element& w) const {
  return eta(multiply(u, v), w);
}

Matrix FrobeniusAlgebra::coproduct(const Element& v) const {
  check_element(v);
  Matrix out(static_cast<std::size_t>(dim_), std::vector<Rational>(static_cast<std::size_t>(dim_)));
  for (int i = 0; i < dim_; ++i) {
    if (v[i] == 0) continue;
    for (const auto& e : delta_sparse_[i]) out[e.a][e.b] += v[i] * e.c;
  }
  return out;
}

Element FrobeniusAlgebra::handle(const Element& v) const {
  Matrix d = coproduct(v);
  Element out(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) {
      if (d[a][b] == 0) continue;
      for (const auto& e : product_entries(a, b)) out[e.a] += d[a][b] * e.c;
    }
  return out;
}

Element FrobeniusAlgebra::euler_power(int g) const {
  if (g < 0) throw Error("negative Euler power");
  Element out = unit_;
  for (int i = 0; i < g; ++i) out = multiply(out, euler_);
  return out;
}

Rational FrobeniusAlgebra::omega(int g, const std::vector<Element>& vs) const {
  Element prod = euler_power(g);
  for (const auto& v : vs) prod = multiply(prod, v);
  return eps(prod);
}

Rational FrobeniusAlgebra::omega_basis(int g, const std::vector<int>& indices) const {
  std::vector<Element> vs;
  for (int i : indices) vs.push_back(basis(i));
  return omega(g, vs);
}

void FrobeniusAlgebra::verify() const {
  const int s = dim_;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      Rational inner = 0;
      for (int k = 0; k < s; ++k) inner += eta_inv_[i][k] * eta_[k][j];
      if (inner != (i == j ? 1 : 0)) throw AxiomError("pairing inverse mismatch", {i, j});
    }
  // Frobenius compatibility: eta(e_i e_j, e_k) = eta(e_i, e_j e_k).
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      for (int k = 0; k < s; ++k) {
        Rational rhs = 0;
        for (int m = 0; m < s; ++m) rhs += eta_[i][m] * c_[j][k][m];
        if (phi_[i][j][k] != rhs) throw AxiomError("Frobenius compatibility failure", {i, j, k});
      }
  // Counit law: (eps (x) id) delta(e_i) = e_i.
  for (int i = 0; i < s; ++i)
    for (int b = 0; b < s; ++b) {
      Rational acc = 0;
      for (int a = 0; a < s; ++a) acc += eps_[a] * delta_[i][a][b];
      if (acc != (i == b ? 1 : 0)) throw AxiomError("counit law failure", {i, b});
    }
  // Frobenius relation: delta(e_i e_j) = (1 (x) m)(delta(e_i) (x) e_j).
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      for (int a = 0; a < s; ++a)
        for (int k = 0; k < s; ++k) {
          Rational lhs = 0, rhs = 0;
          for (int m = 0; m < s; ++m) lhs += c_[i][j][m] * delta_[m][a][k];
          for (int b = 0; b < s; ++b) rhs += delta_[i][a][b] * c_[b][j][k];
          if (lhs != rhs) throw AxiomError("Frobenius relation failure", {i, j, a, k});
        }
  // Coassociativity: (delta (x) 1) delta = (1 (x) delta) delta.
  for (int i = 0; i < s; ++i)
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b)
        for (int c = 0; c < s; ++c) {
          Rational lhs = 0, rhs = 0;
          for (int m = 0; m < s; ++m) {
            lhs += delta_[i][m][c] * delta_[m][a][b];
            rhs += delta_[i][a][m] * delta_[m][b][c];
          }
          if (lhs != rhs) throw AxiomError("coassociativity failure", {i, a, b, c});
        }
  // m = (1 x eta)(delta x 1): e_i e_j = sum_{a,b} delta[i][a][b] eta(e_b, e_j) e_a.
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      for (int a = 0; a < s; ++a) {
        Rational acc = 0;
        for (int b = 0; b < s; ++b) acc += delta_[i][a][b] * eta_[b][j];
        if (acc != c_[i][j][a]) throw AxiomError("product/coproduct identity failure", {i, j, a});
      }
}

AlgebraPtr make_algebra(std::vector<std::string> labels, Tensor3 product, Matrix pairing,
                        bool verify) {
  return std::make_shared<const FrobeniusAlgebra>(std::move(labels), std::move(product),
                                                  std::move(pairing), verify);
}

AlgebraPtr trivial_algebra() {
  static const AlgebraPtr k = make_algebra({"1"}, {{{1}}}, {{1}});
  return k;
}

AlgebraPtr truncated_polynomial_algebra(int k) {
  if (k < 1) throw Error("truncated polynomial algebra needs k >= 1");
  const auto s = static_cast<std::size_t>(k);
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  Tensor3 c(s, Matrix(s, std::vector<Rational>(s)));
  Matrix eta(s, std::vector<Rational>(s));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i + j < k) c[i][j][i + j] = 1;
      if (i + j == k - 1) eta[i][j] = 1;
    }
  return make_algebra(std::move(labels), std::move(c), std::move(eta));
}

ScalarFunctional omega_functional(const AlgebraPtr& A, int g, int n) {
  if (n < 1) throw Error("omega functional needs n >= 1");
  ScalarFunctional out(A, n);
  const Element eg = A->euler_power(g);
  for_each_tuple(A->dim(), n, [&](const std::vector<int>& idx) {
    Element prod = eg;
    for (int i : idx) prod = A->multiply(prod, A->basis(i));
    out.at(idx) = A->eps(prod);
  });
  return out;
}

nlohmann::json to_json(const FrobeniusAlgebra& a) {
  nlohmann::json product = nlohmann::json::array();
  for (const auto& m : a.product_tensor()) {
    nlohmann::json mj = nlohmann::json::array();
    for (const auto& row : m) {
      nlohmann::json rj = nlohmann::json::array();
      for (const auto& x : row) rj.push_back(to_string(x));
      mj.push_back(rj);
    }
    product.push_back(mj);
  }
  nlohmann::json pairing = nlohmann::json::array();
  for (const auto& row : a.pairing()) {
    nlohmann::json rj = nlohmann::json::array();
    for (const auto& x : row) rj.push_back(to_string(x));
    pairing.push_back(rj);
  }
  return {{"dim", a.dim()}, {"labels", a.labels()}, {"product", product}, {"pairing", pairing}};
}

namespace {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error("expected a rational as \"p/q\" or an integer");
}

}  // namespace

AlgebraPtr algebra_from_json(const nlohmann::json& j, bool verify) {
  const int dim = j.at("dim").get<int>();
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
  } else {
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != dim) throw Error("label count does not match dim");
  Tensor3 c;
  for (const auto& mj : j.at("product")) {
    Matrix m;
    for (const auto& rj : mj) {
      std::vector<Rational> row;
      for (const auto& x : rj) row.push_back(rational_from_json(x));
      m.push_back(std::move(row));
    }
    c.push_back(std::move(m));
  }
  Matrix eta;
  for (const auto& rj : j.at("pairing")) {
    std::vector<Rational> row;
    for (const auto& x : rj) row.push_back(rational_from_json(x));
    eta.push_back(std::move(row));
  }
  return make_algebra(std::move(labels), std::move(c), std::move(eta), verify);
}

}  // namespace tqft
