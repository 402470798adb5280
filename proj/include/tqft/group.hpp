#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tqft/frobenius.hpp"

namespace tqft {

using Permutation = std::vector<int>;  // images of 0..d-1

/// Finite group given by its multiplication table. Element 0 is the identity.
class FiniteGroup {
 public:
  /// Validates the table (closure, identity, inverses, associativity) and
  /// reorders so the identity comes first, keeping the input order otherwise.
  /// `perms`, when non-empty, gives a permutation for each input element and
  /// is used for class labels.
  FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names,
              std::string source, std::vector<Permutation> perms = {});

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::string& name(int a) const { return names_[a]; }
  const std::string& source() const { return source_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<Permutation>& permutations() const { return perms_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
  std::string source_;
  std::vector<Permutation> perms_;
};

struct ConjugacyData {
  std::vector<std::vector<int>> classes;  // ordered by smallest member
  std::vector<int> class_of;
  std::vector<int> centralizer_order;     // |C(r)| for a representative r
  std::vector<int> inverse_class;         // class of r^{-1}
  std::vector<std::string> labels;        // identity class is "1"

  int num_classes() const { return static_cast<int>(classes.size()); }
  int class_index(const std::string& label) const;  // -1 if absent
};

ConjugacyData conjugacy(const FiniteGroup& g);

/// Disjoint-cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; "()" for the identity.
std::string cycle_string(const Permutation& p);
/// Parses one line of disjoint cycles on points 1..degree.
Permutation parse_cycles(const std::string& text, int degree);

/// trivial, Z2, Z3, Z4, Z2xZ2, S3, Q8.
FiniteGroup builtin_group(const std::string& name);
const std::vector<std::string>& builtin_group_names();
/// {"order": N, "table": [[...]]} with 0-based entries.
FiniteGroup group_from_table(const nlohmann::json& j, const std::string& source = "table");
/// One generator per line in disjoint-cycle notation.
FiniteGroup group_from_generators(const std::string& text, const std::string& source = "generators");
/// "builtin:NAME", or a path to a .json table or a generator file.
FiniteGroup load_group(const std::string& source);

/// Basis e_[r] indexed by conjugacy classes, eta_ij = delta_{[r_i],[r_j^-1]}/|C(r_i)|,
/// e_[a] e_[b] = sum over sigma_a in [a], sigma_b in [b] of |C(sigma_a sigma_b)|/|G| e_[sigma_a sigma_b].
AlgebraPtr orbifold_frobenius(const FiniteGroup& g);

/// Iteration budget for brute-force loops: TQFT_BUDGET from the environment, else 10^8.
std::uint64_t iteration_budget();

/// |{(a_1..a_g, b_1..b_g, s_1..s_n) : prod [a_i,b_i] = prod s_j, s_j in class_j}| / |G|,
/// by direct enumeration. Throws BudgetError if N^(2g+n) exceeds `budget`.
Rational omega_brute(const FiniteGroup& g, int genus, const std::vector<int>& classes,
                     std::uint64_t budget = iteration_budget());

}  // namespace tqft
