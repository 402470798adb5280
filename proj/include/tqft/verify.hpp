#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tqft/frobenius.hpp"

namespace tqft::verify {

enum class Level { Quick, Full };
Level parse_level(const std::string& name);  // "quick" or "full"

/// Counts checks and keeps the first few failure messages.
class Checker {
 public:
  void check(bool ok, const std::function<std::string()>& message);
  void fail(const std::string& message);
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

struct Suite {
  std::string name;
  std::string description;
  double budget_seconds;
  std::function<void(Level, Checker&)> body;
};

struct SuiteResult {
  std::string name;
  std::string description;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;  // first failure, or empty
};

/// Every suite in fixed order. The first nine are the acceptance criteria.
const std::vector<Suite>& suites();
const Suite& find_suite(const std::string& name);

/// A suite passes when every check holds, nothing throws and the full level
/// finishes within the budget.
SuiteResult run_suite(const Suite& suite, Level level);
std::vector<SuiteResult> run_suites(Level level, const std::vector<std::string>& only = {});

/// Semisimple K^s with random counit weights, written in a random basis.
AlgebraPtr random_semisimple(std::mt19937& rng, int s);

struct NamedAlgebra {
  std::string name;
  AlgebraPtr algebra;
};
/// K, Z2, Z3, S3, K[x]/x^2, K[x]/x^3.
std::vector<NamedAlgebra> small_algebras();
/// Every builtin group algebra, truncated polynomial algebras and a few random semisimple ones.
std::vector<NamedAlgebra> built_algebras();

}  // namespace tqft::verify
