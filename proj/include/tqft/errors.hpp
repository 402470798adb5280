#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tqft {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero polynomial") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// A structural axiom failed while building an algebra, group or graph.
/// `axiom` names the failure (e.g. "non-associative product"); `witness`
/// holds the basis/element indices exhibiting it.
class AxiomError : public Error {
 public:
  AxiomError(std::string axiom, std::vector<int> witness);

  const std::string& axiom() const { return axiom_; }
  const std::vector<int>& witness() const { return witness_; }

 private:
  std::string axiom_;
  std::vector<int> witness_;
};

/// A computation would exceed its configured iteration budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace tqft
