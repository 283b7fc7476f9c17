#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qho {

/// A multi-index, point or term does not match the oscillator dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                              ", got " + std::to_string(actual)) {}
};

/// An enumeration or grid would exceed its resource budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t partial_count, std::uint64_t budget)
      : std::runtime_error(what + " (partial count " + std::to_string(partial_count) +
                           ", budget " + std::to_string(budget) + ")"),
        partial_count_(partial_count),
        budget_(budget) {}

  std::uint64_t partial_count() const { return partial_count_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t partial_count_;
  std::uint64_t budget_;
};

/// Every sampled value of a combination vanished; the field carries no sign information.
class DegenerateField : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lower bound that diverges (the outermost annulus in the Faber-Krahn volume bound).
class UnboundedBound : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace qho
