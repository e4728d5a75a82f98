#ifndef SFCLUST_ERRORS_HPP
#define SFCLUST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sfclust {

// Input that violates an operation's preconditions (bad parameters,
// malformed config).  Maps to CLI exit code 1.
class InvalidInput : public std::invalid_argument {
public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A computation would exceed a configured memory or time budget.
// Maps to CLI exit code 2.
class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A certified comparison could not be resolved at the maximum allowed
// precision.
class PrecisionExhausted : public std::runtime_error {
public:
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed.  Never expected; maps to CLI exit code 3.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace sfclust

#endif
