#pragma once

#include <stdexcept>
#include <string>

namespace gdesign {

/// Invalid input: bad parameters, inconsistent sizes, violated preconditions.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed the configured memory/dimension budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] inline void fail(const std::string& what) { throw ValidationError(what); }
inline void require(bool cond, const std::string& what) {
  if (!cond) fail(what);
}
}  // namespace detail

}  // namespace gdesign
