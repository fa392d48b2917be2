#pragma once

#include <stdexcept>
#include <string>

namespace rbolab {

/// Malformed or dimensionally inconsistent input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its stated hypotheses (e.g. a splitting
/// that is not direct, or a classification on a noncompact algebra).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InputError(std::string(what) + ": dimension mismatch (got " +
                     std::to_string(got) + ", expected " +
                     std::to_string(want) + ")");
  }
}

}  // namespace detail
}  // namespace rbolab
