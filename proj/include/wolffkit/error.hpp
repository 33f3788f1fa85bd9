#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wolffkit {

enum class ErrorKind {
  InvalidParams,
  DegenerateProduct,
  NonpositiveDenominator,
  NonIntegrableAtOrigin,
  DivergentTail,
  DivergentAtCenter,
  QuadratureFailure,
  IllConditioned,
  ModeUnavailable,
  NotAdmissible,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wolffkit
