#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tempora {

enum class ErrorKind {
  Range,
  Completeness,
  DegenerateInput,
  Orthonormality,
  KindMismatch,
  Sampling,
  Config,
  ShapeMismatch,
  Parse,
  Validation,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every failure the library reports; callers
/// switch on kind() where they need to distinguish.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tempora
