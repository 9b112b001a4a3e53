#pragma once

#include <stdexcept>
#include <string>

namespace tscig {

enum class ErrorKind {
  InvalidLag,
  Data,
  Structural,
  Parameter,
  Domain,
  Numerical,
  Generation,
  Config,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` says which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tscig
