#pragma once

#include <stdexcept>
#include <string>

namespace rfem {

enum class ErrorKind {
  Configuration,
  Parse,
  Geometry,
  Material,
  UnsupportedElement,
  Solver,
  Domain,
  OracleNonconvergence,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` carries the category
/// that the C API maps onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rfem
