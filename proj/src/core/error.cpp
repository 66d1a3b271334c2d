#include "rfem/error.hpp"

namespace rfem {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Configuration: return "configuration error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Geometry: return "geometry error";
    case ErrorKind::Material: return "material error";
    case ErrorKind::UnsupportedElement: return "unsupported element";
    case ErrorKind::Solver: return "solver error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::OracleNonconvergence: return "oracle did not converge";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

}  // namespace rfem
