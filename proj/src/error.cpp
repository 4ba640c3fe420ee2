#include "gds/error.hpp"

namespace gds {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveProfile: return "NonPositiveProfile";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::NotInPsi: return "NotInPsi";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::OutOfChart: return "OutOfChart";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotOnSurface: return "NotOnSurface";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace gds
