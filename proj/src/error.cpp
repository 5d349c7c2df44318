#include "margulis/error.hpp"

namespace margulis {

const char *to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::NotHyperbolic:
    return "NotHyperbolic";
  case ErrorCode::NegativeTrace:
    return "NegativeTrace";
  case ErrorCode::NotUnimodular:
    return "NotUnimodular";
  case ErrorCode::IndexOutOfRange:
    return "IndexOutOfRange";
  case ErrorCode::ResourceLimit:
    return "ResourceLimit";
  case ErrorCode::DegenerateRepresentation:
    return "DegenerateRepresentation";
  case ErrorCode::InvalidArgument:
    return "InvalidArgument";
  case ErrorCode::ParseError:
    return "ParseError";
  }
  return "Unknown";
}

} // namespace margulis
