#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bicoh {

enum class ErrorCode {
  ComposeNonzero,
  ShapeMismatch,
  BadModulus,
  NotBihomogeneous,
  ZeroPoly,
  RingMismatch,
  ParseError,
  UnknownVariable,
  ExponentOverflow,
  ZeroModule,
  BadTheory,
  NoStabilize,
  NotCM,
  NotGenCM,
  BadM,
  BadProfile,
  UnsupportedIndex,
  FormatError,
  DegreeMismatch,
  Internal,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ComposeNonzero: return "COMPOSE_NONZERO";
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::BadModulus: return "BAD_MODULUS";
    case ErrorCode::NotBihomogeneous: return "NOT_BIHOMOGENEOUS";
    case ErrorCode::ZeroPoly: return "ZERO_POLY";
    case ErrorCode::RingMismatch: return "RING_MISMATCH";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::UnknownVariable: return "UNKNOWN_VARIABLE";
    case ErrorCode::ExponentOverflow: return "EXPONENT_OVERFLOW";
    case ErrorCode::ZeroModule: return "ZERO_MODULE";
    case ErrorCode::BadTheory: return "BAD_THEORY";
    case ErrorCode::NoStabilize: return "NO_STABILIZE";
    case ErrorCode::NotCM: return "NOT_CM";
    case ErrorCode::NotGenCM: return "NOT_GENCM";
    case ErrorCode::BadM: return "BAD_M";
    case ErrorCode::BadProfile: return "BAD_PROFILE";
    case ErrorCode::UnsupportedIndex: return "UNSUPPORTED_INDEX";
    case ErrorCode::FormatError: return "FORMAT_ERROR";
    case ErrorCode::DegreeMismatch: return "DEGREE_MISMATCH";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures also record the byte offset into the input text.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position, const std::string& what)
      : Error(code, what + " (at position " + std::to_string(position) + ")"), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace bicoh
