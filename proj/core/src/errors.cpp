#include "shifteq/errors.hpp"

namespace shifteq {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kDivisionByZero: return "DivisionByZero";
    case Errc::kSetTooLarge: return "SetTooLarge";
    case Errc::kCharacteristicTooSmall: return "CharacteristicTooSmall";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kDuplicateNodes: return "DuplicateNodes";
    case Errc::kParseError: return "ParseError";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kFieldTooSmall: return "FieldTooSmall";
    case Errc::kCannotMeetEpsilon: return "CannotMeetEpsilon";
    case Errc::kNotFound: return "NotFound";
    case Errc::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

ParseError::ParseError(std::size_t position, const std::string& what)
    : Error(Errc::kParseError, what + " (at offset " + std::to_string(position) + ")"),
      position_(position) {}

}  // namespace shifteq
