#ifndef SHIFTEQ_ERRORS_HPP
#define SHIFTEQ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shifteq {

enum class Errc {
  kDivisionByZero,
  kSetTooLarge,
  kCharacteristicTooSmall,
  kDimensionMismatch,
  kDuplicateNodes,
  kParseError,
  kTooLarge,
  kFieldTooSmall,
  kCannotMeetEpsilon,
  kNotFound,
  kInvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by the expression, field-element and instance parsers.
/// `position()` is a zero-based byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace shifteq

#endif  // SHIFTEQ_ERRORS_HPP
