#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace addmatch {

enum class ErrorKind {
  EmptyInput,
  SizeMismatch,
  ScaleExceeded,
  OutOfRange,
  InvalidArgument,
  NotUnmatchable,
  ReducibleModulus,
  NonprimeCharacteristic,
  TrivialExtension,
  ZeroSubspace,
  DimensionMismatch,
  OneInB,
  Syntax,
};

std::string_view to_string(ErrorKind kind);

/// Every operation reports precondition failures through this type; the
/// kind is stable and maps one-to-one onto the names used in reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace addmatch
