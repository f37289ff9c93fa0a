#include "addmatch/error.hpp"

namespace addmatch {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::SizeMismatch: return "size-mismatch";
    case ErrorKind::ScaleExceeded: return "scale-exceeded";
    case ErrorKind::OutOfRange: return "element-out-of-range";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotUnmatchable: return "not-unmatchable";
    case ErrorKind::ReducibleModulus: return "reducible-modulus";
    case ErrorKind::NonprimeCharacteristic: return "nonprime-characteristic";
    case ErrorKind::TrivialExtension: return "trivial-extension";
    case ErrorKind::ZeroSubspace: return "zero-subspace";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::OneInB: return "one-in-B";
    case ErrorKind::Syntax: return "syntax";
  }
  return "unknown";
}

}  // namespace addmatch
