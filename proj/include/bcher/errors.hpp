#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bcher {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct NotASubfield : Error { using Error::Error; };
struct InvalidQMatrix : Error { using Error::Error; };
struct QMatrixMismatch : Error { using Error::Error; };
struct NotCentral : Error { using Error::Error; };
struct BadIndices : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct InvalidParameters : Error { using Error::Error; };
struct DegreeWindowEmpty : Error { using Error::Error; };
struct NotEquivariant : Error { using Error::Error; };
struct NotYetterDrinfeld : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct NotInGroup : Error { using Error::Error; };
struct NotConjugationInvariant : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IOError : Error { using Error::Error; };

// Invalid configuration; `location` is a JSON pointer into the offending document.
struct ConfigError : Error {
  ConfigError(std::string loc, const std::string& what) : Error(loc + ": " + what), location(std::move(loc)) {}
  std::string location;
};

}  // namespace bcher
