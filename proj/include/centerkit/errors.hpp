#pragma once

#include <stdexcept>
#include <string>

namespace centerkit {

// Every failure the library raises derives from Error so callers can catch
// the family at once; the concrete type names the failed precondition.
struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error { using Error::Error; };
struct NotARotation : Error { using Error::Error; };
struct IrrationalFrequency : Error { using Error::Error; };
struct Inconclusive : Error { using Error::Error; };
struct NotIsolated : Error { using Error::Error; };
struct BranchFailure : Error { using Error::Error; };
struct PreconditionViolation : Error { using Error::Error; };
struct SingularPoint : Error { using Error::Error; };

// Numeric failures (exit code 2 in the CLI).
struct NumericError : Error { using Error::Error; };
struct StepUnderflow : NumericError { using NumericError::NumericError; };
struct NoReturn : NumericError { using NumericError::NumericError; };

// Input failures (exit code 1 in the CLI).
struct InputError : Error { using Error::Error; };

struct ParseError : InputError
{
  ParseError(std::string const &where, std::string const &what)
    : InputError(where + ": " + what)
  {
  }
};

struct ValidationError : InputError
{
  ValidationError(std::string const &where, std::string const &what)
    : InputError(where + ": " + what)
  {
  }
};

} // namespace centerkit
