#pragma once

#include <stdexcept>
#include <string>

namespace hnnwalk {

// Base class for all library errors. Subclasses name the failure mode so
// callers can catch precisely and the CLI can map them to exit messages.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAGroupTable : Error { using Error::Error; };
struct NotASubgroup : Error { using Error::Error; };
struct NotAnIsomorphism : Error { using Error::Error; };
struct TrivialityViolation : Error { using Error::Error; };
struct UnknownLetter : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct NoRegenerations : Error { using Error::Error; };
struct RegimeError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct ZeroHitEstimate : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct GridError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace hnnwalk
