#pragma once

#include <stdexcept>
#include <string>

namespace vigil {

// Error taxonomy shared across the suite. The CLI maps these to exit codes:
// ConfigError -> 2, FormatError -> 3, ProtocolViolation -> 4, anything else -> 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad scenario/schedule/config input (invalid-scenario errors included).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Argument outside an operation's documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// A window or series too short for the requested analysis.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// Malformed serialized input (bundle files, telemetry lines, timeline CSV).
class FormatError : public Error {
public:
    using Error::Error;
};

// Structurally sound telemetry line whose checksum does not match.
// Kept distinct from FormatError so receivers can count corruption separately.
class IntegrityError : public Error {
public:
    using Error::Error;
};

// StatusMessage fields that cannot be encoded (code outside its alphabet).
class EncodeError : public Error {
public:
    using Error::Error;
};

// Illegal escalation phase/input combination; indicates a harness bug.
class ProtocolViolation : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace vigil
