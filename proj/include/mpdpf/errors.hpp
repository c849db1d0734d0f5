#pragma once

#include <stdexcept>
#include <string>

namespace mpdpf {

// Invalid arguments: out-of-range inputs, mismatched moduli, malformed sets.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string &what) : std::invalid_argument(what) {}
};

// m >= p/2 passed to a scheme that needs an honest majority.
class HonestMajorityError : public ParameterError {
public:
    explicit HonestMajorityError(const std::string &what) : ParameterError(what) {}
};

// Truncated, corrupted or inconsistent serialized data.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string &what) : std::runtime_error(what) {}
};

// Parameters that would make an exponential baseline blow up.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string &what) : std::runtime_error(what) {}
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

// Should never happen in practice (e.g. a rejection sampler exceeding its cap).
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace mpdpf
