#pragma once

#include <stdexcept>
#include <string>

namespace twsched {

// Bad parameters: zero places, mismatched vector lengths, malformed flags.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Declared relations contradict each other (or the window geometry).
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The grid needs more rows than the system has streams.
class UnsuitableSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No robot has enough streams for a simultaneity class.
class IncompatibleSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exhaustive-search instance above the enumeration cap.
class OracleCapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace twsched
