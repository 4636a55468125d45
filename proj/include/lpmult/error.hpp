#pragma once

#include <stdexcept>
#include <string>

namespace lpmult {

/// Invalid configuration or precondition violation (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two independent evaluation routes disagree (CLI exit code 3).
class CrossCheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or corrupt extremizer store (CLI exit code 4).
class StoreError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw ConfigError(message);
    }
}

} // namespace lpmult
