#pragma once

#include <stdexcept>
#include <string>

namespace faabe {

// Error taxonomy mirrors the CLI exit codes: configuration problems exit 1,
// data problems exit 2, anything else exits 3.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad flag values, malformed config files, out-of-range parameters.
class config_error : public error {
public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Unreadable/malformed dataset files, schema violations, bad effort values.
class data_error : public error {
public:
    explicit data_error(const std::string& msg) : error(msg) {}
};

// Broken internal invariants; anything a user cannot fix from the outside.
class internal_error : public error {
public:
    explicit internal_error(const std::string& msg) : error(msg) {}
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 1;
inline constexpr int data = 2;
inline constexpr int internal = 3;
}  // namespace exit_code

}  // namespace faabe
