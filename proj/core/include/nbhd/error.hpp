#ifndef NBHD_ERROR_HPP
#define NBHD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nbhd {

/// Malformed input: syntax errors, unknown state names, sort clashes,
/// mismatched carriers. Maps to exit code 2 in the CLI.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A checked property failed where the operation requires it to hold
/// (quotient of a non-congruence, lifting a non-bounded map, ...).
/// Carries a short machine-readable tag next to the human message.
/// Maps to exit code 1 in the CLI.
class PropertyError : public std::runtime_error {
public:
    PropertyError(std::string tag, const std::string& what)
        : std::runtime_error(what), tag_(std::move(tag)) {}
    const std::string& tag() const { return tag_; }

private:
    std::string tag_;
};

/// A configured resource cap was exceeded. Never a wrong verdict: callers
/// either enlarge the cap or treat the instance as out of scope.
/// Maps to exit code 3 in the CLI.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nbhd

#endif
