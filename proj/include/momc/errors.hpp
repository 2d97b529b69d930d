#pragma once

#include <stdexcept>
#include <string>

namespace momc {

// Bad arguments, malformed configs, violated operation preconditions.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical check failed (invalid measure, wall hit, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A configured enumeration limit was exceeded.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace momc
