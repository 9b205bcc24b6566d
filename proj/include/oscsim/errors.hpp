#pragma once

#include <stdexcept>
#include <string>

namespace oscsim {

// Inputs that violate a documented precondition map to std::invalid_argument.
// The two error classes below carry distinct process exit codes in the CLI.

// A state with no energy (or no conserved-norm content) cannot be encoded.
class degenerate_state_error : public std::runtime_error {
public:
    explicit degenerate_state_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Problem size exceeds the dense-solver ceiling configured for this build.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace oscsim
