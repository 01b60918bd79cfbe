/// @file error.hpp
/// @brief Error type with machine-readable categories, shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace porolub {

/// Category of a failure; mapped to CLI exit codes and JSON error output.
enum class ErrorCategory {
    config,       ///< bad user input / config file
    domain,       ///< argument outside mathematical domain of an operation
    contract,     ///< API precondition violated (caller bug)
    geometry,     ///< inadmissible geometric description
    regime,       ///< scaling-parameter relation violated (e.g. h < eps)
    convergence,  ///< iterative solver failed to reach tolerance
    resource,     ///< estimated memory/size above configured cap
    infeasible,   ///< requested target unreachable (e.g. pressure drop)
    alignment,    ///< grid not block-aligned for unfolding
    io            ///< file system problem
};

const char* to_string(ErrorCategory c);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), category_(cat) {}

    ErrorCategory category() const noexcept { return category_; }

    /// Exit code for the CLI: stable small integers per category.
    int exit_code() const noexcept { return 10 + static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

} // namespace porolub
