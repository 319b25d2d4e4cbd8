#pragma once

#include <stdexcept>
#include <string>

namespace fracpf {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularSymbol : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HistoryLengthMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

struct NonlinearDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedSplit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InsufficientData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonpositiveEnergy : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Carries the offending key so the CLI can report "config error at <field>".
struct ConfigError : std::invalid_argument {
    std::string field;
    ConfigError(std::string field_, const std::string& msg)
        : std::invalid_argument(msg), field(std::move(field_)) {}
};

} // namespace fracpf
