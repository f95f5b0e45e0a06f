#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treenet {

/// Malformed input text. Carries the 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class ViolationKind {
    None,
    NoReservoir,
    NoNodes,
    DuplicateId,
    UnknownNode,
    SelfLoop,
    BadValue,
    ReservoirInflow,
    Cycle,
    MultipleIncoming,
    MultipleRoots,
    Disconnected,
};

inline const char* to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::None: return "none";
    case ViolationKind::NoReservoir: return "no reservoir";
    case ViolationKind::NoNodes: return "no demand nodes";
    case ViolationKind::DuplicateId: return "duplicate id";
    case ViolationKind::UnknownNode: return "unknown node";
    case ViolationKind::SelfLoop: return "self loop";
    case ViolationKind::BadValue: return "bad value";
    case ViolationKind::ReservoirInflow: return "pipe into reservoir";
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::MultipleIncoming: return "multiple incoming pipes";
    case ViolationKind::MultipleRoots: return "multiple roots";
    case ViolationKind::Disconnected: return "disconnected node";
    }
    return "unknown";
}

/// The input is well-formed but does not describe a rooted tree.
class ValidationError : public std::runtime_error {
public:
    ValidationError(ViolationKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ViolationKind kind() const noexcept { return kind_; }

private:
    ViolationKind kind_;
};

/// Vector/matrix operands of incompatible sizes.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument outside the operation's domain (nonpositive diameter, extrapolation, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exhaustive search refused because the design space exceeds the budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace treenet
