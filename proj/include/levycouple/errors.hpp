#pragma once

#include <stdexcept>
#include <string>

namespace lc {

enum class ErrorKind {
    Config,
    Domain,
    Unsupported,
    InfiniteMoment,
    AssumptionViolation,
    InvariantViolation,
    Degenerate,
    InsufficientData,
    Numerical,
    Resource,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Quadrature or root-finding failure; carries the tolerance that was reached.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double achieved)
        : Error(ErrorKind::Numerical, what + " (achieved tolerance " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Unsupported: return "unsupported-regime";
    case ErrorKind::InfiniteMoment: return "infinite-moment";
    case ErrorKind::AssumptionViolation: return "assumption-violation";
    case ErrorKind::InvariantViolation: return "invariant-violation";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Resource: return "resource";
    }
    return "unknown";
}

// CLI exit status for an error kind.
inline int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::Numerical:
    case ErrorKind::Resource:
        return 3;
    default:
        return 2;
    }
}

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace lc
