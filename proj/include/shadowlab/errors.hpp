#ifndef SHADOWLAB_ERRORS_HPP
#define SHADOWLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shadowlab {

/// Error categories surfaced by the library. Every throw site picks one so
/// callers (CLI, bindings) can map failures to verdicts without string parsing.
enum class ErrorKind {
    chart_mismatch,
    integration_failure,
    insufficient_data,
    domain_error,
    escape,
    junction,
    truncation,
    config,
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::chart_mismatch: return "chart_mismatch";
        case ErrorKind::integration_failure: return "integration_failure";
        case ErrorKind::insufficient_data: return "insufficient_data";
        case ErrorKind::domain_error: return "domain_error";
        case ErrorKind::escape: return "escape";
        case ErrorKind::junction: return "junction";
        case ErrorKind::truncation: return "truncation";
        case ErrorKind::config: return "config";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

}  // namespace shadowlab

#endif
