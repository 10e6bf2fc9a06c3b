#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cobra {

enum class ErrorKind {
    InvalidParams,
    GenerationFailed,
    TooLarge,
    NoConvergence,
    Disconnected,
    ParseError,
    RegularityRequired,
    SupportMismatch,
    DegenerateSigma,
    BiasViolation,
    Singular,
    Unreachable,
    Reducible,
    InsufficientPoints,
    AllTimedOut,
    UnknownExperiment,
    ConfigError,
    IoError,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
    switch (k) {
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::GenerationFailed: return "GenerationFailed";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::RegularityRequired: return "RegularityRequired";
        case ErrorKind::SupportMismatch: return "SupportMismatch";
        case ErrorKind::DegenerateSigma: return "DegenerateSigma";
        case ErrorKind::BiasViolation: return "BiasViolation";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::Unreachable: return "Unreachable";
        case ErrorKind::Reducible: return "Reducible";
        case ErrorKind::InsufficientPoints: return "InsufficientPoints";
        case ErrorKind::AllTimedOut: return "AllTimedOut";
        case ErrorKind::UnknownExperiment: return "UnknownExperiment";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace cobra
