#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace effidx {

/// Failure categories raised by the library. Every throwing operation raises
/// effidx::Error carrying one of these.
enum class ErrorKind {
    Parse,
    Validation,
    TooShort,
    WrongKind,
    DegenerateSpectrum,
    NonConvergence,
    ZeroOrdinate,
    TooFewFrequencies,
    DegeneratePath,
    ZeroVariance,
    BadTolerance,
    UnknownSymbol,
    DegenerateRegressor,
    EmbeddingFailure,
    BadSpec,
    MissingReport,
    Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::Validation: return "ValidationError";
        case ErrorKind::TooShort: return "TooShort";
        case ErrorKind::WrongKind: return "WrongKind";
        case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::ZeroOrdinate: return "ZeroOrdinate";
        case ErrorKind::TooFewFrequencies: return "TooFewFrequencies";
        case ErrorKind::DegeneratePath: return "DegeneratePath";
        case ErrorKind::ZeroVariance: return "ZeroVariance";
        case ErrorKind::BadTolerance: return "BadTolerance";
        case ErrorKind::UnknownSymbol: return "UnknownSymbol";
        case ErrorKind::DegenerateRegressor: return "DegenerateRegressor";
        case ErrorKind::EmbeddingFailure: return "EmbeddingFailure";
        case ErrorKind::BadSpec: return "BadSpec";
        case ErrorKind::MissingReport: return "MissingReport";
        case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace effidx
