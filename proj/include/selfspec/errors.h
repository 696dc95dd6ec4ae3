#ifndef SELFSPEC_ERRORS_H
#define SELFSPEC_ERRORS_H

#include <stdexcept>
#include <string>

namespace selfspec {

enum class ErrorKind {
    // parameter validation
    ShapeMismatch,
    SumNotOne,
    NonPositiveLength,
    NotZeroOrder,
    NotContractive,
    // refinement
    DepthOverflow,
    // spline space
    EmptySpace,
    KnotCollision,
    DerivativeOrderTooHigh,
    AtomOffKnot,
    // pencil
    NotPositiveDefinite,
    SingularShift,
    IndexBeyondSpectrum,
    DimensionTooLarge,
    // oracle
    IllConditioned,
    SingularGram,
    RankMismatch,
    InsufficientPositiveSpectrum,
    // asymptotics
    InsufficientData,
    DegenerateRegime,
    // configuration / CLI
    ConfigError,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    // Achievable counts, attached by IndexBeyondSpectrum.
    int available_positive = -1;
    int available_negative = -1;

private:
    ErrorKind kind_;
};

} // namespace selfspec

#endif
