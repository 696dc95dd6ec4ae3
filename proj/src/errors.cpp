#include "selfspec/errors.h"

namespace selfspec {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ShapeMismatch:               return "ShapeMismatch";
    case ErrorKind::SumNotOne:                   return "SumNotOne";
    case ErrorKind::NonPositiveLength:           return "NonPositiveLength";
    case ErrorKind::NotZeroOrder:                return "NotZeroOrder";
    case ErrorKind::NotContractive:              return "NotContractive";
    case ErrorKind::DepthOverflow:               return "DepthOverflow";
    case ErrorKind::EmptySpace:                  return "EmptySpace";
    case ErrorKind::KnotCollision:               return "KnotCollision";
    case ErrorKind::DerivativeOrderTooHigh:      return "DerivativeOrderTooHigh";
    case ErrorKind::AtomOffKnot:                 return "AtomOffKnot";
    case ErrorKind::NotPositiveDefinite:         return "NotPositiveDefinite";
    case ErrorKind::SingularShift:               return "SingularShift";
    case ErrorKind::IndexBeyondSpectrum:         return "IndexBeyondSpectrum";
    case ErrorKind::DimensionTooLarge:           return "DimensionTooLarge";
    case ErrorKind::IllConditioned:              return "IllConditioned";
    case ErrorKind::SingularGram:                return "SingularGram";
    case ErrorKind::RankMismatch:                return "RankMismatch";
    case ErrorKind::InsufficientPositiveSpectrum: return "InsufficientPositiveSpectrum";
    case ErrorKind::InsufficientData:            return "InsufficientData";
    case ErrorKind::DegenerateRegime:            return "DegenerateRegime";
    case ErrorKind::ConfigError:                 return "ConfigError";
    }
    return "UnknownError";
}

} // namespace selfspec
