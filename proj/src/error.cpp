#include "pmatch/error.hpp"

namespace pmatch {

std::string_view to_string(Errc code) {
    switch (code) {
    case Errc::ZeroFamilyType: return "ZeroFamilyType";
    case Errc::AllUnitVectors: return "AllUnitVectors";
    case Errc::NonPositiveIntensity: return "NonPositiveIntensity";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::NotInCone: return "NotInCone";
    case Errc::InCone: return "InCone";
    case Errc::NotOnBoundary: return "NotOnBoundary";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::EmptyConfiguration: return "EmptyConfiguration";
    case Errc::NotMatchable: return "NotMatchable";
    case Errc::LatticeNotFull: return "LatticeNotFull";
    case Errc::WrongClassification: return "WrongClassification";
    case Errc::WrongRule: return "WrongRule";
    case Errc::UnmatchedCorePoint: return "UnmatchedCorePoint";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::TooManyColours: return "TooManyColours";
    case Errc::InconsistencyDetected: return "InconsistencyDetected";
    case Errc::UnsupportedDimension: return "UnsupportedDimension";
    case Errc::RangeOverflow: return "RangeOverflow";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace pmatch
