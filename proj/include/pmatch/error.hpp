#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmatch {

enum class Errc {
    ZeroFamilyType,
    AllUnitVectors,
    NonPositiveIntensity,
    DimensionMismatch,
    EmptyGraph,
    NotInCone,
    InCone,
    NotOnBoundary,
    RankDeficient,
    EmptyConfiguration,
    NotMatchable,
    LatticeNotFull,
    WrongClassification,
    WrongRule,
    UnmatchedCorePoint,
    InsufficientData,
    TooManyColours,
    InconsistencyDetected,
    UnsupportedDimension,
    RangeOverflow,
    ParseError,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what);
    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& detail);

}  // namespace pmatch
