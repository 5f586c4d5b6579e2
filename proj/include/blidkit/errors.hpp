#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace blidkit {

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable tag used in CLI error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define BLIDKIT_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(#Name, what) {}        \
  }

BLIDKIT_DEFINE_ERROR(InvalidRadii);
BLIDKIT_DEFINE_ERROR(OrderTooHigh);
BLIDKIT_DEFINE_ERROR(GridMismatch);
BLIDKIT_DEFINE_ERROR(NotInImage);
BLIDKIT_DEFINE_ERROR(InvalidProjector);
BLIDKIT_DEFINE_ERROR(PoleOnGrid);
BLIDKIT_DEFINE_ERROR(DimensionMismatch);
BLIDKIT_DEFINE_ERROR(DegreeTooHigh);
BLIDKIT_DEFINE_ERROR(SupportExceedsValidity);
BLIDKIT_DEFINE_ERROR(OutsideValidity);
BLIDKIT_DEFINE_ERROR(NotHyperbolic);
BLIDKIT_DEFINE_ERROR(Singular);
BLIDKIT_DEFINE_ERROR(NotContractive);
BLIDKIT_DEFINE_ERROR(NotExpansive);
BLIDKIT_DEFINE_ERROR(NotFlat);
BLIDKIT_DEFINE_ERROR(SeriesDiverged);
BLIDKIT_DEFINE_ERROR(BoundViolation);
BLIDKIT_DEFINE_ERROR(LocalResidualTooLarge);
BLIDKIT_DEFINE_ERROR(ParseError);

#undef BLIDKIT_DEFINE_ERROR

/// (L_n - id) is numerically singular. Carries the resonant multi-indices
/// closest to the offending degree.
class SingularResonance : public Error {
 public:
  SingularResonance(const std::string& what,
                    std::vector<std::vector<int>> indices,
                    std::vector<double> residuals)
      : Error("SingularResonance", what),
        indices_(std::move(indices)),
        residuals_(std::move(residuals)) {}

  const std::vector<std::vector<int>>& indices() const noexcept {
    return indices_;
  }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<std::vector<int>> indices_;
  std::vector<double> residuals_;
};

}  // namespace blidkit
