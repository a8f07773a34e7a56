#include "carpet/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "carpet/error.hpp"

namespace carpet {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidWord: return "InvalidWord";
    case ErrorKind::InvalidCell: return "InvalidCell";
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::InvalidChain: return "InvalidChain";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::LevelTooDeep: return "LevelTooDeep";
    case ErrorKind::MisalignedLine: return "MisalignedLine";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NotCarpetCell: return "NotCarpetCell";
    case ErrorKind::RegionEmpty: return "RegionEmpty";
    case ErrorKind::WrongRegion: return "WrongRegion";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

std::string_view to_string(ParamRegion region) noexcept {
  switch (region) {
    case ParamRegion::NonMetric: return "NonMetric";
    case ParamRegion::Sigma1Interior: return "Sigma1Interior";
    case ParamRegion::Sigma2Interior: return "Sigma2Interior";
    case ParamRegion::OnI1: return "OnI1";
    case ParamRegion::OnI2: return "OnI2";
    case ParamRegion::OnBothCritical: return "OnBothCritical";
  }
  return "Unknown";
}

bool is_metric(ParamRegion region) noexcept {
  return region != ParamRegion::NonMetric;
}

bool is_critical(ParamRegion region) noexcept {
  return region == ParamRegion::OnI1 || region == ParamRegion::OnI2 ||
         region == ParamRegion::OnBothCritical;
}

namespace {

void require_unit_interval(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) {
    std::ostringstream msg;
    msg << "weight parameters must lie in (0,1): a=" << a << " b=" << b;
    throw Error(ErrorKind::OutOfRange, msg.str());
  }
}

}  // namespace

ParamRegion classify_params(double a, double b) {
  require_unit_interval(a, b);
  const double corner_sum = 2.0 * a + b;  // bottom chain growth factor
  const double edge_sum = a + 2.0 * b;    // diagonal chain growth factor
  if (corner_sum < 1.0 || edge_sum < 1.0) return ParamRegion::NonMetric;

  const bool on_i1 = corner_sum == 1.0 && a <= b;
  const bool on_i2 = edge_sum == 1.0 && b <= a;
  if (on_i1 && on_i2) return ParamRegion::OnBothCritical;
  if (on_i1) return ParamRegion::OnI1;
  if (on_i2) return ParamRegion::OnI2;
  return a <= b ? ParamRegion::Sigma1Interior : ParamRegion::Sigma2Interior;
}

WeightParams::WeightParams(double a, double b) : a_(a), b_(b) {
  require_unit_interval(a, b);
}

WeightParams WeightParams::snapped_i1(double a) {
  double b = 1.0 - 2.0 * a;
  if (2.0 * a + b != 1.0) {
    // 1 - b is exact for b in [1/2, 1], and halving is exact.
    a = (1.0 - b) / 2.0;
  }
  return WeightParams(a, b);
}

WeightParams WeightParams::snapped_i2(double b) {
  double a = 1.0 - 2.0 * b;
  if (a + 2.0 * b != 1.0) b = (1.0 - a) / 2.0;
  return WeightParams(a, b);
}

double WeightParams::c() const noexcept { return std::max(a_ / b_, b_ / a_); }

double WeightParams::weight(int corner_digits, int edge_digits) const noexcept {
  if (corner_digits + edge_digits > 64) {
    return std::exp(corner_digits * std::log(a_) + edge_digits * std::log(b_));
  }
  return std::pow(a_, corner_digits) * std::pow(b_, edge_digits);
}

}  // namespace carpet
