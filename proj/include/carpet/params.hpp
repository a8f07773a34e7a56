#pragma once

#include <string_view>

namespace carpet {

/// Where (a, b) sits relative to the metric region
///   sigma = { 2a + b >= 1 and a + 2b >= 1 }.
/// Sigma1Interior / Sigma2Interior are the b >= a and a > b halves off the
/// critical lines I1 = { 2a + b = 1, a <= b } and I2 = { a + 2b = 1, b <= a }.
enum class ParamRegion {
  NonMetric,
  Sigma1Interior,
  Sigma2Interior,
  OnI1,
  OnI2,
  OnBothCritical,
};

std::string_view to_string(ParamRegion region) noexcept;

/// True for every region except NonMetric.
bool is_metric(ParamRegion region) noexcept;

/// True on I1, I2 or their intersection.
bool is_critical(ParamRegion region) noexcept;

/// Classifies (a, b). The sums 2a + b and a + 2b are evaluated in plain
/// double arithmetic and compared against 1 with no tolerance; callers that
/// want a point on a critical line must snap their input (see
/// WeightParams::snapped_i1 / snapped_i2).
///
/// Throws Error(OutOfRange) unless 0 < a < 1 and 0 < b < 1.
ParamRegion classify_params(double a, double b);

/// The pair (a, b) of the self-similar weight function: digits 1, 3, 5, 7
/// (corner cells) carry factor a, digits 2, 4, 6, 8 (edge cells) carry b.
class WeightParams {
 public:
  WeightParams(double a, double b);

  /// (a, 1 - 2a), nudged so that 2a + b == 1 holds exactly in doubles.
  static WeightParams snapped_i1(double a);
  /// (1 - 2b, b), nudged so that a + 2b == 1 holds exactly in doubles.
  static WeightParams snapped_i2(double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  /// max(a/b, b/a): the weight ratio between edge-adjacent cells of one level.
  double c() const noexcept;

  ParamRegion region() const { return classify_params(a_, b_); }

  /// a^corner_digits * b^edge_digits. Words longer than 64 digits are
  /// evaluated in log space.
  double weight(int corner_digits, int edge_digits) const noexcept;

  bool operator==(const WeightParams&) const = default;

 private:
  double a_;
  double b_;
};

}  // namespace carpet
