#pragma once

#include <array>
#include <utility>

#include "carpet/search.hpp"

namespace carpet {

inline constexpr double kRhoDefault = 1.25148;
inline constexpr double kRhoLower = 1.25147;
inline constexpr double kRhoUpper = 1.25149;

/// Self-similar measure with mass mu1 on each corner cell and mu2 on each
/// edge cell; mu1 + mu2 = 1/4.
class MeasureParams {
 public:
  /// Throws Error(BadWeights) unless both are positive and sum to 1/4
  /// within 1e-12.
  MeasureParams(double mu1, double mu2);
  /// mu2 = 1/4 - mu1.
  static MeasureParams from_mu1(double mu1);

  double mu1() const noexcept { return mu1_; }
  double mu2() const noexcept { return mu2_; }

 private:
  double mu1_;
  double mu2_;
};

enum class DoublingClass { RestrictedSymmetric, KigamiVD, NotVD };

std::string_view to_string(DoublingClass c) noexcept;

/// Weights mu_1..mu_8 (index 0 = digit 1). Equalities are tested to 1e-12.
/// Throws Error(BadWeights) unless the weights are positive and sum to 1.
DoublingClass check_volume_doubling(const std::array<double, 8>& mu);

/// beta > 0 with (max mu / rho)^(1/beta) + 2 (min mu / rho)^(1/beta) = 1,
/// by bisection on s = 1 / beta.
/// Throws Error(Inadmissible) unless mu_i * rho < 1 and mu_i / rho < 1 for
/// both weights, and Error(Unbounded) when beta would exceed beta_cap.
double solve_beta(const MeasureParams& m, double rho, double beta_cap = 1e6);

/// Left side of the beta equation minus 1.
double beta_residual(const MeasureParams& m, double rho, double beta);

/// (a, b) = ((mu1 / rho)^(1/beta), (mu2 / rho)^(1/beta)). The raw pair sits
/// on a critical line up to rounding; the result is snapped onto it: (1/3,
/// 1/3) when mu1 == mu2, a + 2b = 1 when mu1 > mu2, 2a + b = 1 otherwise.
WeightParams derive_ab(const MeasureParams& m, double rho, double beta);

/// Product of mu over the digits of w.
double cell_measure(const MeasureParams& m, const Word& w);
double cell_measure(const MeasureParams& m, const CellId& c);

/// Measure of the metric ball, summed over its maximal cells.
double volume(const WeightParams& params, const MeasureParams& m, const TriadicPoint& x,
              double r, int level, LevelMode mode, const SearchOptions& options = {});

/// log(rho) / log 3. Throws Error(OutOfRange) unless rho > 1.
double resistance_exponent(double rho);

struct HeatKernelParams {
  double rho = kRhoDefault;
  double beta = 0.0;
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
};

/// beta, (a, b) and gamma for one measure and rho.
HeatKernelParams heat_kernel_params(const MeasureParams& m, double rho = kRhoDefault);

/// (1 / vol) * exp(-c * (d / t^(1/beta))^(beta / (beta - 1))) for
/// c = c_lower and c = c_upper. Throws Error(BadExponent) if beta <= 1 and
/// Error(OutOfRange) unless t > 0, vol > 0 and d >= 0.
std::pair<double, double> hk_profile(const HeatKernelParams& hk, double d, double vol, double t,
                                     double c_lower, double c_upper);

}  // namespace carpet
