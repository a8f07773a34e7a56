#include "carpet/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "carpet/error.hpp"

namespace carpet {

MeasureParams::MeasureParams(double mu1, double mu2) : mu1_(mu1), mu2_(mu2) {
  if (!(mu1 > 0.0 && mu2 > 0.0) || std::abs(mu1 + mu2 - 0.25) > 1e-12) {
    throw Error(ErrorKind::BadWeights, "need mu1, mu2 > 0 with mu1 + mu2 = 1/4");
  }
}

MeasureParams MeasureParams::from_mu1(double mu1) { return MeasureParams(mu1, 0.25 - mu1); }

std::string_view to_string(DoublingClass c) noexcept {
  switch (c) {
    case DoublingClass::RestrictedSymmetric: return "RestrictedSymmetric";
    case DoublingClass::KigamiVD: return "KigamiVD";
    case DoublingClass::NotVD: return "NotVD";
  }
  return "?";
}

DoublingClass check_volume_doubling(const std::array<double, 8>& mu) {
  double sum = 0.0;
  for (double x : mu) {
    if (!(x > 0.0)) throw Error(ErrorKind::BadWeights, "measure weights must be positive");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorKind::BadWeights, "measure weights must sum to 1");
  const auto eq = [](double x, double y) { return std::abs(x - y) <= 1e-12; };
  const bool corners = eq(mu[0], mu[2]) && eq(mu[0], mu[4]) && eq(mu[0], mu[6]);
  if (!corners || !eq(mu[1], mu[5]) || !eq(mu[3], mu[7])) return DoublingClass::NotVD;
  return eq(mu[1], mu[3]) ? DoublingClass::RestrictedSymmetric : DoublingClass::KigamiVD;
}

namespace {

double beta_lhs(double hi, double lo, double s) { return std::pow(hi, s) + 2.0 * std::pow(lo, s); }

}  // namespace

double beta_residual(const MeasureParams& m, double rho, double beta) {
  const double hi = std::max(m.mu1(), m.mu2()) / rho, lo = std::min(m.mu1(), m.mu2()) / rho;
  return beta_lhs(hi, lo, 1.0 / beta) - 1.0;
}

double solve_beta(const MeasureParams& m, double rho, double beta_cap) {
  for (double mu : {m.mu1(), m.mu2()}) {
    if (!(rho > 0.0) || !(mu * rho < 1.0) || !(mu / rho < 1.0)) {
      throw Error(ErrorKind::Inadmissible, "time change needs mu * rho < 1 and mu / rho < 1");
    }
  }
  const double hi = std::max(m.mu1(), m.mu2()) / rho, lo = std::min(m.mu1(), m.mu2()) / rho;
  // lhs(s) falls strictly from 3 at s = 0 towards 0.
  double s_lo = 1.0 / beta_cap;
  if (beta_lhs(hi, lo, s_lo) <= 1.0) {
    throw Error(ErrorKind::Unbounded, "beta exceeds the cap " + std::to_string(beta_cap));
  }
  double s_hi = 1.0;
  while (beta_lhs(hi, lo, s_hi) > 1.0) s_hi *= 2.0;
  for (;;) {
    const double mid = 0.5 * (s_lo + s_hi);
    if (mid <= s_lo || mid >= s_hi) break;
    (beta_lhs(hi, lo, mid) > 1.0 ? s_lo : s_hi) = mid;
  }
  const double s = std::abs(beta_lhs(hi, lo, s_lo) - 1.0) <= std::abs(beta_lhs(hi, lo, s_hi) - 1.0) ? s_lo : s_hi;
  return 1.0 / s;
}

WeightParams derive_ab(const MeasureParams& m, double rho, double beta) {
  const double a = std::pow(m.mu1() / rho, 1.0 / beta);
  const double b = std::pow(m.mu2() / rho, 1.0 / beta);
  if (m.mu1() == m.mu2()) return WeightParams(1.0 / 3.0, 1.0 / 3.0);
  if (m.mu1() > m.mu2()) return WeightParams::snapped_i2(b);
  return WeightParams::snapped_i1(a);
}

double cell_measure(const MeasureParams& m, const Word& w) {
  return std::pow(m.mu1(), w.corner_count()) * std::pow(m.mu2(), w.edge_count());
}

double cell_measure(const MeasureParams& m, const CellId& c) {
  const int edge = c.edge_digits();
  return std::pow(m.mu1(), c.level - edge) * std::pow(m.mu2(), edge);
}

double volume(const WeightParams& params, const MeasureParams& m, const TriadicPoint& x, double r,
              int level, LevelMode mode, const SearchOptions& options) {
  const std::vector<BallCell> ball = metric_ball(params, x, r, level, mode, options);
  std::set<CellId> cells;
  for (const BallCell& c : ball) cells.insert(c.cell);
  double total = 0.0;
  for (const CellId& c : cells) {
    bool nested = false;
    for (int l = 0; l < c.level && !nested; ++l) nested = cells.count(c.ancestor(l)) > 0;
    if (!nested) total += cell_measure(m, c);
  }
  return total;
}

double resistance_exponent(double rho) {
  if (!(rho > 1.0)) throw Error(ErrorKind::OutOfRange, "rho must exceed 1");
  return std::log(rho) / std::log(3.0);
}

HeatKernelParams heat_kernel_params(const MeasureParams& m, double rho) {
  HeatKernelParams hk;
  hk.rho = rho;
  hk.beta = solve_beta(m, rho);
  const WeightParams ab = derive_ab(m, rho, hk.beta);
  hk.a = ab.a();
  hk.b = ab.b();
  hk.gamma = resistance_exponent(rho);
  return hk;
}

std::pair<double, double> hk_profile(const HeatKernelParams& hk, double d, double vol, double t,
                                     double c_lower, double c_upper) {
  if (!(hk.beta > 1.0)) throw Error(ErrorKind::BadExponent, "sub-Gaussian profile needs beta > 1");
  if (!(t > 0.0) || !(vol > 0.0) || !(d >= 0.0)) {
    throw Error(ErrorKind::OutOfRange, "profile needs t > 0, vol > 0, d >= 0");
  }
  const double scaled = std::pow(d / std::pow(t, 1.0 / hk.beta), hk.beta / (hk.beta - 1.0));
  return {std::exp(-c_lower * scaled) / vol, std::exp(-c_upper * scaled) / vol};
}

}  // namespace carpet
