#include "tovlab/tov_core.hpp"

#include <cmath>
#include <sstream>

#include "tovlab/error.hpp"

namespace tovlab {

namespace {

std::string at(double r) {
  std::ostringstream os;
  os.precision(17);
  os << "r = " << r;
  return os.str();
}

// Guard against evaluating the field inside the band around an excluded point.
void require_clear(const Domain& d, double r, const Tolerances& tol) {
  if (d.near_excluded(r, tol.guard_band) || (!d.empty() && !d.contains(r)))
    fail(ErrorCode::TooCloseToSingularity, at(r) + " is outside the domain or inside a guard band");
}

}  // namespace

MassModel MassModel::with_fd_derivative(ScalarField M, const Tolerances& tol) {
  auto f = M.function();
  ScalarField Mp([f, tol](double r) { return derivative_fn(f, r, tol); }, M.domain(), M.label() + "'");
  return MassModel{std::move(M), std::move(Mp)};
}

double MassModel::derivative_mismatch(const std::vector<double>& grid, const Tolerances& tol) const {
  double worst = 0.0;
  for (double r : grid) {
    const double mp = M_prime(r);
    worst = std::max(worst, std::abs(derivative(M, r, tol) - mp) / (1.0 + std::abs(mp)));
  }
  return worst;
}

RiccatiCoefficients riccati_coefficients(double M, double Mp, double r, const Tolerances& tol) {
  if (std::abs(r) <= tol.guard_band) fail(ErrorCode::OriginSingularity, at(r));
  if (r < 0) fail(ErrorCode::InvalidArgument, "radius must be positive, got " + at(r));
  const double delta = 1.0 - 2.0 * M / r;
  if (std::abs(delta) <= tol.guard_band) fail(ErrorCode::HorizonSingularity, "1 - 2M/r vanishes at " + at(r));
  RiccatiCoefficients c;
  c.A = -M * Mp / (4.0 * kPi * std::pow(r, 4) * delta);
  c.B = -(Mp / r + M / (r * r)) / delta;
  c.C = -4.0 * kPi * r / delta;
  return c;
}

RiccatiCoefficients riccati_coefficients(const MassModel& m, double r, const Tolerances& tol) {
  return riccati_coefficients(m.M(r), m.M_prime(r), r, tol);
}

std::pair<double, double> coefficient_relation_residual(const MassModel& m, double r,
                                                        const Tolerances& tol) {
  const double M = m.M(r);
  const double Mp = m.M_prime(r);
  const double mm = M * Mp;
  const double lin = r * Mp + M;
  const double scale = std::abs(M) + std::abs(r * Mp);
  if (std::abs(mm) <= tol.guard_band * scale * scale)
    fail(ErrorCode::DegenerateDenominator, "M M' vanishes at " + at(r));
  if (std::abs(lin) <= tol.guard_band * scale)
    fail(ErrorCode::DegenerateDenominator, "r M' + M vanishes at " + at(r));
  const auto c = riccati_coefficients(M, Mp, r, tol);
  const double t1 = 4.0 * kPi * std::pow(r, 4) * c.A / mm;
  const double t2 = r * r * c.B / lin;
  const double t3 = c.C / (4.0 * kPi * r);
  return {t1 - t3, t2 - t3};
}

double tov_residual(const StellarSystem& s, double r, const Tolerances& tol) {
  if (std::abs(r) <= tol.guard_band) fail(ErrorCode::OriginSingularity, at(r));
  const double M = s.mass.M(r);
  const double delta = 1.0 - 2.0 * M / r;
  if (std::abs(delta) <= tol.guard_band) fail(ErrorCode::HorizonSingularity, "1 - 2M/r vanishes at " + at(r));
  const double p = s.p(r);
  const double dp = derivative_fn(s.p.function(), r, tol);
  return dp + (s.rho(r) + p) * (M + 4.0 * kPi * r * r * r * p) / (r * r * delta);
}

double continuity_residual(const StellarSystem& s, double r, const Tolerances& tol) {
  require_clear(s.rho.domain(), r, tol);
  require_clear(s.mass.M_prime.domain(), r, tol);
  return s.mass.M_prime(r) - 4.0 * kPi * r * r * s.rho(r);
}

double riccati_residual(const ScalarField& p, const CoefficientsAt& coeffs_at, double r,
                        const Tolerances& tol) {
  const auto c = coeffs_at(r);
  const double pr = p(r);
  return derivative_fn(p.function(), r, tol) - (c.A + c.B * pr + c.C * pr * pr);
}

}  // namespace tovlab
