#pragma once

// The TOV equation in Riccati form, p' = A + B p + C p^2, and residuals of the
// identities that tie pressure, density and mass together (G = c = 1).

#include <functional>
#include <utility>
#include <vector>

#include "tovlab/numerics.hpp"

namespace tovlab {

/// Mass function with its derivative.
struct MassModel {
  ScalarField M;
  ScalarField M_prime;

  /// M' taken by central differences of M.
  static MassModel with_fd_derivative(ScalarField M, const Tolerances& tol);

  /// Largest |derivative(M) - M'| / (1 + |M'|) over the grid.
  double derivative_mismatch(const std::vector<double>& grid, const Tolerances& tol) const;
};

struct RiccatiCoefficients {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

struct StellarSystem {
  ScalarField p;
  ScalarField rho;
  MassModel mass;
};

using CoefficientsAt = std::function<RiccatiCoefficients(double)>;

/// Coefficients from point values of M and M'.
RiccatiCoefficients riccati_coefficients(double M, double M_prime, double r, const Tolerances& tol);
RiccatiCoefficients riccati_coefficients(const MassModel& m, double r, const Tolerances& tol);

/// (t1 - t3, t2 - t3) with t1 = 4 pi r^4 A/(M M'), t2 = r^2 B/(r M' + M), t3 = C/(4 pi r).
std::pair<double, double> coefficient_relation_residual(const MassModel& m, double r,
                                                        const Tolerances& tol);

/// p' + (rho + p)(M + 4 pi r^3 p) / (r^2 (1 - 2M/r)), with p' by finite differences.
double tov_residual(const StellarSystem& s, double r, const Tolerances& tol);

/// M' - 4 pi r^2 rho.
double continuity_residual(const StellarSystem& s, double r, const Tolerances& tol);

/// p' - (A + B p + C p^2).
double riccati_residual(const ScalarField& p, const CoefficientsAt& coeffs_at, double r,
                        const Tolerances& tol);

}  // namespace tovlab
