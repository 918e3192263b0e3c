#pragma once

// Integrability machinery: the coupling function split into a linear part
// Lambda0 and a nonlinear part Lambda1, the h-ODE F = 2 pi r^3 h^2 + r^2 h',
// mass reconstruction from h, and the explicit pressure of the modified
// Riccati equation.

#include <optional>
#include <vector>

#include "tovlab/numerics.hpp"
#include "tovlab/tov_core.hpp"

namespace tovlab {

/// h and g = h' with the linear/nonlinear split of the coupling function.
struct CouplingSplit {
  ScalarField h;
  ScalarField h_prime;
  int order = 1;

  /// h' by central differences of h.
  static CouplingSplit with_fd_derivative(ScalarField h, const Tolerances& tol);

  /// M' - (2h'/h - 1/r) M + 2 pi r^2 h + r h'/h.
  double lambda0(double M, double M_prime, double r) const;
  /// M M' / (2 pi r^3 h).
  double lambda1(double M, double M_prime, double r) const;
  double lambda(double M, double M_prime, double r) const { return lambda0(M, M_prime, r) + lambda1(M, M_prime, r); }
};

struct IntegrabilityParams {
  double c0 = 1.0;
  double c1 = 0.0;
  double c2 = 1.0;
  double base = 1.0;  // lower limit of every path integral
};

/// F(r) - (2 pi r^3 h^2 + r^2 h'), h' by finite differences.
double h_ode_residual(const ScalarField& F, const ScalarField& h, double r, const Tolerances& tol);

/// M(r) = (h^2/r) (c2 - int_base^r F/h^3 ds).
double mass_from_h(const ScalarField& F, const ScalarField& h, const IntegrabilityParams& params,
                   double r, const Tolerances& tol);

/// Mass model built on mass_from_h. M' is a central difference of M whose
/// integral is anchored at the evaluation point, so each difference only sees
/// short local integrals.
MassModel quadrature_mass(const ScalarField& F, const ScalarField& h, const IntegrabilityParams& params,
                          const Tolerances& tol);

/// Modified coefficient h'/2 - B h/2 - C h^2/4, the A for which the explicit
/// pressure is exact.
double modified_A(const MassModel& m, const CouplingSplit& split, double r, const Tolerances& tol);

/// Lambda0 evaluated on a mass model.
double lambda0_residual(const CouplingSplit& split, const MassModel& m, double r, const Tolerances& tol);

/// p(r) = E/(c0 - Psi) + h/2 with Phi = int_base^r (B + C h), E = exp(Phi),
/// Psi = int_base^r C E. Phi and Psi are tabulated once over a window around
/// the base point and interpolated by cubic Hermite pieces; the object is
/// immutable after construction.
class PressureSolver {
 public:
  PressureSolver(MassModel m, CouplingSplit split, double c0, double base, Interval window,
                 const Tolerances& tol);

  /// Pressure; throws ZeroDenominator inside the guard band of a pole.
  double operator()(double r) const;
  double phi(double r) const;
  double psi(double r) const;
  double denominator(double r) const { return c0_ - psi(r); }
  bool near_pole(double r) const;

  /// Radii in the window where c0 - Psi changes sign.
  const std::vector<double>& poles() const noexcept { return poles_; }
  const Interval& window() const noexcept { return window_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  ScalarField field() const;
  RiccatiCoefficients modified_coefficients(double r) const;

 private:
  struct Node {
    double r;
    double phi;
    double dphi;
    double psi;
    double dpsi;
  };

  double integrand_phi(double r) const;
  void build_side(double to);
  std::size_t cell_of(double r) const;
  double hermite(double r, double Node::*value, double Node::*slope) const;

  MassModel mass_;
  CouplingSplit split_;
  double c0_;
  double base_;
  Interval window_;
  Tolerances tol_;
  std::vector<Node> nodes_;
  std::vector<double> poles_;
};

/// One-shot evaluation of the explicit pressure at r.
double pressure_solution(const MassModel& m, const CouplingSplit& split, double c0, double r, double base,
                         const Tolerances& tol);

struct TailSample {
  double r;
  double lambda1;
};

struct TailReport {
  std::vector<TailSample> samples;
  bool eventually_decreasing = false;
  double limit_estimate = 0.0;
  bool passes = false;
};

/// Samples Lambda1 along r_tail and judges whether |Lambda1| decreases to 0.
TailReport pseudo_limit_check(const CouplingSplit& split, const MassModel& m, const std::vector<double>& r_tail,
                              const Tolerances& tol);

}  // namespace tovlab
