#pragma once

// Two-point compactification of the real line, trivial extension of fields
// and numerical certificates for the vanishing-tail lemma.

#include <optional>
#include <string>
#include <vector>

#include "tovlab/numerics.hpp"

namespace tovlab {

/// x/(1 + |x|), with +-inf mapped to +-1.
double phi(double x) noexcept;
/// Inverse of phi on [-1, 1]; +-1 map to +-inf.
double phi_inverse(double y) noexcept;

enum class Side { PlusInf, MinusInf };
enum class TailVerdict { Converged, Oscillation };

/// Limit estimate from two geometric ladders (ratio 10, |r| from 1e3 to 1e6,
/// ladder B offset by a factor 2). Each ladder is Aitken-extrapolated from its
/// last three values; it converges when successive differences contract by at
/// least 0.9 per decade (or are negligible) and both limits agree within
/// residual_tol (1 + |limit|).
struct LimitEstimate {
  TailVerdict verdict = TailVerdict::Oscillation;
  std::optional<double> value;
  std::vector<double> radii_a;
  std::vector<double> values_a;
  std::vector<double> radii_b;
  std::vector<double> values_b;
  double limit_a = 0.0;
  double limit_b = 0.0;
};

class ExtendedField {
 public:
  ExtendedField(ScalarField base, LimitEstimate plus, LimitEstimate minus);

  /// f inside the base domain, 0 outside it, the limits at +-inf.
  double operator()(double x) const;
  /// Evaluation in the compact coordinate y = phi(x).
  double at_compact(double y) const { return (*this)(phi_inverse(y)); }

  const ScalarField& base() const noexcept { return base_; }
  std::optional<double> value_at_plus_inf() const { return plus_.value; }
  std::optional<double> value_at_minus_inf() const { return minus_.value; }
  const LimitEstimate& plus() const noexcept { return plus_; }
  const LimitEstimate& minus() const noexcept { return minus_; }
  static constexpr double outside_domain_value = 0.0;

 private:
  ScalarField base_;
  LimitEstimate plus_;
  LimitEstimate minus_;
};

/// Trivial extension: 0 outside the domain, and the same at sample radii
/// outside the domain.
double extended_value(const ScalarField& f, double x);

LimitEstimate estimate_limit(const ScalarField& f, Side side, const Tolerances& tol);
ExtendedField extend(const ScalarField& f, const Tolerances& tol);

enum class LemmaCondition { C1, C2, Both, Neither };

std::string to_string(Side s);
std::string to_string(TailVerdict v);
std::string to_string(LemmaCondition c);

struct Certificate {
  Side side = Side::PlusInf;
  std::optional<double> limit_estimate;
  TailVerdict verdict = TailVerdict::Oscillation;
  bool limit_zero = false;
  std::string sign_pattern;      // positive | negative | zero | non-negative | non-positive | mixed
  std::string monotone_pattern;  // increasing | decreasing | constant | non-decreasing | non-increasing | non-monotone
  LemmaCondition condition = LemmaCondition::Neither;
  /// A satisfied condition together with limit 0: the extension vanishes on a
  /// neighbourhood of the endpoint.
  bool certifies_vanishing = false;
  /// Limit 0 but neither condition holds (the measured pattern is reported as is).
  bool lemma_mismatch = false;
  std::vector<double> window;
  std::vector<double> values;
};

/// Sign and monotonicity are read in increasing r. C1: non-negative and
/// non-decreasing. C2: non-positive and non-increasing. Requires at least 8
/// window points sorted toward the chosen infinity.
Certificate tail_certificate(const ScalarField& f, Side side, const std::vector<double>& window,
                             const Tolerances& tol);

/// Geometric window of n points from |r| = from to |r| = to toward the side.
std::vector<double> tail_window(Side side, std::size_t n, double from = 1e3, double to = 1e6);

}  // namespace tovlab
