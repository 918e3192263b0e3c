#pragma once

// Foundation routines shared by every other module: domains with excluded
// singular radii, scalar fields of the radius, adaptive quadrature, bracketed
// root finding, finite differences and grid sampling.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace tovlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

/// Open interval (lo, hi); hi may be +infinity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double r) const noexcept { return r > lo && r < hi; }
  bool operator==(const Interval&) const = default;
};

struct Tolerances {
  double quad_rel = 1e-10;
  double quad_abs = 1e-15;
  double root_tol = 1e-12;
  double fd_step = 1e-6;  // relative: the actual step is fd_step * max(1, |r|)
  double residual_tol = 1e-7;
  double guard_band = 1e-9;  // relative half-width of the exclusion zone around singular radii

  /// Throws InvalidArgument unless every field is strictly positive and quad_rel < 1.
  void validate() const;
};

/// Half-width of the guard band around x.
inline double guard_width(double x, double guard) {
  const double ax = x < 0 ? -x : x;
  return guard * (ax > 1.0 ? ax : 1.0);
}

/// A union of disjoint open intervals with a finite set of excluded interior
/// points (the singular radii). Construction validates the invariants.
class Domain {
 public:
  Domain() = default;
  explicit Domain(std::vector<Interval> intervals, std::vector<double> excluded = {});

  static Domain open(double lo, double hi);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  const std::vector<double>& excluded() const noexcept { return excluded_; }
  bool empty() const noexcept { return intervals_.empty(); }

  bool contains(double r) const noexcept;
  std::optional<Interval> interval_of(double r) const noexcept;
  bool near_excluded(double r, double guard) const noexcept;

  /// True when a and b lie in the closure of the same interval and no
  /// excluded point lies in [min(a,b), max(a,b)].
  bool path_is_regular(double a, double b) const noexcept;

  /// Adds excluded points; points outside every interval are dropped.
  Domain with_excluded(const std::vector<double>& extra) const;

  /// Intersection with a single interval; excluded points outside are dropped.
  Domain intersect(const Interval& window) const;

  /// Intervals split at the excluded points.
  std::vector<Interval> regular_pieces() const;

  bool operator==(const Domain&) const = default;

 private:
  std::vector<Interval> intervals_;
  std::vector<double> excluded_;
};

/// An evaluable real function of the radius with its declared domain.
class ScalarField {
 public:
  using Fn = std::function<double(double)>;

  ScalarField() = default;
  ScalarField(Fn eval, Domain domain, std::string label = {});

  double operator()(double r) const { return eval_(r); }
  const Domain& domain() const noexcept { return domain_; }
  const std::string& label() const noexcept { return label_; }
  const Fn& function() const noexcept { return eval_; }

  ScalarField with_domain(Domain domain) const;

 private:
  Fn eval_;
  Domain domain_;
  std::string label_;
};

/// Adaptive Gauss-Kronrod (21 point) quadrature with global subdivision.
/// b may be +infinity; the tail is mapped by r = a + t/(1-t).
double integrate(const ScalarField& f, double a, double b, const Tolerances& tol);

/// Same as integrate() without the domain preconditions; used by callers that
/// already know the path is regular.
double integrate_fn(const std::function<double(double)>& f, double a, double b,
                    const Tolerances& tol);

/// Bracketing root finder (TOMS 748). Returns the endpoint of the final
/// bracket with the smaller |f|.
double find_root(const ScalarField& f, double lo, double hi, const Tolerances& tol);
double find_root_fn(const std::function<double(double)>& f, double lo, double hi,
                    const Tolerances& tol);

/// Central difference with one Richardson step; step fd_step * max(1, |r|).
double derivative(const ScalarField& f, double r, const Tolerances& tol);
double derivative_fn(const std::function<double(double)>& f, double r, const Tolerances& tol);

enum class GridScale { Linear, Log };

/// n strictly increasing points inside d, none within the guard band of an
/// excluded point. Unbounded intervals are truncated at r_max.
std::vector<double> sample_grid(const Domain& d, std::size_t n, GridScale scale,
                                const Tolerances& tol, double r_max = 1e6);

/// Normalised residual |residual| / (1 + max |term|).
double relative_residual(double residual, std::initializer_list<double> terms);

}  // namespace tovlab
