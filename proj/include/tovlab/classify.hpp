#pragma once

// Density classification (cavities, singularities, matter type) and critical
// configuration scans over one integration constant.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "tovlab/catalog.hpp"
#include "tovlab/numerics.hpp"

namespace tovlab {

enum class Matter { Ordinary, Exotic, Vacuum };

/// "O", "X" or "V".
char matter_code(Matter m) noexcept;
std::string to_string(Matter m);

struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  Matter matter = Matter::Ordinary;
};

struct Cavity {
  double r = 0.0;
  bool tangential = false;  // rho touches zero without changing sign
};

struct ClassificationFlags {
  bool without_cavities = false;
  bool without_singularities = false;
  bool smooth = false;
  bool realistic = false;
};

struct ClassificationReport {
  std::string row;
  Params params;
  std::vector<double> singularities;  // includes a singular domain boundary (0 or 1)
  std::vector<Cavity> cavities;
  std::vector<Segment> segments;      // tile the domain minus singularities and cavities
  ClassificationFlags flags;
  Domain domain_used;
  std::string pattern;                // matter codes joined by '|', e.g. "X|O|X"
};

struct ClassifyOptions {
  double r_max = 1e6;           // sampling cap for unbounded segments
  std::size_t bulk_samples = 400;
  std::size_t end_samples = 120;  // geometric cluster toward each segment end
  double tangential_scale = 1e-10;
};

/// The entry's natural domain (domain_lo, +inf).
Domain standard_domain(const CatalogEntry& e);

/// Throws UnresolvedRoot when a sign change cannot be refined or the matter
/// probes of a segment disagree after resampling.
ClassificationReport classify(const CatalogEntry& e, const Params& p, const Domain& domain, const Tolerances& tol,
                              const ClassifyOptions& opt = {});

struct Row1Report {
  double c1 = 0.0;
  std::optional<double> r0;  // sqrt(c1/pi): singular radius
  std::optional<double> r1;  // sqrt(c1/(5 pi)): cavity
  bool degenerate = false;   // c1 = 0: both collapse onto the origin
  std::optional<double> rho_prime_at_r1;
  double limit_left_r0 = 0.0;   // +-inf
  double limit_right_r0 = 0.0;  // +-inf
};

/// Closed-form singularity and cavity of row 1, the sign of rho' at the cavity
/// and the one-sided limits at r0 (read from the closed form).
Row1Report row1_analysis(const Params& p, const Tolerances& tol);

/// Printed derivative of the row-1 density.
double row1_density_prime(const Params& p, double r);

/// Unique r > 1 with -c1 + pi r^2 + pi log(r^2 - 1) = 0. Also asserts
/// dY/dr = 2r(r^2 + pi - 1)/(r^2 - 1) > 0 on sampled radii.
double row2_singularity(double c1, const Tolerances& tol);

struct CubicRoots {
  std::array<std::complex<double>, 3> roots;    // r1, r2, r3; each a triple root of q
  std::array<std::complex<double>, 3> printed;  // the radical closed forms, NaN where 0/0
  bool printed_available = false;
  double printed_deviation = 0.0;  // max |printed - robust| where available
  int multiplicity = 3;
  int origin_multiplicity = 2;     // r = 0 is a double root of q
};

/// Roots of pi r^3 - c1 r + 1 (the factor of q = 12 pi r^2 (-c1 r + pi r^3 + 1)^3)
/// by a trigonometric/Cardano solver polished with Newton steps. The labels
/// r1, r2, r3 follow the radical closed forms: real cube root when the radicand
/// is real, principal branch otherwise; at c1 = 0 the closed forms are 0/0 and
/// r1 is the real root.
CubicRoots row7_roots(double c1);

enum class ScanParameter { C1, C2 };
std::string to_string(ScanParameter p);

struct ScanPoint {
  double value = 0.0;
  std::size_t n_singular = 0;
  std::size_t n_cavity = 0;
  std::string pattern;
  std::string error;  // non-empty when classification failed at this value
  std::string key() const;
};

struct ChangePoint {
  double value_lo = 0.0;
  double value_hi = 0.0;
  double refined = 0.0;
  std::string key_lo;
  std::string key_hi;
};

struct CriticalScanResult {
  std::string row;
  ScanParameter parameter = ScanParameter::C1;
  double fixed_other = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;
  std::vector<ScanPoint> sweep;
  std::vector<ChangePoint> change_points;
  std::size_t distinct_patterns() const;
  /// Runs of equal keys along the sweep.
  std::size_t configurations() const { return change_points.size() + 1; }
};

struct ScanOptions {
  unsigned jobs = 1;
  double c = 1.0;  // constant density for the constant entry
  ClassifyOptions classify;
};

/// steps + 1 equally spaced values over [lo, hi]; classification keys are
/// compared between neighbours and every change is refined by bisection to
/// root_tol (1 + |value|). Sweep points and refinements run on up to `jobs`
/// threads; results are merged in parameter order.
CriticalScanResult critical_scan(const CatalogEntry& e, ScanParameter parameter, double fixed_other, double lo,
                                 double hi, std::size_t steps, const Tolerances& tol, const ScanOptions& opt = {});

}  // namespace tovlab
