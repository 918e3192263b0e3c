#pragma once

// Closed-form solutions of the coupling equation: ten rows indexed by the
// choice of F plus the constant-density solution.

#include <string>
#include <string_view>
#include <vector>

#include "tovlab/coupling.hpp"
#include "tovlab/numerics.hpp"
#include "tovlab/tov_core.hpp"

namespace tovlab {

enum class RowId : int { R1 = 1, R2, R3, R4, R5, R6, R7, R8, R9, R10, Constant };

struct Params {
  double c1 = 0.0;
  double c2 = 1.0;
  double c = 1.0;  // constant density; only the constant entry reads it
};

using ClosedForm = double (*)(const Params&, double r);

struct CatalogEntry {
  RowId row;
  std::string name;       // "1".."10" or "constant"
  std::string F_tag;      // "0", "h'", "r h'", "h^2", ...
  std::string h_text;
  std::string domain_note;
  std::string singular_note;
  double domain_lo;                    // natural domain is (domain_lo, +inf)
  bool boundary_singular;              // density blows up at domain_lo
  ClosedForm F;
  ClosedForm h;
  ClosedForm h_prime;
  ClosedForm rho;
  ClosedForm antiderivative;           // T with T' = F/h^3; null for the constant entry
  ClosedForm mass;
  ClosedForm mass_prime;
  std::vector<double> (*singular)(const Params&, const Tolerances&);  // interior singular radii, sorted

  bool is_constant() const noexcept { return row == RowId::Constant; }

  /// Natural domain with the interior singular radii excluded.
  Domain domain(const Params& p, const Tolerances& tol) const;
  std::vector<double> singular_radii(const Params& p, const Tolerances& tol) const { return singular(p, tol); }

  ScalarField F_field(const Params& p, const Tolerances& tol) const;
  ScalarField h_field(const Params& p, const Tolerances& tol) const;
  ScalarField rho_field(const Params& p, const Tolerances& tol) const;
  /// Closed-form mass (h^2/r)(c2 - T) with its exact derivative.
  MassModel mass_model(const Params& p, const Tolerances& tol) const;
  CouplingSplit split(const Params& p, const Tolerances& tol) const;
};

/// All eleven entries, rows 1..10 then the constant entry.
const std::vector<CatalogEntry>& catalog();

/// Throws UnknownRow.
const CatalogEntry& entry(RowId row);

/// Accepts "1".."10", "constant" and the alias "sec33" (row 4, the entry whose
/// denominator is -c1 r + pi r^3 + 1). Throws UnknownRow.
const CatalogEntry& entry(std::string_view name);

/// Row 2 with the density sign flipped (the misprinted variant). Kept
/// as a fixture: verify_entry must reject it.
const CatalogEntry& typeset_row2();

/// Evaluates the closed-form density; throws SingularRadius inside the guard
/// band of a singular radius or outside the natural domain.
double density(const CatalogEntry& e, const Params& p, double r, const Tolerances& tol);

/// Unique root r > 1 of -c1 + pi r^2 + pi log(r^2 - 1).
double row2_root(double c1, const Tolerances& tol);

struct ResidualStat {
  double max = 0.0;
  double at_r = 0.0;
  bool applicable = true;
};

struct VerificationReport {
  std::string row;
  Params params;
  std::size_t samples = 0;
  ResidualStat h_ode;
  ResidualStat lambda0;
  ResidualStat continuity;
  ResidualStat coupling;  // only for the constant entry: |A~ - A|
  bool passed = false;
  std::vector<std::string> diagnostics;
};

/// n points on (domain_lo, r_hi) kept at least margin * max(1, |x|) away from
/// the domain boundary and every singular radius.
std::vector<double> standard_grid(const CatalogEntry& e, const Params& p, std::size_t n, const Tolerances& tol,
                                  double r_hi = 10.0, double margin = 1e-3);

/// h-ODE, Lambda0 and continuity residuals, each normalised by (1 + max |term|).
/// The mass is rebuilt by quadrature from a base point inside each regular
/// piece and matched to the closed form's integration constant.
VerificationReport verify_entry(const CatalogEntry& e, const Params& p, const std::vector<double>& grid,
                                const Tolerances& tol, double base = 1.0);

/// Determinant of the Gram matrix of mass samples, rows normalised to unit
/// Euclidean norm. Throws DomainMismatch when a grid point is not regular for
/// some entry.
double independence_gram(const std::vector<std::pair<const CatalogEntry*, Params>>& entries,
                         const std::vector<double>& grid, const Tolerances& tol);

}  // namespace tovlab
