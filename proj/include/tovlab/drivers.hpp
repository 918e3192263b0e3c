#pragma once

// Whole-entry runs behind the solve and tails commands.

#include <optional>
#include <string>
#include <vector>

#include "tovlab/catalog.hpp"
#include "tovlab/coupling.hpp"
#include "tovlab/extended_line.hpp"

namespace tovlab {

struct SolveOptions {
  std::size_t samples = 200;
  double r_hi = 10.0;     // upper end of the window on unbounded pieces
  double margin = 1e-3;   // distance kept from singular radii, relative to max(1, r)
};

enum class SolveFlag { Ok, NearPole, NearSingularity };
std::string to_string(SolveFlag f);

struct SolvePoint {
  double r = 0.0;
  double p = 0.0;
  double riccati_residual = 0.0;           // normalised by 1 + max(|A~|, |B p|, |C p^2|)
  std::optional<double> tov_residual;      // constant entry only
  SolveFlag flag = SolveFlag::Ok;
};

struct SolveReport {
  std::string row;
  Params params;
  double c0 = 1.0;
  double base = 1.0;
  Interval window;
  std::vector<double> poles;
  std::size_t nodes = 0;
  std::vector<SolvePoint> points;
  double max_riccati = 0.0;                // over points flagged ok
  std::optional<double> max_tov;
  bool passed = false;                     // max_riccati <= 10 residual_tol
  std::vector<std::string> warnings;
};

/// Explicit pressure on the regular piece holding `base`, sampled on a linear
/// grid. Throws DomainMismatch when base is not a regular radius.
SolveReport solve_pressure(const CatalogEntry& e, const Params& p, double c0, double base, const Tolerances& tol,
                           const SolveOptions& opt = {});

struct TailsReport {
  std::string row;
  Params params;
  bool applicable = true;
  std::string message;
  TailReport pseudo;
  Certificate certificate;
  Certificate refined;                    // same window with twice the points
  bool stable = false;                    // verdict, sign, monotonicity and condition agree
  double lambda1_at_1e3 = 0.0;
};

TailsReport tails_report(const CatalogEntry& e, const Params& p, const Tolerances& tol, std::size_t window_points = 16);

}  // namespace tovlab
