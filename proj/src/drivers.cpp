#include "tovlab/drivers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tovlab/error.hpp"
#include "tovlab/tov_core.hpp"

namespace tovlab {

std::string to_string(SolveFlag f) {
  switch (f) {
    case SolveFlag::Ok: return "ok";
    case SolveFlag::NearPole: return "near_pole";
    case SolveFlag::NearSingularity: return "near_singularity";
  }
  return "?";
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

double pad(double x, double margin) { return margin * std::max(1.0, std::abs(x)); }

}  // namespace

SolveReport solve_pressure(const CatalogEntry& e, const Params& p, double c0, double base, const Tolerances& tol,
                           const SolveOptions& opt) {
  if (opt.samples < 2) fail(ErrorCode::InvalidArgument, "solve needs at least 2 samples");
  const Domain dom = e.domain(p, tol);
  std::optional<Interval> piece;
  for (const auto& iv : dom.regular_pieces())
    if (iv.contains(base)) piece = iv;
  if (!piece) fail(ErrorCode::DomainMismatch, "base point " + num(base) + " is not a regular radius of row " + e.name);

  double lo = piece->lo + pad(piece->lo, opt.margin);
  double hi = std::isfinite(piece->hi) ? std::min(piece->hi - pad(piece->hi, opt.margin), opt.r_hi) : opt.r_hi;
  if (!(base > lo && base < hi))
    fail(ErrorCode::DomainMismatch, "base point " + num(base) + " is outside the solve window (" + num(lo) + ", " +
                                        num(hi) + ")");

  const MassModel mass = e.mass_model(p, tol);
  // horizons 1 - 2M/r = 0 bound the window as well
  auto delta = [&mass](double r) { return 1.0 - 2.0 * mass.M(r) / r; };
  {
    const std::size_t n = 4000;
    const bool log_scale = lo > 0 && hi / lo > 10.0;
    double prev_r = lo, prev = delta(lo);
    for (std::size_t i = 1; i <= n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n);
      const double r = log_scale ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
      const double d = delta(r);
      if (std::isfinite(prev) && std::isfinite(d) && (prev < 0) != (d < 0)) {
        const double z = find_root_fn(delta, prev_r, r, tol);
        if (z < base) lo = std::max(lo, z + pad(z, opt.margin));
        else hi = std::min(hi, z - pad(z, opt.margin));
      }
      prev_r = r;
      prev = d;
    }
  }
  if (!(base > lo && base < hi))
    fail(ErrorCode::DomainMismatch, "base point " + num(base) + " lies on a horizon (1 - 2M/r = 0) of row " + e.name);

  SolveReport rep;
  rep.row = e.name;
  rep.params = p;
  rep.c0 = c0;
  rep.base = base;
  rep.window = {lo, hi};

  const CouplingSplit split = e.split(p, tol);
  PressureSolver solver(mass, split, c0, base, rep.window, tol);
  rep.poles = solver.poles();
  rep.nodes = solver.node_count();
  for (double pole : rep.poles) rep.warnings.push_back("denominator c0 - Psi vanishes near r = " + num(pole));

  const ScalarField pf = solver.field();
  auto coeffs = [&solver](double r) { return solver.modified_coefficients(r); };
  std::optional<StellarSystem> sys;
  if (e.is_constant()) {
    sys = StellarSystem{pf, e.rho_field(p, tol), mass};
    rep.max_tov = 0.0;
  }

  const double inset = 0.01 * (hi - lo);
  const double a = lo + inset, b = hi - inset;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    SolvePoint pt;
    pt.r = a + (b - a) * static_cast<double>(i) / static_cast<double>(opt.samples - 1);
    if (solver.near_pole(pt.r)) {
      pt.flag = SolveFlag::NearPole;
      pt.p = std::nan("");
      pt.riccati_residual = std::nan("");
      rep.points.push_back(pt);
      continue;
    }
    try {
      pt.p = solver(pt.r);
      const auto c = solver.modified_coefficients(pt.r);
      pt.riccati_residual =
          relative_residual(riccati_residual(pf, coeffs, pt.r, tol), {c.A, c.B * pt.p, c.C * pt.p * pt.p});
      if (sys) pt.tov_residual = std::abs(tov_residual(*sys, pt.r, tol));
    } catch (const Error& err) {
      pt.flag = err.code() == ErrorCode::ZeroDenominator ? SolveFlag::NearPole : SolveFlag::NearSingularity;
      rep.points.push_back(pt);
      continue;
    }
    if (!std::isfinite(pt.riccati_residual) || pt.riccati_residual > 1e3 * tol.residual_tol) {
      // derivative stencil straddling a pole
      for (double pole : rep.poles)
        if (std::abs(pt.r - pole) < 1e-2 * std::max(1.0, pole)) pt.flag = SolveFlag::NearPole;
    }
    if (pt.flag == SolveFlag::Ok) {
      rep.max_riccati = std::max(rep.max_riccati, pt.riccati_residual);
      if (pt.tov_residual) rep.max_tov = std::max(*rep.max_tov, *pt.tov_residual);
    }
    rep.points.push_back(pt);
  }
  rep.passed = rep.max_riccati <= 10 * tol.residual_tol;
  return rep;
}

TailsReport tails_report(const CatalogEntry& e, const Params& p, const Tolerances& tol, std::size_t window_points) {
  TailsReport rep;
  rep.row = e.name;
  rep.params = p;
  if (e.is_constant()) {
    rep.applicable = false;
    rep.message = "constant density: the coupling split does not apply (h is constant, A~ = A directly)";
    return rep;
  }
  const MassModel mass = e.mass_model(p, tol);
  const CouplingSplit split = e.split(p, tol);
  const Domain dom = e.domain(p, tol);
  ScalarField lambda1(
      [mass, split](double r) { return split.lambda1(mass.M(r), mass.M_prime(r), r); }, dom, "lambda1");

  rep.pseudo = pseudo_limit_check(split, mass, tail_window(Side::PlusInf, window_points), tol);
  rep.certificate = tail_certificate(lambda1, Side::PlusInf, tail_window(Side::PlusInf, window_points), tol);
  rep.refined = tail_certificate(lambda1, Side::PlusInf, tail_window(Side::PlusInf, 2 * window_points), tol);
  rep.stable = rep.certificate.verdict == rep.refined.verdict && rep.certificate.limit_zero == rep.refined.limit_zero &&
               rep.certificate.sign_pattern == rep.refined.sign_pattern &&
               rep.certificate.monotone_pattern == rep.refined.monotone_pattern &&
               rep.certificate.condition == rep.refined.condition;
  rep.lambda1_at_1e3 = lambda1(1e3);
  if (rep.certificate.lemma_mismatch)
    rep.message = "limit 0 but the tail is " + rep.certificate.sign_pattern + " and " +
                  rep.certificate.monotone_pattern + "; neither lemma condition holds";
  return rep;
}

}  // namespace tovlab
