#include "tovlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "tovlab/error.hpp"

namespace tovlab {

namespace {

constexpr double pi = kPi;

std::string num(double x, int prec = 17) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

double cube(double x) { return x * x * x; }

// M = (h^2/r)(c2 - T) and M' = (2 h h'/r - h^2/r^2)(c2 - T) - F/(r h).
template <ClosedForm H, ClosedForm T>
double table_mass(const Params& p, double r) {
  const double hv = H(p, r);
  return hv * hv / r * (p.c2 - T(p, r));
}

template <ClosedForm F, ClosedForm H, ClosedForm Hp, ClosedForm T>
double table_mass_prime(const Params& p, double r) {
  const double hv = H(p, r);
  const double hp = Hp(p, r);
  return (2.0 * hv * hp / r - hv * hv / (r * r)) * (p.c2 - T(p, r)) - F(p, r) / (r * hv);
}

// Positive roots of f on (lo, inf) for f > 0 near lo and near infinity with a
// single minimum at m.
std::vector<double> unimodal_roots(const std::function<double(double)>& f, double lo, double m,
                                   const Tolerances& tol) {
  const double fm = f(m);
  if (fm > 0) return {};
  if (fm == 0) return {m};
  auto positive = [&f](double x) {
    const double v = f(x);
    return v > 0 && std::isfinite(v);
  };
  double a = lo;
  for (int guard = 0; !positive(a); ++guard) {
    if (guard > 2000) fail(ErrorCode::BracketExpansionFailed, "no positive value left of the minimum");
    a = lo + 0.5 * ((guard == 0 ? m : a) - lo);
  }
  double b = 2.0 * m + 1.0;
  for (int guard = 0; !positive(b); ++guard) {
    if (guard > 2000) fail(ErrorCode::BracketExpansionFailed, "no positive value right of the minimum");
    b *= 2.0;
  }
  Tolerances t = tol;
  t.root_tol = std::min(tol.root_tol, 1e-3 * std::max(m - a, 1e-300));
  return {find_root_fn(f, a, m, t), find_root_fn(f, m, b, t)};
}

// Root u > 0 of an increasing g with g(0+) = -inf and g(+inf) = +inf.
double increasing_root(const std::function<double(double)>& g, const Tolerances& tol) {
  double lo = 1.0;
  for (int k = 0; !(g(lo) < 0); ++k) {
    if (k > 1100) fail(ErrorCode::BracketExpansionFailed, "lower bracket underflowed");
    lo *= 0.5;
  }
  double hi = 1.0;
  for (int k = 0; !(g(hi) > 0); ++k) {
    if (k > 1100) fail(ErrorCode::BracketExpansionFailed, "upper bracket overflowed");
    hi *= 2.0;
  }
  if (hi > 1.0) lo = std::max(lo, 0.5 * hi);
  else if (lo < 1.0) hi = std::min(hi, 2.0 * lo);
  Tolerances t = tol;
  t.root_tol = std::min(tol.root_tol, 1e-3 * lo);
  return find_root_fn(g, lo, hi, t);
}

double zero(const Params&, double) { return 0.0; }

// ---------------------------------------------------------------------------
// Row 1: F = 0

namespace r1 {
double h(const Params& p, double r) { return 1.0 / (pi * r * r - p.c1); }
double hp(const Params& p, double r) { return -2.0 * pi * r * h(p, r) * h(p, r); }
double rho(const Params& p, double r) {
  return p.c2 * (p.c1 - 5 * pi * r * r) / (4 * pi * std::pow(r, 4) * cube(pi * r * r - p.c1));
}
std::vector<double> singular(const Params& p, const Tolerances&) {
  if (p.c1 > 0) return {std::sqrt(p.c1 / pi)};
  return {};
}
}  // namespace r1

// ---------------------------------------------------------------------------
// Row 2: F = h'

namespace r2 {
double u(double r) { return (r - 1) * (r + 1); }
double Y(const Params& p, double r) { return -p.c1 + pi * r * r + pi * std::log(u(r)); }
double h(const Params& p, double r) { return 1.0 / Y(p, r); }
double hp(const Params& p, double r) {
  const double y = Y(p, r);
  return -(2 * pi * r + 2 * pi * r / u(r)) / (y * y);
}
double T(const Params& p, double r) {
  const double y = Y(p, r);
  return ((p.c1 - pi) * (p.c1 - pi) - y * y) / 2;
}
double gamma12(const Params& p, double r) {
  const double c1 = p.c1, c2 = p.c2;
  const double w = u(r), L = std::log(w);
  const double r2 = r * r, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4;
  return -2 * c1 * c2 * w + 3 * pi * pi * w * (pi * r2 - c1) * L * L
         - 2 * pi * (c2 * (1 - 5 * r2) * r2 + c1 * c1 * (r4 + 2 * r2 - 1))
         + pi * w * (2 * pi * c1 * (1 - 3 * r2) + 2 * (c1 * c1 + c2) + pi * pi * (3 * r4 - 1)) * L
         - pi * pi * c1 * (3 * r6 - 13 * r4 + r2 + 1) + pi * pi * pi * w * L * L * L
         + pi * pi * pi * (r8 - r6 - 5 * r4 + r2);
}
double rho(const Params& p, double r) {
  return -gamma12(p, r) / (8 * pi * std::pow(r, 4) * u(r) * cube(Y(p, r)));
}
double rho_typeset(const Params& p, double r) {
  return gamma12(p, r) / (8 * pi * std::pow(r, 4) * u(r) * cube(Y(p, r)));
}
std::vector<double> singular(const Params& p, const Tolerances& tol) { return {row2_root(p.c1, tol)}; }
}  // namespace r2

// ---------------------------------------------------------------------------
// Row 3: F = r h'

namespace r3 {
double Y(const Params& p, double r) {
  const double v = r - 1;
  return -p.c1 + pi * v * (v + 4) + 2 * pi * std::log(v);
}
double h(const Params& p, double r) { return 1.0 / Y(p, r); }
double hp(const Params& p, double r) {
  const double y = Y(p, r);
  return -(2 * pi * (r + 1) + 2 * pi / (r - 1)) / (y * y);
}
double F(const Params& p, double r) { return r * hp(p, r); }
double T(const Params& p, double r) {
  const double c1 = p.c1, L = std::log(r - 1);
  const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r;
  const double G = -2 * pi * pi * r5 / 5 - 3 * pi * pi * r4 / 2 + r3 * (2 * pi * c1 / 3 + 4 * pi * pi / 9)
                   + r2 * (pi * c1 + 5 * pi * pi / 3) + r * (2 * pi * c1 + 22 * pi * pi / 3)
                   + 2 * pi * (3 * c1 + 11 * pi) / 3 * L + (-4 * pi * pi * r3 / 3 - 2 * pi * pi * r2 - 4 * pi * pi * r) * L
                   - 2 * pi * pi * L * L;
  return G - 11 * pi * c1 / 3 - 679 * pi * pi / 90;
}
double rho(const Params& p, double r) {
  const double c1 = p.c1, c2 = p.c2, v = r - 1, L = std::log(v);
  const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r, r6 = r5 * r, r7 = r6 * r;
  const double pi2 = pi * pi, pi3 = pi2 * pi;
  const double num =
      60 * pi2 * v * (9 * c1 + pi * (8 * r3 - 9 * r2 - 18 * r + 31)) * L * L
      + 30 * pi * (c1 * c1 * (4 * r4 - r3 - 3 * r2 + 17 * r - 11) - 3 * c2 * (5 * r3 + r2 - 5 * r + 3))
      + 2 * pi * v
            * (-30 * pi * c1 * (8 * r3 - 9 * r2 - 18 * r + 31) - 90 * (c1 * c1 + c2)
               + pi2 * (24 * r5 + 135 * r4 - 1460 * r3 + 390 * r2 + 1860 * r - 1669))
            * L
      - pi2 * c1 * (24 * r6 + 111 * r5 - 1595 * r4 + 1850 * r3 + 1470 * r2 - 3529 * r + 1669)
      + 90 * c1 * c2 * v
      + pi3 * (9 * r7 - 115 * r6 - 803 * r5 + 4465 * r4 - 3365 * r3 - 3529 * r2 + 5375 * r - 2037)
      - 360 * pi3 * v * L * L * L;
  return num / (360 * pi * v * r4 * cube(Y(p, r)));
}
std::vector<double> singular(const Params& p, const Tolerances& tol) {
  auto g = [c1 = p.c1](double v) { return -c1 + pi * v * (v + 4) + 2 * pi * std::log(v); };
  return {1.0 + increasing_root(g, tol)};
}
}  // namespace r3

// ---------------------------------------------------------------------------
// Row 4: F = h^2

namespace r4 {
double D(const Params& p, double r) { return -p.c1 * r + pi * r * r * r + 1; }
double h(const Params& p, double r) { return r / D(p, r); }
double hp(const Params& p, double r) {
  const double d = D(p, r);
  return (d - r * (-p.c1 + 3 * pi * r * r)) / (d * d);
}
double F(const Params& p, double r) { return h(p, r) * h(p, r); }
double T(const Params& p, double r) { return -p.c1 * r + pi * r * r * r / 3 + std::log(r); }
double rho(const Params& p, double r) {
  const double c1 = p.c1, c2 = p.c2, L = std::log(r), r3 = r * r * r;
  return (-pi * r3 * (10 * c1 * r + 15 * c2 + 7) + 3 * (-c1 * r + 5 * pi * r3 - 1) * L
          + 3 * (c1 * (c2 + 3) * r + c2 - 1) + 2 * pi * pi * r3 * r3)
         / (12 * pi * r * r * cube(D(p, r)));
}
std::vector<double> singular(const Params& p, const Tolerances& tol) {
  if (p.c1 <= 0) return {};
  auto f = [c1 = p.c1](double r) { return pi * r * r * r - c1 * r + 1; };
  return unimodal_roots(f, 0.0, std::sqrt(p.c1 / (3 * pi)), tol);
}
}  // namespace r4

// ---------------------------------------------------------------------------
// Row 5: F = r h^2

namespace r5 {
double D(const Params& p, double r) { return -p.c1 + pi * r * r - std::log(r); }
double h(const Params& p, double r) { return 1.0 / D(p, r); }
double hp(const Params& p, double r) {
  const double d = D(p, r);
  return -(2 * pi * r - 1 / r) / (d * d);
}
double F(const Params& p, double r) { return r * h(p, r) * h(p, r); }
double T(const Params& p, double r) {
  const double r2 = r * r;
  return pi * r2 * r2 / 4 + r2 * (0.25 - p.c1 / 2) - r2 * std::log(r) / 2;
}
double rho(const Params& p, double r) {
  const double c1 = p.c1, c2 = p.c2, L = std::log(r);
  const double r2 = r * r, r4 = r2 * r2, r6 = r4 * r2;
  return (-3 * pi * (c1 - 1) * r4 - (2 * c1 * c1 - 3 * c1 + 20 * pi * c2 + 2) * r2
          + ((3 - 4 * c1) * r2 + 4 * c2 - 3 * pi * r4) * L + 4 * (c1 + 2) * c2 + pi * pi * r6 - 2 * r2 * L * L)
         / (-16 * pi * r4 * cube(c1 - pi * r2 + L));
}
std::vector<double> singular(const Params& p, const Tolerances& tol) {
  auto f = [&p](double r) { return D(p, r); };
  return unimodal_roots(f, 0.0, 1.0 / std::sqrt(2 * pi), tol);
}
}  // namespace r5

// ---------------------------------------------------------------------------
// Row 6: F = r^2 h^2

namespace r6 {
double D(const Params& p, double r) { return -p.c1 + pi * r * r - r; }
double h(const Params& p, double r) { return 1.0 / D(p, r); }
double hp(const Params& p, double r) {
  const double d = D(p, r);
  return -(2 * pi * r - 1) / (d * d);
}
double F(const Params& p, double r) { return r * r * h(p, r) * h(p, r); }
double T(const Params& p, double r) {
  const double r3 = r * r * r;
  return -p.c1 * r3 / 3 + pi * r3 * r * r / 5 - r3 * r / 4 + 2 * p.c2;
}
double rho(const Params& p, double r) {
  const double c1 = p.c1, c2 = p.c2;
  const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r, r6 = r5 * r;
  return -((8 * pi * c1 - 15) * r5 - 45 * c1 * r4 - 40 * c1 * c1 * r3 + 300 * pi * c2 * r2 - 180 * c2 * r
           - 60 * c1 * c2 + 9 * pi * r6)
         / (240 * pi * r4 * cube(c1 - pi * r2 + r));
}
std::vector<double> singular(const Params& p, const Tolerances&) {
  const double disc = 1 + 4 * pi * p.c1;
  if (disc < 0) return {};
  std::vector<double> out;
  const double sq = std::sqrt(disc);
  // Stable quadratic roots of pi r^2 - r - c1.
  const double q = 0.5 * (1 + sq);
  for (double x : {q / pi, q != 0 ? -p.c1 / q : 0.0})
    if (x > 0) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}
}  // namespace r6

// ---------------------------------------------------------------------------
// Row 7: F = r^3 h^2

namespace r7 {
double D(const Params& p, double r) { return -2 * p.c1 + 2 * pi * r * r - r * r; }
double h(const Params& p, double r) { return 2.0 / D(p, r); }
double hp(const Params& p, double r) {
  const double d = D(p, r);
  return -2 * (4 * pi * r - 2 * r) / (d * d);
}
double F(const Params& p, double r) { return r * r * r * h(p, r) * h(p, r); }
double T(const Params& p, double r) {
  const double r2 = r * r;
  return -p.c1 * r2 * r2 / 4 + r2 * r2 * r2 * (pi / 6 - 1.0 / 12) + 0.75 * p.c2;
}
double rho(const Params& p, double r) {
  const double c1 = p.c1, c2 = p.c2;
  const double r2 = r * r, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4;
  return (7 * (2 * pi - 1) * c1 * r6 - 18 * c1 * c1 * r4 + 15 * (1 - 2 * pi) * c2 * r2 + 6 * c1 * c2
          - (1 - 2 * pi) * (1 - 2 * pi) * r8)
         / (12 * pi * r4 * cube((2 * pi - 1) * r2 - 2 * c1));
}
std::vector<double> singular(const Params& p, const Tolerances&) {
  if (p.c1 > 0) return {std::sqrt(2 * p.c1 / (2 * pi - 1))};
  return {};
}
}  // namespace r7

// ---------------------------------------------------------------------------
// Row 8: F = h^2/r

namespace r8 {
double D(const Params& p, double r) { return -2 * p.c1 * r * r + 2 * pi * std::pow(r, 4) + 1; }
double h(const Params& p, double r) { return 2 * r * r / D(p, r); }
double hp(const Params& p, double r) {
  const double d = D(p, r);
  return (4 * r * d - 2 * r * r * (-4 * p.c1 * r + 8 * pi * r * r * r)) / (d * d);
}
double F(const Params& p, double r) { return h(p, r) * h(p, r) / r; }
double T(const Params& p, double r) {
  return -p.c1 * std::log(r) + pi * r * r / 2 - 1 / (4 * r * r) + 0.75 * p.c2;
}
double rho(const Params& p, double r) {
  const double c1 = p.c1, c2 = p.c2, L = std::log(r), d = D(p, r);
  const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r;
  return (d * (4 * c1 * r2 + 3 * c2 * r2 + 12 * c1 * r2 * L - 10 * pi * r4 + 1)
          - 2 * (8 * pi * r3 - 4 * c1 * r) * (c2 * r3 + 4 * c1 * r3 * L - 2 * pi * r5 + r))
         / (4 * pi * r2 * cube(d));
}
std::vector<double> singular(const Params& p, const Tolerances&) {
  // 2 pi x^2 - 2 c1 x + 1 = 0 with x = r^2.
  const double disc = p.c1 * p.c1 - 2 * pi;
  if (disc < 0 || p.c1 <= 0) return {};
  const double q = p.c1 + std::sqrt(disc);
  std::vector<double> out{std::sqrt(1.0 / q), std::sqrt(q / (2 * pi))};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}
}  // namespace r8

// ---------------------------------------------------------------------------
// Row 9: F = r^(1/2) h^2

namespace r9 {
double D(const Params& p, double r) { return -p.c1 * std::sqrt(r) + pi * std::pow(r, 2.5) + 2; }
double h(const Params& p, double r) { return std::sqrt(r) / D(p, r); }
double hp(const Params& p, double r) {
  const double s = std::sqrt(r), d = D(p, r);
  const double dp = -p.c1 / (2 * s) + 2.5 * pi * std::pow(r, 1.5);
  return (d / (2 * s) - s * dp) / (d * d);
}
double F(const Params& p, double r) { return std::sqrt(r) * h(p, r) * h(p, r); }
double T(const Params& p, double r) {
  return -2 * p.c1 * std::pow(r, 1.5) / 3 + 2 * pi * std::pow(r, 3.5) / 7 + 2 * r;
}
double rho(const Params& p, double r) {
  const double c1 = p.c1, c2 = p.c2;
  return (-7 * c1 * c1 * std::pow(r, 1.5) - 34 * pi * c1 * std::pow(r, 3.5) - 105 * pi * c2 * r * r + 42 * c1 * r
          + 21 * c1 * c2 + 9 * pi * pi * std::pow(r, 5.5) + 126 * pi * r * r * r - 84 * std::sqrt(r))
         / (84 * pi * std::pow(r, 2.5) * cube(D(p, r)));
}
std::vector<double> singular(const Params& p, const Tolerances& tol) {
  if (p.c1 <= 0) return {};
  auto f = [c1 = p.c1](double s) { return pi * std::pow(s, 5) - c1 * s + 2; };
  auto roots = unimodal_roots(f, 0.0, std::pow(p.c1 / (5 * pi), 0.25), tol);
  for (double& s : roots) s = s * s;
  return roots;
}
}  // namespace r9

// ---------------------------------------------------------------------------
// Row 10: F = r^(3/4) h^2

namespace r10 {
double D(const Params& p, double r) { return -p.c1 * std::pow(r, 0.25) + pi * std::pow(r, 2.25) + 4; }
double h(const Params& p, double r) { return std::pow(r, 0.25) / D(p, r); }
double hp(const Params& p, double r) {
  const double q = std::pow(r, 0.25), d = D(p, r);
  const double dp = -p.c1 * q / (4 * r) + 2.25 * pi * std::pow(r, 1.25);
  return (q / (4 * r) * d - q * dp) / (d * d);
}
double F(const Params& p, double r) { return std::pow(r, 0.75) * h(p, r) * h(p, r); }
double T(const Params& p, double r) {
  return -4 * p.c1 * std::pow(r, 1.75) / 7 + 4 * pi * std::pow(r, 3.75) / 15 + 8 * std::pow(r, 1.5) / 3;
}
double rho(const Params& p, double r) {
  const double c1 = p.c1, c2 = p.c2;
  return (440 * c1 * std::pow(r, 1.75) - 525 * pi * c2 * std::pow(r, 2.25) - 118 * pi * c1 * std::pow(r, 4)
          - 45 * c1 * c1 * r * r + 105 * c1 * c2 * std::pow(r, 0.25) - 210 * c2 - 1120 * std::pow(r, 1.5)
          + 616 * pi * std::pow(r, 3.75) + 35 * pi * pi * std::pow(r, 6))
         / (420 * pi * std::pow(r, 3.5) * cube(D(p, r)));
}
std::vector<double> singular(const Params& p, const Tolerances& tol) {
  if (p.c1 <= 0) return {};
  auto f = [c1 = p.c1](double t) { return pi * std::pow(t, 9) - c1 * t + 4; };
  auto roots = unimodal_roots(f, 0.0, std::pow(p.c1 / (9 * pi), 0.125), tol);
  for (double& t : roots) t = std::pow(t, 4);
  return roots;
}
}  // namespace r10

// ---------------------------------------------------------------------------
// Constant density: M = 4 pi c r^3/3, h = -2c/3

namespace rc {
double h(const Params& p, double) { return -2.0 * p.c / 3.0; }
double F(const Params& p, double r) { return 2 * pi * r * r * r * h(p, r) * h(p, r); }
double rho(const Params& p, double) { return p.c; }
double mass(const Params& p, double r) { return 4 * pi * p.c * r * r * r / 3; }
double mass_prime(const Params& p, double r) { return 4 * pi * p.c * r * r; }
std::vector<double> singular(const Params&, const Tolerances&) { return {}; }
}  // namespace rc

CatalogEntry make(RowId row, std::string name, std::string F_tag, std::string h_text, double lo, ClosedForm F,
                  ClosedForm h, ClosedForm hp, ClosedForm rho, ClosedForm T, ClosedForm M, ClosedForm Mp,
                  std::vector<double> (*singular)(const Params&, const Tolerances&), std::string singular_note) {
  CatalogEntry e{row,  std::move(name), std::move(F_tag), std::move(h_text), "", std::move(singular_note),
                 lo,   true,            F,                h,                 hp, rho,
                 T,    M,               Mp,               singular};
  e.domain_note = lo == 1.0 ? "r > 1; density singular at r = 1" : "r > 0; density singular at r = 0";
  return e;
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> rows;
  rows.push_back(make(RowId::R1, "1", "0", "1/(pi r^2 - c1)", 0.0, zero, r1::h, r1::hp, r1::rho, zero,
                      table_mass<r1::h, zero>, table_mass_prime<zero, r1::h, r1::hp, zero>, r1::singular,
                      "r = sqrt(c1/pi) when c1 > 0"));
  rows.push_back(make(RowId::R2, "2", "h'", "1/(-c1 + pi r^2 + pi log(r^2 - 1))", 1.0, r2::hp, r2::h, r2::hp,
                      r2::rho, r2::T, table_mass<r2::h, r2::T>, table_mass_prime<r2::hp, r2::h, r2::hp, r2::T>,
                      r2::singular, "unique root r > 1 of -c1 + pi r^2 + pi log(r^2 - 1)"));
  rows.push_back(make(RowId::R3, "3", "r h'", "1/(-c1 + pi (r^2 + 2r - 3) + 2 pi log(r - 1))", 1.0, r3::F, r3::h,
                      r3::hp, r3::rho, r3::T, table_mass<r3::h, r3::T>,
                      table_mass_prime<r3::F, r3::h, r3::hp, r3::T>, r3::singular,
                      "unique root r > 1 of -c1 + pi (r^2 + 2r - 3) + 2 pi log(r - 1)"));
  rows.push_back(make(RowId::R4, "4", "h^2", "r/(-c1 r + pi r^3 + 1)", 0.0, r4::F, r4::h, r4::hp, r4::rho, r4::T,
                      table_mass<r4::h, r4::T>, table_mass_prime<r4::F, r4::h, r4::hp, r4::T>, r4::singular,
                      "positive roots of pi r^3 - c1 r + 1"));
  rows.push_back(make(RowId::R5, "5", "r h^2", "1/(-c1 + pi r^2 - log r)", 0.0, r5::F, r5::h, r5::hp, r5::rho, r5::T,
                      table_mass<r5::h, r5::T>, table_mass_prime<r5::F, r5::h, r5::hp, r5::T>, r5::singular,
                      "roots of -c1 + pi r^2 - log r (minimum at r = 1/sqrt(2 pi))"));
  rows.push_back(make(RowId::R6, "6", "r^2 h^2", "1/(-c1 + pi r^2 - r)", 0.0, r6::F, r6::h, r6::hp, r6::rho, r6::T,
                      table_mass<r6::h, r6::T>, table_mass_prime<r6::F, r6::h, r6::hp, r6::T>, r6::singular,
                      "positive roots of pi r^2 - r - c1"));
  rows.push_back(make(RowId::R7, "7", "r^3 h^2", "2/(-2 c1 + 2 pi r^2 - r^2)", 0.0, r7::F, r7::h, r7::hp, r7::rho,
                      r7::T, table_mass<r7::h, r7::T>, table_mass_prime<r7::F, r7::h, r7::hp, r7::T>, r7::singular,
                      "r = sqrt(2 c1/(2 pi - 1)) when c1 > 0"));
  rows.push_back(make(RowId::R8, "8", "h^2/r", "2 r^2/(-2 c1 r^2 + 2 pi r^4 + 1)", 0.0, r8::F, r8::h, r8::hp, r8::rho,
                      r8::T, table_mass<r8::h, r8::T>, table_mass_prime<r8::F, r8::h, r8::hp, r8::T>, r8::singular,
                      "positive roots of 2 pi r^4 - 2 c1 r^2 + 1"));
  rows.push_back(make(RowId::R9, "9", "r^(1/2) h^2", "r^(1/2)/(-c1 r^(1/2) + pi r^(5/2) + 2)", 0.0, r9::F, r9::h,
                      r9::hp, r9::rho, r9::T, table_mass<r9::h, r9::T>,
                      table_mass_prime<r9::F, r9::h, r9::hp, r9::T>, r9::singular,
                      "r = s^2 for positive roots s of pi s^5 - c1 s + 2"));
  rows.push_back(make(RowId::R10, "10", "r^(3/4) h^2", "r^(1/4)/(-c1 r^(1/4) + pi r^(9/4) + 4)", 0.0, r10::F,
                      r10::h, r10::hp, r10::rho, r10::T, table_mass<r10::h, r10::T>,
                      table_mass_prime<r10::F, r10::h, r10::hp, r10::T>, r10::singular,
                      "r = t^4 for positive roots t of pi t^9 - c1 t + 4"));
  CatalogEntry c = make(RowId::Constant, "constant", "2 pi r^3 h^2", "-2c/3", 0.0, rc::F, rc::h, zero, rc::rho,
                        nullptr, rc::mass, rc::mass_prime, rc::singular, "none");
  c.boundary_singular = false;
  c.domain_note = "r > 0; regular everywhere";
  rows.push_back(std::move(c));
  return rows;
}

}  // namespace

// ---------------------------------------------------------------------------
// CatalogEntry

Domain CatalogEntry::domain(const Params& p, const Tolerances& tol) const {
  return Domain({Interval{domain_lo, kInf}}, singular_radii(p, tol));
}

ScalarField CatalogEntry::F_field(const Params& p, const Tolerances& tol) const {
  auto f = F;
  return ScalarField([f, p](double r) { return f(p, r); }, domain(p, tol), "F");
}

ScalarField CatalogEntry::h_field(const Params& p, const Tolerances& tol) const {
  auto f = h;
  return ScalarField([f, p](double r) { return f(p, r); }, domain(p, tol), "h");
}

ScalarField CatalogEntry::rho_field(const Params& p, const Tolerances& tol) const {
  auto f = rho;
  return ScalarField([f, p](double r) { return f(p, r); }, domain(p, tol), "rho");
}

MassModel CatalogEntry::mass_model(const Params& p, const Tolerances& tol) const {
  auto m = mass;
  auto mp = mass_prime;
  const Domain d = domain(p, tol);
  return MassModel{ScalarField([m, p](double r) { return m(p, r); }, d, "M"),
                   ScalarField([mp, p](double r) { return mp(p, r); }, d, "M'")};
}

CouplingSplit CatalogEntry::split(const Params& p, const Tolerances& tol) const {
  auto hp = h_prime;
  return CouplingSplit{h_field(p, tol), ScalarField([hp, p](double r) { return hp(p, r); }, domain(p, tol), "h'"),
                       1};
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> rows = build();
  return rows;
}

const CatalogEntry& entry(RowId row) {
  const int k = static_cast<int>(row);
  if (k < 1 || k > 11) fail(ErrorCode::UnknownRow, "unknown row " + std::to_string(k));
  return catalog()[static_cast<std::size_t>(k - 1)];
}

const CatalogEntry& entry(std::string_view name) {
  if (name == "sec33") return entry(RowId::R4);
  for (const auto& e : catalog())
    if (e.name == name) return e;
  fail(ErrorCode::UnknownRow, "unknown row '" + std::string(name) + "' (expected 1..10, constant or sec33)");
}

const CatalogEntry& typeset_row2() {
  static const CatalogEntry e = [] {
    CatalogEntry t = entry(RowId::R2);
    t.name = "2-typeset";
    t.rho = r2::rho_typeset;
    return t;
  }();
  return e;
}

double density(const CatalogEntry& e, const Params& p, double r, const Tolerances& tol) {
  if (!(r > e.domain_lo) || (e.boundary_singular && r - e.domain_lo <= guard_width(e.domain_lo, tol.guard_band)))
    fail(ErrorCode::SingularRadius, "r = " + num(r) + " is outside the domain of row " + e.name);
  for (double s : e.singular_radii(p, tol))
    if (std::abs(r - s) <= guard_width(s, tol.guard_band))
      fail(ErrorCode::SingularRadius, "r = " + num(r) + " is a singular radius of row " + e.name);
  return e.rho(p, r);
}

double row2_root(double c1, const Tolerances& tol) {
  auto g = [c1](double u) { return -c1 + pi * (1 + u) * (1 + u) + pi * std::log(u * (2 + u)); };
  return 1.0 + increasing_root(g, tol);
}

// ---------------------------------------------------------------------------
// Verification

std::vector<double> standard_grid(const CatalogEntry& e, const Params& p, std::size_t n, const Tolerances& tol,
                                  double r_hi, double margin) {
  std::vector<double> cuts{e.domain_lo};
  for (double s : e.singular_radii(p, tol))
    if (s < r_hi) cuts.push_back(s);
  cuts.push_back(r_hi);
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i] + margin * std::max(1.0, std::abs(cuts[i]));
    const double hi = i + 2 == cuts.size() ? cuts[i + 1] : cuts[i + 1] - margin * std::max(1.0, std::abs(cuts[i + 1]));
    if (lo < hi) pieces.push_back({lo, hi});
  }
  if (pieces.empty()) fail(ErrorCode::EmptyDomain, "no regular radii below " + num(r_hi));
  return sample_grid(Domain(std::move(pieces)), n, GridScale::Linear, tol, r_hi);
}

namespace {

void record(ResidualStat& s, double value, double r) {
  if (!(value <= s.max) || std::isnan(value)) {
    s.max = std::isnan(value) ? kInf : value;
    s.at_r = r;
  }
}

double piece_base(const Interval& piece, double preferred) {
  const double pad = 1e-3 * std::max(1.0, std::abs(piece.lo));
  if (preferred > piece.lo + pad && preferred < piece.hi - pad) return preferred;
  if (std::isinf(piece.hi)) return piece.lo + std::max(1.0, piece.lo);
  return 0.5 * (piece.lo + piece.hi);
}

}  // namespace

VerificationReport verify_entry(const CatalogEntry& e, const Params& p, const std::vector<double>& grid,
                                const Tolerances& tol, double base) {
  VerificationReport rep;
  rep.row = e.name;
  rep.params = p;
  rep.samples = grid.size();
  rep.coupling.applicable = e.is_constant();
  rep.lambda0.applicable = !e.is_constant();

  const ScalarField F = e.F_field(p, tol);
  const ScalarField h = e.h_field(p, tol);
  const CouplingSplit split = e.split(p, tol);
  const MassModel closed = e.mass_model(p, tol);
  const auto pieces = h.domain().regular_pieces();

  std::vector<std::pair<Interval, MassModel>> quad;
  if (!e.is_constant()) {
    for (const auto& piece : pieces) {
      const double b = piece_base(piece, base);
      IntegrabilityParams ip;
      ip.c1 = p.c1;
      ip.c2 = p.c2 - e.antiderivative(p, b);
      ip.base = b;
      quad.emplace_back(piece, quadrature_mass(F, h, ip, tol));
    }
  }

  for (double r : grid) {
    try {
      const double Fv = F(r);
      const double hv = h(r);
      const double hp_fd = derivative(h, r, tol);
      const double a = 2 * kPi * r * r * r * hv * hv;
      record(rep.h_ode, relative_residual(Fv - (a + r * r * hp_fd), {Fv, a, r * r * hp_fd}), r);

      const MassModel* m = &closed;
      for (const auto& [piece, model] : quad)
        if (piece.contains(r)) m = &model;
      const double M = m->M(r);
      const double Mp = m->M_prime(r);
      const double rho = e.rho(p, r);
      record(rep.continuity, relative_residual(Mp - 4 * kPi * r * r * rho, {Mp, 4 * kPi * r * r * rho}), r);

      if (e.is_constant()) {
        const auto c = riccati_coefficients(*m, r, tol);
        const double At = modified_A(*m, split, r, tol);
        record(rep.coupling, relative_residual(At - c.A, {At, c.A}), r);
      } else {
        const double hpv = split.h_prime(r);
        const double t1 = (2 * hpv / hv - 1 / r) * M;
        const double t2 = 2 * kPi * r * r * hv;
        const double t3 = r * hpv / hv;
        record(rep.lambda0, relative_residual(Mp - t1 + t2 + t3, {Mp, t1, t2, t3}), r);
      }
    } catch (const Error& err) {
      rep.diagnostics.push_back("row " + e.name + ": evaluation failed at r = " + num(r, 8) + ": " + err.what());
    }
  }

  auto check = [&](const ResidualStat& s, const char* what, const char* meaning) {
    if (s.applicable && !(s.max < tol.residual_tol)) {
      rep.diagnostics.push_back("row " + e.name + ": " + what + " residual " + num(s.max, 3) + " at r = " +
                                num(s.at_r, 8) + " exceeds " + num(tol.residual_tol, 3) + " (" + meaning + ")");
    }
  };
  check(rep.h_ode, "h-ODE", "h does not solve F = 2 pi r^3 h^2 + r^2 h'");
  check(rep.lambda0, "Lambda0", "the reconstructed mass does not solve the linear part");
  check(rep.continuity, "continuity", "closed-form density disagrees with M'/(4 pi r^2)");
  check(rep.coupling, "coupling", "modified A differs from A");
  rep.passed = rep.diagnostics.empty();
  return rep;
}

double independence_gram(const std::vector<std::pair<const CatalogEntry*, Params>>& entries,
                         const std::vector<double>& grid, const Tolerances& tol) {
  if (entries.empty()) fail(ErrorCode::InvalidArgument, "no entries");
  if (grid.size() < entries.size())
    fail(ErrorCode::DomainMismatch, "grid has fewer points than entries");
  Eigen::MatrixXd V(static_cast<Eigen::Index>(entries.size()), static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& [e, p] = entries[i];
    const Domain d = e->domain(p, tol);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double r = grid[j];
      if (!d.contains(r) || d.near_excluded(r, tol.guard_band))
        fail(ErrorCode::DomainMismatch, "r = " + num(r) + " is not a regular radius of row " + e->name);
      V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e->mass(p, r);
    }
    const double norm = V.row(static_cast<Eigen::Index>(i)).norm();
    if (!(norm > 0) || !std::isfinite(norm))
      fail(ErrorCode::DomainMismatch, "mass of row " + e->name + " vanishes or is not finite on the grid");
    V.row(static_cast<Eigen::Index>(i)) /= norm;
  }
  const Eigen::MatrixXd G = V * V.transpose();
  return G.determinant();
}

}  // namespace tovlab
