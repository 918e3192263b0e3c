#include "tovlab/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tovlab/error.hpp"

namespace tovlab {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

constexpr std::size_t kMaxNodes = 20000;
constexpr int kInitialCells = 16;

}  // namespace

CouplingSplit CouplingSplit::with_fd_derivative(ScalarField h, const Tolerances& tol) {
  auto f = h.function();
  ScalarField hp([f, tol](double r) { return derivative_fn(f, r, tol); }, h.domain(), h.label() + "'");
  return CouplingSplit{std::move(h), std::move(hp), 1};
}

double CouplingSplit::lambda0(double M, double Mp, double r) const {
  const double hv = h(r);
  const double hp = h_prime(r);
  return Mp - (2.0 * hp / hv - 1.0 / r) * M + 2.0 * kPi * r * r * hv + r * hp / hv;
}

double CouplingSplit::lambda1(double M, double Mp, double r) const {
  return M * Mp / (2.0 * kPi * r * r * r * h(r));
}

double h_ode_residual(const ScalarField& F, const ScalarField& h, double r, const Tolerances& tol) {
  const double hv = h(r);
  const double hp = derivative(h, r, tol);
  return F(r) - (2.0 * kPi * r * r * r * hv * hv + r * r * hp);
}

namespace {

std::function<double(double)> mass_integrand(const ScalarField& F, const ScalarField& h) {
  auto f = F.function();
  auto g = h.function();
  return [f, g](double s) {
    const double hv = g(s);
    return f(s) / (hv * hv * hv);
  };
}

}  // namespace

double mass_from_h(const ScalarField& F, const ScalarField& h, const IntegrabilityParams& params,
                   double r, const Tolerances& tol) {
  if (!h.domain().path_is_regular(params.base, r))
    fail(ErrorCode::PathCrossesSingularity,
         "path from base " + num(params.base) + " to " + num(r) + " leaves a regular interval");
  const double hv = h(r);
  if (hv == 0.0 || !std::isfinite(hv)) fail(ErrorCode::ZeroH, "h(" + num(r) + ") = " + num(hv));
  const double I = integrate_fn(mass_integrand(F, h), params.base, r, tol);
  return hv * hv / r * (params.c2 - I);
}

MassModel quadrature_mass(const ScalarField& F, const ScalarField& h, const IntegrabilityParams& params,
                          const Tolerances& tol) {
  ScalarField M([F, h, params, tol](double r) { return mass_from_h(F, h, params, r, tol); }, h.domain(),
                "M");
  auto integrand = mass_integrand(F, h);
  auto hf = h.function();
  ScalarField Mp(
      [=](double r) {
        if (!h.domain().path_is_regular(params.base, r))
          fail(ErrorCode::PathCrossesSingularity, "path from base to " + num(r) + " leaves a regular interval");
        const double I = integrate_fn(integrand, params.base, r, tol);
        auto local = [&](double x) {
          const double hv = hf(x);
          return hv * hv / x * (params.c2 - I - integrate_fn(integrand, r, x, tol));
        };
        return derivative_fn(local, r, tol);
      },
      h.domain(), "M'");
  return MassModel{std::move(M), std::move(Mp)};
}

double modified_A(const MassModel& m, const CouplingSplit& split, double r, const Tolerances& tol) {
  const auto c = riccati_coefficients(m, r, tol);
  if (std::abs(c.C) <= tol.guard_band) fail(ErrorCode::ZeroC, "C vanishes at r = " + num(r));
  const double hv = split.h(r);
  return 0.5 * split.h_prime(r) - 0.5 * c.B * hv - 0.25 * c.C * hv * hv;
}

double lambda0_residual(const CouplingSplit& split, const MassModel& m, double r, const Tolerances&) {
  if (!(r > 0)) fail(ErrorCode::InvalidArgument, "radius must be positive");
  const double hv = split.h(r);
  if (hv == 0.0) fail(ErrorCode::ZeroH, "h(" + num(r) + ") = 0");
  return split.lambda0(m.M(r), m.M_prime(r), r);
}

// ---------------------------------------------------------------------------
// PressureSolver

PressureSolver::PressureSolver(MassModel m, CouplingSplit split, double c0, double base, Interval window,
                               const Tolerances& tol)
    : mass_(std::move(m)), split_(std::move(split)), c0_(c0), base_(base), window_(window), tol_(tol) {
  if (!(window.lo < window.hi) || base < window.lo || base > window.hi || !std::isfinite(window.hi))
    fail(ErrorCode::InvalidArgument, "pressure window must be finite and contain the base point");
  if (!split_.h.domain().path_is_regular(window.lo, window.hi))
    fail(ErrorCode::PathCrossesSingularity,
         "window [" + num(window.lo) + ", " + num(window.hi) + "] crosses a singular radius");

  const auto c = riccati_coefficients(mass_, base, tol_);
  nodes_.push_back({base, 0.0, integrand_phi(base), 0.0, c.C});
  if (window.hi > base) build_side(window.hi);
  if (window.lo < base) build_side(window.lo);
  std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.r < b.r; });

  auto denom = [this](double r) { return denominator(r); };
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double a = c0_ - nodes_[i].psi;
    const double b = c0_ - nodes_[i + 1].psi;
    if (a == 0.0) poles_.push_back(nodes_[i].r);
    else if ((a < 0) != (b < 0) && b != 0.0)
      poles_.push_back(find_root_fn(denom, nodes_[i].r, nodes_[i + 1].r, tol_));
  }
  if (c0_ - nodes_.back().psi == 0.0) poles_.push_back(nodes_.back().r);
}

double PressureSolver::integrand_phi(double r) const {
  const auto c = riccati_coefficients(mass_, r, tol_);
  return c.B + c.C * split_.h(r);
}

void PressureSolver::build_side(double to) {
  Node cur = nodes_.front();
  const double span = to - base_;
  const double min_width = 1e-9 * std::abs(span);
  const double accept = 1e-4 * tol_.residual_tol;

  std::vector<double> targets;
  for (int k = kInitialCells; k >= 1; --k) targets.push_back(k == kInitialCells ? to : base_ + span * k / kInitialCells);

  auto g = [this](double s) { return integrand_phi(s); };
  while (!targets.empty()) {
    if (nodes_.size() > kMaxNodes) fail(ErrorCode::NoConvergence, "pressure tabulation exceeded node limit");
    const double a = cur.r;
    const double b = targets.back();
    const double mid = 0.5 * (a + b);
    auto E = [&](double s) { return std::exp(cur.phi + integrate_fn(g, a, s, tol_)); };
    auto CE = [&](double s) { return riccati_coefficients(mass_, s, tol_).C * E(s); };

    Node nb;
    nb.r = b;
    nb.phi = cur.phi + integrate_fn(g, a, b, tol_);
    nb.dphi = g(b);
    nb.psi = cur.psi + integrate_fn(CE, a, b, tol_);
    nb.dpsi = riccati_coefficients(mass_, b, tol_).C * std::exp(nb.phi);

    const double phi_mid = cur.phi + integrate_fn(g, a, mid, tol_);
    const double psi_mid = cur.psi + integrate_fn(CE, a, mid, tol_);
    const double H = b - a;
    const double pred_phi = 0.5 * (cur.phi + nb.phi) + H * (cur.dphi - nb.dphi) / 8.0;
    const double pred_psi = 0.5 * (cur.psi + nb.psi) + H * (cur.dpsi - nb.dpsi) / 8.0;
    const bool ok = std::abs(pred_phi - phi_mid) <= accept * (1.0 + std::abs(phi_mid)) &&
                    std::abs(pred_psi - psi_mid) <= accept * (1.0 + std::abs(psi_mid));
    if (ok) {
      nodes_.push_back(nb);
      cur = nb;
      targets.pop_back();
    } else {
      if (std::abs(H) < min_width)
        fail(ErrorCode::NoConvergence, "pressure tabulation cannot resolve r = " + num(a));
      targets.push_back(mid);
    }
  }
}

std::size_t PressureSolver::cell_of(double r) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r, [](double x, const Node& n) { return x < n.r; });
  std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(i, nodes_.size() - 2);
}

double PressureSolver::hermite(double r, double Node::*value, double Node::*slope) const {
  const double span = window_.hi - window_.lo;
  if (r < window_.lo - 1e-12 * span || r > window_.hi + 1e-12 * span)
    fail(ErrorCode::InvalidArgument, "r = " + num(r) + " lies outside the tabulated window");
  const auto& n0 = nodes_[cell_of(r)];
  const auto& n1 = nodes_[cell_of(r) + 1];
  const double H = n1.r - n0.r;
  const double t = (r - n0.r) / H;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * (n0.*value) + (t3 - 2 * t2 + t) * H * (n0.*slope) +
         (-2 * t3 + 3 * t2) * (n1.*value) + (t3 - t2) * H * (n1.*slope);
}

double PressureSolver::phi(double r) const { return hermite(r, &Node::phi, &Node::dphi); }
double PressureSolver::psi(double r) const { return hermite(r, &Node::psi, &Node::dpsi); }

bool PressureSolver::near_pole(double r) const {
  if (std::abs(denominator(r)) <= tol_.guard_band * std::max(1.0, std::abs(c0_))) return true;
  return std::any_of(poles_.begin(), poles_.end(),
                     [&](double p) { return std::abs(r - p) <= guard_width(p, tol_.guard_band); });
}

double PressureSolver::operator()(double r) const {
  if (near_pole(r)) fail(ErrorCode::ZeroDenominator, "pressure has a pole near r = " + num(r));
  return std::exp(phi(r)) / denominator(r) + 0.5 * split_.h(r);
}

ScalarField PressureSolver::field() const {
  const PressureSolver self = *this;
  return ScalarField([self](double r) { return self(r); }, Domain::open(window_.lo, window_.hi), "p");
}

RiccatiCoefficients PressureSolver::modified_coefficients(double r) const {
  auto c = riccati_coefficients(mass_, r, tol_);
  c.A = modified_A(mass_, split_, r, tol_);
  return c;
}

double pressure_solution(const MassModel& m, const CouplingSplit& split, double c0, double r, double base,
                         const Tolerances& tol) {
  if (r == base) {
    if (std::abs(c0) <= tol.guard_band) fail(ErrorCode::ZeroDenominator, "c0 vanishes");
    return 1.0 / c0 + 0.5 * split.h(r);
  }
  PressureSolver solver(m, split, c0, base, Interval{std::min(r, base), std::max(r, base)}, tol);
  return solver(r);
}

TailReport pseudo_limit_check(const CouplingSplit& split, const MassModel& m, const std::vector<double>& r_tail,
                              const Tolerances& tol) {
  TailReport report;
  for (double r : r_tail) report.samples.push_back({r, split.lambda1(m.M(r), m.M_prime(r), r)});
  const auto& s = report.samples;
  if (s.empty()) return report;

  report.eventually_decreasing = true;
  for (std::size_t i = s.size() / 2; i + 1 < s.size(); ++i) {
    const double a = std::abs(s[i].lambda1);
    const double b = std::abs(s[i + 1].lambda1);
    if (b > a * (1.0 + 1e-12)) report.eventually_decreasing = false;
  }
  report.limit_estimate = s.back().lambda1;
  if (s.size() >= 3) {
    const double x0 = s[s.size() - 3].lambda1;
    const double x1 = s[s.size() - 2].lambda1;
    const double x2 = s.back().lambda1;
    const double d1 = x1 - x0;
    const double d2 = x2 - x1;
    if (std::abs(d2) < std::abs(d1) && d2 != d1) report.limit_estimate = x2 - d2 * d2 / (d2 - d1);
  }
  report.passes = report.eventually_decreasing && std::abs(report.limit_estimate) <= tol.residual_tol &&
                  std::all_of(s.begin(), s.end(), [](const TailSample& t) { return std::isfinite(t.lambda1); });
  return report;
}

}  // namespace tovlab
