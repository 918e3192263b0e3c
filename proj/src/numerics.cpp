#include "tovlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "tovlab/error.hpp"

namespace tovlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxSegments = 4000;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

void Tolerances::validate() const {
  const bool ok = quad_rel > 0 && quad_rel < 1 && quad_abs > 0 && root_tol > 0 && fd_step > 0 &&
                  residual_tol > 0 && guard_band > 0;
  if (!ok) fail(ErrorCode::InvalidArgument, "tolerances must be positive and quad_rel < 1");
}

// ---------------------------------------------------------------------------
// Domain

Domain::Domain(std::vector<Interval> intervals, std::vector<double> excluded)
    : intervals_(std::move(intervals)), excluded_(std::move(excluded)) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (!(iv.lo < iv.hi)) fail(ErrorCode::InvalidArgument, "interval with lo >= hi");
    if (i > 0 && intervals_[i - 1].hi > iv.lo)
      fail(ErrorCode::InvalidArgument, "intervals must be sorted and pairwise disjoint");
  }
  std::sort(excluded_.begin(), excluded_.end());
  excluded_.erase(std::unique(excluded_.begin(), excluded_.end()), excluded_.end());
  for (double x : excluded_) {
    if (!contains(x)) fail(ErrorCode::InvalidArgument, "excluded point " + fmt(x) + " lies outside the domain");
  }
}

Domain Domain::open(double lo, double hi) { return Domain({Interval{lo, hi}}); }

bool Domain::contains(double r) const noexcept { return interval_of(r).has_value(); }

std::optional<Interval> Domain::interval_of(double r) const noexcept {
  for (const auto& iv : intervals_)
    if (iv.contains(r)) return iv;
  return std::nullopt;
}

bool Domain::near_excluded(double r, double guard) const noexcept {
  return std::any_of(excluded_.begin(), excluded_.end(),
                     [&](double x) { return std::abs(r - x) <= guard_width(x, guard); });
}

bool Domain::path_is_regular(double a, double b) const noexcept {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const bool same = std::any_of(intervals_.begin(), intervals_.end(),
                                [&](const Interval& iv) { return lo >= iv.lo && hi <= iv.hi; });
  if (!same) return false;
  return std::none_of(excluded_.begin(), excluded_.end(),
                      [&](double x) { return x >= lo && x <= hi; });
}

Domain Domain::with_excluded(const std::vector<double>& extra) const {
  std::vector<double> all = excluded_;
  for (double x : extra)
    if (contains(x)) all.push_back(x);
  return Domain(intervals_, std::move(all));
}

Domain Domain::intersect(const Interval& window) const {
  std::vector<Interval> out;
  for (const auto& iv : intervals_) {
    const double lo = std::max(iv.lo, window.lo);
    const double hi = std::min(iv.hi, window.hi);
    if (lo < hi) out.push_back({lo, hi});
  }
  std::vector<double> ex;
  Domain d(std::move(out));
  for (double x : excluded_)
    if (d.contains(x)) ex.push_back(x);
  return Domain(d.intervals_, std::move(ex));
}

std::vector<Interval> Domain::regular_pieces() const {
  std::vector<Interval> out;
  for (const auto& iv : intervals_) {
    double lo = iv.lo;
    for (double x : excluded_) {
      if (x > iv.lo && x < iv.hi) {
        out.push_back({lo, x});
        lo = x;
      }
    }
    out.push_back({lo, iv.hi});
  }
  return out;
}

// ---------------------------------------------------------------------------
// ScalarField

ScalarField::ScalarField(Fn eval, Domain domain, std::string label)
    : eval_(std::move(eval)), domain_(std::move(domain)), label_(std::move(label)) {}

ScalarField ScalarField::with_domain(Domain domain) const {
  return ScalarField(eval_, std::move(domain), label_);
}

double relative_residual(double residual, std::initializer_list<double> terms) {
  double scale = 0.0;
  for (double t : terms) scale = std::max(scale, std::abs(t));
  return std::abs(residual) / (1.0 + scale);
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

struct Piece {
  double a;
  double b;
  double value;
  double error;
  double l1;
  bool operator<(const Piece& o) const { return error < o.error; }
};

}  // namespace

double integrate_fn(const std::function<double(double)>& f, double a, double b,
                    const Tolerances& tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_fn(f, b, a, tol);
  if (!std::isfinite(a)) fail(ErrorCode::InvalidArgument, "lower limit must be finite");

  std::function<double(double)> g;
  double lo = a;
  double hi = b;
  if (std::isinf(b)) {
    // r = a + t/(1-t), dr = dt/(1-t)^2; Kronrod nodes never touch t = 1.
    g = [&f, a](double t) {
      const double u = 1.0 - t;
      return f(a + t / u) / (u * u);
    };
    lo = 0.0;
    hi = 1.0;
  } else {
    g = f;
  }
  auto checked = [&g](double x) {
    const double v = g(x);
    if (!std::isfinite(v)) fail(ErrorCode::NonFiniteSample, "integrand is not finite at t = " + fmt(x));
    return v;
  };

  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  auto rule = [&](double l, double h) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = GK::integrate(checked, l, h, 0, 0.0, &err, &l1);
    // With max_depth = 0 Boost reports the error of the rule on [-1, 1]
    // without the (h - l)/2 Jacobian; L1 is already scaled.
    return Piece{l, h, v, err * 0.5 * (h - l), l1};
  };

  std::priority_queue<Piece> queue;
  queue.push(rule(lo, hi));
  double total = queue.top().value;
  double total_err = queue.top().error;
  double total_l1 = queue.top().l1;

  auto converged = [&] {
    const double target = std::max({tol.quad_abs, tol.quad_rel * std::abs(total), 50.0 * kEps * total_l1});
    return total_err <= target;
  };

  while (!converged()) {
    if (queue.size() >= kMaxSegments)
      fail(ErrorCode::NoConvergence, "subdivision limit reached on [" + fmt(a) + ", " + fmt(b) + "]");
    Piece worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      fail(ErrorCode::NoConvergence, "interval cannot be subdivided further near " + fmt(worst.a));
    Piece left = rule(worst.a, mid);
    Piece right = rule(mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum to avoid drift from the incremental updates.
  double sum = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    queue.pop();
  }
  return sum;
}

double integrate(const ScalarField& f, double a, double b, const Tolerances& tol) {
  const Domain& d = f.domain();
  bool ok = false;
  if (std::isinf(b) && b > 0) {
    const auto iv = d.interval_of(a);
    ok = iv && std::isinf(iv->hi) &&
         std::none_of(d.excluded().begin(), d.excluded().end(), [a](double x) { return x >= a; });
  } else {
    ok = d.path_is_regular(a, b);
  }
  if (!ok)
    fail(ErrorCode::InvalidArgument,
         "[" + fmt(a) + ", " + fmt(b) + "] is not inside one interval free of excluded points");
  return integrate_fn(f.function(), a, b, tol);
}

// ---------------------------------------------------------------------------
// Roots

double find_root_fn(const std::function<double(double)>& f, double lo, double hi,
                    const Tolerances& tol) {
  if (lo > hi) std::swap(lo, hi);
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(std::isfinite(flo) && std::isfinite(fhi)) || std::signbit(flo) == std::signbit(fhi))
    fail(ErrorCode::NoSignChange, "no sign change on [" + fmt(lo) + ", " + fmt(hi) + "]");

  const double root_tol = tol.root_tol;
  auto width_ok = [root_tol](double a, double b) {
    return std::abs(b - a) <= std::max(root_tol, 4.0 * kEps * std::max(std::abs(a), std::abs(b)));
  };
  std::uintmax_t max_iter = 500;
  const auto bracket = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, width_ok, max_iter);
  if (!width_ok(bracket.first, bracket.second))
    fail(ErrorCode::NoConvergence, "root bracket did not shrink below root_tol");
  const double fa = f(bracket.first);
  const double fb = f(bracket.second);
  return std::abs(fa) <= std::abs(fb) ? bracket.first : bracket.second;
}

double find_root(const ScalarField& f, double lo, double hi, const Tolerances& tol) {
  return find_root_fn(f.function(), lo, hi, tol);
}

// ---------------------------------------------------------------------------
// Finite differences

double derivative_fn(const std::function<double(double)>& f, double r, const Tolerances& tol) {
  auto central = [&](double step) {
    const double up = r + step;
    const double down = r - step;
    return (f(up) - f(down)) / (up - down);
  };
  const double h = tol.fd_step * std::max(1.0, std::abs(r));
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

double derivative(const ScalarField& f, double r, const Tolerances& tol) {
  const double h = tol.fd_step * std::max(1.0, std::abs(r));
  const auto iv = f.domain().interval_of(r);
  if (!iv || r - 2 * h <= iv->lo || r + 2 * h >= iv->hi)
    fail(ErrorCode::TooCloseToSingularity, "r = " + fmt(r) + " is within 2 steps of the domain boundary");
  for (double x : f.domain().excluded())
    if (std::abs(r - x) <= 2 * h + guard_width(x, tol.guard_band))
      fail(ErrorCode::TooCloseToSingularity, "r = " + fmt(r) + " is within 2 steps of excluded point " + fmt(x));
  return derivative_fn(f.function(), r, tol);
}

// ---------------------------------------------------------------------------
// Grids

std::vector<double> sample_grid(const Domain& d, std::size_t n, GridScale scale,
                                const Tolerances& tol, double r_max) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "sample_grid needs n >= 2");
  std::vector<Interval> pieces;
  for (const auto& iv : d.intervals()) {
    const double hi = std::min(iv.hi, r_max);
    if (iv.lo < hi) pieces.push_back({iv.lo, hi});
  }
  if (pieces.empty()) fail(ErrorCode::EmptyDomain, "domain is empty below r_max");
  if (scale == GridScale::Log && pieces.front().lo <= 0.0)
    fail(ErrorCode::InvalidArgument, "log-scale grids need lo > 0");

  auto measure = [scale](const Interval& iv) {
    return scale == GridScale::Log ? std::log(iv.hi / iv.lo) : iv.hi - iv.lo;
  };
  double total = 0.0;
  for (const auto& p : pieces) total += measure(p);

  // Allocate points proportionally; remainder goes to the widest pieces.
  std::vector<std::size_t> counts(pieces.size(), 0);
  std::size_t used = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    counts[i] = static_cast<std::size_t>(std::floor(static_cast<double>(n) * measure(pieces[i]) / total));
    used += counts[i];
  }
  std::vector<std::size_t> order(pieces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return measure(pieces[a]) > measure(pieces[b]); });
  for (std::size_t k = 0; used < n; ++k, ++used) counts[order[k % order.size()]] += 1;

  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    const std::size_t m = counts[i];
    for (std::size_t j = 0; j < m; ++j) {
      const double u = static_cast<double>(j + 1) / static_cast<double>(m + 1);
      double r = scale == GridScale::Log ? p.lo * std::pow(p.hi / p.lo, u) : p.lo + (p.hi - p.lo) * u;
      for (double x : d.excluded()) {
        const double band = guard_width(x, tol.guard_band);
        if (std::abs(r - x) <= band) r = r >= x ? x + 2 * band : x - 2 * band;
      }
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tovlab
