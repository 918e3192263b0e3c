#include "tovlab/extended_line.hpp"

#include <algorithm>
#include <cmath>

#include "tovlab/error.hpp"

namespace tovlab {

double phi(double x) noexcept {
  if (std::isinf(x)) return x > 0 ? 1.0 : -1.0;
  return x / (1.0 + std::abs(x));
}

double phi_inverse(double y) noexcept {
  if (y >= 1.0) return kInf;
  if (y <= -1.0) return -kInf;
  return y / (1.0 - std::abs(y));
}

double extended_value(const ScalarField& f, double x) {
  return f.domain().contains(x) ? f(x) : 0.0;
}

namespace {

const double kLadderA[] = {1e3, 1e4, 1e5, 1e6};
const double kLadderB[] = {2e3, 2e4, 2e5, 2e6};

struct Ladder {
  double limit = 0.0;
  bool converged = false;
};

Ladder analyse(const std::vector<double>& v, const Tolerances& tol) {
  Ladder out;
  const std::size_t n = v.size();
  const double x0 = v[n - 3], x1 = v[n - 2], x2 = v[n - 1];
  const double d1 = x1 - x0, d2 = x2 - x1;
  out.limit = x2;
  if (d2 != d1 && std::abs(d2) < std::abs(d1)) out.limit = x2 - d2 * d2 / (d2 - d1);
  if (!std::isfinite(out.limit)) return out;

  const double negligible = 1e-3 * tol.residual_tol * (1.0 + std::abs(x2));
  out.converged = true;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double a = std::abs(v[i + 1] - v[i]);
    const double b = std::abs(v[i + 2] - v[i + 1]);
    if (!(b <= negligible || b <= 0.9 * a)) out.converged = false;
  }
  return out;
}

}  // namespace

LimitEstimate estimate_limit(const ScalarField& f, Side side, const Tolerances& tol) {
  LimitEstimate est;
  const double sign = side == Side::PlusInf ? 1.0 : -1.0;
  for (double r : kLadderA) {
    est.radii_a.push_back(sign * r);
    est.values_a.push_back(extended_value(f, sign * r));
  }
  for (double r : kLadderB) {
    est.radii_b.push_back(sign * r);
    est.values_b.push_back(extended_value(f, sign * r));
  }
  const auto all_finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!all_finite(est.values_a) || !all_finite(est.values_b)) return est;
  const Ladder a = analyse(est.values_a, tol);
  const Ladder b = analyse(est.values_b, tol);
  est.limit_a = a.limit;
  est.limit_b = b.limit;
  const double L = 0.5 * (a.limit + b.limit);
  if (a.converged && b.converged && std::abs(a.limit - b.limit) <= tol.residual_tol * (1.0 + std::abs(L))) {
    est.verdict = TailVerdict::Converged;
    est.value = L;
  }
  return est;
}

ExtendedField::ExtendedField(ScalarField base, LimitEstimate plus, LimitEstimate minus)
    : base_(std::move(base)), plus_(std::move(plus)), minus_(std::move(minus)) {}

double ExtendedField::operator()(double x) const {
  if (std::isinf(x)) {
    const auto& v = x > 0 ? plus_.value : minus_.value;
    if (!v) fail(ErrorCode::NoConvergence, "the field has no limit at this end");
    return *v;
  }
  return extended_value(base_, x);
}

ExtendedField extend(const ScalarField& f, const Tolerances& tol) {
  return ExtendedField(f, estimate_limit(f, Side::PlusInf, tol), estimate_limit(f, Side::MinusInf, tol));
}

std::string to_string(Side s) { return s == Side::PlusInf ? "plus_inf" : "minus_inf"; }
std::string to_string(TailVerdict v) { return v == TailVerdict::Converged ? "converged" : "oscillation"; }
std::string to_string(LemmaCondition c) {
  switch (c) {
    case LemmaCondition::C1: return "c1";
    case LemmaCondition::C2: return "c2";
    case LemmaCondition::Both: return "both";
    case LemmaCondition::Neither: return "neither";
  }
  return "neither";
}

std::vector<double> tail_window(Side side, std::size_t n, double from, double to) {
  std::vector<double> w;
  const double sign = side == Side::PlusInf ? 1.0 : -1.0;
  for (std::size_t i = 0; i < n; ++i)
    w.push_back(sign * from * std::pow(to / from, static_cast<double>(i) / static_cast<double>(n - 1)));
  return w;
}

Certificate tail_certificate(const ScalarField& f, Side side, const std::vector<double>& window,
                             const Tolerances& tol) {
  if (window.size() < 8) fail(ErrorCode::InvalidArgument, "tail window needs at least 8 radii");
  for (std::size_t i = 0; i + 1 < window.size(); ++i) {
    const bool toward = side == Side::PlusInf ? window[i + 1] > window[i] : window[i + 1] < window[i];
    if (!toward) fail(ErrorCode::InvalidArgument, "tail window must be sorted toward the chosen infinity");
  }

  Certificate c;
  c.side = side;
  c.window = window;
  for (double r : window) c.values.push_back(extended_value(f, r));

  const auto est = estimate_limit(f, side, tol);
  c.verdict = est.verdict;
  c.limit_estimate = est.value;
  c.limit_zero = est.value && std::abs(*est.value) <= tol.residual_tol;

  // Read the samples in increasing r.
  std::vector<double> v = c.values;
  if (side == Side::MinusInf) std::reverse(v.begin(), v.end());

  const bool all_pos = std::all_of(v.begin(), v.end(), [](double x) { return x > 0; });
  const bool all_neg = std::all_of(v.begin(), v.end(), [](double x) { return x < 0; });
  const bool all_zero = std::all_of(v.begin(), v.end(), [](double x) { return x == 0; });
  const bool non_neg = std::all_of(v.begin(), v.end(), [](double x) { return x >= 0; });
  const bool non_pos = std::all_of(v.begin(), v.end(), [](double x) { return x <= 0; });
  c.sign_pattern = all_zero ? "zero"
                   : all_pos ? "positive"
                   : all_neg ? "negative"
                   : non_neg ? "non-negative"
                   : non_pos ? "non-positive"
                             : "mixed";

  bool inc = true, dec = true, strict_inc = true, strict_dec = true;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] < v[i]) inc = strict_inc = false;
    if (v[i + 1] > v[i]) dec = strict_dec = false;
    if (v[i + 1] == v[i]) strict_inc = strict_dec = false;
  }
  c.monotone_pattern = inc && dec       ? "constant"
                       : strict_inc     ? "increasing"
                       : strict_dec     ? "decreasing"
                       : inc            ? "non-decreasing"
                       : dec            ? "non-increasing"
                                        : "non-monotone";

  const bool c1 = non_neg && inc;
  const bool c2 = non_pos && dec;
  c.condition = c1 && c2 ? LemmaCondition::Both
                : c1     ? LemmaCondition::C1
                : c2     ? LemmaCondition::C2
                         : LemmaCondition::Neither;
  c.certifies_vanishing = c.limit_zero && c.condition != LemmaCondition::Neither;
  c.lemma_mismatch = c.limit_zero && c.condition == LemmaCondition::Neither;
  return c;
}

}  // namespace tovlab
