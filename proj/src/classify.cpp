#include "tovlab/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "tovlab/error.hpp"

namespace tovlab {

char matter_code(Matter m) noexcept {
  switch (m) {
    case Matter::Ordinary: return 'O';
    case Matter::Exotic: return 'X';
    case Matter::Vacuum: return 'V';
  }
  return '?';
}

std::string to_string(Matter m) {
  switch (m) {
    case Matter::Ordinary: return "ordinary";
    case Matter::Exotic: return "exotic";
    case Matter::Vacuum: return "vacuum";
  }
  return "?";
}

std::string to_string(ScanParameter p) { return p == ScanParameter::C1 ? "c1" : "c2"; }

Domain standard_domain(const CatalogEntry& e) { return Domain::open(e.domain_lo, kInf); }

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Matter matter_of(double v) {
  if (v > 0) return Matter::Ordinary;
  if (v < 0) return Matter::Exotic;
  return Matter::Vacuum;
}

// Samples strictly inside (a, b): geometric clusters toward both ends plus a
// bulk grid that is logarithmic when the piece spans more than a decade.
std::vector<double> piece_samples(double a, double b, const Tolerances& tol, const ClassifyOptions& opt) {
  const double da = 2.0 * guard_width(a, tol.guard_band);
  const double db = 2.0 * guard_width(b, tol.guard_band);
  const double lo = a + da;
  const double hi = b - db;
  std::vector<double> pts;
  if (!(lo < hi)) return pts;
  const double width = b - a;

  const std::size_t m = opt.end_samples;
  const double top = 0.25 * width;
  for (std::size_t k = 0; k < m; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(m - 1);
    if (da < top) pts.push_back(a + da * std::pow(top / da, t));
    if (db < top) pts.push_back(b - db * std::pow(top / db, t));
  }
  const std::size_t n = opt.bulk_samples;
  const bool log_scale = lo > 0 && hi / lo > 10.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k + 1) / static_cast<double>(n + 1);
    pts.push_back(log_scale ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double x) { return !(x >= lo && x <= hi); }), pts.end());
  return pts;
}

struct PieceScan {
  std::vector<Cavity> cavities;
};

// Zeros of rho on (a, b) from sign changes and from tangential minima of |rho|.
std::vector<Cavity> scan_zeros(const std::function<double(double)>& rho, const std::vector<double>& xs,
                               const Tolerances& tol, const ClassifyOptions& opt) {
  std::vector<Cavity> out;
  std::vector<double> v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) v[i] = rho(xs[i]);

  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!std::isfinite(v[i]) || !std::isfinite(v[i + 1])) continue;
    if (v[i] == 0.0) {
      const bool flips = i > 0 && (v[i - 1] < 0) != (v[i + 1] < 0);
      out.push_back({xs[i], !flips});
      continue;
    }
    if (v[i + 1] == 0.0 || (v[i] < 0) == (v[i + 1] < 0)) continue;
    double root = 0.0;
    try {
      root = find_root_fn(rho, xs[i], xs[i + 1], tol);
    } catch (const Error& e) {
      fail(ErrorCode::UnresolvedRoot, "sign change of rho on [" + num(xs[i]) + ", " + num(xs[i + 1]) +
                                          "] could not be refined: " + e.what());
    }
    const double scale = std::max(std::abs(v[i]), std::abs(v[i + 1]));
    if (!(std::abs(rho(root)) <= 1e-6 * scale))
      fail(ErrorCode::UnresolvedRoot, "sign change of rho near r = " + num(root) + " is not a zero");
    out.push_back({root, false});
  }

  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double a = std::abs(v[i - 1]), b = std::abs(v[i]), c = std::abs(v[i + 1]);
    if (!(b < a && b < c) || v[i] == 0.0) continue;
    if ((v[i - 1] < 0) != (v[i] < 0) || (v[i + 1] < 0) != (v[i] < 0)) continue;
    auto absrho = [&rho](double x) { return std::abs(rho(x)); };
    const auto [xmin, fmin] = boost::math::tools::brent_find_minima(absrho, xs[i - 1], xs[i + 1], 50);
    const double vmin = rho(xmin);
    if (vmin != 0.0 && (vmin < 0) != (v[i] < 0)) {
      // two close zeros hidden between samples
      out.push_back({find_root_fn(rho, xs[i - 1], xmin, tol), false});
      out.push_back({find_root_fn(rho, xmin, xs[i + 1], tol), false});
    } else if (fmin <= opt.tangential_scale * std::max(a, c)) {
      out.push_back({xmin, true});
    }
  }
  std::sort(out.begin(), out.end(), [](const Cavity& x, const Cavity& y) { return x.r < y.r; });
  return out;
}

Matter probe_matter(const std::function<double(double)>& rho, double u, double w, double r_max, bool& agree) {
  const double hi = std::min(w, r_max);
  const bool log_scale = u > 0 && hi / u > 10.0;
  auto at = [&](double t) { return log_scale ? u * std::pow(hi / u, t) : u + (hi - u) * t; };
  const Matter m = matter_of(rho(at(0.5)));
  agree = matter_of(rho(at(0.25))) == m && matter_of(rho(at(0.75))) == m;
  return m;
}

}  // namespace

ClassificationReport classify(const CatalogEntry& e, const Params& p, const Domain& domain, const Tolerances& tol,
                              const ClassifyOptions& opt) {
  ClassificationReport rep;
  rep.row = e.name;
  rep.params = p;
  rep.domain_used = domain.intersect(Interval{e.domain_lo, kInf});
  if (rep.domain_used.empty()) fail(ErrorCode::EmptyDomain, "domain does not meet the entry's radii");

  const auto singular = e.singular_radii(p, tol);
  auto rho = [&e, &p](double r) { return e.rho(p, r); };

  for (const auto& iv : rep.domain_used.intervals()) {
    std::vector<double> cuts{iv.lo};
    if (iv.lo == e.domain_lo && e.boundary_singular) rep.singularities.push_back(iv.lo);
    for (double s : singular)
      if (iv.contains(s)) {
        cuts.push_back(s);
        rep.singularities.push_back(s);
      }
    cuts.push_back(iv.hi);

    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k];
      const double b = cuts[k + 1];
      const double b_eff = std::min(b, opt.r_max);
      std::vector<Cavity> cav;
      if (a < b_eff) cav = scan_zeros(rho, piece_samples(a, b_eff, tol, opt), tol, opt);

      for (int attempt = 0;; ++attempt) {
        std::vector<double> bounds{a};
        for (const auto& c : cav) bounds.push_back(c.r);
        bounds.push_back(b);
        std::vector<Segment> segs;
        bool ok = true;
        double bad_lo = 0, bad_hi = 0;
        for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
          bool agree = true;
          const Matter m = probe_matter(rho, bounds[j], bounds[j + 1], opt.r_max, agree);
          if (!agree && ok) {
            ok = false;
            bad_lo = bounds[j];
            bad_hi = std::min(bounds[j + 1], opt.r_max);
          }
          segs.push_back({bounds[j], bounds[j + 1], m});
        }
        if (ok) {
          rep.cavities.insert(rep.cavities.end(), cav.begin(), cav.end());
          rep.segments.insert(rep.segments.end(), segs.begin(), segs.end());
          break;
        }
        if (attempt > 0) fail(ErrorCode::UnresolvedRoot, "matter probes disagree on (" + num(bad_lo) + ", " + num(bad_hi) + ")");
        ClassifyOptions fine = opt;
        fine.bulk_samples = 20 * opt.bulk_samples;
        fine.end_samples = 4 * opt.end_samples;
        auto more = scan_zeros(rho, piece_samples(bad_lo, bad_hi, tol, fine), tol, opt);
        cav.insert(cav.end(), more.begin(), more.end());
        std::sort(cav.begin(), cav.end(), [](const Cavity& x, const Cavity& y) { return x.r < y.r; });
      }
    }
  }

  rep.domain_used = rep.domain_used.with_excluded(singular);

  std::string pat;
  for (const auto& s : rep.segments) {
    if (!pat.empty()) pat += '|';
    pat += matter_code(s.matter);
  }
  rep.pattern = pat;

  auto& f = rep.flags;
  f.without_cavities = rep.cavities.empty();
  f.without_singularities = rep.singularities.empty() && rep.domain_used.intervals().size() == 1 &&
                            rep.domain_used.intervals().front().lo == 0.0;
  f.smooth = f.without_singularities;
  f.realistic = f.smooth && f.without_cavities &&
                std::all_of(rep.segments.begin(), rep.segments.end(),
                            [](const Segment& s) { return s.matter == Matter::Ordinary; });
  return rep;
}

// ---------------------------------------------------------------------------
// Row analyses

double row1_density_prime(const Params& p, double r) {
  const double c1 = p.c1;
  return p.c2 * (c1 * c1 - 5 * c1 * kPi * r * r + 10 * kPi * kPi * std::pow(r, 4)) /
         (kPi * std::pow(r, 5) * std::pow(kPi * r * r - c1, 4));
}

Row1Report row1_analysis(const Params& p, const Tolerances&) {
  Row1Report rep;
  rep.c1 = p.c1;
  if (p.c1 < 0) return rep;
  if (p.c1 == 0) {
    rep.degenerate = true;
    rep.r0 = 0.0;
    rep.r1 = 0.0;
    return rep;
  }
  rep.r0 = std::sqrt(p.c1 / kPi);
  rep.r1 = std::sqrt(p.c1 / (5 * kPi));
  rep.rho_prime_at_r1 = row1_density_prime(p, *rep.r1);
  const auto& e = entry(RowId::R1);
  const double left = e.rho(p, *rep.r0 * (1 - 1e-8));
  const double right = e.rho(p, *rep.r0 * (1 + 1e-8));
  rep.limit_left_r0 = left > 0 ? kInf : -kInf;
  rep.limit_right_r0 = right > 0 ? kInf : -kInf;
  return rep;
}

double row2_singularity(double c1, const Tolerances& tol) {
  const double r = row2_root(c1, tol);
  for (int k = 1; k <= 16; ++k) {
    const double x = 1.0 + (r - 1.0) * std::pow(4.0, (k - 8) / 4.0);
    const double dY = 2 * x * (x * x + kPi - 1) / ((x - 1) * (x + 1));
    if (!(dY > 0)) fail(ErrorCode::InvalidArgument, "Y is not increasing at r = " + num(x));
  }
  return r;
}

CubicRoots row7_roots(double c1) {
  using C = std::complex<double>;
  CubicRoots out;
  const double pi = kPi;
  // r^3 + P r + Q with P = -c1/pi, Q = 1/pi.
  const double P = -c1 / pi;
  const double Q = 1.0 / pi;
  const double disc = Q * Q / 4 + P * P * P / 27;
  std::array<C, 3> robust;
  if (disc < 0) {
    const double m = 2 * std::sqrt(-P / 3);
    const double theta = std::acos(std::clamp(3 * Q / (P * m), -1.0, 1.0));
    for (int k = 0; k < 3; ++k) robust[k] = m * std::cos(theta / 3 - 2 * pi * k / 3);
  } else {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-Q / 2 + sq);
    const double v = std::cbrt(-Q / 2 - sq);
    robust[0] = u + v;
    robust[1] = C(-(u + v) / 2, (u - v) * std::sqrt(3.0) / 2);
    robust[2] = std::conj(robust[1]);
  }
  for (auto& z : robust) {
    for (int it = 0; it < 3; ++it) {
      const C f = pi * z * z * z - c1 * z + 1.0;
      const C df = 3 * pi * z * z - c1;
      if (std::abs(df) == 0.0) break;
      z -= f / df;
    }
  }

  // Radical closed forms with the real cube root for a real radicand.
  const C s = std::sqrt(C(81 * pi - 12 * c1 * c1 * c1, 0.0));
  const C R = s - 9 * std::sqrt(pi);
  const C cbR = R.imag() == 0.0 ? C(std::cbrt(R.real()), 0.0) : std::pow(R, 1.0 / 3.0);
  const C R23 = cbR * cbR;
  const C i(0.0, 1.0);
  const double sp = std::sqrt(pi);
  out.printed[0] = (std::cbrt(2.0) * R23 + 2 * std::cbrt(3.0) * c1) / (std::pow(6.0, 2.0 / 3.0) * sp * cbR);
  const double k = std::cbrt(2.0) * std::pow(3.0, 1.0 / 6.0);
  const double den = 2 * std::pow(2.0, 2.0 / 3.0) * std::pow(3.0, 5.0 / 6.0) * sp;
  out.printed[1] = (k * (-1.0 + i * std::sqrt(3.0)) * R23 - 2.0 * (std::sqrt(3.0) + 3.0 * i) * c1) / (den * cbR);
  out.printed[2] = (k * (-1.0 - i * std::sqrt(3.0)) * R23 - 2.0 * (std::sqrt(3.0) - 3.0 * i) * c1) / (den * cbR);
  out.printed_available = std::abs(R) > 1e-12 * 9 * sp && std::all_of(out.printed.begin(), out.printed.end(),
                                      [](const C& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });

  std::array<bool, 3> used{false, false, false};
  if (out.printed_available) {
    for (int j = 0; j < 3; ++j) {
      int best = -1;
      for (int m = 0; m < 3; ++m)
        if (!used[m] && (best < 0 || std::abs(robust[m] - out.printed[j]) < std::abs(robust[best] - out.printed[j])))
          best = m;
      used[best] = true;
      out.roots[j] = robust[best];
      out.printed_deviation = std::max(out.printed_deviation, std::abs(robust[best] - out.printed[j]));
    }
  } else {
    // Real root first, then the upper and lower half-plane roots.
    std::array<C, 3> sorted = robust;
    std::sort(sorted.begin(), sorted.end(), [](const C& a, const C& b) { return std::abs(a.imag()) < std::abs(b.imag()); });
    out.roots[0] = sorted[0];
    out.roots[1] = sorted[1].imag() >= 0 ? sorted[1] : sorted[2];
    out.roots[2] = sorted[1].imag() >= 0 ? sorted[2] : sorted[1];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Critical scans

std::string ScanPoint::key() const {
  if (!error.empty()) return "error:" + error;
  return std::to_string(n_singular) + "/" + std::to_string(n_cavity) + "/" + pattern;
}

std::size_t CriticalScanResult::distinct_patterns() const {
  std::set<std::string> keys;
  for (const auto& s : sweep) keys.insert(s.key());
  return keys.size();
}

namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

CriticalScanResult critical_scan(const CatalogEntry& e, ScanParameter parameter, double fixed_other, double lo,
                                 double hi, std::size_t steps, const Tolerances& tol, const ScanOptions& opt) {
  if (steps < 8) fail(ErrorCode::InvalidArgument, "critical_scan needs at least 8 steps");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) fail(ErrorCode::InvalidArgument, "scan range must satisfy lo < hi");

  CriticalScanResult res;
  res.row = e.name;
  res.parameter = parameter;
  res.fixed_other = fixed_other;
  res.lo = lo;
  res.hi = hi;
  res.steps = steps;

  const Domain dom = standard_domain(e);
  auto evaluate = [&](double value) {
    ScanPoint pt;
    pt.value = value;
    Params p;
    p.c = opt.c;
    if (parameter == ScanParameter::C1) {
      p.c1 = value;
      p.c2 = fixed_other;
    } else {
      p.c1 = fixed_other;
      p.c2 = value;
    }
    try {
      const auto rep = classify(e, p, dom, tol, opt.classify);
      pt.n_singular = rep.singularities.size();
      pt.n_cavity = rep.cavities.size();
      pt.pattern = rep.pattern;
    } catch (const Error& err) {
      pt.error = std::string(to_string(err.code()));
    }
    return pt;
  };

  res.sweep.resize(steps + 1);
  parallel_for(steps + 1, opt.jobs, [&](std::size_t i) {
    const double v = i == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
    res.sweep[i] = evaluate(v);
  });

  for (std::size_t i = 0; i < steps; ++i) {
    if (res.sweep[i].key() == res.sweep[i + 1].key()) continue;
    ChangePoint cp;
    cp.value_lo = res.sweep[i].value;
    cp.value_hi = res.sweep[i + 1].value;
    cp.key_lo = res.sweep[i].key();
    cp.key_hi = res.sweep[i + 1].key();
    res.change_points.push_back(cp);
  }

  parallel_for(res.change_points.size(), opt.jobs, [&](std::size_t k) {
    auto& cp = res.change_points[k];
    double a = cp.value_lo, b = cp.value_hi;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (b - a <= tol.root_tol * (1.0 + std::abs(mid)) || mid <= a || mid >= b) break;
      if (evaluate(mid).key() == cp.key_lo) a = mid;
      else b = mid;
    }
    cp.refined = 0.5 * (a + b);
  });
  return res;
}

}  // namespace tovlab
