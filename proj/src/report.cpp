#include "tovlab/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "tovlab/error.hpp"

namespace tovlab {

json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "+inf" || s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  if (j.is_null()) return std::nan("");
  fail(ErrorCode::InvalidArgument, "expected a number, got " + j.dump());
}

json document(const std::string& kind, json data) {
  return json{{"schema", kSchema}, {"kind", kind}, {"data", std::move(data)}};
}

const json& document_data(const json& doc, const std::string& kind) {
  if (!doc.is_object() || doc.value("schema", "") != kSchema)
    fail(ErrorCode::InvalidArgument, std::string("document is not ") + kSchema);
  if (doc.value("kind", "") != kind)
    fail(ErrorCode::InvalidArgument, "expected a '" + kind + "' document, got '" + doc.value("kind", "") + "'");
  return doc.at("data");
}

namespace {

json nums(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number_to_json(x));
  return a;
}

std::vector<double> nums_from(const json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number_from_json(x));
  return out;
}

json opt_num(const std::optional<double>& x) { return x ? number_to_json(*x) : json(nullptr); }

std::optional<double> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return number_from_json(j);
}

double num_at(const json& j, const char* key) { return number_from_json(j.at(key)); }

json complex_json(const std::complex<double>& z) { return json::array({number_to_json(z.real()), number_to_json(z.imag())}); }
std::complex<double> complex_from(const json& j) { return {number_from_json(j.at(0)), number_from_json(j.at(1))}; }

Matter matter_from(const std::string& s) {
  if (s == "ordinary") return Matter::Ordinary;
  if (s == "exotic") return Matter::Exotic;
  if (s == "vacuum") return Matter::Vacuum;
  fail(ErrorCode::InvalidArgument, "unknown matter type '" + s + "'");
}

Side side_from(const std::string& s) {
  if (s == to_string(Side::PlusInf)) return Side::PlusInf;
  if (s == to_string(Side::MinusInf)) return Side::MinusInf;
  fail(ErrorCode::InvalidArgument, "unknown side '" + s + "'");
}

TailVerdict verdict_from(const std::string& s) {
  if (s == to_string(TailVerdict::Converged)) return TailVerdict::Converged;
  if (s == to_string(TailVerdict::Oscillation)) return TailVerdict::Oscillation;
  fail(ErrorCode::InvalidArgument, "unknown verdict '" + s + "'");
}

LemmaCondition condition_from(const std::string& s) {
  for (auto c : {LemmaCondition::C1, LemmaCondition::C2, LemmaCondition::Both, LemmaCondition::Neither})
    if (s == to_string(c)) return c;
  fail(ErrorCode::InvalidArgument, "unknown lemma condition '" + s + "'");
}

SolveFlag solve_flag_from(const std::string& s) {
  for (auto f : {SolveFlag::Ok, SolveFlag::NearPole, SolveFlag::NearSingularity})
    if (s == to_string(f)) return f;
  fail(ErrorCode::InvalidArgument, "unknown solve flag '" + s + "'");
}

std::string csv_num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

void to_json(json& j, const Params& p) {
  j = {{"c1", number_to_json(p.c1)}, {"c2", number_to_json(p.c2)}, {"c", number_to_json(p.c)}};
}
void from_json(const json& j, Params& p) {
  p.c1 = num_at(j, "c1");
  p.c2 = num_at(j, "c2");
  p.c = num_at(j, "c");
}

void to_json(json& j, const Tolerances& t) {
  j = {{"quad_rel", t.quad_rel}, {"quad_abs", t.quad_abs},         {"root_tol", t.root_tol},
       {"fd_step", t.fd_step},   {"residual_tol", t.residual_tol}, {"guard_band", t.guard_band}};
}
void from_json(const json& j, Tolerances& t) {
  t.quad_rel = num_at(j, "quad_rel");
  t.quad_abs = num_at(j, "quad_abs");
  t.root_tol = num_at(j, "root_tol");
  t.fd_step = num_at(j, "fd_step");
  t.residual_tol = num_at(j, "residual_tol");
  t.guard_band = num_at(j, "guard_band");
}

void to_json(json& j, const Interval& iv) { j = json::array({number_to_json(iv.lo), number_to_json(iv.hi)}); }
void from_json(const json& j, Interval& iv) {
  iv.lo = number_from_json(j.at(0));
  iv.hi = number_from_json(j.at(1));
}

void to_json(json& j, const Domain& d) { j = {{"intervals", d.intervals()}, {"excluded", nums(d.excluded())}}; }
void from_json(const json& j, Domain& d) {
  d = Domain(j.at("intervals").get<std::vector<Interval>>(), nums_from(j.at("excluded")));
}

void to_json(json& j, const ResidualStat& s) {
  j = {{"max", number_to_json(s.max)}, {"at_r", number_to_json(s.at_r)}, {"applicable", s.applicable}};
}
void from_json(const json& j, ResidualStat& s) {
  s.max = num_at(j, "max");
  s.at_r = num_at(j, "at_r");
  s.applicable = j.at("applicable").get<bool>();
}

void to_json(json& j, const VerificationReport& r) {
  j = {{"row", r.row},         {"params", r.params},   {"samples", r.samples},       {"h_ode", r.h_ode},
       {"lambda0", r.lambda0}, {"continuity", r.continuity}, {"coupling", r.coupling}, {"passed", r.passed},
       {"diagnostics", r.diagnostics}};
}
void from_json(const json& j, VerificationReport& r) {
  r.row = j.at("row").get<std::string>();
  r.params = j.at("params").get<Params>();
  r.samples = j.at("samples").get<std::size_t>();
  r.h_ode = j.at("h_ode").get<ResidualStat>();
  r.lambda0 = j.at("lambda0").get<ResidualStat>();
  r.continuity = j.at("continuity").get<ResidualStat>();
  r.coupling = j.at("coupling").get<ResidualStat>();
  r.passed = j.at("passed").get<bool>();
  r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
}

void to_json(json& j, const Cavity& c) { j = {{"r", number_to_json(c.r)}, {"tangential", c.tangential}}; }
void from_json(const json& j, Cavity& c) {
  c.r = num_at(j, "r");
  c.tangential = j.at("tangential").get<bool>();
}

void to_json(json& j, const Segment& s) {
  j = {{"lo", number_to_json(s.lo)}, {"hi", number_to_json(s.hi)}, {"matter", to_string(s.matter)}};
}
void from_json(const json& j, Segment& s) {
  s.lo = num_at(j, "lo");
  s.hi = num_at(j, "hi");
  s.matter = matter_from(j.at("matter").get<std::string>());
}

void to_json(json& j, const ClassificationFlags& f) {
  j = {{"without_cavities", f.without_cavities},
       {"without_singularities", f.without_singularities},
       {"smooth", f.smooth},
       {"realistic", f.realistic}};
}
void from_json(const json& j, ClassificationFlags& f) {
  f.without_cavities = j.at("without_cavities").get<bool>();
  f.without_singularities = j.at("without_singularities").get<bool>();
  f.smooth = j.at("smooth").get<bool>();
  f.realistic = j.at("realistic").get<bool>();
}

void to_json(json& j, const ClassificationReport& r) {
  j = {{"row", r.row},
       {"params", r.params},
       {"singularities", nums(r.singularities)},
       {"cavities", r.cavities},
       {"segments", r.segments},
       {"flags", r.flags},
       {"domain", r.domain_used},
       {"pattern", r.pattern}};
}
void from_json(const json& j, ClassificationReport& r) {
  r.row = j.at("row").get<std::string>();
  r.params = j.at("params").get<Params>();
  r.singularities = nums_from(j.at("singularities"));
  r.cavities = j.at("cavities").get<std::vector<Cavity>>();
  r.segments = j.at("segments").get<std::vector<Segment>>();
  r.flags = j.at("flags").get<ClassificationFlags>();
  r.domain_used = j.at("domain").get<Domain>();
  r.pattern = j.at("pattern").get<std::string>();
}

void to_json(json& j, const ScanPoint& s) {
  j = {{"value", number_to_json(s.value)},
       {"n_singular", s.n_singular},
       {"n_cavity", s.n_cavity},
       {"pattern", s.pattern},
       {"error", s.error.empty() ? json(nullptr) : json(s.error)}};
}
void from_json(const json& j, ScanPoint& s) {
  s.value = num_at(j, "value");
  s.n_singular = j.at("n_singular").get<std::size_t>();
  s.n_cavity = j.at("n_cavity").get<std::size_t>();
  s.pattern = j.at("pattern").get<std::string>();
  s.error = j.at("error").is_null() ? std::string() : j.at("error").get<std::string>();
}

void to_json(json& j, const ChangePoint& c) {
  j = {{"value_lo", number_to_json(c.value_lo)},
       {"value_hi", number_to_json(c.value_hi)},
       {"refined", number_to_json(c.refined)},
       {"key_lo", c.key_lo},
       {"key_hi", c.key_hi}};
}
void from_json(const json& j, ChangePoint& c) {
  c.value_lo = num_at(j, "value_lo");
  c.value_hi = num_at(j, "value_hi");
  c.refined = num_at(j, "refined");
  c.key_lo = j.at("key_lo").get<std::string>();
  c.key_hi = j.at("key_hi").get<std::string>();
}

void to_json(json& j, const CriticalScanResult& r) {
  j = {{"row", r.row},
       {"parameter", to_string(r.parameter)},
       {"fixed_other", number_to_json(r.fixed_other)},
       {"range", json::array({number_to_json(r.lo), number_to_json(r.hi)})},
       {"steps", r.steps},
       {"sweep", r.sweep},
       {"change_points", r.change_points},
       {"distinct_patterns", r.distinct_patterns()},
       {"configurations", r.configurations()}};
}
void from_json(const json& j, CriticalScanResult& r) {
  r.row = j.at("row").get<std::string>();
  const auto par = j.at("parameter").get<std::string>();
  if (par != "c1" && par != "c2") fail(ErrorCode::InvalidArgument, "unknown scan parameter '" + par + "'");
  r.parameter = par == "c1" ? ScanParameter::C1 : ScanParameter::C2;
  r.fixed_other = num_at(j, "fixed_other");
  r.lo = number_from_json(j.at("range").at(0));
  r.hi = number_from_json(j.at("range").at(1));
  r.steps = j.at("steps").get<std::size_t>();
  r.sweep = j.at("sweep").get<std::vector<ScanPoint>>();
  r.change_points = j.at("change_points").get<std::vector<ChangePoint>>();
}

void to_json(json& j, const Row1Report& r) {
  j = {{"c1", number_to_json(r.c1)},
       {"r0", opt_num(r.r0)},
       {"r1", opt_num(r.r1)},
       {"degenerate", r.degenerate},
       {"rho_prime_at_r1", opt_num(r.rho_prime_at_r1)},
       {"limit_left_r0", number_to_json(r.limit_left_r0)},
       {"limit_right_r0", number_to_json(r.limit_right_r0)}};
}
void from_json(const json& j, Row1Report& r) {
  r.c1 = num_at(j, "c1");
  r.r0 = opt_from(j.at("r0"));
  r.r1 = opt_from(j.at("r1"));
  r.degenerate = j.at("degenerate").get<bool>();
  r.rho_prime_at_r1 = opt_from(j.at("rho_prime_at_r1"));
  r.limit_left_r0 = num_at(j, "limit_left_r0");
  r.limit_right_r0 = num_at(j, "limit_right_r0");
}

void to_json(json& j, const CubicRoots& r) {
  json roots = json::array(), printed = json::array();
  for (const auto& z : r.roots) roots.push_back(complex_json(z));
  for (const auto& z : r.printed) printed.push_back(complex_json(z));
  j = {{"roots", roots},
       {"printed", printed},
       {"printed_available", r.printed_available},
       {"printed_deviation", number_to_json(r.printed_deviation)},
       {"multiplicity", r.multiplicity},
       {"origin_multiplicity", r.origin_multiplicity}};
}
void from_json(const json& j, CubicRoots& r) {
  for (std::size_t k = 0; k < 3; ++k) {
    r.roots[k] = complex_from(j.at("roots").at(k));
    r.printed[k] = complex_from(j.at("printed").at(k));
  }
  r.printed_available = j.at("printed_available").get<bool>();
  r.printed_deviation = num_at(j, "printed_deviation");
  r.multiplicity = j.at("multiplicity").get<int>();
  r.origin_multiplicity = j.at("origin_multiplicity").get<int>();
}

void to_json(json& j, const TailSample& s) { j = {{"r", number_to_json(s.r)}, {"lambda1", number_to_json(s.lambda1)}}; }
void from_json(const json& j, TailSample& s) {
  s.r = num_at(j, "r");
  s.lambda1 = num_at(j, "lambda1");
}

void to_json(json& j, const TailReport& r) {
  j = {{"samples", r.samples},
       {"eventually_decreasing", r.eventually_decreasing},
       {"limit_estimate", number_to_json(r.limit_estimate)},
       {"passes", r.passes}};
}
void from_json(const json& j, TailReport& r) {
  r.samples = j.at("samples").get<std::vector<TailSample>>();
  r.eventually_decreasing = j.at("eventually_decreasing").get<bool>();
  r.limit_estimate = num_at(j, "limit_estimate");
  r.passes = j.at("passes").get<bool>();
}

void to_json(json& j, const Certificate& c) {
  j = {{"side", to_string(c.side)},
       {"limit_estimate", opt_num(c.limit_estimate)},
       {"verdict", to_string(c.verdict)},
       {"limit_zero", c.limit_zero},
       {"sign_pattern", c.sign_pattern},
       {"monotone_pattern", c.monotone_pattern},
       {"condition", to_string(c.condition)},
       {"certifies_vanishing", c.certifies_vanishing},
       {"lemma_mismatch", c.lemma_mismatch},
       {"window", nums(c.window)},
       {"values", nums(c.values)}};
}
void from_json(const json& j, Certificate& c) {
  c.side = side_from(j.at("side").get<std::string>());
  c.limit_estimate = opt_from(j.at("limit_estimate"));
  c.verdict = verdict_from(j.at("verdict").get<std::string>());
  c.limit_zero = j.at("limit_zero").get<bool>();
  c.sign_pattern = j.at("sign_pattern").get<std::string>();
  c.monotone_pattern = j.at("monotone_pattern").get<std::string>();
  c.condition = condition_from(j.at("condition").get<std::string>());
  c.certifies_vanishing = j.at("certifies_vanishing").get<bool>();
  c.lemma_mismatch = j.at("lemma_mismatch").get<bool>();
  c.window = nums_from(j.at("window"));
  c.values = nums_from(j.at("values"));
}

void to_json(json& j, const TailsReport& r) {
  j = {{"row", r.row}, {"params", r.params}, {"applicable", r.applicable}, {"message", r.message}};
  if (r.applicable) {
    j["pseudo_limit"] = r.pseudo;
    j["certificate"] = r.certificate;
    j["refined_certificate"] = r.refined;
    j["stable"] = r.stable;
    j["lambda1_at_1e3"] = number_to_json(r.lambda1_at_1e3);
  }
}
void from_json(const json& j, TailsReport& r) {
  r.row = j.at("row").get<std::string>();
  r.params = j.at("params").get<Params>();
  r.applicable = j.at("applicable").get<bool>();
  r.message = j.at("message").get<std::string>();
  if (r.applicable) {
    r.pseudo = j.at("pseudo_limit").get<TailReport>();
    r.certificate = j.at("certificate").get<Certificate>();
    r.refined = j.at("refined_certificate").get<Certificate>();
    r.stable = j.at("stable").get<bool>();
    r.lambda1_at_1e3 = num_at(j, "lambda1_at_1e3");
  }
}

void to_json(json& j, const SolvePoint& s) {
  j = {{"r", number_to_json(s.r)},
       {"p", number_to_json(s.p)},
       {"riccati_residual", number_to_json(s.riccati_residual)},
       {"tov_residual", opt_num(s.tov_residual)},
       {"flag", to_string(s.flag)}};
}
void from_json(const json& j, SolvePoint& s) {
  s.r = num_at(j, "r");
  s.p = num_at(j, "p");
  s.riccati_residual = num_at(j, "riccati_residual");
  s.tov_residual = opt_from(j.at("tov_residual"));
  s.flag = solve_flag_from(j.at("flag").get<std::string>());
}

void to_json(json& j, const SolveReport& r) {
  j = {{"row", r.row},
       {"params", r.params},
       {"c0", number_to_json(r.c0)},
       {"base", number_to_json(r.base)},
       {"window", r.window},
       {"poles", nums(r.poles)},
       {"nodes", r.nodes},
       {"points", r.points},
       {"max_riccati", number_to_json(r.max_riccati)},
       {"max_tov", opt_num(r.max_tov)},
       {"passed", r.passed},
       {"warnings", r.warnings}};
}
void from_json(const json& j, SolveReport& r) {
  r.row = j.at("row").get<std::string>();
  r.params = j.at("params").get<Params>();
  r.c0 = num_at(j, "c0");
  r.base = num_at(j, "base");
  r.window = j.at("window").get<Interval>();
  r.poles = nums_from(j.at("poles"));
  r.nodes = j.at("nodes").get<std::size_t>();
  r.points = j.at("points").get<std::vector<SolvePoint>>();
  r.max_riccati = num_at(j, "max_riccati");
  r.max_tov = opt_from(j.at("max_tov"));
  r.passed = j.at("passed").get<bool>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void to_json(json& j, const CatalogEntry& e) {
  j = {{"row", e.name},
       {"F", e.F_tag},
       {"h", e.h_text},
       {"domain", e.domain_note},
       {"singularities", e.singular_note},
       {"domain_lo", number_to_json(e.domain_lo)},
       {"boundary_singular", e.boundary_singular}};
}

json catalog_json() {
  json rows = json::array();
  for (const auto& e : catalog()) rows.push_back(e);
  return {{"entries", rows}, {"aliases", {{"sec33", "4"}}}};
}

std::string density_plot_csv(const CatalogEntry& e, const Params& p, const Tolerances& tol, std::size_t n,
                             double r_hi) {
  std::vector<double> marks = e.singular_radii(p, tol);
  if (e.boundary_singular && !e.is_constant()) marks.push_back(e.domain_lo);
  const double lo = e.domain_lo;
  std::ostringstream os;
  os << "r,value,flag\n";
  for (std::size_t i = 1; i <= n; ++i) {
    const double r = lo + (r_hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    bool near = false;
    for (double s : marks) near = near || std::abs(r - s) < 1e-2 * (1 + std::abs(s));
    double v = std::nan("");
    if (std::none_of(marks.begin(), marks.end(), [r](double s) { return r == s; })) v = e.rho(p, r);
    os << csv_num(r) << ',' << csv_num(v) << ',' << (near ? "near_singularity" : "ok") << '\n';
  }
  return os.str();
}

std::string solve_csv(const SolveReport& r) {
  std::ostringstream os;
  os << "r,p,riccati_residual,tov_residual,flag\n";
  for (const auto& pt : r.points)
    os << csv_num(pt.r) << ',' << csv_num(pt.p) << ',' << csv_num(pt.riccati_residual) << ','
       << (pt.tov_residual ? csv_num(*pt.tov_residual) : "") << ',' << to_string(pt.flag) << '\n';
  return os.str();
}

std::string scan_csv(const CriticalScanResult& r) {
  std::ostringstream os;
  os << "value,n_singular,n_cavity,pattern,error\n";
  for (const auto& s : r.sweep)
    os << csv_num(s.value) << ',' << s.n_singular << ',' << s.n_cavity << ',' << s.pattern << ',' << s.error << '\n';
  return os.str();
}

std::string verify_csv(const std::vector<VerificationReport>& rs) {
  std::ostringstream os;
  os << "row,c1,c2,c,samples,h_ode,lambda0,continuity,coupling,passed\n";
  for (const auto& r : rs)
    os << r.row << ',' << csv_num(r.params.c1) << ',' << csv_num(r.params.c2) << ',' << csv_num(r.params.c) << ','
       << r.samples << ',' << csv_num(r.h_ode.max) << ',' << csv_num(r.lambda0.max) << ','
       << csv_num(r.continuity.max) << ',' << csv_num(r.coupling.max) << ',' << (r.passed ? "true" : "false") << '\n';
  return os.str();
}

std::string tails_csv(const std::vector<TailsReport>& rs) {
  std::ostringstream os;
  os << "row,r,lambda1\n";
  for (const auto& t : rs)
    for (std::size_t i = 0; i < t.certificate.window.size(); ++i)
      os << t.row << ',' << csv_num(t.certificate.window[i]) << ',' << csv_num(t.certificate.values[i]) << '\n';
  return os.str();
}

std::string classify_csv(const ClassificationReport& r) {
  std::ostringstream os;
  os << "kind,lo,hi,label\n";
  for (double s : r.singularities) os << "singularity," << csv_num(s) << ',' << csv_num(s) << ",\n";
  for (const auto& c : r.cavities)
    os << "cavity," << csv_num(c.r) << ',' << csv_num(c.r) << ',' << (c.tangential ? "tangential" : "crossing") << '\n';
  for (const auto& s : r.segments)
    os << "segment," << csv_num(s.lo) << ',' << csv_num(s.hi) << ',' << to_string(s.matter) << '\n';
  return os.str();
}

}  // namespace tovlab
