#include "tovlab/tovlab.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "tovlab/catalog.hpp"
#include "tovlab/classify.hpp"
#include "tovlab/drivers.hpp"
#include "tovlab/error.hpp"
#include "tovlab/report.hpp"

using namespace tovlab;

struct tovlab_context {
  Tolerances tol;
  double base_point = 1.0;
  double r_max = 1e6;
  unsigned jobs = 1;
  std::string format = "json";
  std::string out;
  std::string last_error;
};

struct tovlab_entry {
  const CatalogEntry* e = nullptr;
  std::string name;
  Params params;
};

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

tovlab_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return TOVLAB_INVALID_ARGUMENT;
    case ErrorCode::UnknownRow: return TOVLAB_UNKNOWN_ROW;
    case ErrorCode::NoConvergence: return TOVLAB_NO_CONVERGENCE;
    case ErrorCode::TooCloseToSingularity:
    case ErrorCode::HorizonSingularity:
    case ErrorCode::OriginSingularity:
    case ErrorCode::SingularRadius:
    case ErrorCode::PathCrossesSingularity: return TOVLAB_SINGULARITY;
    case ErrorCode::EmptyDomain:
    case ErrorCode::DomainMismatch: return TOVLAB_DOMAIN;
    default: return TOVLAB_NUMERIC;
  }
}

template <class Fn>
tovlab_status guarded(tovlab_context* ctx, Fn&& fn) {
  if (!ctx) return TOVLAB_INVALID_ARGUMENT;
  try {
    fn();
    ctx->last_error.clear();
    return TOVLAB_OK;
  } catch (const Error& e) {
    ctx->last_error = e.what();
    return status_of(e.code());
  } catch (const ConfigError& e) {
    ctx->last_error = e.what();
    return TOVLAB_CONFIG;
  } catch (const nlohmann::json::exception& e) {
    ctx->last_error = std::string("json: ") + e.what();
    return TOVLAB_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return TOVLAB_INTERNAL;
  } catch (...) {
    ctx->last_error = "unknown failure";
    return TOVLAB_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

Params params_of(const tovlab_params* p) {
  Params out;
  if (p) {
    out.c1 = p->c1;
    out.c2 = p->c2;
    out.c = p->c;
  }
  if (!std::isfinite(out.c1) || !std::isfinite(out.c2) || !std::isfinite(out.c))
    fail(ErrorCode::InvalidArgument, "integration constants must be finite");
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + v + "' is not a number");
  }
  if (used != v.size() || !std::isfinite(x)) throw ConfigError(key + ": '" + v + "' is not a finite number");
  return x;
}

void apply(tovlab_context& c, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  tovlab_context next = c;
  Tolerances& t = next.tol;
  if (key == "quad_rel") t.quad_rel = parse_double(key, v);
  else if (key == "quad_abs") t.quad_abs = parse_double(key, v);
  else if (key == "root_tol") t.root_tol = parse_double(key, v);
  else if (key == "fd_step") t.fd_step = parse_double(key, v);
  else if (key == "residual_tol") t.residual_tol = parse_double(key, v);
  else if (key == "guard_band") t.guard_band = parse_double(key, v);
  else if (key == "base_point") next.base_point = parse_double(key, v);
  else if (key == "r_max") next.r_max = parse_double(key, v);
  else if (key == "jobs") {
    const double j = parse_double(key, v);
    if (j < 1 || j > 1024 || j != std::floor(j)) throw ConfigError("jobs must be an integer in [1, 1024]");
    next.jobs = static_cast<unsigned>(j);
  } else if (key == "format") {
    if (v != "json" && v != "csv") throw ConfigError("format must be json or csv, got '" + v + "'");
    next.format = v;
  } else if (key == "out") next.out = v;
  else throw ConfigError("unknown configuration key '" + key + "'");

  try {
    next.tol.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (!(next.base_point > 0)) throw ConfigError("base_point must be positive");
  if (!(next.r_max > 0)) throw ConfigError("r_max must be positive");
  c.tol = next.tol;
  c.base_point = next.base_point;
  c.r_max = next.r_max;
  c.jobs = next.jobs;
  c.format = next.format;
  c.out = next.out;
}

std::vector<std::string> row_list(const char* rows) {
  need(rows, "rows");
  const std::string s = rows;
  std::vector<std::string> out;
  if (trim(s) == "all") {
    for (const auto& e : catalog()) out.push_back(e.name);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    entry(item);  // validates
    out.push_back(item);
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "no rows given");
  return out;
}

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

std::string emit(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

extern "C" {

const char* tovlab_version(void) { return "1.0.0"; }

const char* tovlab_status_string(tovlab_status s) {
  switch (s) {
    case TOVLAB_OK: return "ok";
    case TOVLAB_INVALID_ARGUMENT: return "invalid argument";
    case TOVLAB_UNKNOWN_ROW: return "unknown row";
    case TOVLAB_CONFIG: return "configuration error";
    case TOVLAB_NUMERIC: return "numerical failure";
    case TOVLAB_SINGULARITY: return "singularity";
    case TOVLAB_NO_CONVERGENCE: return "no convergence";
    case TOVLAB_DOMAIN: return "domain error";
    case TOVLAB_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tovlab_params tovlab_default_params(void) { return tovlab_params{0.0, 1.0, 1.0}; }

tovlab_status tovlab_context_create(tovlab_context** out) {
  if (!out) return TOVLAB_INVALID_ARGUMENT;
  try {
    *out = new tovlab_context();
  } catch (...) {
    *out = nullptr;
    return TOVLAB_INTERNAL;
  }
  return TOVLAB_OK;
}

void tovlab_context_destroy(tovlab_context* ctx) { delete ctx; }

const char* tovlab_context_last_error(const tovlab_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

tovlab_status tovlab_context_set(tovlab_context* ctx, const char* key, const char* value) {
  return guarded(ctx, [&] {
    need(key, "key");
    need(value, "value");
    apply(*ctx, key, value);
  });
}

tovlab_status tovlab_context_get(tovlab_context* ctx, const char* key, char** value) {
  return guarded(ctx, [&] {
    need(key, "key");
    need(value, "value");
    const std::string k = key;
    std::ostringstream os;
    os.precision(17);
    if (k == "quad_rel") os << ctx->tol.quad_rel;
    else if (k == "quad_abs") os << ctx->tol.quad_abs;
    else if (k == "root_tol") os << ctx->tol.root_tol;
    else if (k == "fd_step") os << ctx->tol.fd_step;
    else if (k == "residual_tol") os << ctx->tol.residual_tol;
    else if (k == "guard_band") os << ctx->tol.guard_band;
    else if (k == "base_point") os << ctx->base_point;
    else if (k == "r_max") os << ctx->r_max;
    else if (k == "jobs") os << ctx->jobs;
    else if (k == "format") os << ctx->format;
    else if (k == "out") os << ctx->out;
    else throw ConfigError("unknown configuration key '" + k + "'");
    *value = dup(os.str());
  });
}

tovlab_status tovlab_context_load_config(tovlab_context* ctx, const char* path) {
  return guarded(ctx, [&] {
    need(path, "path");
    std::ifstream in(path);
    if (!in) throw ConfigError(std::string("cannot open config file '") + path + "'");
    tovlab_context staged = *ctx;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(std::string(path) + ":" + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      try {
        apply(staged, key, value);
      } catch (const ConfigError& e) {
        throw ConfigError(std::string(path) + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
    staged.last_error.clear();
    *ctx = staged;
  });
}

tovlab_status tovlab_context_dump(tovlab_context* ctx, char** out) {
  return guarded(ctx, [&] {
    need(out, "out");
    json j = {{"tolerances", ctx->tol}, {"base_point", ctx->base_point}, {"r_max", ctx->r_max},
              {"jobs", ctx->jobs},      {"format", ctx->format},        {"out", ctx->out}};
    *out = dup(emit(document("config", j)));
  });
}

tovlab_status tovlab_entry_open(tovlab_context* ctx, const char* row, const tovlab_params* params, tovlab_entry** out) {
  return guarded(ctx, [&] {
    need(row, "row");
    need(out, "out");
    *out = nullptr;
    auto h = std::make_unique<tovlab_entry>();
    h->e = &entry(row);
    h->name = row;
    h->params = params_of(params);
    *out = h.release();
  });
}

void tovlab_entry_close(tovlab_entry* e) { delete e; }

tovlab_status tovlab_entry_eval(tovlab_context* ctx, const tovlab_entry* h, tovlab_quantity q, double r, double* out) {
  return guarded(ctx, [&] {
    need(h, "entry");
    need(out, "out");
    const CatalogEntry& e = *h->e;
    const Params& p = h->params;
    if (!std::isfinite(r)) fail(ErrorCode::InvalidArgument, "radius must be finite");
    if (!e.domain(p, ctx->tol).contains(r))
      fail(ErrorCode::DomainMismatch, "r = " + std::to_string(r) + " is outside the domain of row " + e.name);
    switch (q) {
      case TOVLAB_Q_H: *out = e.h(p, r); break;
      case TOVLAB_Q_H_PRIME: *out = e.h_prime(p, r); break;
      case TOVLAB_Q_F: *out = e.F(p, r); break;
      case TOVLAB_Q_RHO: *out = density(e, p, r, ctx->tol); break;
      case TOVLAB_Q_MASS: *out = e.mass(p, r); break;
      case TOVLAB_Q_MASS_PRIME: *out = e.mass_prime(p, r); break;
      case TOVLAB_Q_LAMBDA0:
      case TOVLAB_Q_LAMBDA1: {
        const CouplingSplit s = e.split(p, ctx->tol);
        const double M = e.mass(p, r), Mp = e.mass_prime(p, r);
        *out = q == TOVLAB_Q_LAMBDA0 ? s.lambda0(M, Mp, r) : s.lambda1(M, Mp, r);
        break;
      }
      default: fail(ErrorCode::InvalidArgument, "unknown quantity");
    }
  });
}

tovlab_status tovlab_entry_singular_radii(tovlab_context* ctx, const tovlab_entry* h, double* radii, size_t cap,
                                          size_t* count) {
  return guarded(ctx, [&] {
    need(h, "entry");
    need(count, "count");
    if (cap > 0) need(radii, "radii");
    const auto rs = h->e->singular_radii(h->params, ctx->tol);
    *count = rs.size();
    for (std::size_t i = 0; i < rs.size() && i < cap; ++i) radii[i] = rs[i];
  });
}

tovlab_status tovlab_verify(tovlab_context* ctx, const char* rows, const tovlab_params* params, tovlab_format format,
                            char** out, int* all_passed) {
  return guarded(ctx, [&] {
    need(out, "out");
    const auto names = row_list(rows);
    const Params p = params_of(params);
    std::vector<VerificationReport> reps(names.size());
    std::vector<std::string> errors(names.size());
    parallel_for(names.size(), ctx->jobs, [&](std::size_t i) {
      const CatalogEntry& e = entry(names[i]);
      try {
        reps[i] = verify_entry(e, p, standard_grid(e, p, 200, ctx->tol), ctx->tol, ctx->base_point);
      } catch (const std::exception& ex) {
        reps[i].params = p;
        reps[i].passed = false;
        reps[i].diagnostics.push_back(ex.what());
      }
      reps[i].row = names[i];
    });
    const bool ok = std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.passed; });
    if (all_passed) *all_passed = ok ? 1 : 0;
    if (format == TOVLAB_FORMAT_CSV) *out = dup(verify_csv(reps));
    else *out = dup(emit(document("verify", {{"reports", reps}, {"passed", ok}})));
  });
}

tovlab_status tovlab_classify(tovlab_context* ctx, const char* row, const tovlab_params* params, tovlab_format format,
                              char** out) {
  return guarded(ctx, [&] {
    need(row, "row");
    need(out, "out");
    const CatalogEntry& e = entry(row);
    const Params p = params_of(params);
    ClassifyOptions opt;
    opt.r_max = ctx->r_max;
    auto rep = classify(e, p, standard_domain(e), ctx->tol, opt);
    rep.row = row;
    if (format == TOVLAB_FORMAT_CSV) *out = dup(classify_csv(rep));
    else *out = dup(emit(document("classify", rep)));
  });
}

tovlab_status tovlab_density_plot(tovlab_context* ctx, const char* row, const tovlab_params* params, char** csv) {
  return guarded(ctx, [&] {
    need(row, "row");
    need(csv, "csv");
    *csv = dup(density_plot_csv(entry(row), params_of(params), ctx->tol));
  });
}

tovlab_status tovlab_scan(tovlab_context* ctx, const char* row, const char* parameter, double lo, double hi,
                          size_t steps, const tovlab_params* params, tovlab_format format, char** out) {
  return guarded(ctx, [&] {
    need(row, "row");
    need(parameter, "parameter");
    need(out, "out");
    const std::string par = parameter;
    if (par != "c1" && par != "c2") fail(ErrorCode::InvalidArgument, "parameter must be c1 or c2, got '" + par + "'");
    const Params p = params_of(params);
    ScanOptions opt;
    opt.jobs = ctx->jobs;
    opt.c = p.c;
    opt.classify.r_max = ctx->r_max;
    const bool c1 = par == "c1";
    auto res = critical_scan(entry(row), c1 ? ScanParameter::C1 : ScanParameter::C2, c1 ? p.c2 : p.c1, lo, hi, steps,
                             ctx->tol, opt);
    res.row = row;
    if (format == TOVLAB_FORMAT_CSV) *out = dup(scan_csv(res));
    else *out = dup(emit(document("scan", res)));
  });
}

tovlab_status tovlab_solve(tovlab_context* ctx, const char* row, const tovlab_params* params, double c0,
                           tovlab_format format, char** out, int* passed) {
  return guarded(ctx, [&] {
    need(row, "row");
    need(out, "out");
    if (!std::isfinite(c0)) fail(ErrorCode::InvalidArgument, "c0 must be finite");
    auto rep = solve_pressure(entry(row), params_of(params), c0, ctx->base_point, ctx->tol);
    rep.row = row;
    if (passed) *passed = rep.passed ? 1 : 0;
    if (format == TOVLAB_FORMAT_CSV) *out = dup(solve_csv(rep));
    else *out = dup(emit(document("solve", rep)));
  });
}

tovlab_status tovlab_tails(tovlab_context* ctx, const char* rows, const tovlab_params* params, tovlab_format format,
                           char** out) {
  return guarded(ctx, [&] {
    need(out, "out");
    const auto names = row_list(rows);
    const Params p = params_of(params);
    std::vector<TailsReport> reps;
    for (const auto& n : names) {
      reps.push_back(tails_report(entry(n), p, ctx->tol));
      reps.back().row = n;
    }
    if (format == TOVLAB_FORMAT_CSV) *out = dup(tails_csv(reps));
    else *out = dup(emit(document("tails", {{"reports", reps}})));
  });
}

tovlab_status tovlab_catalog_dump(tovlab_context* ctx, char** out) {
  return guarded(ctx, [&] {
    need(out, "out");
    *out = dup(emit(document("catalog", catalog_json())));
  });
}

tovlab_status tovlab_row1_analysis(tovlab_context* ctx, const tovlab_params* params, char** out) {
  return guarded(ctx, [&] {
    need(out, "out");
    *out = dup(emit(document("row1_analysis", row1_analysis(params_of(params), ctx->tol))));
  });
}

tovlab_status tovlab_row2_singularity(tovlab_context* ctx, double c1, double* r) {
  return guarded(ctx, [&] {
    need(r, "r");
    if (!std::isfinite(c1)) fail(ErrorCode::InvalidArgument, "c1 must be finite");
    *r = row2_singularity(c1, ctx->tol);
  });
}

tovlab_status tovlab_row7_roots(tovlab_context* ctx, double c1, double re[3], double im[3]) {
  return guarded(ctx, [&] {
    need(re, "re");
    need(im, "im");
    if (!std::isfinite(c1)) fail(ErrorCode::InvalidArgument, "c1 must be finite");
    const auto roots = row7_roots(c1);
    for (int k = 0; k < 3; ++k) {
      re[k] = roots.roots[k].real();
      im[k] = roots.roots[k].imag();
    }
  });
}

void tovlab_free_string(char* s) { std::free(s); }

}  // extern "C"
