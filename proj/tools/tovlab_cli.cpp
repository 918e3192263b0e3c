// Command-line front end. Talks to the library only through tovlab.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tovlab/tovlab.h"

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct Globals {
  std::string config;
  std::string out;
  std::string format;
  int jobs = 0;
  std::vector<std::string> sets;
};

struct ParamFlags {
  double c1 = 0.0;
  double c2 = 1.0;
  double c = 1.0;
  tovlab_params get() const { return tovlab_params{c1, c2, c}; }
};

void add_params(CLI::App* cmd, ParamFlags& p) {
  cmd->add_option("--c1", p.c1, "integration constant c1")->capture_default_str();
  cmd->add_option("--c2", p.c2, "integration constant c2")->capture_default_str();
  cmd->add_option("--c", p.c, "density of the constant entry")->capture_default_str();
}

class Session {
 public:
  Session() {
    if (tovlab_context_create(&ctx_) != TOVLAB_OK) {
      std::cerr << "tovlab: cannot create context\n";
      std::exit(kUsage);
    }
  }
  ~Session() { tovlab_context_destroy(ctx_); }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  tovlab_context* ctx() { return ctx_; }

  int report(tovlab_status s) const {
    std::cerr << "tovlab: " << tovlab_status_string(s) << ": " << tovlab_context_last_error(ctx_) << "\n";
    switch (s) {
      case TOVLAB_INVALID_ARGUMENT:
      case TOVLAB_UNKNOWN_ROW:
      case TOVLAB_CONFIG: return kUsage;
      default: return kCheckFailed;
    }
  }

  std::string get(const char* key) {
    char* v = nullptr;
    std::string out;
    if (tovlab_context_get(ctx_, key, &v) == TOVLAB_OK) out = v;
    tovlab_free_string(v);
    return out;
  }

  tovlab_format format() { return get("format") == "csv" ? TOVLAB_FORMAT_CSV : TOVLAB_FORMAT_JSON; }

  // machine output goes to the configured file, or stdout
  bool emit(char* text, const std::string& summary) {
    const std::string path = get("out");
    bool ok = true;
    if (path.empty()) {
      std::fputs(text, stdout);
    } else {
      std::ofstream f(path);
      f << text;
      ok = static_cast<bool>(f);
      if (!ok) std::cerr << "tovlab: cannot write " << path << "\n";
      else if (!summary.empty()) std::cout << summary;
    }
    tovlab_free_string(text);
    return ok;
  }

 private:
  tovlab_context* ctx_ = nullptr;
};

int configure(Session& s, const Globals& g) {
  std::string path = g.config;
  if (path.empty())
    if (const char* env = std::getenv("TOVLAB_CONFIG")) path = env;
  if (!path.empty())
    if (auto st = tovlab_context_load_config(s.ctx(), path.c_str()); st != TOVLAB_OK) return s.report(st);
  auto set = [&](const std::string& k, const std::string& v) -> int {
    if (auto st = tovlab_context_set(s.ctx(), k.c_str(), v.c_str()); st != TOVLAB_OK) return s.report(st);
    return kOk;
  };
  for (const auto& kv : g.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "tovlab: --set expects KEY=VALUE, got '" << kv << "'\n";
      return kUsage;
    }
    if (int rc = set(kv.substr(0, eq), kv.substr(eq + 1))) return rc;
  }
  if (!g.format.empty())
    if (int rc = set("format", g.format)) return rc;
  if (!g.out.empty())
    if (int rc = set("out", g.out)) return rc;
  if (g.jobs != 0)
    if (int rc = set("jobs", std::to_string(g.jobs))) return rc;
  return kOk;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TOV integrability toolkit: catalog verification, density classification, critical scans, "
               "explicit pressure and coupling tails"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "key = value configuration file (falls back to $TOVLAB_CONFIG)");
  app.add_option("--out", g.out, "write machine output to this file");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", g.jobs, "worker threads for sweeps and multi-row runs")->check(CLI::Range(1, 1024));
  app.add_option("--set", g.sets, "override a configuration key, KEY=VALUE (repeatable)");

  ParamFlags vp, cp, sp, op, tp;
  std::string verify_rows = "all", tails_rows = "all";
  std::string classify_row, scan_row, solve_row, plot_path, scan_param = "c1";
  double scan_from = 0, scan_to = 0, c0 = 1.0;
  std::size_t steps = 64;

  auto* verify = app.add_subcommand("verify", "check the catalog closed forms against their defining relations");
  verify->add_option("--rows", verify_rows, "comma separated rows or 'all'")->capture_default_str();
  add_params(verify, vp);

  auto* cls = app.add_subcommand("classify", "singularities, cavities and matter type of one entry");
  cls->add_option("--row", classify_row, "row name (1..10, constant, sec33)")->required();
  cls->add_option("--plot", plot_path, "also write r,value,flag CSV of the density");
  add_params(cls, cp);

  auto* scan = app.add_subcommand("scan", "sweep one integration constant and locate classification changes");
  scan->add_option("--row", scan_row, "row name")->required();
  scan->add_option("--param", scan_param, "c1 or c2")->capture_default_str()->check(CLI::IsMember({"c1", "c2"}));
  scan->add_option("--from", scan_from, "start of the range")->required();
  scan->add_option("--to", scan_to, "end of the range")->required();
  scan->add_option("--steps", steps, "sweep intervals (at least 8)")->capture_default_str();
  add_params(scan, sp);

  auto* solve = app.add_subcommand("solve", "explicit pressure of the modified Riccati equation");
  solve->add_option("--row", solve_row, "row name")->required();
  solve->add_option("--c0", c0, "pressure integration constant")->capture_default_str();
  add_params(solve, op);

  auto* tails = app.add_subcommand("tails", "tail samples and certificates of the nonlinear coupling term");
  tails->add_option("--rows", tails_rows, "comma separated rows or 'all'")->capture_default_str();
  add_params(tails, tp);

  auto* dump = app.add_subcommand("catalog-dump", "write the catalog as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  Session s;
  if (int rc = configure(s, g)) return rc;
  const tovlab_format format = s.format();
  char* text = nullptr;

  if (*verify) {
    int passed = 0;
    const auto p = vp.get();
    if (auto st = tovlab_verify(s.ctx(), verify_rows.c_str(), &p, format, &text, &passed); st != TOVLAB_OK)
      return s.report(st);
    if (!s.emit(text, std::string("verify: ") + (passed ? "all rows pass\n" : "FAILED\n"))) return kCheckFailed;
    if (!passed) std::cerr << "tovlab: verification failed\n";
    return passed ? kOk : kCheckFailed;
  }

  if (*cls) {
    const auto p = cp.get();
    if (auto st = tovlab_classify(s.ctx(), classify_row.c_str(), &p, format, &text); st != TOVLAB_OK)
      return s.report(st);
    if (!s.emit(text, "classify: row " + classify_row + " written\n")) return kCheckFailed;
    if (!plot_path.empty()) {
      char* csv = nullptr;
      if (auto st = tovlab_density_plot(s.ctx(), classify_row.c_str(), &p, &csv); st != TOVLAB_OK) return s.report(st);
      std::ofstream f(plot_path);
      f << csv;
      tovlab_free_string(csv);
      if (!f) {
        std::cerr << "tovlab: cannot write " << plot_path << "\n";
        return kCheckFailed;
      }
    }
    return kOk;
  }

  if (*scan) {
    if (!(scan_from < scan_to)) {
      std::cerr << "tovlab: scan range must satisfy --from < --to\n";
      return kUsage;
    }
    const auto p = sp.get();
    if (auto st = tovlab_scan(s.ctx(), scan_row.c_str(), scan_param.c_str(), scan_from, scan_to, steps, &p, format,
                              &text);
        st != TOVLAB_OK)
      return s.report(st);
    return s.emit(text, "scan: row " + scan_row + " over " + scan_param + " in [" + fmt(scan_from) + ", " +
                            fmt(scan_to) + "] written\n")
               ? kOk
               : kCheckFailed;
  }

  if (*solve) {
    int passed = 0;
    const auto p = op.get();
    if (auto st = tovlab_solve(s.ctx(), solve_row.c_str(), &p, c0, format, &text, &passed); st != TOVLAB_OK)
      return s.report(st);
    if (!s.emit(text, std::string("solve: ") + (passed ? "residuals within tolerance\n" : "residual too large\n")))
      return kCheckFailed;
    if (!passed) std::cerr << "tovlab: modified Riccati residual exceeds 10 * residual_tol\n";
    return passed ? kOk : kCheckFailed;
  }

  if (*tails) {
    const auto p = tp.get();
    if (auto st = tovlab_tails(s.ctx(), tails_rows.c_str(), &p, format, &text); st != TOVLAB_OK) return s.report(st);
    return s.emit(text, "tails: written\n") ? kOk : kCheckFailed;
  }

  if (*dump) {
    if (auto st = tovlab_catalog_dump(s.ctx(), &text); st != TOVLAB_OK) return s.report(st);
    return s.emit(text, "catalog: written\n") ? kOk : kCheckFailed;
  }
  return kUsage;
}
