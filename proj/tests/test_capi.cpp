#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "tovlab/tovlab.h"
#include "oracles.hpp"

using nlohmann::json;

namespace {
struct Ctx {
  tovlab_context* ctx = nullptr;
  Ctx() { REQUIRE(tovlab_context_create(&ctx) == TOVLAB_OK); }
  ~Ctx() { tovlab_context_destroy(ctx); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  tovlab_free_string(s);
  return out;
}
}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("version and status strings") {
    CHECK(std::string(tovlab_version()).size() > 0);
    CHECK(std::string(tovlab_status_string(TOVLAB_OK)) == "ok");
    CHECK(std::string(tovlab_status_string(TOVLAB_UNKNOWN_ROW)).size() > 0);
    const auto p = tovlab_default_params();
    CHECK(p.c1 == 0.0);
    CHECK(p.c2 == 1.0);
    CHECK(p.c == 1.0);
  }

  TEST_CASE("null arguments") {
    CHECK(tovlab_context_create(nullptr) == TOVLAB_INVALID_ARGUMENT);
    Ctx c;
    CHECK(tovlab_context_set(c.ctx, nullptr, "1") == TOVLAB_INVALID_ARGUMENT);
    tovlab_entry* e = nullptr;
    CHECK(tovlab_entry_open(c.ctx, nullptr, nullptr, &e) == TOVLAB_INVALID_ARGUMENT);
    CHECK(tovlab_entry_open(c.ctx, "1", nullptr, nullptr) == TOVLAB_INVALID_ARGUMENT);
    REQUIRE(tovlab_entry_open(c.ctx, "1", nullptr, &e) == TOVLAB_OK);
    double v = 0;
    CHECK(tovlab_entry_eval(c.ctx, e, TOVLAB_Q_H, 2.0, nullptr) == TOVLAB_INVALID_ARGUMENT);
    CHECK(tovlab_entry_eval(c.ctx, e, TOVLAB_Q_H, 2.0, &v) == TOVLAB_OK);
    CHECK(v == doctest::Approx(1 / (4 * 3.14159265358979323846)));
    tovlab_entry_close(e);
  }

  TEST_CASE("configuration") {
    Ctx c;
    CHECK(tovlab_context_set(c.ctx, "root_tol", "1e-11") == TOVLAB_OK);
    char* v = nullptr;
    REQUIRE(tovlab_context_get(c.ctx, "root_tol", &v) == TOVLAB_OK);
    CHECK(std::stod(take(v)) == 1e-11);
    CHECK(tovlab_context_set(c.ctx, "root_tol", "-1") == TOVLAB_CONFIG);
    CHECK(tovlab_context_set(c.ctx, "nonsense", "1") == TOVLAB_CONFIG);
    CHECK(tovlab_context_set(c.ctx, "format", "xml") == TOVLAB_CONFIG);
    CHECK(std::string(tovlab_context_last_error(c.ctx)).size() > 0);
    REQUIRE(tovlab_context_get(c.ctx, "root_tol", &v) == TOVLAB_OK);
    CHECK(std::stod(take(v)) == 1e-11);

    const std::string path = "capi_test.conf";
    {
      std::ofstream f(path);
      f << "# comment\nresidual_tol = 2e-7\nformat = \"csv\"\njobs = 3\n";
    }
    REQUIRE(tovlab_context_load_config(c.ctx, path.c_str()) == TOVLAB_OK);
    char* dump = nullptr;
    REQUIRE(tovlab_context_dump(c.ctx, &dump) == TOVLAB_OK);
    const auto j = json::parse(take(dump));
    CHECK(j.dump().find("csv") != std::string::npos);
    {
      std::ofstream f(path);
      f << "residual_tol = 1e-7\nbogus line\n";
    }
    CHECK(tovlab_context_load_config(c.ctx, path.c_str()) == TOVLAB_CONFIG);
    CHECK(std::string(tovlab_context_last_error(c.ctx)).find(":2") != std::string::npos);
    CHECK(tovlab_context_load_config(c.ctx, "does/not/exist.conf") == TOVLAB_CONFIG);
    std::remove(path.c_str());
  }

  TEST_CASE("entry evaluation") {
    Ctx c;
    const tovlab_params p{7, 1, 1};
    tovlab_entry* e = nullptr;
    CHECK(tovlab_entry_open(c.ctx, "99", &p, &e) == TOVLAB_UNKNOWN_ROW);
    REQUIRE(tovlab_entry_open(c.ctx, "1", &p, &e) == TOVLAB_OK);
    double v = 0;
    REQUIRE(tovlab_entry_eval(c.ctx, e, TOVLAB_Q_H_PRIME, 2.0, &v) == TOVLAB_OK);
    CHECK(v == doctest::Approx(oracle::row1_hprime_at_2).epsilon(1e-12));
    double radii[4];
    size_t n = 0;
    REQUIRE(tovlab_entry_singular_radii(c.ctx, e, radii, 4, &n) == TOVLAB_OK);
    REQUIRE(n >= 1);
    bool found = false;
    for (size_t i = 0; i < n; ++i) found |= std::abs(radii[i] - oracle::sqrt_7_over_pi) < 1e-12;
    CHECK(found);
    CHECK(tovlab_entry_eval(c.ctx, e, TOVLAB_Q_RHO, oracle::sqrt_7_over_pi, &v) == TOVLAB_SINGULARITY);
    tovlab_entry_close(e);
  }

  TEST_CASE("commands") {
    Ctx c;
    const tovlab_params p{7, 1, 1};
    char* out = nullptr;
    int passed = 0;
    REQUIRE(tovlab_verify(c.ctx, "all", &p, TOVLAB_FORMAT_JSON, &out, &passed) == TOVLAB_OK);
    const auto v = json::parse(take(out));
    CHECK(v["kind"] == "verify");
    CHECK(v["data"]["reports"].size() == 11);
    CHECK(passed == 1);
    CHECK(tovlab_verify(c.ctx, "1,42", &p, TOVLAB_FORMAT_JSON, &out, &passed) == TOVLAB_UNKNOWN_ROW);

    REQUIRE(tovlab_classify(c.ctx, "1", &p, TOVLAB_FORMAT_JSON, &out) == TOVLAB_OK);
    CHECK(json::parse(take(out))["data"]["pattern"] == "X|O|X");

    REQUIRE(tovlab_scan(c.ctx, "sec33", "c1", 1, 5, 32, &p, TOVLAB_FORMAT_JSON, &out) == TOVLAB_OK);
    const auto s = json::parse(take(out));
    REQUIRE(s["data"]["change_points"].size() == 1);
    CHECK(s["data"]["change_points"][0]["refined"].get<double>() ==
          doctest::Approx(oracle::sec33_critical).epsilon(1e-6));
    CHECK(tovlab_scan(c.ctx, "1", "c3", 1, 5, 32, &p, TOVLAB_FORMAT_JSON, &out) == TOVLAB_INVALID_ARGUMENT);

    REQUIRE(tovlab_solve(c.ctx, "constant", &p, 1.0, TOVLAB_FORMAT_CSV, &out, &passed) == TOVLAB_OK);
    CHECK(take(out).rfind("r,", 0) == 0);
    CHECK(passed == 1);

    REQUIRE(tovlab_tails(c.ctx, "3,7", &p, TOVLAB_FORMAT_JSON, &out) == TOVLAB_OK);
    CHECK(json::parse(take(out))["data"]["reports"].size() == 2);

    REQUIRE(tovlab_catalog_dump(c.ctx, &out) == TOVLAB_OK);
    CHECK(json::parse(take(out))["data"]["aliases"]["sec33"] == "4");

    REQUIRE(tovlab_density_plot(c.ctx, "1", &p, &out) == TOVLAB_OK);
    CHECK(take(out).rfind("r,value,flag", 0) == 0);

    REQUIRE(tovlab_row1_analysis(c.ctx, &p, &out) == TOVLAB_OK);
    CHECK(take(out).find("r0") != std::string::npos);

    double r = 0;
    REQUIRE(tovlab_row2_singularity(c.ctx, oracle::row2_c1_for_r0_2, &r) == TOVLAB_OK);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-11));

    double re[3], im[3];
    REQUIRE(tovlab_row7_roots(c.ctx, 5, re, im) == TOVLAB_OK);
    for (int k = 0; k < 3; ++k) CHECK(re[k] == doctest::Approx(oracle::cubic5[k]).epsilon(1e-12));
  }
}
