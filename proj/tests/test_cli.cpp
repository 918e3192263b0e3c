#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {
struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TOVLAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify") {
    const auto ok = run("verify --c1 7 --c2 1");
    CHECK(ok.code == 0);
    const auto j = json::parse(ok.out);
    CHECK(j["kind"] == "verify");
    CHECK(j["data"]["reports"].size() == 11);
    CHECK(j["data"]["passed"] == true);

    CHECK(run("verify --rows 99").code == 2);
    CHECK(run("verify --rows 1 --set residual_tol=1e-30").code == 1);
    CHECK(run("verify --rows 1 --set bogus=1").code == 2);
    CHECK(run("verify --rows 1 --format xml").code == 2);
  }

  TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("classify").code == 2);
    CHECK(run("scan --row 1 --from 3 --to 1").code == 2);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("classify and plot") {
    const std::string plot = "cli_plot.csv";
    const auto r = run("classify --row 1 --c1 7 --plot " + plot);
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["data"]["pattern"] == "X|O|X");
    CHECK(slurp(plot).rfind("r,value,flag", 0) == 0);
    std::remove(plot.c_str());
  }

  TEST_CASE("scan, solve, tails and catalog") {
    const auto s = run("scan --row sec33 --from 1 --to 5 --steps 32 --jobs 4");
    CHECK(s.code == 0);
    CHECK(json::parse(s.out)["data"]["change_points"].size() == 1);

    const auto v = run("solve --row constant --c 0.001 --format csv");
    CHECK(v.code == 0);
    CHECK(v.out.rfind("r,", 0) == 0);
    CHECK(run("solve --row 1 --c1 7 --c0 0").code == 0);
    // r = 1 is the boundary of row 2, so the base point has to move
    CHECK(run("solve --row 2 --c1 7").code == 1);
    CHECK(run("solve --row 2 --c1 7 --set base_point=2").code == 0);

    const auto t = run("tails --rows 3,constant");
    CHECK(t.code == 0);
    CHECK(json::parse(t.out)["data"]["reports"].size() == 2);

    const auto c = run("catalog-dump");
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["data"]["aliases"]["sec33"] == "4");
  }

  TEST_CASE("out file and config") {
    const std::string out = "cli_out.json";
    const std::string conf = "cli_test.conf";
    {
      std::ofstream f(conf);
      f << "format = csv\n";
    }
    const auto r = run("--config " + conf + " --out " + out + " verify --rows 1,2 --c1 7");
    CHECK(r.code == 0);
    CHECK_FALSE(r.out.empty());
    CHECK(slurp(out).find("row,") == 0);
    {
      std::ofstream f(conf);
      f << "jobs = many\n";
    }
    CHECK(run("--config " + conf + " verify --rows 1").code == 2);
    std::remove(out.c_str());
    std::remove(conf.c_str());
  }
}
