#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tovlab/classify.hpp"
#include "tovlab/drivers.hpp"
#include "tovlab/report.hpp"

using namespace tovlab;

namespace {
const Tolerances tol{};

template <class T>
void round_trip(const T& value) {
  const json first = value;
  const json reparsed = json::parse(first.dump());
  const T back = reparsed.get<T>();
  const json second = back;
  CHECK(first == second);
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}
}  // namespace

TEST_SUITE("report") {
  TEST_CASE("non-finite numbers") {
    CHECK(number_to_json(kInf) == "+inf");
    CHECK(number_to_json(-kInf) == "-inf");
    CHECK(number_to_json(std::nan("")) == "nan");
    CHECK(number_from_json(json("+inf")) == kInf);
    CHECK(number_from_json(json("-inf")) == -kInf);
    CHECK(std::isnan(number_from_json(json(nullptr))));
    CHECK(number_from_json(json(2.5)) == 2.5);
  }

  TEST_CASE("document envelope") {
    const auto doc = document("verify", json::array());
    CHECK(doc["schema"] == kSchema);
    CHECK(document_data(doc, "verify").is_array());
    CHECK_THROWS(document_data(doc, "scan"));
  }

  TEST_CASE("round trips") {
    round_trip(Params{7, 1.5, 0.25});
    round_trip(Tolerances{});
    round_trip(Domain({{0, 1}, {2, kInf}}, {0.5}));
    const auto& e1 = entry(RowId::R1);
    const Params p{7, 1, 1};
    round_trip(verify_entry(e1, p, standard_grid(e1, p, 50, tol), tol));
    round_trip(classify(e1, p, standard_domain(e1), tol));
    round_trip(critical_scan(entry("sec33"), ScanParameter::C1, 1, 2, 3.5, 16, tol));
    round_trip(row1_analysis(p, tol));
    round_trip(row1_analysis({-1, 1, 1}, tol));
    round_trip(row7_roots(5));
    round_trip(row7_roots(0));
    round_trip(solve_pressure(e1, p, 1, 1, tol));
    round_trip(tails_report(entry(RowId::R3), p, tol));
    round_trip(tails_report(entry(RowId::Constant), p, tol));
  }

  TEST_CASE("catalog dump") {
    const auto j = catalog_json();
    CHECK(j["entries"].size() == catalog().size());
    CHECK(j["aliases"]["sec33"] == "4");
  }

  TEST_CASE("csv shapes") {
    const auto& e1 = entry(RowId::R1);
    const Params p{7, 1, 1};
    const auto plot = density_plot_csv(e1, p, tol, 100);
    CHECK(plot.rfind("r,value,flag\n", 0) == 0);
    CHECK(lines(plot) == 101);
    const auto s = solve_pressure(e1, p, 1, 1, tol);
    CHECK(lines(solve_csv(s)) == s.points.size() + 1);
    const auto c = classify(e1, p, standard_domain(e1), tol);
    CHECK(classify_csv(c).find("segment") != std::string::npos);
  }
}
