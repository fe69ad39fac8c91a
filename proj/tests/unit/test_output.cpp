#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "twolane/output.hpp"

using namespace twolane;
namespace fs = std::filesystem;

namespace {

std::string flat_profile() {
  std::string csv = "index,headway_m,velocity_m_s\n";
  for (int n = 0; n < 100; ++n) csv += std::to_string(n) + ",7,1.99999667\n";
  return csv;
}

std::set<std::string> polyline_ys(const std::string& svg) {
  const std::regex points("points=\"([^\"]*)\"");
  std::smatch m;
  REQUIRE(std::regex_search(svg, m, points));
  std::set<std::string> ys;
  std::istringstream in(m[1].str());
  std::string pair;
  while (in >> pair) ys.insert(pair.substr(pair.find(',') + 1));
  return ys;
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("cell and label formatting") {
  CHECK(format_cell(7.0) == "7");
  CHECK(format_cell(699.6) == "699.6");
  CHECK(format_cell(1.0 / 3.0) == "0.333333333");
  CHECK(format_cell(1.2345678912e-7) == "1.23456789e-07");
  CHECK(time_label(950.0) == "950");
  CHECK(time_label(0.5) == "0.5");
}

TEST_CASE("csv tables") {
  TrajectoryRecord rec;
  rec.times = {0.0, 1.0};
  rec.circumference = {21.0, 21.0};
  LaneSample s{{7.0, 7.0, 7.0}, {2.0, 2.0, 2.0}};
  rec.samples = {{s, s}, {s, s}};
  rec.samples[1][1].headways = {6.5, 7.5, 7.0};

  const auto st = spacetime_csv(rec, 1);
  CHECK(st.rfind("time_s,h0_m,h1_m,h2_m\n", 0) == 0);
  CHECK(line_count(st) == 3);
  CHECK(st.find("\n1,6.5,7.5,7\n") != std::string::npos);

  const auto prof = profile_csv(rec, 1, 1);
  CHECK(prof == "index,headway_m,velocity_m_s\n0,6.5,2\n1,7.5,2\n2,7,2\n");

  CHECK(nearest_sample(rec, 0.4) == 0);
  CHECK(nearest_sample(rec, 0.6) == 1);
  CHECK(nearest_sample(rec, 50.0) == 1);
}

TEST_CASE("svg profile") {
  const auto svg = render_profile_svg(flat_profile());
  const auto ys = polyline_ys(svg);
  REQUIRE(ys.size() == 1);
  CHECK(*ys.begin() == "165.000");
  CHECK(svg.find("vehicle index n") != std::string::npos);
  CHECK(svg.find("headway (m)") != std::string::npos);
  CHECK(render_profile_svg(flat_profile()) == svg);

  std::string kink = "index,headway_m,velocity_m_s\n";
  for (int n = 0; n < 100; ++n) {
    kink += std::to_string(n) + "," + format_cell(7.0 + 0.78 * std::tanh(0.5 * (n - 25)) *
                                                         std::tanh(0.5 * (75 - n)))
            + ",2\n";
  }
  CHECK(polyline_ys(render_profile_svg(kink)).size() > 10);

  CHECK_THROWS_AS(render_profile_svg(""), std::invalid_argument);
  CHECK_THROWS_AS(render_profile_svg("index,headway_m,velocity_m_s\n"), std::invalid_argument);
  CHECK_THROWS_AS(render_profile_svg("index,headway_m\n0,abc\n"), std::invalid_argument);
}

TEST_CASE("atomic writes and plot files") {
  const auto dir = fs::temp_directory_path() / "twolane_output_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto csv = dir / "lane1_profile_t950.csv";
  write_file_atomic(csv, flat_profile());
  CHECK(fs::exists(csv));
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");

  render_profile_plot(csv, dir / "a.svg");
  render_profile_plot(csv, dir / "b.svg");
  std::ifstream a(dir / "a.svg"), b(dir / "b.svg");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK_THROWS(render_profile_plot(dir / "missing.csv", dir / "c.svg"));
  fs::remove_all(dir);
}
