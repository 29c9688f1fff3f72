#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "doctest.h"
#include "sqbell/scan.hpp"

using namespace sqbell;

namespace {

constexpr double pi = std::numbers::pi;
const double cirelson = 2.0 * std::sqrt(2.0);

}  // namespace

TEST_SUITE("scan") {
  TEST_CASE("axes") {
    const auto lin = make_axis(0.0, 1.0, 5);
    CHECK(lin == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    const auto geo = make_axis(0.0, 0.8, 5, AxisSpacing::Geometric, 1e-3);
    REQUIRE(geo.size() == 5);
    CHECK(geo[0] == 0.0);
    CHECK(geo[1] == 1e-3);
    CHECK(geo[4] == 0.8);
    CHECK(geo[2] / geo[1] == doctest::Approx(geo[3] / geo[2]).epsilon(1e-12));
    CHECK(make_axis(0.0, 1.0, 6, AxisSpacing::Geometric)[1] == doctest::Approx(1e-4));
    CHECK(make_axis(2.0, 2.0, 1) == std::vector<double>{2.0});
    CHECK_THROWS_AS(make_axis(1.0, 0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_axis(0.0, 1.0, 0), std::invalid_argument);
    CHECK(parse_axis_spacing("geometric") == AxisSpacing::Geometric);
    CHECK(parse_map_mode("full") == MapMode::Full);
    CHECK_THROWS_AS(parse_map_mode("bumps"), std::invalid_argument);
  }

  TEST_CASE("small map: clamped values, auditable backends, known cells") {
    const auto m = violation_map({0.5, 2.0, 4.0}, {0.0, 0.005, 0.3, pi / 4});
    REQUIRE(m.values.size() == 12);
    for (std::size_t k = 0; k < m.values.size(); ++k) {
      CHECK(m.values[k] >= 2.0);
      CHECK(m.values[k] <= cirelson + 5e-3);
      CHECK(m.values[k] == std::max(2.0, m.raw[k]));
      CHECK(m.quality[k] != Quality::Failed);
    }
    CHECK(m.values[m.index(0, 0)] == 2.0);
    CHECK(m.values[m.index(1, 0)] == doctest::Approx(2.571).epsilon(1e-3));
    CHECK(m.values[m.index(2, 3)] == 2.0);
    CHECK(m.backend[m.index(1, 0)] == Backend::Exact);
    CHECK(m.regime[m.index(2, 1)] == Regime::LargeSqueezing);
    CHECK(m.backend[m.index(2, 1)] == Backend::LargeSqueezing);
    CHECK_THROWS_AS(violation_map({11.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(violation_map({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(violation_map({1.0, 0.5}, {0.0}), std::invalid_argument);
  }

  TEST_CASE("values do not grow with phi on the violating side") {
    const auto m = violation_map({3.0}, make_axis(0.0, 0.1, 21));
    CHECK(m.values.front() > 2.5);
    for (std::size_t i = 1; i < m.values.size(); ++i) CHECK(m.values[i] <= m.values[i - 1] + 1e-3);
  }

  TEST_CASE("map is identical for any thread count") {
    const std::vector<double> r{1.5, 2.5}, phi{0.0, 0.02, 0.1};
    MapOptions a, b;
    a.threads = 1;
    b.threads = 3;
    const auto m1 = violation_map(r, phi, a), m3 = violation_map(r, phi, b);
    std::ostringstream s1, s3;
    write_map_csv(s1, m1);
    write_map_csv(s3, m3);
    CHECK(s1.str() == s3.str());
  }

  TEST_CASE("map cells agree under phi -> pi/2 - phi") {
    // Bump heights computed from the raw, uncanonicalized parameters.
    BumpOptions o;
    o.backend = Backend::Exact;
    for (double r : {1.5, 2.0}) {
      for (double phi : {0.0, 0.01, 0.05, 0.2, 0.6}) {
        const auto b = find_bump_max({r, phi}, o);
        const LatticeBinning bin{std::exp2(b.log2_ell_star)};
        const double direct = bell_optimal(exact_triple({r, phi}, bin));
        const double mirrored = bell_optimal(exact_triple({r, pi / 2 - phi}, bin));
        CHECK(std::abs(direct - mirrored) < 1e-7);
        CHECK(std::abs(direct - b.bell_raw) < 1e-7);
      }
    }
  }

  TEST_CASE("boundary at r = 4 sits at e^r phi near 0.34") {
    const auto m = violation_map({4.0}, make_axis(0.0, 0.02, 41, AxisSpacing::Geometric, 1e-3));
    const auto bd = violation_boundary(m);
    REQUIRE(bd.size() == 1);
    CHECK(bd[0].r == 4.0);
    CHECK(bd[0].phi == doctest::Approx(0.34 * std::exp(-4.0)).epsilon(0.2));
  }

  TEST_CASE("boundary below and near the threshold") {
    const auto m = violation_map({1.0, 1.2}, make_axis(0.0, 0.1, 21));
    const auto bd = violation_boundary(m);
    REQUIRE(bd.size() == 1);
    CHECK(bd[0].r == 1.2);
    CHECK(bd[0].phi > 0.0);
    CHECK(bd[0].phi <= 0.05);
  }

  TEST_CASE("boundary interpolation on a synthetic map") {
    ViolationMap m;
    m.r_axis = {1.0, 2.0};
    m.phi_axis = {0.0, 0.1, 0.2};
    m.raw = {2.5, 2.1, 1.9, 1.8, 1.7, 1.6};
    for (double v : m.raw) m.values.push_back(std::max(2.0, v));
    const auto bd = violation_boundary(m, 0.0);
    REQUIRE(bd.size() == 1);
    CHECK(bd[0].phi == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(violation_boundary(m, 0.2).at(0).phi == doctest::Approx(0.1 * 0.3 / 0.4).epsilon(1e-12));
    CHECK_THROWS_AS(violation_boundary(m, -1.0), std::invalid_argument);
  }

  TEST_CASE("collapse curve in e^r phi") {
    std::vector<double> xs;
    for (double x = 0.30; x <= 0.40 + 1e-9; x += 0.01) xs.push_back(x);
    const auto c = collapse_curve(xs, 5.0);
    CHECK_FALSE(c.regime_warning);
    const auto x = collapse_crossing(c);
    REQUIRE(x.has_value());
    CHECK(*x == doctest::Approx(0.34).epsilon(0.02 / 0.34));
    const auto ends = collapse_curve({0.01, 10.0}, 5.0);
    CHECK(ends.points[0].bell_max == doctest::Approx(cirelson).epsilon(0.01));
    CHECK(ends.points[1].bell_max == 2.0);
    CHECK(ends.points[1].bell_raw < 2.0);
    CHECK_FALSE(collapse_crossing(collapse_curve({5.0, 10.0}, 5.0)).has_value());
    CHECK(collapse_curve({0.5}, 3.0).regime_warning);
  }

  TEST_CASE("collapse curves for r_ref = 4 and 5 coincide") {
    const auto xs = make_axis(0.05, 2.0, 12, AxisSpacing::Geometric);
    const auto a = collapse_curve(xs, 4.0), b = collapse_curve(xs, 5.0);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(a.points[i].bell_raw - b.points[i].bell_raw) < 2e-3);
  }

  TEST_CASE("threshold in r") {
    const auto t0 = threshold_r(0.0);
    REQUIRE(t0.has_value());
    CHECK(*t0 == doctest::Approx(1.12).epsilon(0.02 / 1.12));
    CHECK_FALSE(threshold_r(pi / 4).has_value());
    ThresholdOptions o;
    o.r_max = 5.0;
    o.coarse_step = 0.5;
    CHECK_FALSE(threshold_r(0.2, o).has_value());
    CHECK_THROWS_AS(threshold_r(1.0), std::invalid_argument);
  }

  TEST_CASE("writers") {
    ViolationMap m;
    m.r_axis = {1.0};
    m.phi_axis = {0.0, 0.1};
    m.values = {2.5, std::nan("")};
    m.raw = {2.5, std::nan("")};
    m.regime = {Regime::Generic, Regime::Generic};
    m.backend = {Backend::Exact, Backend::Exact};
    m.quality = {Quality::Ok, Quality::Failed};
    std::ostringstream csv;
    write_map_csv(csv, m);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line.find("schema_version=1") != std::string::npos);
    std::getline(in, line);
    CHECK(line == "r,phi,bell_max,bell_raw,regime,backend,quality");
    std::getline(in, line);
    CHECK(line == "1,0,2.5,2.5,generic,exact,ok");
    std::getline(in, line);
    CHECK(line == "1,0.10000000000000001,nan,nan,generic,exact,failed");

    std::ostringstream js;
    write_map_json(js, m);
    const auto j = nlohmann::json::parse(js.str());
    CHECK(j["schema_version"] == 1);
    CHECK(j["mode"] == "bump");
    CHECK(j["bell_max"][0] == 2.5);
    CHECK(j["bell_max"][1].is_null());
    CHECK(j["quality"][1] == "failed");

    CollapseCurve c{5.0, false, {{0.3, 2.1, 2.1}, {0.4, 2.0, 1.8}}};
    std::ostringstream cj;
    write_collapse_json(cj, c);
    const auto k = nlohmann::json::parse(cj.str());
    CHECK(k["crossing_x"].get<double>() == doctest::Approx(0.3 + 0.1 / 3.0).epsilon(1e-12));
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-INFINITY) == "-inf");
  }
}
