#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sqbell/quadrature.hpp"

using namespace sqbell;

TEST_SUITE("quadrature") {
  TEST_CASE("polynomials and smooth functions to the requested tolerance") {
    CHECK(integrate_scalar([](double x) { return x * x * x; }, 0.0, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(integrate_scalar([](double x) { return std::exp(-x * x); }, -6.0, 6.0) ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(integrate_scalar([](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0) ==
          doctest::Approx(0.4 * std::atan(5.0)).epsilon(1e-12));
  }

  TEST_CASE("vector-valued integrands share panels") {
    const std::array<double, 2> br{0.0, 1.0};
    auto f = [](double x) { return Vec<3>{1.0, x, std::cos(40.0 * x)}; };
    const auto r = integrate<3>(f, br);
    CHECK(r.value[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.value[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(r.value[2] - std::sin(40.0) / 40.0) < 1e-12);
    CHECK(r.evaluations >= 21);
  }

  TEST_CASE("breakpoints at a kink give a clean result") {
    const std::array<double, 3> br{-1.0, 0.3, 2.0};
    auto f = [](double x) { return Vec<1>{std::abs(x - 0.3)}; };
    CHECK(integrate<1>(f, br).value[0] == doctest::Approx(0.5 * 1.3 * 1.3 + 0.5 * 1.7 * 1.7).epsilon(1e-14));
  }

  TEST_CASE("fast oscillation with period-sized panels") {
    const double w = 2000.0;
    const auto br = unit_breakpoints(0.0, w);
    auto f = [&](double x) { return Vec<1>{std::cos(w * x) * std::exp(-x)}; };
    const double exact = (std::exp(-1.0) * (w * std::sin(w) - std::cos(w)) + 1.0) / (1.0 + w * w);
    CHECK(std::abs(integrate<1>(f, br).value[0] - exact) < 1e-12);
  }

  TEST_CASE("unit_breakpoints are sorted and span the unit interval") {
    for (double edge : {0.0, 1e-3, 0.2}) {
      for (double w : {0.0, 5.0, 300.0, 1e6}) {
        const auto b = unit_breakpoints(edge, w, 512);
        REQUIRE(b.size() >= 2);
        CHECK(b.front() == 0.0);
        CHECK(b.back() == 1.0);
        CHECK(b.size() <= 512 + 64);
        for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] > b[i - 1]);
      }
    }
  }

  TEST_CASE("non-convergence raises QuadratureError") {
    QuadOptions opt;
    opt.max_depth = 3;
    opt.abs_tol = 1e-15;
    CHECK_THROWS_AS(integrate_scalar([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt), QuadratureError);
  }

  TEST_CASE("results are reproducible") {
    auto f = [](double x) { return std::sin(30.0 * x) * std::exp(x); };
    CHECK(integrate_scalar(f, 0.0, 3.0) == integrate_scalar(f, 0.0, 3.0));
  }
}
