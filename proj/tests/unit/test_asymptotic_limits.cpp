#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sqbell/asymptotic_limits.hpp"
#include "sqbell/bell.hpp"

using namespace sqbell;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_SUITE("asymptotic_limits") {
  TEST_CASE("zz large-ell plateau") {
    for (double r : {0.5, 2.0}) CHECK(std::abs(szsz_large_ell({r, pi / 4})) < 1e-15);
    CHECK(szsz_large_ell({2.0, 0.0}) == doctest::Approx(0.97668).epsilon(1e-5));
    for (double r : {0.3, 1.0, 2.7}) CHECK(szsz_large_ell({r, 0.0}) == doctest::Approx(2.0 / pi * std::atan(std::sinh(2.0 * r))).epsilon(1e-14));
  }

  TEST_CASE("Bell large-ell plateau") {
    CHECK(bell_large_ell({1.0, 0.0}) == doctest::Approx(4.0 / pi * std::atan(std::sinh(2.0))).epsilon(1e-14));
    CHECK(bell_large_ell({1.0, 0.0}) == doctest::Approx(1.65744).epsilon(1e-5));
    const double b5 = bell_large_ell({5.0, 0.0});
    CHECK(b5 < 2.0);
    CHECK(b5 == doctest::Approx(1.99988).epsilon(1e-5));
    CHECK(std::abs(bell_large_ell({1.3, pi / 4})) < 1e-15);
  }

  TEST_CASE("plateau relations hold on a grid") {
    for (double r = 0.0; r <= 6.0; r += 0.5) {
      for (double phi = 0.0; phi <= pi; phi += 0.1) {
        const SqueezingParams p{r, phi};
        CHECK(bell_large_ell(p) == 2.0 * std::abs(szsz_large_ell(p)));
        CHECK(bell_large_ell(p) <= 2.0);
      }
    }
  }

  TEST_CASE("exact sums approach the zz plateau at ell = 64") {
    for (double r : {0.5, 1.5, 2.5}) {
      for (double phi : {0.0, 0.3, 0.7, 1.2}) {
        const SqueezingParams p{r, phi};
        CHECK(std::abs(szsz_exact(p, {64.0}) - szsz_large_ell(p)) < 1e-3);
      }
    }
  }

  TEST_CASE("small-ell limits") {
    constexpr auto lim = small_ell_limits();
    CHECK(lim.triple.szsz == 0.0);
    CHECK(lim.triple.sxsx == 1.0);
    CHECK(lim.triple.sysy == 0.0);
    CHECK(lim.bell == 2.0);
    const auto t = exact_triple({1.0, 0.0}, {0.0625});
    CHECK(std::abs(t.szsz) < 0.02);
    CHECK(bell_optimal(t) == doctest::Approx(2.0).epsilon(0.01));
  }

  TEST_CASE("zz leading small-ell term") {
    CHECK(szsz_small_ell_leading({2.0, 0.0}, {1e-3}) == 0.0);
    CHECK(szsz_small_ell_leading({2.0, 0.0}, {0.25}) == doctest::Approx(0.4709).epsilon(1e-4));
    // Bin averaging scales the point-sample term by 4 / pi^2; the exact sums
    // follow the corrected term closely while ell sqrt(gamma_2) is moderate.
    for (double ell : {0.15, 0.25, 0.3}) {
      const double ratio = szsz_exact({2.0, 0.0}, {ell}) / szsz_small_ell_leading({2.0, 0.0}, {ell});
      CHECK(ratio == doctest::Approx(4.0 / (pi * pi)).epsilon(1e-3));
    }
    // Under the duality the roles of gamma_1 and gamma_2 swap.
    const SqueezingParams p{1.2, 0.3}, d{1.2, pi / 2 - 0.3};
    const double ell = 0.4;
    CHECK(szsz_small_ell_leading(d, {ell}) ==
          doctest::Approx(2.0 * std::exp(-pi * pi / (gamma_set(p).gamma1 * ell * ell))).epsilon(1e-12));
  }
}
