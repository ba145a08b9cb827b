#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stefanchain/numerics.hpp"

using namespace stefanchain;

TEST_CASE("erf at tabulated points") {
  CHECK(stefanchain::erf(0.0) == 0.0);
  CHECK(stefanchain::erf(0.5) == doctest::Approx(0.5204998778130465).epsilon(1e-15));
  CHECK(stefanchain::erf(-0.5) == -stefanchain::erf(0.5));
  CHECK(stefanchain::erf(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-15));
  CHECK(stefanchain::erf(2.0) == doctest::Approx(0.9953222650189527).epsilon(1e-15));
  CHECK(std::abs(stefanchain::erf(3.5) - 0.9999992569016276) < 1e-14);
  CHECK(std::abs(stefanchain::erf(5.9) - 0.9999999999999999) < 1e-14);
}

TEST_CASE("erf saturates beyond |x| = 6") {
  CHECK(stefanchain::erf(6.0) == 1.0);
  CHECK(stefanchain::erf(123.0) == 1.0);
  CHECK(stefanchain::erf(-7.0) == -1.0);
}

TEST_CASE("erf matches the series oracle across the core range") {
  for (double x = -2.5; x <= 2.5; x += 0.03125)
    CHECK(std::abs(stefanchain::erf(x) - oracles::erf_series(x)) < 1e-15);
}

TEST_CASE("erf is odd and monotone") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 6.5);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(stefanchain::erf(-x) == -stefanchain::erf(x));
  }
  double prev = stefanchain::erf(-6.5);
  for (double x = -6.4; x <= 6.5; x += 0.05) {
    CHECK(stefanchain::erf(x) >= prev);
    prev = stefanchain::erf(x);
  }
}

TEST_CASE("erfc complements erf") {
  for (double x : {-4.0, -1.0, 0.0, 0.3, 2.5, 4.0})
    CHECK(stefanchain::erf(x) + stefanchain::erfc(x) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(stefanchain::erfc(6.0) == doctest::Approx(2.151973671249891e-17).epsilon(1e-10));
}

TEST_CASE("bisect finds simple roots") {
  const double r1 = bisect([](double x) { return x - 1.0; }, {0.0, 2.0}, {1e-14, 0.0, 200});
  CHECK(r1 == doctest::Approx(1.0).epsilon(1e-12));

  const double r2 = bisect([](double x) { return x * x - 2.0; }, {1.0, 2.0}, {1e-14, 0.0, 200});
  CHECK(std::abs(r2 * r2 - 2.0) < 1e-12);
}

TEST_CASE("bisect rejects brackets without a sign change") {
  CHECK_THROWS_WITH_AS(bisect([](double x) { return x * x + 1.0; }, {0.0, 1.0}, {1e-12, 0, 100}),
                       doctest::Contains("NoSignChange"), ChainError);
}

TEST_CASE("bisect result stays inside the bracket") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double lo = -2.0 + 3.0 * u(rng);
    const double hi = lo + 0.5 + 2.0 * u(rng);
    const double root = lo + (hi - lo) * (0.05 + 0.9 * u(rng));
    const double r = bisect([root](double x) { return std::atan(x - root); }, {lo, hi},
                            {1e-13, 0.0, 200});
    CHECK(r >= lo);
    CHECK(r <= hi);
    CHECK(r == doctest::Approx(root).epsilon(1e-10));
  }
}

TEST_CASE("bisect respects the iteration budget") {
  CHECK_THROWS_WITH_AS(
      bisect([](double x) { return x - 0.1234567; }, {0.0, 1.0}, {1e-14, 0.0, 4}),
      doctest::Contains("MaxIterExceeded"), ChainError);
}

TEST_CASE("integrate handles polynomials exactly") {
  CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0, {1e-12, 0, 100}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, {1e-12, 0, 100}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("integrate of the Gaussian matches erf") {
  const double got = integrate([](double x) { return std::exp(-x * x); }, 0.0, 1.0,
                               {1e-12, 0.0, 100});
  CHECK(got == doctest::Approx(0.7468241328124271).epsilon(1e-10));
  CHECK(got == doctest::Approx(std::sqrt(M_PI) / 2.0 * stefanchain::erf(1.0)).epsilon(1e-10));
}

TEST_CASE("integrate is additive over adjacent intervals") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ToleranceSpec tol{1e-10, 0.0, 100};
  for (int i = 0; i < 30; ++i) {
    const double amp = 2.0 * u(rng) - 1.0;
    const double freq = 1.0 + 4.0 * u(rng);
    const double quad = u(rng);
    auto f = [=](double x) { return amp * std::sin(freq * x) + quad * x * x; };
    double pts[3] = {4.0 * u(rng), 4.0 * u(rng), 4.0 * u(rng)};
    std::sort(pts, pts + 3);
    const double lhs = integrate(f, pts[0], pts[1], tol) + integrate(f, pts[1], pts[2], tol);
    const double rhs = integrate(f, pts[0], pts[2], tol);
    CHECK(std::abs(lhs - rhs) <= 3.0 * tol.abs_tol);
  }
}

TEST_CASE("integrate agrees with a fixed-step Simpson oracle") {
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  const double got = integrate(f, 0.0, 2.0, {1e-11, 0.0, 100});
  CHECK(got == doctest::Approx(oracles::simpson_fixed(f, 0.0, 2.0, 4096)).epsilon(1e-9));
}

TEST_CASE("integrate reports an exhausted subdivision budget") {
  CHECK_THROWS_WITH_AS(integrate([](double x) { return std::exp(x); }, 0.0, 1.0,
                                 {1e-300, 0.0, 100}),
                       doctest::Contains("SubdivisionLimit"), ChainError);
}

TEST_CASE("central_diff on the named examples") {
  CHECK(central_diff([](double x) { return x * x; }, 3.0, 1, 1e-4) ==
        doctest::Approx(6.0).epsilon(1e-7));
  CHECK(std::abs(central_diff([](double x) { return std::sin(x); }, 0.0, 2, 1e-3)) < 1e-6);
  CHECK(central_diff([](double x) { return std::exp(x); }, 0.0, 3, 1e-2) ==
        doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("central_diff converges at second order") {
  auto f = [](double x) { return std::sin(x); };
  const double exact[4] = {0.0, std::cos(0.7), -std::sin(0.7), -std::cos(0.7)};
  for (int order = 1; order <= 3; ++order) {
    double err[3];
    double h = 1e-2;
    for (int lvl = 0; lvl < 3; ++lvl, h /= 2.0)
      err[lvl] = std::abs(central_diff(f, 0.7, order, h) - exact[order]);
    CHECK(std::log2(err[0] / err[1]) > 1.8);
    CHECK(std::log2(err[1] / err[2]) > 1.8);
  }
}

TEST_CASE("central_diff validates its inputs") {
  CHECK_THROWS_AS(central_diff([](double x) { return x; }, 0.0, 4, 1e-3), ChainError);
  CHECK_THROWS_AS(central_diff([](double x) { return x; }, 0.0, 1, 0.0), ChainError);
}

TEST_CASE("default step scales with the working point") {
  CHECK(default_diff_step(0.0, 1) == doctest::Approx(std::cbrt(2.220446049250313e-16)));
  CHECK(default_diff_step(100.0, 1) == doctest::Approx(100.0 * std::cbrt(2.220446049250313e-16)));
  CHECK(default_diff_step(0.0, 2) > default_diff_step(0.0, 1));
}

TEST_CASE("tolerance and interval invariants are enforced") {
  CHECK_THROWS_AS(bisect([](double x) { return x; }, {1.0, 0.0}, {1e-12, 0, 10}), ChainError);
  CHECK_THROWS_AS(bisect([](double x) { return x; }, {-1.0, 1.0}, {0.0, 0.0, 10}), ChainError);
  CHECK_THROWS_AS(bisect([](double x) { return x; }, {-1.0, 1.0}, {1e-12, 0.0, 0}), ChainError);
}
