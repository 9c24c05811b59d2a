#include <doctest.h>

#include <cmath>
#include <random>

#include "bss/basis.hpp"
#include "oracles.hpp"

using namespace bss;

TEST_CASE("truncation policy rejects out-of-range settings")
{
  CHECK_THROWS_AS(TruncationPolicy(0.0, 10), DomainError);
  CHECK_THROWS_AS(TruncationPolicy(1.0, 10), DomainError);
  CHECK_THROWS_AS(TruncationPolicy(1e-12, 0), DomainError);
  CHECK_NOTHROW(TruncationPolicy(1e-12, 1));
}

TEST_CASE("bernstein weights at small degree")
{
  const auto w = bernstein_weights(2, 0.5);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == 0.25);
  CHECK(w[1] == 0.5);
  CHECK(w[2] == 0.25);

  const auto e = bernstein_weights(5, 0.0);
  REQUIRE(e.size() == 6);
  CHECK(e[0] == 1.0);
  for (long k = 1; k <= 5; ++k)
    CHECK(e[k] == 0.0);

  const auto f = bernstein_weights(5, 1.0);
  CHECK(f[5] == 1.0);
  CHECK(f.sum() == 1.0);
}

TEST_CASE("bernstein weights match exact rationals up to degree 20")
{
  const oracle::Rational x(37, 100);
  for (long m = 1; m <= 20; ++m) {
    const auto w = bernstein_weights(m, 0.37);
    const auto exact = oracle::bernstein_exact(m, x);
    for (long k = 0; k <= m; ++k)
      CHECK(std::abs(w[k] - exact[k].convert_to<double>()) <= 4e-16);
  }
}

TEST_CASE("bernstein partition of unity at high degree")
{
  CHECK(std::abs(bernstein_weights(200, 0.37).sum() - 1.0) <= 1e-12);
  for (long m : {65L, 100L, 500L, 2000L})
    for (double x : {1e-9, 0.01, 0.37, 0.5, 0.999})
      CHECK(std::abs(bernstein_weights(m, x).sum() - 1.0) <= 1e-12);
}

TEST_CASE("log-space and recurrence bernstein paths agree with the 50-digit oracle")
{
  for (long m : {30L, 64L, 65L, 150L}) {
    const double x = 0.713;
    const auto ref = oracle::bernstein(m, oracle::Big(x));
    const auto direct = bernstein_weights_direct(m, x);
    const auto logs = bernstein_weights_log(m, x);
    for (long k = 0; k <= m; ++k) {
      const double r = ref[k].convert_to<double>();
      CHECK(std::abs(direct[k] - r) <= 1e-15);
      CHECK(std::abs(logs[k] - r) <= 1e-15);
    }
  }
}

TEST_CASE("bernstein weights reject bad arguments")
{
  CHECK_THROWS_AS(bernstein_weights(0, 0.5), DomainError);
  CHECK_THROWS_AS(bernstein_weights(3, -0.1), DomainError);
  CHECK_THROWS_AS(bernstein_weights(3, 1.1), DomainError);
}

TEST_CASE("szasz weights at rate zero")
{
  const auto w = szasz_weights(1, 0.0, TruncationPolicy(0.3, 1));
  REQUIRE(w.size() == 1);
  CHECK(w[0] == 1.0);
  CHECK(w.tail_bound == 0.0);
}

TEST_CASE("szasz weights at unit rate are e^-1/k!")
{
  const auto w = szasz_weights(10, 0.1, TruncationPolicy(1e-12, 1000000));
  const auto ref = oracle::poisson(oracle::Big(1), w.size() - 1);
  for (long k = 0; k < w.size(); ++k)
    CHECK(std::abs(w[k] - ref[k].convert_to<double>()) <= 1e-15 * ref[k].convert_to<double>());
  CHECK(w.tail_bound <= 1e-12);
  const long K = w.size() - 1;
  CHECK(oracle::poisson_upper_tail(oracle::Big(1), K) < 1e-12);
}

TEST_CASE("szasz tail bound matches the incomplete-gamma tail")
{
  const auto w = szasz_weights(50, 2.0, TruncationPolicy(1e-10, 1000000));
  const long K = w.size() - 1;
  const double exact = oracle::poisson_upper_tail(oracle::Big(100), K).convert_to<double>();
  CHECK(std::abs(w.tail_bound - exact) <= 1e-12);
  CHECK(exact <= 1e-10);
}

TEST_CASE("szasz weights invariants on random rates")
{
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> nd(1, 400);
  std::uniform_real_distribution<double> yd(0.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    const long n = nd(rng);
    const double y = yd(rng);
    const auto w = szasz_weights(n, y);
    CHECK(w.values.minCoeff() >= 0);
    CHECK(w.sum() <= 1 + 1e-12);
    CHECK(w.tail_bound <= 1e-12);
    CHECK(std::abs(1 - w.sum() - w.tail_bound) <= 1e-13);
  }
}

TEST_CASE("szasz truncation failures")
{
  CHECK_THROWS_AS(szasz_weights(10, -1.0), DomainError);
  CHECK_THROWS_AS(szasz_weights(0, 1.0), DomainError);
  try {
    szasz_weights(100, 10.0, TruncationPolicy(1e-12, 50));
    FAIL("expected a truncation error");
  } catch (const TruncationError& e) {
    CHECK(e.achieved_tail() > 0.9);
  }
}

TEST_CASE("kernel family selects the y weights")
{
  const TruncationPolicy p;
  CHECK(y_weights(KernelFamily::bernstein_bernstein, 7, 0.3, p).size() == 8);
  CHECK(y_weights(KernelFamily::bernstein_szasz, 7, 0.3, p).size() > 8);
}

TEST_CASE("bernstein partition of unity on a 1001-point grid up to degree 500")
{
  for (long m = 1; m <= 500; m += (m < 20 ? 1 : 37)) {
    double worst = 0;
    for (long i = 0; i <= 1000; ++i) {
      const auto w = bernstein_weights(m, i / 1000.0);
      REQUIRE(w.values.minCoeff() >= 0);
      worst = std::max(worst, std::abs(w.sum() - 1));
    }
    CAPTURE(m);
    CHECK(worst <= 1e-12);
  }
  double worst = 0;
  for (long i = 0; i <= 1000; ++i) {
    worst = std::max(worst, std::abs(bernstein_weights(500L, i / 1000.0).sum() - 1));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("log-space and recurrence paths agree entrywise up to degree 64")
{
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> u(0, 1);
  for (long m = 1; m <= 64; ++m)
    for (int k = 0; k < 8; ++k) {
      const double x = k == 0 ? 0.5 : u(rng);
      const auto a = bernstein_weights_direct(m, x);
      const auto b = bernstein_weights_log(m, x);
      REQUIRE(a.size() == b.size());
      for (long i = 0; i < a.size(); ++i) {
        if (a[i] == 0 && b[i] == 0)
          continue;
        CAPTURE(m);
        CAPTURE(x);
        CHECK(std::abs(a[i] - b[i]) <= 1e-13 * std::max(std::abs(a[i]), std::abs(b[i])));
      }
    }
}
