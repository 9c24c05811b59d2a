#include <doctest.h>

#include <cmath>

#include "bss/corpus.hpp"
#include "bss/weighted.hpp"
#include "oracles.hpp"

using namespace bss;
using oracle::Big;

namespace {

const StancuParams<double> shifted(1, 2, 1, 2);

} // namespace

TEST_CASE("weights")
{
  const auto w1 = WeightSpec<double>::power(0.5);
  double prev = INFINITY;
  for (double y : {10.0, 1e2, 1e3, 1e4}) {
    CHECK(rho(0.3, y) >= 1);
    const double ratio = rho(0.3, y) / w1(0.3, y);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(rho(0.0, 0.0) == 1);
  CHECK_THROWS_AS(WeightSpec<double>::power(0.0), DomainError);
}

TEST_CASE("weighted norms")
{
  const TruncatedStrip<double> strip(10);
  const auto plain = WeightSpec<double>::plain();
  CHECK(weighted_norm([](double x, double y) { return rho(x, y); }, plain, strip, 51) == 1.0);
  CHECK(weighted_norm([](double x, double) { return x; }, plain, strip, 51) == 0.5);
  CHECK(weighted_norm([](double, double) { return 0.0; }, plain, strip, 51) == 0.0);
}

TEST_CASE("operator rho-norm surrogate for classical parameters")
{
  const TruncatedStrip<double> strip(100);
  const auto classical = StancuParams<double>::classical();
  for (long m : {1L, 3L, 10L, 57L})
    for (long n : {1L, 4L, 20L, 133L}) {
      const double b = operator_rho_norm_bound(classical, m, n, strip, 101);
      CHECK(b >= 1);
      CHECK(b <= 1 + 1.0 / (4 * m) + 1.0 / (2 * n) + 1e-9);
    }
  double prev = INFINITY;
  for (long k : {10L, 100L, 1000L}) {
    const double b = operator_rho_norm_bound(classical, k, k, strip, 101);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("operator rho-norm surrogate includes the tail limit")
{
  // With beta2 > 0 the ratio tends to |n^2/(n+beta2)^2 - 1| as y grows; a short strip must not hide it.
  const double b = operator_rho_norm_bound(StancuParams<double>(0, 0, 0, 2), 10, 1, TruncatedStrip<double>(1), 11);
  CHECK(b >= 1 + (1 - 1.0 / 9) - 1e-15);
}

TEST_CASE("weighted convergence of a constant")
{
  const auto e = corpus_lookup("const1");
  const auto entries = check_weighted_convergence(e.function, shifted, {{10, 10}, {40, 40}},
                                                  WeightSpec<double>::power(0.5), TruncatedStrip<double>(50), 51);
  for (const auto& en : entries) {
    CHECK(en.strip_estimate <= 2e-12);
    CHECK(en.strip_estimate >= 0);
    REQUIRE(en.quadratic_tail.has_value());
    CHECK(*en.quadratic_tail == 0);
    CHECK(en.certified <= 2e-12);
  }
}

TEST_CASE("weighted convergence of x^2 + y^2 strictly decreases")
{
  const auto e = corpus_lookup("rho_growth");
  std::vector<std::pair<long, long>> schedule{{10, 10}, {20, 20}, {40, 40}, {80, 80}, {160, 160}};
  const auto entries = check_weighted_convergence(e.function, StancuParams<double>::classical(), schedule,
                                                  WeightSpec<double>::power(0.5), TruncatedStrip<double>(50), 101);
  REQUIRE(entries.size() == 5);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    CHECK(entries[k].certified >= 0);
    CHECK(entries[k].tail <= entries[k].growth_tail);
    if (k > 0)
      CHECK(entries[k].certified < entries[k - 1].certified);
  }
}

TEST_CASE("weighted convergence preconditions")
{
  CHECK_THROWS_AS(check_weighted_convergence(corpus_lookup("quad").function, shifted, {{10, 10}},
                                             WeightSpec<double>::power(0.5), TruncatedStrip<double>(5), 11),
                  PreconditionError);
  CHECK_THROWS_AS(check_weighted_convergence(corpus_lookup("rho_growth").function, shifted, {{10, 10}},
                                             WeightSpec<double>::plain(), TruncatedStrip<double>(5), 11),
                  PreconditionError);
}

TEST_CASE("quadratic tail certificate dominates sampled values beyond the strip")
{
  // Independent check: |Lf - f| / rho1 by 50-digit double summation at points with y > S.
  const Quadratic<double> q{0.5, -1, 2, 1, 3, -0.5};
  const double S = 4, eps = 0.5;
  const long m = 7, n = 9;
  const double bound = quadratic_tail_bound(q, shifted, m, n, S, eps);
  for (double x : {0.0, 0.4, 1.0})
    for (double y : {4.0, 6.0, 15.0, 40.0}) {
      const double Lf = oracle::double_sum(
        [&](const Big& t, const Big& tau) {
          return q.c0 + q.cx * t + q.cy * tau + q.cxx * t * t + q.cyy * tau * tau + q.cxy * t * tau;
        },
        {1, 2, 1, 2}, m, n, x, y);
      const double w = std::pow(rho(x, y), 1 + eps);
      CHECK(std::abs(Lf - q(x, y)) / w <= bound * (1 + 1e-12));
    }
}

TEST_CASE("central-moment rho-norm decays")
{
  const TruncatedStrip<double> strip(50);
  double prev = INFINITY;
  for (long k : {10L, 100L, 1000L}) {
    const double d2 = central_moment_rho_norm(shifted, k, k, strip, 101);
    CHECK(d2 < prev);
    prev = d2;
  }
  CHECK(prev <= 1e-2);
}

TEST_CASE("weighted-modulus rate")
{
  const auto c = corpus_lookup("const1");
  const auto r0 = check_weighted_modulus_rate(c.function, shifted, 20, 20, 2.0, 41);
  CHECK(r0.lhs <= 2e-12);
  CHECK(r0.holds);
  CHECK(r0.caveat == Caveat::frozen_weighted_modulus);

  const auto e = corpus_lookup("rho_growth");
  const auto r = check_weighted_modulus_rate(e.function, shifted, 50, 50, 2.0, 101);
  CHECK(r.holds);
  CHECK(r.margin > 0);
  CHECK(std::abs(r.extra("c") - 5.0) <= 1e-15);
  CHECK(r.extra("norm_f") > 0);

  CHECK_THROWS_AS(check_weighted_modulus_rate(corpus_lookup("quad").function, shifted, 10, 10, 2.0, 21),
                  PreconditionError);
}

TEST_CASE("weighted norm is non-decreasing in the strip height at fixed lattice density")
{
  // y step fixed at 1/32; the x lattice refines by halving, so the lattices are nested.
  auto g = [](double x, double y) { return std::sin(3 * x) * y * y + std::cos(y); };
  for (auto weight : {WeightSpec<double>::plain(), WeightSpec<double>::power(0.25)}) {
    double prev = 0;
    for (int S : {1, 2, 4, 8, 16}) {
      const double v = weighted_norm(g, weight, TruncatedStrip<double>(S), 32L * S + 1);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("rho over rho1 decreases along y for x in {0, 0.5, 1}")
{
  for (double eps : {0.1, 0.5, 2.0}) {
    const auto w1 = WeightSpec<double>::power(eps);
    for (double x : {0.0, 0.5, 1.0}) {
      double prev = INFINITY;
      for (double y : {10.0, 1e2, 1e3, 1e4}) {
        const double ratio = rho(x, y) / w1(x, y);
        CHECK(ratio < prev);
        prev = ratio;
      }
    }
  }
}

TEST_CASE("operator rho-norm surrogate is uniformly bounded for shifted parameters")
{
  const TruncatedStrip<double> strip(100);
  double worst = 0;
  for (long m = 1; m <= 200; ++m)
    for (long n = 1; n <= 200; ++n)
      worst = std::max(worst, operator_rho_norm_bound(shifted, m, n, strip, 41));
  MESSAGE("max surrogate over m, n <= 200: " << worst);
  CHECK(worst <= 4);

  double prev = INFINITY;
  for (long k : {10L, 100L, 1000L}) {
    const double b = operator_rho_norm_bound(shifted, k, k, strip, 101);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("weighted convergence of x^2 + y^2 drops by more than a factor of four")
{
  const auto e = corpus_lookup("rho_growth");
  const auto entries = check_weighted_convergence(e.function, shifted, {{10, 10}, {20, 20}, {40, 40}, {80, 80}, {160, 160}},
                                                  WeightSpec<double>::power(0.5), TruncatedStrip<double>(50), 101);
  CHECK(entries.back().certified < entries.front().certified / 4);
}
