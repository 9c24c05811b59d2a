#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bss/corpus.hpp"
#include "bss/moduli.hpp"

using namespace bss;
using std::numbers::sqrt2;

namespace {

Function2D<double> fn(const char* name, std::function<double(double, double)> f,
                      Growth growth = Growth::rho_dominated, double M = 1)
{
  auto out = make_function<double>(name, std::move(f));
  out.growth = growth;
  out.growth_constant = M;
  return out;
}

const auto constant = fn("c", [](double, double) { return 4.0; }, Growth::rho_dominated, 4);
const auto linear = fn("linear", [](double x, double y) { return x + y; });

} // namespace

TEST_CASE("moduli of a constant vanish")
{
  const CompactRegion<double> region(1.5);
  CHECK(full_modulus(constant, region, 0.2, 51).value == 0);
  const auto [wx, wy] = partial_moduli(constant, region, 0.2, 51);
  CHECK(wx.value == 0);
  CHECK(wy.value == 0);
  CHECK(weighted_modulus(constant, 0.2, 10.0, 51).value == 0);
  CHECK(lipschitz_ratio(constant, 1.0, region, 500, 1).M_estimate == 0);
}

TEST_CASE("full modulus of x + y converges to delta sqrt 2 from below")
{
  const CompactRegion<double> region(1);
  const double exact = 0.1 * sqrt2;
  for (long grid : {101L, 201L, 401L}) {
    const double h = 1.0 / static_cast<double>(grid - 1);
    const auto w = full_modulus(linear, region, 0.1, grid);
    CHECK(w.is_lower_bound);
    CHECK(w.value <= exact + 1e-14);
    CHECK(exact - w.value <= 2 * h * sqrt2);
  }
}

TEST_CASE("full modulus of a coordinate function")
{
  const auto x = fn("x", [](double x, double) { return x; });
  const double h = 1.0 / 200;
  const double w = full_modulus(x, CompactRegion<double>(1), 0.05, 201).value;
  CHECK(w <= 0.05 + 1e-14);
  CHECK(0.05 - w <= h);
}

TEST_CASE("partial moduli")
{
  const auto y = fn("y", [](double, double y) { return y; });
  const double h = 1.0 / 200;
  const auto [wx, wy] = partial_moduli(y, CompactRegion<double>(1), 0.07, 201);
  CHECK(wx.value == 0);
  CHECK(std::abs(wy.value - 0.07) <= h);

  const auto prod = fn("prod", [](double x, double y) { return x * y; });
  const auto [px, py] = partial_moduli(prod, CompactRegion<double>(2), 0.1, 201);
  CHECK(px.value <= 2 * 0.1 + 1e-14);
  CHECK(2 * 0.1 - px.value <= 2 * h * 2);
  CHECK(py.value <= 0.1 + 1e-14);
}

TEST_CASE("lipschitz ratio estimates")
{
  const CompactRegion<double> region(1);
  const auto w = lipschitz_ratio(linear, 1.0, region, 2000, 42);
  CHECK(w.M_estimate <= sqrt2 + 1e-12);
  CHECK(sqrt2 - w.M_estimate <= 1e-9);

  const auto holder = fn("holder", [](double x, double) { return std::sqrt(std::abs(x - 0.5)); });
  const auto hw = lipschitz_ratio(holder, 0.5, region, 20000, 42);
  CHECK(hw.M_estimate <= 1 + 1e-9);
  CHECK(hw.M_estimate >= 0.99);
}

TEST_CASE("lipschitz ratio is non-decreasing as the seeded sample grows")
{
  const auto f = fn("wave", [](double x, double y) { return std::sin(5 * x) * std::cos(3 * y); });
  const CompactRegion<double> region(1);
  double prev = 0;
  for (long samples : {10L, 100L, 1000L, 5000L}) {
    const double v = lipschitz_ratio(f, 0.7, region, samples, 9, 21).M_estimate;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("weighted modulus of rho is finite and grows with delta")
{
  const auto r = fn("rho", [](double x, double y) { return rho(x, y); }, Growth::rho_dominated, 1);
  double prev = 0;
  for (double d : {0.01, 0.05, 0.1, 0.5, 1.0}) {
    const double v = weighted_modulus(r, d, 50.0, 101).value;
    CHECK(std::isfinite(v));
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("weighted modulus requires rho-dominated growth")
{
  const auto f = fn("exp", [](double, double y) { return std::exp(y); }, Growth::bounded_on_compacts);
  CHECK_THROWS_AS(weighted_modulus(f, 0.1, 10.0, 21), PreconditionError);
}

TEST_CASE("modulus argument validation")
{
  CHECK_THROWS_AS(full_modulus(linear, CompactRegion<double>(1), 0.0, 21), DomainError);
  CHECK_THROWS_AS(full_modulus(linear, CompactRegion<double>(1), 0.1, 1), DomainError);
  CHECK_THROWS_AS(lipschitz_ratio(linear, 1.5, CompactRegion<double>(1), 10, 1), DomainError);
}

TEST_CASE("subadditivity of closed-form moduli")
{
  std::function<double(double)> lin = [](double d) { return d * sqrt2; };
  const auto a = modulus_subadditivity_check(lin, 2.5, 0.1);
  CHECK(std::abs(a.lhs - 0.25 * sqrt2) <= 1e-15);
  CHECK(std::abs(a.rhs - 0.3 * sqrt2) <= 1e-15);
  CHECK(a.holds);

  const auto b = modulus_subadditivity_check(lin, 1.0, 0.1);
  CHECK(b.holds);
  CHECK(b.lhs <= 0.5 * b.rhs + 1e-15);

  std::function<double(double)> root = [](double d) { return std::sqrt(d); };
  const auto c = modulus_subadditivity_check(root, 4.0, 0.01);
  CHECK(std::abs(c.lhs - 0.2) <= 1e-15);
  CHECK(std::abs(c.rhs - 0.5) <= 1e-15);
  CHECK(c.holds);
}

TEST_CASE("modulus estimates are non-decreasing in delta and full dominates the partials")
{
  const CompactRegion<double> region(1.5);
  for (const char* name : {"prod", "quad", "holder_half", "smooth"}) {
    const auto f = corpus_lookup(name).function;
    double prev_full = 0, prev_x = 0, prev_y = 0;
    for (double d : {0.01, 0.03, 0.1, 0.2, 0.45, 1.0}) {
      const double full = full_modulus(f, region, d, 61).value;
      const auto [px, py] = partial_moduli(f, region, d, 61);
      CAPTURE(name);
      CAPTURE(d);
      CHECK(full >= prev_full);
      CHECK(px.value >= prev_x);
      CHECK(py.value >= prev_y);
      CHECK(full >= std::max(px.value, py.value));
      prev_full = full;
      prev_x = px.value;
      prev_y = py.value;
    }
  }
}

TEST_CASE("closed-form moduli dominate random increments")
{
  std::mt19937_64 rng(2024);
  for (const auto& name : corpus_names()) {
    const auto e = corpus_lookup(name);
    if (!e.has_closed_form_moduli())
      continue;
    for (double A : {1.0, 2.0}) {
      const auto w = e.closed_form_moduli(A);
      std::uniform_real_distribution<double> ux(0, 1), uy(0, A);
      for (int k = 0; k < 10000; ++k) {
        const double x1 = ux(rng), y1 = uy(rng), x2 = ux(rng), y2 = uy(rng);
        const double dist = std::hypot(x1 - x2, y1 - y2);
        if (dist == 0)
          continue;
        CHECK(std::abs(e.function(x1, y1) - e.function(x2, y2)) <= w.full(dist) * (1 + 1e-12) + 1e-15);
        CHECK(std::abs(e.function(x1, y1) - e.function(x2, y1)) <= w.partial_x(std::abs(x1 - x2)) * (1 + 1e-12) + 1e-15);
        CHECK(std::abs(e.function(x1, y1) - e.function(x1, y2)) <= w.partial_y(std::abs(y1 - y2)) * (1 + 1e-12) + 1e-15);
      }
    }
  }
}
