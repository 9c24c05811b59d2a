#include "bss/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bss/error.hpp"

namespace bss {

namespace {

using std::numbers::sqrt2;

/// Derivatives of a polynomial given by its closed-form partials; orders past the
/// listed ones are zero.
PartialDerivativeSet<double> polynomial_derivatives(std::function<double(int, int, double, double)> partial)
{
  return closed_form_derivatives<double>(detail::max_taylor_order, std::move(partial));
}

CorpusEntry make_const1()
{
  CorpusEntry e;
  e.function = make_quadratic<double>({1, 0, 0, 0, 0, 0}, "const1");
  e.function.growth = Growth::rho_dominated;
  e.function.growth_constant = 1;
  e.closed_form_moduli = [](double) {
    auto zero = [](double) { return 0.0; };
    return AnalyticModuli<double>{zero, zero, zero};
  };
  e.lipschitz = LipschitzData{1, 0};
  e.axis_lipschitz = AxisLipschitzData{0, 1, 0, 1};
  e.derivatives = polynomial_derivatives([](int i, int j, double, double) { return (i == 0 && j == 0) ? 1.0 : 0.0; });
  e.directional_lipschitz = DirectionalLipschitzData{1, 1, 0};
  e.tags = {"polynomial", "constant"};
  return e;
}

CorpusEntry make_linear()
{
  CorpusEntry e;
  e.function = make_quadratic<double>({0, 1, 1, 0, 0, 0}, "linear");
  // x + y <= 1 + (x^2 + y^2)/2 <= rho
  e.function.growth = Growth::rho_dominated;
  e.function.growth_constant = 1;
  e.closed_form_moduli = [](double) {
    return AnalyticModuli<double>{[](double d) { return d * sqrt2; }, [](double d) { return d; },
                                  [](double d) { return d; }};
  };
  e.lipschitz = LipschitzData{1, sqrt2};
  e.axis_lipschitz = AxisLipschitzData{1, 1, 1, 1};
  e.derivatives = polynomial_derivatives([](int i, int j, double x, double y) {
    if (i == 0 && j == 0)
      return x + y;
    return (i + j == 1) ? 1.0 : 0.0;
  });
  e.directional_lipschitz = DirectionalLipschitzData{1, 1, 0};
  e.tags = {"polynomial", "linear"};
  return e;
}

CorpusEntry make_prod()
{
  CorpusEntry e;
  e.function = make_quadratic<double>({0, 0, 0, 0, 0, 1}, "prod");
  e.function.growth = Growth::rho_dominated;
  e.function.growth_constant = 1;
  e.closed_form_moduli = [](double A) {
    const double diag = std::sqrt(1 + A * A);
    // Full modulus: |d(xy)| <= |dy| + A |dx| <= sqrt(1 + A^2) delta, an upper bound.
    return AnalyticModuli<double>{[diag](double d) { return diag * d; },
                                  [A](double d) { return A * std::min(d, 1.0); },
                                  [A](double d) { return std::min(d, A); }};
  };
  e.derivatives = polynomial_derivatives([](int i, int j, double x, double y) {
    if (i == 0 && j == 0)
      return x * y;
    if (i == 1 && j == 0)
      return y;
    if (i == 0 && j == 1)
      return x;
    return (i == 1 && j == 1) ? 1.0 : 0.0;
  });
  e.directional_lipschitz = DirectionalLipschitzData{1, 1, 1}; // F'' = 2ab, |2ab| <= 1
  e.tags = {"polynomial", "bilinear"};
  return e;
}

PartialDerivativeSet<double> quad_derivatives()
{
  return polynomial_derivatives([](int i, int j, double x, double y) {
    if (i == 0 && j == 0)
      return x * x + y * y;
    if (i == 1 && j == 0)
      return 2 * x;
    if (i == 0 && j == 1)
      return 2 * y;
    if ((i == 2 && j == 0) || (i == 0 && j == 2))
      return 2.0;
    return 0.0;
  });
}

AnalyticModuli<double> quad_moduli(double A)
{
  const double D = std::sqrt(1 + A * A);
  auto radial = [](double reach, double d) {
    const double t = std::min(d, reach);
    return 2 * reach * t - t * t;
  };
  return {[=](double d) { return radial(D, d); }, [=](double d) { return radial(1.0, d); },
          [=](double d) { return radial(A, d); }};
}

CorpusEntry make_quad()
{
  CorpusEntry e;
  e.function = make_quadratic<double>({0, 0, 0, 1, 1, 0}, "quad");
  e.closed_form_moduli = quad_moduli;
  e.derivatives = quad_derivatives();
  // Hessian 2I; its Frobenius norm 2 sqrt(2) bounds the Lipschitz constant of F'.
  e.directional_lipschitz = DirectionalLipschitzData{1, 1, 2 * sqrt2};
  e.tags = {"polynomial", "quadratic"};
  return e;
}

CorpusEntry make_holder_half()
{
  CorpusEntry e;
  e.function = make_function<double>("holder_half", [](double x, double) { return std::sqrt(std::abs(x - 0.5)); });
  e.function.growth = Growth::rho_dominated;
  e.function.growth_constant = 1;
  e.closed_form_moduli = [](double) {
    auto w = [](double d) { return std::sqrt(std::min(d, 0.5)); };
    return AnalyticModuli<double>{w, w, [](double) { return 0.0; }};
  };
  e.lipschitz = LipschitzData{0.5, 1};
  e.axis_lipschitz = AxisLipschitzData{1, 0.5, 0, 1};
  e.tags = {"holder"};
  return e;
}

CorpusEntry make_smooth()
{
  CorpusEntry e;
  e.function = make_function<double>("smooth", [](double x, double y) { return std::exp(x - y) * std::cos(y); });
  e.function.growth = Growth::rho_dominated;
  e.function.growth_constant = std::numbers::e;
  // d^j/dy^j [e^{-y} cos y] = 2^{j/2} e^{-y} cos(y + 3 pi j / 4)
  e.derivatives = closed_form_derivatives<double>(detail::max_taylor_order, [](int, int j, double x, double y) {
    return std::exp(x - y) * std::pow(2.0, 0.5 * j) * std::cos(y + 0.75 * std::numbers::pi * j);
  });
  e.tags = {"smooth", "transcendental"};
  return e;
}

CorpusEntry make_rho_growth()
{
  CorpusEntry e = make_quad();
  e.function.name = "rho_growth";
  e.function.growth = Growth::rho_dominated;
  e.function.growth_constant = 1;
  e.tags = {"polynomial", "quadratic", "weighted"};
  return e;
}

/// Closed-form moduli must be non-negative and non-decreasing in delta.
void spot_check(const CorpusEntry& e)
{
  if (!e.closed_form_moduli)
    return;
  for (double A : {1.0, 2.0}) {
    const auto w = e.closed_form_moduli(A);
    for (const auto* fn : {&w.full, &w.partial_x, &w.partial_y}) {
      double prev = 0;
      for (double d : {1e-3, 1e-2, 0.1, 0.5, 1.0, 3.0}) {
        const double v = (*fn)(d);
        if (!(v >= 0) || v < prev)
          throw Error("corpus entry '" + e.function.name + "' carries an invalid closed-form modulus");
        prev = v;
      }
    }
  }
}

struct Registration
{
  const char* name;
  CorpusEntry (*make)();
};

constexpr Registration registry[] = {
  {"const1", make_const1}, {"linear", make_linear},   {"prod", make_prod},
  {"quad", make_quad},     {"holder_half", make_holder_half}, {"smooth", make_smooth},
  {"rho_growth", make_rho_growth},
};

} // namespace

const std::vector<std::string>& corpus_names()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& r : registry)
      out.emplace_back(r.name);
    return out;
  }();
  return names;
}

CorpusEntry corpus_lookup(const std::string& name)
{
  for (const auto& r : registry) {
    if (name == r.name) {
      CorpusEntry e = r.make();
      spot_check(e);
      return e;
    }
  }
  std::string available;
  for (const auto& n : corpus_names())
    available += (available.empty() ? "" : ", ") + n;
  throw LookupError("unknown corpus function '" + name + "'; available: " + available);
}

} // namespace bss
