#ifndef BSS_BOUNDS_HPP
#define BSS_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

#include "bss/basis.hpp"
#include "bss/error.hpp"
#include "bss/moduli.hpp"
#include "bss/operators.hpp"
#include "bss/parallel.hpp"
#include "bss/report.hpp"
#include "bss/taylor.hpp"
#include "bss/types.hpp"

namespace bss {

/// Rate parameters delta_m, delta_n and delta_mn = sqrt(delta_m^2 + 4 delta_n^2).
template<class Scalar = double>
struct DeltaTriple
{
  Scalar delta_m = 0;
  Scalar delta_n = 0;
  Scalar delta_mn = 0;
};

template<class Scalar = double>
DeltaTriple<Scalar> deltas(long m, long n, const StancuParams<Scalar>& params, const CompactRegion<Scalar>& region)
{
  using std::sqrt;
  params.validate();
  if (m < 1 || n < 1)
    throw DomainError("operator degrees must be positive");
  const Scalar md = static_cast<Scalar>(m);
  const Scalar nd = static_cast<Scalar>(n);
  const Scalar b1 = params.beta1;
  const Scalar b2 = params.beta2;
  const Scalar A = region.A;
  DeltaTriple<Scalar> d;
  d.delta_m = sqrt(4 * b1 * b1 + md) / (md + b1);
  d.delta_n = sqrt(b2 * b2 * A * A + nd * A) / (nd + b2);
  d.delta_mn = sqrt(d.delta_m * d.delta_m + 4 * d.delta_n * d.delta_n);
  return d;
}

/// Analytic moduli of continuity, when a function carries them.
template<class Scalar = double>
struct AnalyticModuli
{
  std::function<Scalar(Scalar)> full;
  std::function<Scalar(Scalar)> partial_x;
  std::function<Scalar(Scalar)> partial_y;
};

enum class ModuliSource
{
  closed_form,
  grid,
};

/// Grid sup over R_A of |L f - f|.
template<class Scalar = double>
Scalar sup_error_on_region(const Function2D<Scalar>& f,
                           const StancuParams<Scalar>& params,
                           long m,
                           long n,
                           const CompactRegion<Scalar>& region,
                           long grid_points,
                           const TruncationPolicy& policy = {})
{
  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, region.A, grid_points);
  const Matrix<Scalar> approx = apply_on_grid(f, params, m, n, xs, ys, policy);
  Scalar sup = 0;
  for (long i = 0; i < xs.size(); ++i)
    for (long j = 0; j < ys.size(); ++j) {
      using std::abs;
      sup = std::max(sup, abs(approx(i, j) - f(xs(i), ys(j))));
    }
  return sup;
}

/// Slack for the truncated y-series: tail_tol * (1 + max |f| on the region grid).
template<class Scalar>
double truncation_allowance(const Function2D<Scalar>& f, const CompactRegion<Scalar>& region, long grid_points,
                            const TruncationPolicy& policy)
{
  using std::abs;
  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, region.A, grid_points);
  Scalar peak = 0;
  for (long i = 0; i < xs.size(); ++i)
    for (long j = 0; j < ys.size(); ++j)
      peak = std::max(peak, Scalar(abs(f(xs(i), ys(j)))));
  return policy.tail_tol * (1 + double(peak));
}

/// Modulus-of-continuity rate on R_A:
///   (a) ||L f - f|| <= 3/2 (w1(f; delta_m) + w2(f; delta_n)),
///   (b) ||L f - f|| <= 3/2 w(f; delta_mn).
/// With ModuliSource::grid the right-hand sides are grid lower estimates and the
/// reports are flagged accordingly.
template<class Scalar = double>
std::pair<BoundReport, BoundReport> check_modulus_rate(const Function2D<Scalar>& f,
                                                       const StancuParams<Scalar>& params,
                                                       long m,
                                                       long n,
                                                       const CompactRegion<Scalar>& region,
                                                       long grid_points,
                                                       const TruncationPolicy& policy,
                                                       ModuliSource source,
                                                       const std::optional<AnalyticModuli<std::type_identity_t<Scalar>>>& moduli = std::nullopt)
{
  const auto d = deltas(m, n, params, region);
  const Scalar lhs = sup_error_on_region(f, params, m, n, region, grid_points, policy);

  Scalar w1 = 0, w2 = 0, w = 0;
  Caveat caveat = Caveat::none;
  if (source == ModuliSource::closed_form) {
    if (!moduli || !moduli->full || !moduli->partial_x || !moduli->partial_y)
      throw PreconditionError("closed-form moduli requested but '" + f.name + "' does not carry them");
    w1 = moduli->partial_x(d.delta_m);
    w2 = moduli->partial_y(d.delta_n);
    w = moduli->full(d.delta_mn);
  } else {
    w1 = partial_moduli(f, region, d.delta_m, grid_points).first.value;
    w2 = partial_moduli(f, region, d.delta_n, grid_points).second.value;
    w = full_modulus(f, region, d.delta_mn, grid_points).value;
    caveat = Caveat::rhs_is_grid_lower_bound;
  }

  const double slack = truncation_allowance(f, region, grid_points, policy);
  auto a = BoundReport::make(static_cast<double>(lhs), static_cast<double>(Scalar(1.5) * (w1 + w2)), caveat, slack);
  auto b = BoundReport::make(static_cast<double>(lhs), static_cast<double>(Scalar(1.5) * w), caveat, slack);
  a.extras = {{"delta_m", double(d.delta_m)}, {"delta_n", double(d.delta_n)}, {"w1", double(w1)}, {"w2", double(w2)},
              {"truncation_allowance", slack}};
  b.extras = {{"delta_mn", double(d.delta_mn)}, {"w", double(w)}, {"truncation_allowance", slack}};
  return {a, b};
}

/// 3/2 M1 delta_mn^gamma for f in Lip_M1(gamma).
template<class Scalar = double>
Scalar lipschitz_rate_bound(Scalar M1, Scalar gamma, Scalar delta_mn)
{
  using std::pow;
  if (!(gamma > 0 && gamma <= 1))
    throw DomainError("gamma must lie in (0, 1]");
  return Scalar(1.5) * M1 * pow(delta_mn, gamma);
}

/// 3/2 M2 delta_m^alpha + 3/2 M3 (2 delta_n)^beta for axis-wise Hölder f.
template<class Scalar = double>
Scalar partial_lipschitz_rate_bound(Scalar M2, Scalar alpha, Scalar M3, Scalar beta, Scalar delta_m, Scalar delta_n)
{
  using std::pow;
  if (!(alpha > 0 && alpha <= 1) || !(beta > 0 && beta <= 1))
    throw DomainError("Hölder exponents must lie in (0, 1]");
  return Scalar(1.5) * M2 * pow(delta_m, alpha) + Scalar(1.5) * M3 * pow(2 * delta_n, beta);
}

/// B(gamma, r) = (r-1)! / (gamma (gamma+1) ... (gamma+r-1)) for integer r >= 1.
template<class Scalar = double>
Scalar beta_func(Scalar gamma, int r)
{
  if (!(gamma > 0))
    throw DomainError("beta function needs gamma > 0");
  if (r < 1)
    throw DomainError("beta function needs an integer second argument r >= 1");
  Scalar value = 1;
  for (int k = 0; k < r; ++k)
    value *= (k == 0 ? Scalar(1) : static_cast<Scalar>(k)) / (gamma + static_cast<Scalar>(k));
  return value;
}

/// Which right-hand side the r-th order check evaluates.
enum class RthBoundMode
{
  operator_norm,     ///< const * sup L(|(x,y)-(t,tau)|^(r+gamma))
  modulus_of_g,      ///< const * 3/2 w(g; delta_mn), g = |(x,y)-(t,tau)|^(r+gamma)
  lipschitz_of_g,    ///< M (1+A^2)^(r/2) / (r-1)! * gamma/(gamma+r) * B(gamma,r) * delta_mn^gamma
};

/// gamma M / (gamma + r) * B(gamma, r) / (r - 1)!.
template<class Scalar = double>
Scalar rth_bound_constant(int r, Scalar gamma, Scalar M)
{
  if (r < 1)
    throw PreconditionError("the r-th order bound needs r >= 1");
  return gamma * M / (gamma + static_cast<Scalar>(r)) * beta_func(gamma, r) /
         static_cast<Scalar>(detail::factorials[r - 1]);
}

/// Exact modulus over R_A of g(t,tau) = |(x,y) - (t,tau)|^p, p >= 1, taken as the
/// worst case over centres (x,y) in R_A: D^p - max(D - delta, 0)^p with D the diagonal.
template<class Scalar = double>
Scalar distance_power_modulus(Scalar p, Scalar delta, const CompactRegion<Scalar>& region)
{
  using std::pow;
  using std::sqrt;
  const Scalar D = sqrt(1 + region.A * region.A);
  return pow(D, p) - pow(std::max(D - delta, Scalar(0)), p);
}

/// Sup over the R_A lattice of L(g_{x,y})(x,y), g_{x,y}(t,tau) = ((t-x)^2 + (tau-y)^2)^(power/2).
template<class Scalar = double>
Scalar sup_distance_power_moment(const StancuParams<Scalar>& params,
                                 long m,
                                 long n,
                                 Scalar power,
                                 const CompactRegion<Scalar>& region,
                                 long grid_points,
                                 const TruncationPolicy& policy = {})
{
  using std::pow;
  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, region.A, grid_points);
  std::vector<Scalar> row_sup(static_cast<std::size_t>(grid_points), Scalar(0));
  parallel_rows(grid_points, [&](long i) {
    Scalar best = 0;
    for (long j = 0; j < grid_points; ++j) {
      const Point2D<Scalar> p{xs(i), ys(j)};
      const Scalar v = apply(
        [&](Scalar t, Scalar tau) {
          const Scalar d2 = (t - p.x) * (t - p.x) + (tau - p.y) * (tau - p.y);
          return pow(d2, power / 2);
        },
        params, m, n, p, policy);
      best = std::max(best, v);
    }
    row_sup[i] = best;
  });
  return *std::max_element(row_sup.begin(), row_sup.end());
}

/// r-th order bound on R_A:
///   ||(L)^[r] f - f|| <= gamma M/(gamma+r) B(gamma,r)/(r-1)! ||L(|(x,y)-(t,tau)|^(r+gamma))||
/// and the two coarser right-hand sides selected by `mode`. M is a Lipschitz
/// constant of the r-th directional derivative.
template<class Scalar = double>
BoundReport check_rth_order_bound(const PartialDerivativeSet<Scalar>& derivs,
                                  const Function2D<Scalar>& f,
                                  const StancuParams<Scalar>& params,
                                  long m,
                                  long n,
                                  int r,
                                  Scalar gamma,
                                  Scalar M,
                                  const CompactRegion<Scalar>& region,
                                  long grid_points,
                                  const TruncationPolicy& policy = {},
                                  RthBoundMode mode = RthBoundMode::operator_norm)
{
  using std::abs;
  using std::pow;
  if (r < 1)
    throw PreconditionError("the r-th order bound needs r >= 1");
  if (derivs.order < r)
    throw PreconditionError("derivative provider order is below r");
  if (!(gamma > 0 && gamma <= 1))
    throw DomainError("gamma must lie in (0, 1]");

  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, region.A, grid_points);
  std::vector<Scalar> row_sup(static_cast<std::size_t>(grid_points), Scalar(0));
  parallel_rows(grid_points, [&](long i) {
    Scalar best = 0;
    for (long j = 0; j < grid_points; ++j) {
      const Point2D<Scalar> p{xs(i), ys(j)};
      best = std::max(best, abs(apply_rth(derivs, params, m, n, r, p, policy) - f(p)));
    }
    row_sup[i] = best;
  });
  const Scalar lhs = *std::max_element(row_sup.begin(), row_sup.end());

  const Scalar constant = rth_bound_constant(r, gamma, M);
  const Scalar power = static_cast<Scalar>(r) + gamma;
  const auto d = deltas(m, n, params, region);
  const double slack = truncation_allowance(f, region, grid_points, policy);
  Scalar rhs = 0;
  BoundReport report;
  switch (mode) {
    case RthBoundMode::operator_norm: {
      const Scalar moment = sup_distance_power_moment(params, m, n, power, region, grid_points, policy);
      rhs = constant * moment;
      report = BoundReport::make(double(lhs), double(rhs), Caveat::none, slack);
      report.extras = {{"constant", double(constant)}, {"sup_moment", double(moment)}};
      break;
    }
    case RthBoundMode::modulus_of_g: {
      const Scalar wg = distance_power_modulus(power, d.delta_mn, region);
      rhs = constant * Scalar(1.5) * wg;
      report = BoundReport::make(double(lhs), double(rhs), Caveat::none, slack);
      report.extras = {{"constant", double(constant)}, {"w_g", double(wg)}, {"delta_mn", double(d.delta_mn)}};
      break;
    }
    case RthBoundMode::lipschitz_of_g: {
      rhs = constant * pow(1 + region.A * region.A, Scalar(r) / 2) * pow(d.delta_mn, gamma);
      report = BoundReport::make(double(lhs), double(rhs), Caveat::none, slack);
      report.extras = {{"constant", double(constant)}, {"delta_mn", double(d.delta_mn)}};
      break;
    }
  }
  report.extras.emplace_back("truncation_allowance", slack);
  return report;
}

} // namespace bss

#endif // BSS_BOUNDS_HPP
