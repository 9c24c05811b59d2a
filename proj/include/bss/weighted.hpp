#ifndef BSS_WEIGHTED_HPP
#define BSS_WEIGHTED_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bss/basis.hpp"
#include "bss/error.hpp"
#include "bss/moduli.hpp"
#include "bss/operators.hpp"
#include "bss/parallel.hpp"
#include "bss/report.hpp"
#include "bss/types.hpp"

namespace bss {

/// rho = 1 + x^2 + y^2, or rho1 = rho^(1 + epsilon).
template<class Scalar = double>
struct WeightSpec
{
  enum class Kind
  {
    rho,
    rho1_power,
  };

  Kind kind = Kind::rho;
  Scalar epsilon = 0;

  static WeightSpec plain() { return {Kind::rho, Scalar(0)}; }

  static WeightSpec power(Scalar eps)
  {
    if (!(eps > 0))
      throw DomainError("rho1 exponent epsilon must be positive");
    return {Kind::rho1_power, eps};
  }

  Scalar operator()(Scalar x, Scalar y) const
  {
    using std::pow;
    const Scalar r = rho(x, y);
    return kind == Kind::rho ? r : pow(r, 1 + epsilon);
  }
};

/// Grid max of |g| / weight over [0,1] x [0,S]: a lower estimate of the sup over R.
template<class Scalar = double, class G>
Scalar weighted_norm(G&& g, const WeightSpec<Scalar>& weight, const TruncatedStrip<Scalar>& strip, long grid_points = 201)
{
  using std::abs;
  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, strip.S, grid_points);
  std::vector<Scalar> row_max(static_cast<std::size_t>(grid_points), Scalar(0));
  parallel_rows(grid_points, [&](long i) {
    Scalar best = 0;
    for (long j = 0; j < grid_points; ++j)
      best = std::max(best, abs(g(xs(i), ys(j))) / weight(xs(i), ys(j)));
    row_max[i] = best;
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

/// 1 + sup |L(t^2 + tau^2) - x^2 - y^2| / rho, the surrogate for ||L||_{C_rho -> B_rho}.
///
/// The sup is the larger of the strip lattice maximum and the y -> inf limit
/// |n^2/(n+beta2)^2 - 1| of the same ratio.
template<class Scalar = double>
Scalar operator_rho_norm_bound(const StancuParams<Scalar>& params,
                               long m,
                               long n,
                               const TruncatedStrip<Scalar>& strip,
                               long grid_points = 201)
{
  using std::abs;
  params.validate();
  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, strip.S, grid_points);

  Vector<Scalar> gap_x(grid_points), gap_y(grid_points);
  for (long i = 0; i < grid_points; ++i)
    gap_x(i) = axis_moments(m, xs(i), params.alpha1, params.beta1, false).second - xs(i) * xs(i);
  for (long j = 0; j < grid_points; ++j)
    gap_y(j) = axis_moments(n, ys(j), params.alpha2, params.beta2, true).second - ys(j) * ys(j);

  Scalar sup = 0;
  for (long i = 0; i < grid_points; ++i) {
    const Scalar x2 = 1 + xs(i) * xs(i);
    for (long j = 0; j < grid_points; ++j)
      sup = std::max(sup, abs(gap_x(i) + gap_y(j)) / (x2 + ys(j) * ys(j)));
  }

  const Scalar nd = static_cast<Scalar>(n);
  const Scalar tail = abs(nd * nd / ((nd + params.beta2) * (nd + params.beta2)) - 1);
  return 1 + std::max(sup, tail);
}

namespace detail {

/// sup_{y >= S} y^k / (1 + y^2)^(1 + eps) for k in {0, 1, 2}.
template<class Scalar>
Scalar tail_profile(int k, Scalar S, Scalar eps)
{
  using std::pow;
  using std::sqrt;
  // y^k / (1+y^2)^(1+eps) decreases beyond its critical point.
  Scalar y = S;
  if (k == 1)
    y = std::max(S, 1 / sqrt(1 + 2 * eps));
  else if (k == 2)
    y = std::max(S, 1 / sqrt(eps));
  return pow(y, k) / pow(1 + y * y, 1 + eps);
}

/// max |a + b x + c x^2| over [0, 1].
template<class Scalar>
Scalar max_abs_quadratic_on_unit(Scalar a, Scalar b, Scalar c)
{
  using std::abs;
  auto q = [&](Scalar x) { return a + b * x + c * x * x; };
  Scalar best = std::max(abs(q(0)), abs(q(1)));
  if (c != 0) {
    const Scalar vertex = -b / (2 * c);
    if (vertex > 0 && vertex < 1)
      best = std::max(best, abs(q(vertex)));
  }
  return best;
}

} // namespace detail

/// One entry of a weighted convergence run.
template<class Scalar = double>
struct WeightedConvergenceEntry
{
  long m = 0;
  long n = 0;
  Scalar strip_estimate = 0;  ///< lattice sup of |Lf - f| / rho1 on the strip
  Scalar growth_tail = 0;     ///< tail certificate from |f| <= M_f rho alone
  std::optional<Scalar> quadratic_tail; ///< tail certificate from the exact form of Lf - f
  Scalar tail = 0;            ///< the smaller available certificate
  Scalar certified = 0;       ///< strip_estimate + tail
};

/// Tail certificate sup_{y > S} |Lf - f| / rho1 for a quadratic f, whose image
/// Lf - f = A(x) + B(x) y + C y^2 is known exactly through the moments.
template<class Scalar = double>
Scalar quadratic_tail_bound(const Quadratic<Scalar>& q,
                            const StancuParams<Scalar>& params,
                            long m,
                            long n,
                            Scalar S,
                            Scalar epsilon)
{
  using std::abs;
  const Scalar nd = static_cast<Scalar>(n);
  const Scalar dn = nd + params.beta2;
  const Scalar a1 = params.alpha2 / dn;
  const Scalar b1 = -params.beta2 / dn;
  const Scalar a2 = params.alpha2 * params.alpha2 / (dn * dn);
  const Scalar b2 = (2 * params.alpha2 + 1) * nd / (dn * dn);
  const Scalar c2 = nd * nd / (dn * dn) - 1;

  auto T = [&](Scalar x) { return axis_moments(m, x, params.alpha1, params.beta1, false); };
  auto A = [&](Scalar x) {
    const auto [t1, t2] = T(x);
    return q.cx * (t1 - x) + q.cxx * (t2 - x * x) + q.cy * a1 + q.cyy * a2 + q.cxy * t1 * a1;
  };
  auto B = [&](Scalar x) {
    const Scalar t1 = T(x).first;
    return q.cy * b1 + q.cyy * b2 + q.cxy * (t1 * b1 + (t1 - x));
  };
  const Scalar C = q.cyy * c2;

  // A is quadratic in x: recover its coefficients from three samples.
  const Scalar A0 = A(0), Ah = A(Scalar(0.5)), A1 = A(1);
  const Scalar ac = 2 * (A1 - 2 * Ah + A0);
  const Scalar ab = A1 - A0 - ac;
  const Scalar sup_A = detail::max_abs_quadratic_on_unit(A0, ab, ac);
  const Scalar sup_B = std::max(abs(B(0)), abs(B(1)));

  return sup_A * detail::tail_profile(0, S, epsilon) + sup_B * detail::tail_profile(1, S, epsilon) +
         abs(C) * detail::tail_profile(2, S, epsilon);
}

/// Certified ||L f - f||_{rho1} estimates along a (m, n) schedule.
///
/// Each entry is the strip lattice sup plus a tail certificate for y > S. The
/// generic certificate is M_f (||L|| + 1) (rho/rho1)(0, S); when f declares a
/// quadratic form the exact image gives a second, decaying certificate and the
/// smaller one is used.
template<class Scalar = double>
std::vector<WeightedConvergenceEntry<Scalar>> check_weighted_convergence(const Function2D<Scalar>& f,
                                                                         const StancuParams<Scalar>& params,
                                                                         const std::vector<std::pair<long, long>>& schedule,
                                                                         const WeightSpec<Scalar>& weight1,
                                                                         const TruncatedStrip<Scalar>& strip,
                                                                         long grid_points = 201,
                                                                         const TruncationPolicy& policy = {})
{
  using std::abs;
  using std::pow;
  if (f.growth != Growth::rho_dominated)
    throw PreconditionError("weighted convergence needs a rho-dominated function, '" + f.name + "' is not declared so");
  if (weight1.kind != WeightSpec<Scalar>::Kind::rho1_power)
    throw PreconditionError("weighted convergence needs a rho1 = rho^(1+eps) weight");

  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, strip.S, grid_points);
  Matrix<Scalar> f_values(grid_points, grid_points), weights(grid_points, grid_points);
  for (long i = 0; i < grid_points; ++i)
    for (long j = 0; j < grid_points; ++j) {
      f_values(i, j) = f(xs(i), ys(j));
      weights(i, j) = weight1(xs(i), ys(j));
    }
  const Scalar ratio_at_S = pow(rho(Scalar(0), strip.S), -weight1.epsilon);

  std::vector<WeightedConvergenceEntry<Scalar>> out;
  for (const auto& [m, n] : schedule) {
    WeightedConvergenceEntry<Scalar> e;
    e.m = m;
    e.n = n;
    const Matrix<Scalar> approx = apply_on_grid(f, params, m, n, xs, ys, policy);
    e.strip_estimate = ((approx - f_values).cwiseAbs().array() / weights.array()).maxCoeff();

    const Scalar norm = operator_rho_norm_bound(params, m, n, strip, grid_points);
    e.growth_tail = f.growth_constant * (norm + 1) * ratio_at_S;
    e.tail = e.growth_tail;
    if (f.quadratic) {
      e.quadratic_tail = quadratic_tail_bound(*f.quadratic, params, m, n, strip.S, weight1.epsilon);
      e.tail = std::min(e.tail, *e.quadratic_tail);
    }
    e.certified = e.strip_estimate + e.tail;
    out.push_back(e);
  }
  return out;
}

/// sup over the strip and the y -> inf limit of L[(t-x)^2 + (tau-y)^2] / rho.
template<class Scalar = double>
Scalar central_moment_rho_norm(const StancuParams<Scalar>& params,
                               long m,
                               long n,
                               const TruncatedStrip<Scalar>& strip,
                               long grid_points = 201)
{
  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, strip.S, grid_points);
  Scalar sup = 0;
  for (long i = 0; i < grid_points; ++i)
    for (long j = 0; j < grid_points; ++j) {
      const Point2D<Scalar> p{xs(i), ys(j)};
      sup = std::max(sup, second_central_moment(params, m, n, p) / rho(p.x, p.y));
    }
  const Scalar dn = static_cast<Scalar>(n) + params.beta2;
  const Scalar tail = params.beta2 * params.beta2 / (dn * dn);
  return std::max(sup, tail);
}

/// Weighted-modulus rate on the disc sector {x in [0,1], y >= 0, x^2 + y^2 <= s^2}:
///   sup |L f - f| <= c^2 (1 + M) w_rho(f; delta),  c = 1 + s^2,
/// with f scaled to ||f||_rho = 1, delta^2 the rho-norm of the second central
/// moment and M the operator-norm surrogate. Norms and w_rho are taken over `strip`.
template<class Scalar = double>
BoundReport check_weighted_modulus_rate(const Function2D<Scalar>& f,
                                        const StancuParams<Scalar>& params,
                                        long m,
                                        long n,
                                        Scalar s,
                                        long grid_points,
                                        const TruncationPolicy& policy = {},
                                        std::optional<TruncatedStrip<Scalar>> strip_opt = std::nullopt)
{
  using std::abs;
  using std::sqrt;
  if (f.growth != Growth::rho_dominated)
    throw PreconditionError("weighted modulus rate needs a rho-dominated function, '" + f.name + "' is not declared so");
  if (!(s > 0))
    throw DomainError("disc radius s must be positive");
  const TruncatedStrip<Scalar> strip = strip_opt.value_or(TruncatedStrip<Scalar>(std::max(s, Scalar(1))));

  const Scalar norm_f = weighted_norm(f, WeightSpec<Scalar>::plain(), strip, grid_points);
  const Scalar c = 1 + s * s;
  const Scalar M = operator_rho_norm_bound(params, m, n, strip, grid_points);
  const Scalar delta = sqrt(central_moment_rho_norm(params, m, n, strip, grid_points));

  BoundReport report;
  if (norm_f == 0) {
    report = BoundReport::make(0.0, 0.0, Caveat::frozen_weighted_modulus);
  } else {
    Function2D<Scalar> scaled = f;
    scaled.eval = [g = f.eval, norm_f](Scalar x, Scalar y) { return g(x, y) / norm_f; };
    scaled.growth_constant = f.growth_constant / norm_f;

    const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
    const Vector<Scalar> ys = lattice<Scalar>(0, s, grid_points);
    const Matrix<Scalar> approx = apply_on_grid(scaled, params, m, n, xs, ys, policy);
    Scalar lhs = 0;
    for (long i = 0; i < grid_points; ++i)
      for (long j = 0; j < grid_points; ++j)
        if (xs(i) * xs(i) + ys(j) * ys(j) <= s * s)
          lhs = std::max(lhs, abs(approx(i, j) - scaled(xs(i), ys(j))));

    const Scalar w = weighted_modulus(scaled, delta, strip.S, grid_points).value;
    report = BoundReport::make(double(lhs), double(c * c * (1 + M) * w), Caveat::frozen_weighted_modulus);
    report.extras.emplace_back("w_rho", double(w));
  }
  report.extras.emplace_back("c", double(c));
  report.extras.emplace_back("M", double(M));
  report.extras.emplace_back("delta", double(delta));
  report.extras.emplace_back("norm_f", double(norm_f));
  return report;
}

} // namespace bss

#endif // BSS_WEIGHTED_HPP
