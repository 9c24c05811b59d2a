#ifndef BSS_MODULI_HPP
#define BSS_MODULI_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bss/error.hpp"
#include "bss/parallel.hpp"
#include "bss/report.hpp"
#include "bss/types.hpp"

namespace bss {

enum class ModulusKind
{
  full,
  partial_x,
  partial_y,
  weighted,
};

/// A grid estimate of a modulus of continuity. Always a lower bound on the true value.
template<class Scalar = double>
struct ModulusEstimate
{
  Scalar delta = 0;
  Scalar value = 0;
  ModulusKind kind = ModulusKind::full;
  std::string grid_spec;
  bool is_lower_bound = true;
};

template<class Scalar = double>
struct LipschitzWitness
{
  Scalar gamma = 1;
  Scalar M_estimate = 0;
  Point2D<Scalar> first;
  Point2D<Scalar> second;
};

namespace detail {

/// Samples f on the uniform lattice over [0,1] x [0,height]; row i is x, column j is y.
template<class Scalar, class F>
Matrix<Scalar> sample_lattice(F&& f, Scalar height, long grid_points)
{
  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, height, grid_points);
  Matrix<Scalar> values(grid_points, grid_points);
  parallel_rows(grid_points, [&](long i) {
    for (long j = 0; j < grid_points; ++j)
      values(i, j) = f(xs(i), ys(j));
  });
  return values;
}

/// Max of pair_value over lattice pairs within Euclidean distance delta.
///
/// Only offsets inside a window of ceil(delta/step) cells are visited, and
/// only one orientation of each pair (pair_value must be symmetric).
template<class Scalar, class PairValue>
Scalar window_max(long grid_points,
                  Scalar height,
                  Scalar delta,
                  ModulusKind kind,
                  PairValue&& pair_value)
{
  using std::ceil;
  const Scalar hx = Scalar(1) / static_cast<Scalar>(grid_points - 1);
  const Scalar hy = height / static_cast<Scalar>(grid_points - 1);
  const Scalar delta2 = delta * delta * (1 + Scalar(1e-12));

  long wx = static_cast<long>(ceil(delta / hx));
  long wy = static_cast<long>(ceil(delta / hy));
  if (kind == ModulusKind::partial_x)
    wy = 0;
  if (kind == ModulusKind::partial_y)
    wx = 0;
  wx = std::min(wx, grid_points - 1);
  wy = std::min(wy, grid_points - 1);

  struct Offset
  {
    long di, dj;
  };
  std::vector<Offset> offsets;
  for (long di = 0; di <= wx; ++di) {
    for (long dj = -wy; dj <= wy; ++dj) {
      if (di == 0 && dj <= 0)
        continue;
      const Scalar dx = static_cast<Scalar>(di) * hx;
      const Scalar dy = static_cast<Scalar>(dj) * hy;
      if (dx * dx + dy * dy <= delta2)
        offsets.push_back({di, dj});
    }
  }

  std::vector<Scalar> row_max(static_cast<std::size_t>(grid_points), Scalar(0));
  parallel_rows(grid_points, [&](long i) {
    Scalar best = 0;
    for (const auto& o : offsets) {
      const long i2 = i + o.di;
      if (i2 >= grid_points)
        continue;
      const long j_lo = std::max(0L, -o.dj);
      const long j_hi = std::min(grid_points, grid_points - o.dj);
      for (long j = j_lo; j < j_hi; ++j)
        best = std::max(best, pair_value(i, j, i2, j + o.dj));
    }
    row_max[i] = best;
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

inline std::string grid_description(long grid_points, double height)
{
  return std::to_string(grid_points) + "x" + std::to_string(grid_points) + " uniform lattice on [0,1]x[0," +
         std::to_string(height) + "]";
}

template<class Scalar>
void check_modulus_args(Scalar delta, long grid_points)
{
  if (!(delta > 0))
    throw DomainError("modulus delta must be positive");
  if (grid_points < 2)
    throw DomainError("modulus lattice needs at least 2 points per axis");
}

} // namespace detail

/// w(f; delta) over R_A, maximised over lattice pairs.
template<class Scalar = double, class F>
ModulusEstimate<Scalar> full_modulus(F&& f, const CompactRegion<Scalar>& region, Scalar delta, long grid_points = 201)
{
  using std::abs;
  detail::check_modulus_args(delta, grid_points);
  const Matrix<Scalar> values = detail::sample_lattice<Scalar>(f, region.A, grid_points);
  const Scalar value = detail::window_max(grid_points, region.A, delta, ModulusKind::full,
                                          [&](long i, long j, long i2, long j2) {
                                            return abs(values(i, j) - values(i2, j2));
                                          });
  return {delta, value, ModulusKind::full,
          detail::grid_description(grid_points, static_cast<double>(region.A)), true};
}

/// (w^(1)(f; delta), w^(2)(f; delta)): pairs varying only in x, then only in y.
template<class Scalar = double, class F>
std::pair<ModulusEstimate<Scalar>, ModulusEstimate<Scalar>>
partial_moduli(F&& f, const CompactRegion<Scalar>& region, Scalar delta, long grid_points = 201)
{
  using std::abs;
  detail::check_modulus_args(delta, grid_points);
  const Matrix<Scalar> values = detail::sample_lattice<Scalar>(f, region.A, grid_points);
  auto diff = [&](long i, long j, long i2, long j2) { return abs(values(i, j) - values(i2, j2)); };
  const std::string spec = detail::grid_description(grid_points, static_cast<double>(region.A));
  ModulusEstimate<Scalar> wx{delta, detail::window_max(grid_points, region.A, delta, ModulusKind::partial_x, diff),
                             ModulusKind::partial_x, spec, true};
  ModulusEstimate<Scalar> wy{delta, detail::window_max(grid_points, region.A, delta, ModulusKind::partial_y, diff),
                             ModulusKind::partial_y, spec, true};
  return {wx, wy};
}

/// Weighted modulus over [0,1] x [0,S]:
///   max |f(p1) - f(p2)| / min(rho(p1), rho(p2)) over lattice pairs with |p1 - p2| <= delta.
/// Dividing by the smaller weight makes the value valid for either orientation of
/// |f(t,tau) - f(x,y)| <= rho(x,y) w_rho(f; |(t,tau) - (x,y)|).
template<class Scalar = double>
ModulusEstimate<Scalar> weighted_modulus(const Function2D<Scalar>& f, Scalar delta, Scalar S, long grid_points = 201)
{
  using std::abs;
  if (f.growth != Growth::rho_dominated)
    throw PreconditionError("weighted modulus requires a rho-dominated function, '" + f.name + "' is not declared so");
  detail::check_modulus_args(delta, grid_points);
  if (!(S > 0))
    throw DomainError("strip height S must be positive");

  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, S, grid_points);
  const Matrix<Scalar> values = detail::sample_lattice<Scalar>(f, S, grid_points);
  Matrix<Scalar> weights(grid_points, grid_points);
  for (long i = 0; i < grid_points; ++i)
    for (long j = 0; j < grid_points; ++j)
      weights(i, j) = rho(xs(i), ys(j));

  const Scalar value = detail::window_max(grid_points, S, delta, ModulusKind::full,
                                          [&](long i, long j, long i2, long j2) {
                                            return abs(values(i, j) - values(i2, j2)) /
                                                   std::min(weights(i, j), weights(i2, j2));
                                          });
  return {delta, value, ModulusKind::weighted, detail::grid_description(grid_points, static_cast<double>(S)), true};
}

/// Lower estimate of the Lip_M(gamma) constant of f on R_A.
///
/// Pairs come from adjacent lattice cells (axis and diagonal neighbours) and
/// from `sample_pairs` seeded random pairs, half of them global and half local
/// at a log-uniform scale in [1e-6, 1]. Each random pair consumes the same
/// number of draws, so a larger sample count extends the same sequence.
template<class Scalar = double, class F>
LipschitzWitness<Scalar> lipschitz_ratio(F&& f,
                                         Scalar gamma,
                                         const CompactRegion<Scalar>& region,
                                         long sample_pairs,
                                         std::uint64_t seed,
                                         long grid_points = 201)
{
  using std::abs;
  using std::pow;
  if (!(gamma > 0 && gamma <= 1))
    throw DomainError("Lipschitz exponent gamma must lie in (0, 1]");

  LipschitzWitness<Scalar> best;
  best.gamma = gamma;
  auto consider = [&](const Point2D<Scalar>& a, const Point2D<Scalar>& b) {
    const Scalar d = distance(a, b);
    if (!(d > 0))
      return;
    const Scalar ratio = abs(f(a.x, a.y) - f(b.x, b.y)) / pow(d, gamma);
    if (ratio > best.M_estimate) {
      best.M_estimate = ratio;
      best.first = a;
      best.second = b;
    }
  };

  if (grid_points >= 2) {
    const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
    const Vector<Scalar> ys = lattice<Scalar>(0, region.A, grid_points);
    for (long i = 0; i < grid_points; ++i) {
      for (long j = 0; j < grid_points; ++j) {
        const Point2D<Scalar> a{xs(i), ys(j)};
        if (i + 1 < grid_points)
          consider(a, {xs(i + 1), ys(j)});
        if (j + 1 < grid_points)
          consider(a, {xs(i), ys(j + 1)});
        if (i + 1 < grid_points && j + 1 < grid_points)
          consider(a, {xs(i + 1), ys(j + 1)});
        if (i + 1 < grid_points && j > 0)
          consider(a, {xs(i + 1), ys(j - 1)});
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Scalar A = region.A;
  for (long s = 0; s < sample_pairs; ++s) {
    const double u[5] = {unit(rng), unit(rng), unit(rng), unit(rng), unit(rng)};
    const Point2D<Scalar> a{Scalar(u[0]), Scalar(u[1]) * A};
    Point2D<Scalar> b;
    if (u[2] < 0.5) {
      b = {Scalar(u[3]), Scalar(u[4]) * A};
    } else {
      const Scalar radius = pow(Scalar(10), Scalar(-6) + Scalar(6) * Scalar(u[3]));
      const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(u[4]);
      using std::cos;
      using std::sin;
      b = {std::clamp(a.x + radius * cos(angle), Scalar(0), Scalar(1)),
           std::clamp(a.y + radius * sin(angle), Scalar(0), A)};
    }
    consider(a, b);
  }
  return best;
}

/// Checks w(lambda delta) <= (1 + floor(lambda)) w(delta) for a closed-form modulus.
template<class Scalar = double>
BoundReport modulus_subadditivity_check(const std::function<Scalar(Scalar)>& w_exact, Scalar lambda, Scalar delta)
{
  using std::floor;
  if (!(lambda > 0) || !(delta > 0))
    throw DomainError("lambda and delta must be positive");
  const Scalar lhs = w_exact(lambda * delta);
  const Scalar rhs = (1 + floor(lambda)) * w_exact(delta);
  return BoundReport::make(static_cast<double>(lhs), static_cast<double>(rhs));
}

} // namespace bss

#endif // BSS_MODULI_HPP
