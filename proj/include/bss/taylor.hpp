#ifndef BSS_TAYLOR_HPP
#define BSS_TAYLOR_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "bss/basis.hpp"
#include "bss/error.hpp"
#include "bss/moduli.hpp"
#include "bss/operators.hpp"
#include "bss/types.hpp"

namespace bss {

enum class DerivativeSource
{
  closed_form,
  finite_difference,
};

/// Partial derivatives f_{x^i y^j} for i + j <= order.
template<class Scalar = double>
struct PartialDerivativeSet
{
  int order = 0;
  std::function<Scalar(int, int, Scalar, Scalar)> derivative;
  DerivativeSource source = DerivativeSource::closed_form;
  Scalar step = 0; ///< base step h when source == finite_difference

  Scalar operator()(int i, int j, Scalar x, Scalar y) const
  {
    if (i < 0 || j < 0 || i + j > order)
      throw PreconditionError("derivative f_{x^" + std::to_string(i) + " y^" + std::to_string(j) +
                              "} exceeds provider order " + std::to_string(order));
    return derivative(i, j, x, y);
  }

  Scalar operator()(int i, int j, const Point2D<Scalar>& p) const { return (*this)(i, j, p.x, p.y); }
};

template<class Scalar = double, class D>
PartialDerivativeSet<Scalar> closed_form_derivatives(int order, D&& derivative)
{
  PartialDerivativeSet<Scalar> out;
  out.order = order;
  out.derivative = std::forward<D>(derivative);
  out.source = DerivativeSource::closed_form;
  return out;
}

/// Base point, unit direction and distance along it: base + u * direction.
template<class Scalar = double>
struct DirectionalFrame
{
  Point2D<Scalar> base;
  Point2D<Scalar> direction{1, 0};
  Scalar u = 0;

  /// Normalises (dx, dy); the zero vector is rejected.
  static DirectionalFrame make(const Point2D<Scalar>& base, Scalar dx, Scalar dy, Scalar u)
  {
    using std::hypot;
    const Scalar norm = hypot(dx, dy);
    if (!(norm > 0))
      throw DomainError("direction must be non-zero");
    if (!(u >= 0))
      throw DomainError("frame distance u must be non-negative");
    return {base, {dx / norm, dy / norm}, u};
  }

  Point2D<Scalar> point() const { return {base.x + u * direction.x, base.y + u * direction.y}; }
};

namespace detail {

inline constexpr int max_taylor_order = 10;

inline constexpr std::array<std::uint64_t, max_taylor_order + 1> factorials = {
  1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800};

inline std::uint64_t binomial(int h, int j)
{
  return factorials[h] / (factorials[j] * factorials[h - j]);
}

/// Integer offsets and weights of a 1-D stencil for the d-th derivative at unit spacing.
struct Stencil
{
  std::vector<int> offsets;
  std::vector<double> weights;
};

/// Weights w with sum_s w_s s^q = d! [q == d] for q < offsets.size().
inline Stencil solve_stencil(std::vector<int> offsets, int d)
{
  const long n = static_cast<long>(offsets.size());
  Eigen::MatrixXd vandermonde(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (long q = 0; q < n; ++q)
    for (long s = 0; s < n; ++s)
      vandermonde(q, s) = std::pow(static_cast<double>(offsets[s]), static_cast<double>(q));
  rhs(d) = static_cast<double>(factorials[d]);
  const Eigen::VectorXd w = vandermonde.fullPivLu().solve(rhs);
  return {std::move(offsets), std::vector<double>(w.data(), w.data() + n)};
}

enum class StencilSide
{
  central,
  forward,
  backward,
};

/// Second-order accurate stencils: central on 2p+1 points, one-sided on d+2 points.
inline const Stencil& stencil(int d, StencilSide side)
{
  static const auto table = [] {
    std::array<std::array<Stencil, 3>, 5> t;
    for (int d = 0; d <= 4; ++d) {
      if (d == 0) {
        for (auto& s : t[0])
          s = {{0}, {1.0}};
        continue;
      }
      const int p = (d + 1) / 2;
      std::vector<int> central, forward, backward;
      for (int s = -p; s <= p; ++s)
        central.push_back(s);
      for (int s = 0; s <= d + 1; ++s) {
        forward.push_back(s);
        backward.push_back(-s);
      }
      t[d][0] = solve_stencil(central, d);
      t[d][1] = solve_stencil(forward, d);
      t[d][2] = solve_stencil(backward, d);
    }
    return t;
  }();
  return table[d][static_cast<int>(side)];
}

inline int stencil_reach(int d)
{
  return (d + 1) / 2;
}

} // namespace detail

/// Taylor polynomial of degree r about `node`, evaluated at p:
///   sum_{i+j<=r} f_{x^i y^j}(node) (p.x - node.x)^i (p.y - node.y)^j / (i! j!).
/// The coefficient 1/(i! j!) equals C(h, j)/h! with h = i + j.
template<class Scalar = double>
Scalar taylor_poly(const PartialDerivativeSet<Scalar>& derivs,
                   const Point2D<Scalar>& node,
                   const Point2D<Scalar>& p,
                   int r)
{
  if (r < 0 || r > detail::max_taylor_order)
    throw DomainError("Taylor order must lie in [0, " + std::to_string(detail::max_taylor_order) + "]");
  if (derivs.order < r)
    throw PreconditionError("derivative provider of order " + std::to_string(derivs.order) +
                            " cannot build a degree-" + std::to_string(r) + " Taylor polynomial");
  const Scalar dx = p.x - node.x;
  const Scalar dy = p.y - node.y;

  std::array<Scalar, detail::max_taylor_order + 1> px{}, py{};
  px[0] = py[0] = 1;
  for (int k = 1; k <= r; ++k) {
    px[k] = px[k - 1] * dx;
    py[k] = py[k - 1] * dy;
  }

  Scalar acc = 0;
  for (int h = 0; h <= r; ++h) {
    for (int j = 0; j <= h; ++j) {
      const int i = h - j;
      const Scalar coeff = Scalar(1) / static_cast<Scalar>(detail::factorials[i] * detail::factorials[j]);
      acc += coeff * derivs.derivative(i, j, node.x, node.y) * px[i] * py[j];
    }
  }
  return acc;
}

/// (L)^[r](f; x, y): the operator applied nodewise to degree-r Taylor polynomials.
/// Uses the same weight vectors and summation order as apply, so r = 0 matches it exactly.
template<class Scalar = double>
Scalar apply_rth(const PartialDerivativeSet<Scalar>& derivs,
                 const StancuParams<Scalar>& params,
                 long m,
                 long n,
                 int r,
                 const Point2D<Scalar>& p,
                 const TruncationPolicy& policy = {},
                 KernelFamily family = KernelFamily::bernstein_szasz)
{
  if (derivs.order < r)
    throw PreconditionError("derivative provider of order " + std::to_string(derivs.order) +
                            " is insufficient for r = " + std::to_string(r));
  params.validate();
  detail::check_point(p, family);
  const auto px = bernstein_weights(m, p.x);
  const auto qy = y_weights(family, n, p.y, policy);
  return detail::weighted_node_sum(px, qy, m, n, params, [&](Scalar u, Scalar v) {
    return taylor_poly(derivs, Point2D<Scalar>{u, v}, p, r);
  });
}

/// Finite-difference partials up to order r <= 4.
///
/// Each axis uses a second-order stencil with step h (1 + |coordinate|):
/// central where it fits in the domain, one-sided on d + 2 points near x = 0,
/// x = 1 or y = 0. Mixed partials are tensor products of the 1-D stencils.
/// Rounding error grows like eps / h^k for a partial of total order k, so third
/// and fourth partials want a larger h (around 1e-3 to 1e-2) than the default.
template<class Scalar = double>
PartialDerivativeSet<Scalar> finite_difference_derivs(Function2D<Scalar> f, int r, Scalar h = Scalar(1e-4))
{
  if (r < 0 || r > 4)
    throw DomainError("finite-difference derivatives are provided up to order 4");
  if (!(h > 0))
    throw DomainError("finite-difference step must be positive");

  PartialDerivativeSet<Scalar> out;
  out.order = r;
  out.source = DerivativeSource::finite_difference;
  out.step = h;
  out.derivative = [f = std::move(f), h](int i, int j, Scalar x, Scalar y) -> Scalar {
    using std::abs;
    if (i == 0 && j == 0)
      return f(x, y);

    using std::pow;
    const Scalar hx = h * (1 + abs(x));
    const Scalar hy = h * (1 + abs(y));

    detail::StencilSide sx = detail::StencilSide::central;
    if (i > 0) {
      const int reach = detail::stencil_reach(i);
      if (x - reach * hx < 0)
        sx = detail::StencilSide::forward;
      else if (x + reach * hx > 1)
        sx = detail::StencilSide::backward;
      if (sx != detail::StencilSide::central && (i + 1) * hx > 1)
        throw DomainError("finite-difference step too large for a one-sided x stencil inside [0, 1]");
    }
    detail::StencilSide sy = detail::StencilSide::central;
    if (j > 0 && y - detail::stencil_reach(j) * hy < 0)
      sy = detail::StencilSide::forward;

    const auto& wx = detail::stencil(i, sx);
    const auto& wy = detail::stencil(j, sy);
    Scalar acc = 0;
    for (std::size_t a = 0; a < wx.offsets.size(); ++a) {
      const Scalar xa = x + static_cast<Scalar>(wx.offsets[a]) * hx;
      Scalar inner = 0;
      for (std::size_t b = 0; b < wy.offsets.size(); ++b)
        inner += static_cast<Scalar>(wy.weights[b]) * f(xa, y + static_cast<Scalar>(wy.offsets[b]) * hy);
      acc += static_cast<Scalar>(wx.weights[a]) * inner;
    }
    return acc / (pow(hx, i) * pow(hy, j));
  };
  return out;
}

/// F^(r)(u) for F(u) = f(base + u * direction):
///   sum_{i+j=r} C(r, j) f_{x^i y^j}(base + u direction) a^i b^j.
template<class Scalar = double>
Scalar directional_rth_derivative(const PartialDerivativeSet<Scalar>& derivs, const DirectionalFrame<Scalar>& frame, int r)
{
  using std::abs;
  using std::pow;
  if (r < 1 || r > detail::max_taylor_order)
    throw DomainError("directional derivative order must lie in [1, 10]");
  if (derivs.order < r)
    throw PreconditionError("derivative provider order is below the requested directional order");
  const Scalar norm2 = frame.direction.x * frame.direction.x + frame.direction.y * frame.direction.y;
  if (abs(norm2 - 1) > Scalar(2e-14))
    throw DomainError("frame direction must be a unit vector");

  const Point2D<Scalar> q = frame.point();
  const Scalar tol = Scalar(1e-12);
  if (q.x < -tol || q.x > 1 + tol || q.y < -tol)
    throw DomainError("base + u * direction leaves [0,1] x [0,inf)");

  Scalar acc = 0;
  for (int j = 0; j <= r; ++j) {
    const int i = r - j;
    acc += static_cast<Scalar>(detail::binomial(r, j)) * derivs(i, j, q) * pow(frame.direction.x, i) *
           pow(frame.direction.y, j);
  }
  return acc;
}

/// Lower estimate of M in F^(r) in Lip_M(gamma), over seeded random frames inside R_A.
/// Every sample draws four uniforms, so more samples extend the same sequence.
template<class Scalar = double>
LipschitzWitness<Scalar> f_rth_lipschitz_estimate(const PartialDerivativeSet<Scalar>& derivs,
                                                  int r,
                                                  Scalar gamma,
                                                  const CompactRegion<Scalar>& region,
                                                  long samples,
                                                  std::uint64_t seed)
{
  using std::abs;
  using std::cos;
  using std::pow;
  using std::sin;
  if (!(gamma > 0 && gamma <= 1))
    throw DomainError("Lipschitz exponent gamma must lie in (0, 1]");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LipschitzWitness<Scalar> best;
  best.gamma = gamma;
  const Scalar A = region.A;

  for (long s = 0; s < samples; ++s) {
    const double u[4] = {unit(rng), unit(rng), unit(rng), unit(rng)};
    const Point2D<Scalar> base{Scalar(u[0]), Scalar(u[1]) * A};
    const Scalar angle = 2 * std::numbers::pi_v<Scalar> * Scalar(u[2]);
    const Scalar dx = cos(angle), dy = sin(angle);

    // Largest u keeping base + u * (dx, dy) inside the rectangle.
    Scalar u_max = std::numeric_limits<Scalar>::infinity();
    if (dx > 0) u_max = std::min(u_max, (1 - base.x) / dx);
    if (dx < 0) u_max = std::min(u_max, -base.x / dx);
    if (dy > 0) u_max = std::min(u_max, (A - base.y) / dy);
    if (dy < 0) u_max = std::min(u_max, -base.y / dy);
    if (!(u_max > 0))
      continue;

    const Scalar u1 = 0;
    const Scalar u2 = u_max * Scalar(u[3]);
    if (!(u2 > 0))
      continue;
    const auto f1 = directional_rth_derivative(derivs, DirectionalFrame<Scalar>{base, {dx, dy}, u1}, r);
    const auto f2 = directional_rth_derivative(derivs, DirectionalFrame<Scalar>{base, {dx, dy}, u2}, r);
    const Scalar ratio = abs(f1 - f2) / pow(u2 - u1, gamma);
    if (ratio > best.M_estimate) {
      best.M_estimate = ratio;
      best.first = base;
      best.second = {base.x + u2 * dx, base.y + u2 * dy};
    }
  }
  return best;
}

} // namespace bss

#endif // BSS_TAYLOR_HPP
