#ifndef BSS_OPERATORS_HPP
#define BSS_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bss/basis.hpp"
#include "bss/error.hpp"
#include "bss/parallel.hpp"
#include "bss/types.hpp"

namespace bss {

/// (index + alpha) / (degree + beta).
template<class Scalar = double>
Scalar stancu_node(long index, long degree, Scalar alpha, Scalar beta)
{
  if (!(0 <= alpha && alpha <= beta))
    throw DomainError("Stancu node requires 0 <= alpha <= beta");
  if (degree < 1 || index < 0)
    throw DomainError("Stancu node requires degree >= 1 and index >= 0");
  return (static_cast<Scalar>(index) + alpha) / (static_cast<Scalar>(degree) + beta);
}

/// Operator images of the test functions 1, t, tau, t^2 + tau^2 (t2 and tau2 kept separately).
template<class Scalar = double>
struct MomentSet
{
  Scalar one = 1;
  Scalar t = 0;
  Scalar tau = 0;
  Scalar t2 = 0;
  Scalar tau2 = 0;
  Scalar t2_plus_tau2 = 0;
};

template<class Scalar = double>
struct KorovkinGaps
{
  Scalar one = 0;
  Scalar t = 0;
  Scalar tau = 0;
  Scalar t2_plus_tau2 = 0;
};

namespace detail {

template<class Scalar>
void check_point(const Point2D<Scalar>& p, KernelFamily family)
{
  const bool y_ok = family == KernelFamily::bernstein_bernstein ? (p.y >= 0 && p.y <= 1) : (p.y >= 0);
  if (!(p.x >= 0 && p.x <= 1) || !y_ok)
    throw DomainError("evaluation point (" + std::to_string(static_cast<double>(p.x)) + ", " +
                      std::to_string(static_cast<double>(p.y)) + ") is outside the operator domain");
}

template<class Scalar, class F>
Scalar evaluate_at_node(F&& f, Scalar u, Scalar v)
{
  try {
    return f(u, v);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError(std::string("function evaluation failed at node: ") + e.what(),
                          static_cast<double>(u), static_cast<double>(v));
  }
}

/// sum_k q_k sum_v p_v nodal(node_x(v), node_y(k)), skipping zero weights.
template<class Scalar, class Nodal>
Scalar weighted_node_sum(const WeightVector<Scalar>& px,
                         const WeightVector<Scalar>& qy,
                         long m,
                         long n,
                         const StancuParams<Scalar>& params,
                         Nodal&& nodal)
{
  std::vector<Scalar> xs(static_cast<std::size_t>(px.size()));
  for (long v = 0; v < px.size(); ++v)
    xs[v] = stancu_node(v, m, params.alpha1, params.beta1);

  Scalar acc = 0;
  for (long k = 0; k < qy.size(); ++k) {
    const Scalar qk = qy[k];
    if (qk == 0)
      continue;
    const Scalar yk = stancu_node(k, n, params.alpha2, params.beta2);
    Scalar inner = 0;
    for (long v = 0; v < px.size(); ++v) {
      const Scalar pv = px[v];
      if (pv == 0)
        continue;
      inner += pv * evaluate_at_node<Scalar>(nodal, xs[v], yk);
    }
    acc += qk * inner;
  }
  return acc;
}

} // namespace detail

/// L_{m,n}(f; x, y): the double sum of f at Stancu nodes against Bernstein x Szász
/// (or Bernstein x Bernstein) weights, with the infinite k-sum cut per policy.
template<class Scalar = double, class F>
Scalar apply(F&& f,
             const StancuParams<Scalar>& params,
             long m,
             long n,
             const Point2D<Scalar>& p,
             const TruncationPolicy& policy = {},
             KernelFamily family = KernelFamily::bernstein_szasz)
{
  params.validate();
  detail::check_point(p, family);
  const auto px = bernstein_weights(m, p.x);
  const auto qy = y_weights(family, n, p.y, policy);
  return detail::weighted_node_sum(px, qy, m, n, params, std::forward<F>(f));
}

/// L_{m,n} f on the tensor lattice xs x ys; result(i, j) is the value at (xs(i), ys(j)).
///
/// f is sampled once on the node lattice; each point is then p(x)^T F q(y).
template<class Scalar = double, class F>
Matrix<Scalar> apply_on_grid(F&& f,
                             const StancuParams<Scalar>& params,
                             long m,
                             long n,
                             const Vector<Scalar>& xs,
                             const Vector<Scalar>& ys,
                             const TruncationPolicy& policy = {},
                             KernelFamily family = KernelFamily::bernstein_szasz)
{
  params.validate();
  for (long i = 0; i < xs.size(); ++i)
    detail::check_point(Point2D<Scalar>{xs(i), Scalar(0)}, family);
  for (long j = 0; j < ys.size(); ++j)
    detail::check_point(Point2D<Scalar>{Scalar(0), ys(j)}, family);

  std::vector<WeightVector<Scalar>> qs(static_cast<std::size_t>(ys.size()));
  long k_max = 1;
  for (long j = 0; j < ys.size(); ++j) {
    qs[j] = y_weights(family, n, ys(j), policy);
    k_max = std::max(k_max, qs[j].size());
  }

  Matrix<Scalar> basis_x(m + 1, xs.size());
  for (long i = 0; i < xs.size(); ++i)
    basis_x.col(i) = bernstein_weights(m, xs(i)).values;

  Matrix<Scalar> nodal(m + 1, k_max);
  parallel_rows(k_max, [&](long k) {
    const Scalar yk = stancu_node(k, n, params.alpha2, params.beta2);
    for (long v = 0; v <= m; ++v)
      nodal(v, k) = detail::evaluate_at_node<Scalar>(f, stancu_node(v, m, params.alpha1, params.beta1), yk);
  });

  const Matrix<Scalar> projected = basis_x.transpose() * nodal;
  Matrix<Scalar> out(xs.size(), ys.size());
  for (long j = 0; j < ys.size(); ++j) {
    const auto& q = qs[j].values;
    out.col(j) = projected.leftCols(q.size()) * q;
  }
  return out;
}

/// B_n(f; x).
template<class Scalar = double, class F>
Scalar apply_1d_bernstein(F&& f1, long n, Scalar x)
{
  const auto w = bernstein_weights(n, x);
  Scalar acc = 0;
  for (long k = 0; k <= n; ++k)
    acc += w[k] * f1(static_cast<Scalar>(k) / static_cast<Scalar>(n));
  return acc;
}

/// S_n(f; x), truncated per policy.
template<class Scalar = double, class F>
Scalar apply_1d_szasz(F&& f1, long n, Scalar x, const TruncationPolicy& policy = {})
{
  const auto w = szasz_weights(n, x, policy);
  Scalar acc = 0;
  for (long k = 0; k < w.size(); ++k)
    acc += w[k] * f1(static_cast<Scalar>(k) / static_cast<Scalar>(n));
  return acc;
}

/// Stancu's P_n^{(alpha,beta)}(f; x).
template<class Scalar = double, class F>
Scalar apply_1d_stancu(F&& f1, long n, Scalar x, Scalar alpha, Scalar beta)
{
  if (!(0 <= alpha && alpha <= beta))
    throw DomainError("Stancu operator requires 0 <= alpha <= beta");
  const auto w = bernstein_weights(n, x);
  Scalar acc = 0;
  for (long k = 0; k <= n; ++k)
    acc += w[k] * f1(stancu_node(k, n, alpha, beta));
  return acc;
}

/// First and second moments along one axis: ((d u + a)/(d + b), E[node^2]).
/// `poisson` selects the Szász second moment (variance d u) over Bernstein (d u (1 - u)).
template<class Scalar>
std::pair<Scalar, Scalar> axis_moments(long degree, Scalar u, Scalar alpha, Scalar beta, bool poisson)
{
  const Scalar d = static_cast<Scalar>(degree);
  const Scalar denom = d + beta;
  // (d u + alpha)/(d + beta) written as u + bias so that alpha = beta = 0 reproduces u exactly.
  const Scalar first = u + (alpha - beta * u) / denom;
  const Scalar quad = poisson ? d * d * u * u : (d * d - d) * u * u;
  const Scalar second = (quad + (2 * alpha + 1) * d * u + alpha * alpha) / (denom * denom);
  return {first, second};
}

/// E[(node - u)^2] along one axis, written as variance + squared bias so it is never negative.
template<class Scalar>
Scalar axis_central_moment(long degree, Scalar u, Scalar alpha, Scalar beta, bool poisson)
{
  const Scalar d = static_cast<Scalar>(degree);
  const Scalar denom = d + beta;
  const Scalar variance = poisson ? d * u : d * u * (1 - u);
  const Scalar bias = alpha - beta * u;
  return (variance + bias * bias) / (denom * denom);
}

/// Closed-form images of 1, t, tau, t^2 + tau^2.
template<class Scalar = double>
MomentSet<Scalar> moments_closed_form(const StancuParams<Scalar>& params,
                                      long m,
                                      long n,
                                      const Point2D<Scalar>& p,
                                      KernelFamily family = KernelFamily::bernstein_szasz)
{
  params.validate();
  const bool poisson = family == KernelFamily::bernstein_szasz;
  const auto [t, t2] = axis_moments(m, p.x, params.alpha1, params.beta1, false);
  const auto [tau, tau2] = axis_moments(n, p.y, params.alpha2, params.beta2, poisson);
  MomentSet<Scalar> out;
  out.one = 1;
  out.t = t;
  out.tau = tau;
  out.t2 = t2;
  out.tau2 = tau2;
  out.t2_plus_tau2 = t2 + tau2;
  return out;
}

/// L[(t - x)^2 + (tau - y)^2](x, y).
template<class Scalar = double>
Scalar second_central_moment(const StancuParams<Scalar>& params,
                             long m,
                             long n,
                             const Point2D<Scalar>& p,
                             KernelFamily family = KernelFamily::bernstein_szasz)
{
  params.validate();
  const bool poisson = family == KernelFamily::bernstein_szasz;
  return axis_central_moment(m, p.x, params.alpha1, params.beta1, false) +
         axis_central_moment(n, p.y, params.alpha2, params.beta2, poisson);
}

/// Grid sup-norm gaps |L(e) - e| over R_A for e in {1, t, tau, t^2 + tau^2}.
/// Grid maxima are lower estimates of the true suprema.
template<class Scalar = double>
KorovkinGaps<Scalar> korovkin_gaps(const StancuParams<Scalar>& params,
                                   long m,
                                   long n,
                                   const CompactRegion<Scalar>& region,
                                   long grid_points = 201,
                                   KernelFamily family = KernelFamily::bernstein_szasz)
{
  using std::abs;
  const Vector<Scalar> xs = lattice<Scalar>(0, 1, grid_points);
  const Vector<Scalar> ys = lattice<Scalar>(0, region.A, grid_points);
  std::vector<KorovkinGaps<Scalar>> rows(static_cast<std::size_t>(grid_points));
  parallel_rows(grid_points, [&](long i) {
    KorovkinGaps<Scalar> g;
    for (long j = 0; j < grid_points; ++j) {
      const Point2D<Scalar> p{xs(i), ys(j)};
      const auto mo = moments_closed_form(params, m, n, p, family);
      g.one = std::max(g.one, abs(mo.one - 1));
      g.t = std::max(g.t, abs(mo.t - p.x));
      g.tau = std::max(g.tau, abs(mo.tau - p.y));
      g.t2_plus_tau2 = std::max(g.t2_plus_tau2, abs(mo.t2_plus_tau2 - (p.x * p.x + p.y * p.y)));
    }
    rows[i] = g;
  });
  KorovkinGaps<Scalar> out;
  for (const auto& g : rows) {
    out.one = std::max(out.one, g.one);
    out.t = std::max(out.t, g.t);
    out.tau = std::max(out.tau, g.tau);
    out.t2_plus_tau2 = std::max(out.t2_plus_tau2, g.t2_plus_tau2);
  }
  return out;
}

} // namespace bss

#endif // BSS_OPERATORS_HPP
