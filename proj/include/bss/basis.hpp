#ifndef BSS_BASIS_HPP
#define BSS_BASIS_HPP

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "bss/error.hpp"
#include "bss/types.hpp"

namespace bss {

/// Controls where the infinite Szász sum is cut.
struct TruncationPolicy
{
  double tail_tol = 1e-12;
  long max_terms = 1000000;

  TruncationPolicy() = default;
  TruncationPolicy(double tol, long cap) : tail_tol(tol), max_terms(cap) { validate(); }

  void validate() const
  {
    if (!(tail_tol > 0 && tail_tol < 1))
      throw DomainError("tail_tol must lie in (0, 1)");
    if (max_terms < 1)
      throw DomainError("max_terms must be at least 1");
  }
};

/// Non-negative weights indexed from 0, plus a bound on the mass that was cut off.
template<class Scalar = double>
struct WeightVector
{
  Vector<Scalar> values;
  Scalar tail_bound = 0;

  long size() const { return static_cast<long>(values.size()); }
  long start_index() const { return 0; }
  Scalar sum() const { return values.sum(); }
  Scalar operator[](long i) const { return values(i); }
};

namespace detail {

/// Working precision for the log-space paths: at least long double.
template<class Scalar>
using Wide = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;

inline constexpr long direct_bernstein_limit = 64;

template<class Scalar>
void check_bernstein_args(long m, Scalar x)
{
  if (m < 1)
    throw DomainError("Bernstein degree must be at least 1");
  if (!(x >= 0 && x <= 1))
    throw DomainError("Bernstein argument must lie in [0, 1], got " + std::to_string(static_cast<double>(x)));
}

} // namespace detail

/// Degree-raising recurrence w_k <- (1-x) w_k + x w_{k-1}. O(m^2), exact at the endpoints.
template<class Scalar = double>
WeightVector<Scalar> bernstein_weights_direct(long m, Scalar x)
{
  detail::check_bernstein_args(m, x);
  Vector<Scalar> w = Vector<Scalar>::Zero(m + 1);
  w(0) = 1;
  const Scalar xc = 1 - x;
  for (long j = 1; j <= m; ++j) {
    for (long k = j; k >= 1; --k)
      w(k) = xc * w(k) + x * w(k - 1);
    w(0) *= xc;
  }
  return {std::move(w), Scalar(0)};
}

/// exp(log C(m,v) + v log x + (m-v) log(1-x)) with cumulative log-factorials.
template<class Scalar = double>
WeightVector<Scalar> bernstein_weights_log(long m, Scalar x)
{
  using W = detail::Wide<Scalar>;
  using std::exp;
  using std::log;
  using std::log1p;

  detail::check_bernstein_args(m, x);
  Vector<Scalar> w = Vector<Scalar>::Zero(m + 1);
  if (x == 0) {
    w(0) = 1;
    return {std::move(w), Scalar(0)};
  }
  if (x == 1) {
    w(m) = 1;
    return {std::move(w), Scalar(0)};
  }

  std::vector<W> log_fact(static_cast<std::size_t>(m) + 1, W(0));
  for (long i = 2; i <= m; ++i)
    log_fact[i] = log_fact[i - 1] + log(static_cast<W>(i));

  const W lx = log(static_cast<W>(x));
  const W l1x = log1p(-static_cast<W>(x));
  for (long v = 0; v <= m; ++v) {
    const W lw = log_fact[m] - log_fact[v] - log_fact[m - v] + static_cast<W>(v) * lx +
                 static_cast<W>(m - v) * l1x;
    w(v) = static_cast<Scalar>(exp(lw));
  }
  return {std::move(w), Scalar(0)};
}

/// Bernstein basis p_{m,v}(x), v = 0..m.
template<class Scalar = double>
WeightVector<Scalar> bernstein_weights(long m, Scalar x)
{
  if (m <= detail::direct_bernstein_limit)
    return bernstein_weights_direct(m, x);
  return bernstein_weights_log(m, x);
}

/// Szász–Mirakyan (Poisson, rate n*y) weights q_{n,k}(y) for k = 0..K.
///
/// K is the first index at or past the mode ceil(n*y) where the accumulated
/// mass reaches 1 - tail_tol. Terms and mass are accumulated in extended
/// precision; tail_bound reports the mass that was dropped.
template<class Scalar = double>
WeightVector<Scalar> szasz_weights(long n, Scalar y, const TruncationPolicy& policy = {})
{
  using W = detail::Wide<Scalar>;
  using std::ceil;
  using std::exp;
  using std::lgamma;
  using std::log;

  if (n < 1)
    throw DomainError("Szász degree must be at least 1");
  if (!(y >= 0))
    throw DomainError("Szász argument must be non-negative, got " + std::to_string(static_cast<double>(y)));
  policy.validate();

  if (y == 0) {
    Vector<Scalar> w(1);
    w(0) = 1;
    return {std::move(w), Scalar(0)};
  }

  const W rate = static_cast<W>(n) * static_cast<W>(y);
  const W log_rate = log(rate);
  const W target = W(1) - static_cast<W>(policy.tail_tol);
  const long mode = static_cast<long>(ceil(rate));

  std::vector<W> terms;
  terms.reserve(static_cast<std::size_t>(mode) + 64);
  W mass = 0;
  for (long k = 0;; ++k) {
    if (k >= policy.max_terms) {
      const double tail = static_cast<double>(W(1) - mass);
      throw TruncationError("Szász series reached max_terms=" + std::to_string(policy.max_terms) +
                              " with tail mass " + std::to_string(tail),
                            tail);
    }
    const W kk = static_cast<W>(k);
    const W term = exp(kk * log_rate - rate - lgamma(kk + 1));
    terms.push_back(term);
    mass += term;
    if (k >= mode && mass >= target)
      break;
  }

  Vector<Scalar> w(static_cast<long>(terms.size()));
  for (std::size_t k = 0; k < terms.size(); ++k)
    w(static_cast<long>(k)) = terms[k] < W(1e-300) ? Scalar(0) : static_cast<Scalar>(terms[k]);
  const W tail = W(1) - mass;
  return {std::move(w), static_cast<Scalar>(tail > 0 ? tail : W(0))};
}

/// The finite Bernstein weights used on the y axis by the Bernstein–Bernstein family.
template<class Scalar = double>
WeightVector<Scalar> y_weights(KernelFamily family, long n, Scalar y, const TruncationPolicy& policy)
{
  if (family == KernelFamily::bernstein_bernstein)
    return bernstein_weights(n, y);
  return szasz_weights(n, y, policy);
}

} // namespace bss

#endif // BSS_BASIS_HPP
