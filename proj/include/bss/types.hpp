#ifndef BSS_TYPES_HPP
#define BSS_TYPES_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "bss/error.hpp"

namespace bss {

template<class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template<class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Shift/scale pair for each axis; nodes are (index + alpha) / (degree + beta).
template<class Scalar = double>
struct StancuParams
{
  Scalar alpha1 = 0;
  Scalar beta1 = 0;
  Scalar alpha2 = 0;
  Scalar beta2 = 0;

  StancuParams() = default;

  StancuParams(Scalar a1, Scalar b1, Scalar a2, Scalar b2)
    : alpha1(a1), beta1(b1), alpha2(a2), beta2(b2)
  {
    validate();
  }

  void validate() const
  {
    if (!(0 <= alpha1 && alpha1 <= beta1) || !(0 <= alpha2 && alpha2 <= beta2))
      throw DomainError("Stancu parameters must satisfy 0 <= alpha <= beta on both axes");
  }

  static StancuParams classical() { return {}; }
};

template<class Scalar = double>
struct Point2D
{
  Scalar x = 0;
  Scalar y = 0;
};

template<class Scalar>
Scalar distance(const Point2D<Scalar>& a, const Point2D<Scalar>& b)
{
  using std::hypot;
  return hypot(a.x - b.x, a.y - b.y);
}

/// R_A = [0,1] x [0,A].
template<class Scalar = double>
struct CompactRegion
{
  Scalar A = 1;

  CompactRegion() = default;
  explicit CompactRegion(Scalar a) : A(a)
  {
    if (!(a > 0))
      throw DomainError("region height A must be positive");
  }
};

/// [0,1] x [0,S], the truncated strip used for weighted sup-norm estimates.
template<class Scalar = double>
struct TruncatedStrip
{
  Scalar S = 1;

  TruncatedStrip() = default;
  explicit TruncatedStrip(Scalar s) : S(s)
  {
    if (!(s > 0))
      throw DomainError("strip height S must be positive");
  }
};

enum class KernelFamily
{
  bernstein_szasz,     ///< Bernstein in x, Szász–Mirakyan in y, domain [0,1] x [0,inf)
  bernstein_bernstein, ///< Bernstein in both axes, domain [0,1]^2
};

enum class Growth
{
  bounded_on_compacts,
  rho_dominated, ///< |f| <= M_f (1 + x^2 + y^2) everywhere
};

/// Coefficients of c0 + cx x + cy y + cxx x^2 + cyy y^2 + cxy x y.
template<class Scalar = double>
struct Quadratic
{
  Scalar c0 = 0, cx = 0, cy = 0, cxx = 0, cyy = 0, cxy = 0;

  Scalar operator()(Scalar x, Scalar y) const
  {
    return c0 + cx * x + cy * y + cxx * x * x + cyy * y * y + cxy * x * y;
  }
};

/// A function on [0,1] x [0,inf) plus whatever analytic metadata is known about it.
template<class Scalar = double>
struct Function2D
{
  std::function<Scalar(Scalar, Scalar)> eval;
  std::string name;
  Growth growth = Growth::bounded_on_compacts;
  Scalar growth_constant = 0; ///< M_f, meaningful when growth == rho_dominated
  std::optional<Quadratic<Scalar>> quadratic;

  Scalar operator()(Scalar x, Scalar y) const { return eval(x, y); }
  Scalar operator()(const Point2D<Scalar>& p) const { return eval(p.x, p.y); }
};

template<class Scalar = double, class F>
Function2D<Scalar> make_function(std::string name, F&& f)
{
  Function2D<Scalar> out;
  out.eval = std::forward<F>(f);
  out.name = std::move(name);
  return out;
}

template<class Scalar = double>
Function2D<Scalar> make_quadratic(const Quadratic<Scalar>& q, std::string name)
{
  Function2D<Scalar> out;
  out.eval = q;
  out.name = std::move(name);
  out.quadratic = q;
  return out;
}

/// rho(x,y) = 1 + x^2 + y^2.
template<class Scalar>
Scalar rho(Scalar x, Scalar y)
{
  return 1 + x * x + y * y;
}

/// n evenly spaced points from lo to hi inclusive.
template<class Scalar>
Vector<Scalar> lattice(Scalar lo, Scalar hi, long n)
{
  if (n < 2)
    throw DomainError("a lattice needs at least 2 points per axis");
  Vector<Scalar> out(n);
  const Scalar step = (hi - lo) / static_cast<Scalar>(n - 1);
  for (long i = 0; i < n; ++i)
    out(i) = lo + step * static_cast<Scalar>(i);
  out(n - 1) = hi;
  return out;
}

} // namespace bss

#endif // BSS_TYPES_HPP
