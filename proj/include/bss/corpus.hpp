#ifndef BSS_CORPUS_HPP
#define BSS_CORPUS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bss/bounds.hpp"
#include "bss/taylor.hpp"
#include "bss/types.hpp"

namespace bss {

struct LipschitzData
{
  double gamma = 1;
  double M = 0;
};

/// Hölder data per axis: |f(x1,y) - f(x2,y)| <= Mx |x1-x2|^ax, and likewise in y.
struct AxisLipschitzData
{
  double Mx = 0;
  double alpha = 1;
  double My = 0;
  double beta = 1;
};

/// Lipschitz data of the r-th directional derivative F^(r).
struct DirectionalLipschitzData
{
  int r = 1;
  double gamma = 1;
  double M = 0;
};

/// A test function with whatever analytic facts are known about it.
struct CorpusEntry
{
  Function2D<double> function;
  /// Closed-form moduli on R_A; the argument is A.
  std::function<AnalyticModuli<double>(double)> closed_form_moduli;
  std::optional<LipschitzData> lipschitz;
  std::optional<AxisLipschitzData> axis_lipschitz;
  std::optional<PartialDerivativeSet<double>> derivatives;
  std::optional<DirectionalLipschitzData> directional_lipschitz;
  std::vector<std::string> tags;

  bool has_closed_form_moduli() const { return static_cast<bool>(closed_form_moduli); }
};

/// Names in the built-in registry, in registration order.
const std::vector<std::string>& corpus_names();

/// Returns the named entry; unknown names raise LookupError listing the registry.
CorpusEntry corpus_lookup(const std::string& name);

} // namespace bss

#endif // BSS_CORPUS_HPP
