#ifndef BSS_REPORT_HPP
#define BSS_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace bss {

enum class Caveat
{
  none,
  rhs_is_grid_lower_bound,   ///< the right-hand side uses a grid modulus, itself a lower estimate
  frozen_weighted_modulus,   ///< the right-hand side depends on the chosen weighted-modulus definition
};

inline const char* to_string(Caveat c)
{
  switch (c) {
    case Caveat::none: return "none";
    case Caveat::rhs_is_grid_lower_bound: return "rhs_is_grid_lower_bound";
    case Caveat::frozen_weighted_modulus: return "frozen_weighted_modulus";
  }
  return "unknown";
}

/// Both sides of an inequality lhs <= rhs, with the margin rhs - lhs.
struct BoundReport
{
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  bool holds = true;
  Caveat caveat = Caveat::none;
  std::vector<std::pair<std::string, double>> extras; ///< named intermediate quantities

  static constexpr double relative_slack = 1e-12;

  /// `allowance` absorbs known numerical error on the left-hand side, e.g. the
  /// truncated Poisson mass times the size of f.
  static BoundReport make(double lhs, double rhs, Caveat caveat = Caveat::none, double allowance = 0)
  {
    BoundReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    r.holds = r.margin >= -(relative_slack * std::max(1.0, std::abs(rhs)) + allowance);
    r.caveat = caveat;
    return r;
  }

  double extra(const std::string& key) const
  {
    for (const auto& [k, v] : extras)
      if (k == key)
        return v;
    return std::nan("");
  }
};

} // namespace bss

#endif // BSS_REPORT_HPP
