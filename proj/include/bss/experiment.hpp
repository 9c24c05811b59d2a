#ifndef BSS_EXPERIMENT_HPP
#define BSS_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bss/report.hpp"

namespace bss {

inline constexpr const char* library_version = "0.1.0";

/// Flat experiment description; every key mirrors a CLI flag.
struct ExperimentConfig
{
  std::string command = "eval"; ///< eval | moments | modulus | check-thm33 | rth | check-thm41 | weighted | converge
  std::string function = "linear";
  long m = 10;
  long n = 10;
  std::vector<long> schedule; ///< m = n values; empty means the single pair (m, n)
  double alpha1 = 0, beta1 = 0, alpha2 = 0, beta2 = 0;
  std::string family = "bernstein_szasz"; ///< or bernstein_bernstein
  double A = 1;
  double S = 50;
  double s = 2;
  double x = 0.5;
  double y = 1.0;
  long grid = 201;
  double tail_tol = 1e-12;
  long max_terms = 1000000;
  double delta = 0.1;
  int r = 1;
  double gamma = 1;
  double M = 0;       ///< 0: take the corpus directional Lipschitz constant
  double epsilon = 0.5;
  long samples = 10000;
  std::string moduli = "closed_form"; ///< closed_form | grid
  std::string rth_mode = "operator_norm"; ///< operator_norm | modulus_of_g | lipschitz_of_g
  double rhs_scale = 1; ///< multiplies every right-hand side before the holds test
  std::uint64_t seed = 42;
  std::string out;        ///< output path; empty writes the table to stdout
  std::string format = "csv"; ///< csv | json
};

nlohmann::json to_json(const ExperimentConfig& config);

/// Accepts either a bare config object or a sidecar carrying it under "config".
ExperimentConfig config_from_json(const nlohmann::json& j);

using Cell = std::variant<double, long, std::string>;

struct Table
{
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct RunResult
{
  Table table;
  std::vector<BoundReport> reports;
  std::vector<std::string> caveats;

  bool all_hold() const
  {
    for (const auto& r : reports)
      if (!r.holds)
        return false;
    return true;
  }
};

/// Runs the configured experiment in memory.
RunResult execute(const ExperimentConfig& config);

/// CSV with a header line; doubles use 17 significant digits. Non-finite values are rejected.
std::string to_csv(const Table& table);

nlohmann::json to_json(const Table& table);

/// Executes and writes the table (and a "<out>.json" sidecar when out is set).
/// Returns 0 iff every bound report holds; 1 if one fails; 2 on error.
int run(const ExperimentConfig& config);

} // namespace bss

#endif // BSS_EXPERIMENT_HPP
