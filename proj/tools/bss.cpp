// Command-line front end: `bss <command> [--config file.json] [--key value ...]`.
// Flags override values loaded from --config.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bss/corpus.hpp"
#include "bss/experiment.hpp"

int main(int argc, char** argv)
{
  CLI::App app{"Bernstein-Szasz-Stancu operators: evaluation and bound checks"};
  app.set_version_flag("--version", std::string(bss::library_version));

  bss::ExperimentConfig flags;
  std::string config_path;
  bool list = false;

  app.add_option("command", flags.command,
                 "eval | moments | modulus | check-thm33 | rth | check-thm41 | weighted | converge");
  app.add_option("--config", config_path, "JSON config (bare or a previous run's sidecar)");
  app.add_flag("--list-functions", list, "print corpus function names and exit");

  struct Binding
  {
    CLI::Option* option;
    std::function<void(bss::ExperimentConfig&)> copy;
  };
  std::vector<Binding> bindings;
  auto bind = [&](const std::string& name, auto bss::ExperimentConfig::*field, const std::string& help) {
    auto* opt = app.add_option(name, flags.*field, help);
    bindings.push_back({opt, [field, &flags](bss::ExperimentConfig& target) { target.*field = flags.*field; }});
    return opt;
  };

  bind("--function", &bss::ExperimentConfig::function, "corpus function name");
  bind("--m", &bss::ExperimentConfig::m, "degree in x");
  bind("--n", &bss::ExperimentConfig::n, "rate in y");
  bind("--schedule", &bss::ExperimentConfig::schedule, "m = n values, comma separated")->delimiter(',');
  bind("--alpha1", &bss::ExperimentConfig::alpha1, "shift in x");
  bind("--beta1", &bss::ExperimentConfig::beta1, "scale in x");
  bind("--alpha2", &bss::ExperimentConfig::alpha2, "shift in y");
  bind("--beta2", &bss::ExperimentConfig::beta2, "scale in y");
  bind("--family", &bss::ExperimentConfig::family, "bernstein_szasz | bernstein_bernstein");
  bind("--A", &bss::ExperimentConfig::A, "compact region [0,1] x [0,A]");
  bind("--S", &bss::ExperimentConfig::S, "truncated strip [0,1] x [0,S]");
  bind("--s", &bss::ExperimentConfig::s, "radius for the weighted modulus rate check");
  bind("--x", &bss::ExperimentConfig::x, "evaluation point x");
  bind("--y", &bss::ExperimentConfig::y, "evaluation point y");
  bind("--grid", &bss::ExperimentConfig::grid, "grid points per axis");
  bind("--tail-tol", &bss::ExperimentConfig::tail_tol, "Poisson tail tolerance");
  bind("--max-terms", &bss::ExperimentConfig::max_terms, "Poisson term cap");
  bind("--delta", &bss::ExperimentConfig::delta, "modulus argument");
  bind("--r", &bss::ExperimentConfig::r, "Taylor order");
  bind("--gamma", &bss::ExperimentConfig::gamma, "Lipschitz exponent");
  bind("--M", &bss::ExperimentConfig::M, "Lipschitz constant of F^(r); 0 uses the corpus value");
  bind("--epsilon", &bss::ExperimentConfig::epsilon, "weight exponent rho^(1+epsilon)");
  bind("--samples", &bss::ExperimentConfig::samples, "random pairs for Lipschitz estimates");
  bind("--moduli", &bss::ExperimentConfig::moduli, "closed_form | grid");
  bind("--rth-mode", &bss::ExperimentConfig::rth_mode, "operator_norm | modulus_of_g | lipschitz_of_g");
  bind("--rhs-scale", &bss::ExperimentConfig::rhs_scale, "multiply every right-hand side (fixture tampering)");
  bind("--seed", &bss::ExperimentConfig::seed, "RNG seed");
  bind("--out", &bss::ExperimentConfig::out, "output path; a <out>.json sidecar is written next to it");
  bind("--format", &bss::ExperimentConfig::format, "csv | json");

  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& name : bss::corpus_names())
      std::cout << name << '\n';
    return 0;
  }

  bss::ExperimentConfig config;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) {
      std::cerr << "error: cannot read config '" << config_path << "'\n";
      return 2;
    }
    try {
      config = bss::config_from_json(nlohmann::json::parse(is));
    } catch (const std::exception& e) {
      std::cerr << "error: invalid config: " << e.what() << '\n';
      return 2;
    }
  }
  if (app.get_option("command")->count() > 0)
    config.command = flags.command;
  for (const auto& b : bindings)
    if (b.option->count() > 0)
      b.copy(config);

  return bss::run(config);
}
