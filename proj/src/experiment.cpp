#include "bss/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bss/bss.hpp"
#include "bss/corpus.hpp"

namespace bss {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ExperimentConfig,
                                                command, function, m, n, schedule, alpha1, beta1, alpha2, beta2,
                                                family, A, S, s, x, y, grid, tail_tol, max_terms, delta, r, gamma, M,
                                                epsilon, samples, moduli, rth_mode, rhs_scale, seed, out, format)

nlohmann::json to_json(const ExperimentConfig& config)
{
  nlohmann::json j;
  bss::to_json(j, config);
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j)
{
  const nlohmann::json& body = (j.is_object() && j.contains("config")) ? j.at("config") : j;
  ExperimentConfig config;
  bss::from_json(body, config);
  return config;
}

namespace {

using Pair = std::pair<long, long>;

StancuParams<double> params_of(const ExperimentConfig& c)
{
  return StancuParams<double>(c.alpha1, c.beta1, c.alpha2, c.beta2);
}

TruncationPolicy policy_of(const ExperimentConfig& c)
{
  return TruncationPolicy(c.tail_tol, c.max_terms);
}

KernelFamily family_of(const ExperimentConfig& c)
{
  if (c.family == "bernstein_szasz")
    return KernelFamily::bernstein_szasz;
  if (c.family == "bernstein_bernstein")
    return KernelFamily::bernstein_bernstein;
  throw DomainError("unknown kernel family '" + c.family + "'");
}

std::vector<Pair> pairs_of(const ExperimentConfig& c)
{
  if (c.schedule.empty())
    return {{c.m, c.n}};
  std::vector<Pair> out;
  for (long k : c.schedule)
    out.emplace_back(k, k);
  return out;
}

void check_ranges(const ExperimentConfig& c)
{
  if (c.m < 1 || c.n < 1)
    throw DomainError("m and n must be positive");
  for (long k : c.schedule)
    if (k < 1)
      throw DomainError("schedule entries must be positive");
  if (c.grid < 2)
    throw DomainError("grid must have at least 2 points per axis");
  if (!(c.A > 0) || !(c.S > 0) || !(c.s > 0))
    throw DomainError("A, S and s must be positive");
  if (c.format != "csv" && c.format != "json")
    throw DomainError("format must be csv or json");
  policy_of(c);
  params_of(c);
}

class Runner
{
public:
  explicit Runner(const ExperimentConfig& c)
    : config_(c), entry_(corpus_lookup(c.function)), params_(params_of(c)), policy_(policy_of(c))
  {}

  RunResult run()
  {
    const std::string& cmd = config_.command;
    if (cmd == "eval")
      eval();
    else if (cmd == "moments")
      moments();
    else if (cmd == "modulus")
      modulus();
    else if (cmd == "check-thm33")
      check_modulus_rate_cmd();
    else if (cmd == "rth")
      rth();
    else if (cmd == "check-thm41")
      check_rth_cmd();
    else if (cmd == "weighted")
      weighted();
    else if (cmd == "converge")
      converge();
    else
      throw DomainError("unknown command '" + cmd +
                        "'; expected eval, moments, modulus, check-thm33, rth, check-thm41, weighted or converge");

    std::set<std::string> seen;
    for (const auto& r : result_.reports)
      if (r.caveat != Caveat::none && seen.insert(to_string(r.caveat)).second)
        result_.caveats.push_back(to_string(r.caveat));
    return std::move(result_);
  }

private:
  void columns(std::vector<std::string> names) { result_.table.columns = std::move(names); }
  void row(std::vector<Cell> cells) { result_.table.rows.push_back(std::move(cells)); }

  BoundReport record(BoundReport r)
  {
    if (config_.rhs_scale != 1) {
      const double slack = r.extra("truncation_allowance");
      auto extras = std::move(r.extras);
      r = BoundReport::make(r.lhs, r.rhs * config_.rhs_scale, r.caveat, std::isnan(slack) ? 0.0 : slack);
      r.extras = std::move(extras);
    }
    result_.reports.push_back(r);
    return r;
  }

  Point2D<double> point() const { return {config_.x, config_.y}; }

  PartialDerivativeSet<double> derivatives() const
  {
    if (entry_.derivatives)
      return *entry_.derivatives;
    return finite_difference_derivs(entry_.function, config_.r);
  }

  void eval()
  {
    columns({"m", "n", "x", "y", "value", "f", "abs_error"});
    const auto& f = entry_.function;
    for (const auto& [m, n] : pairs_of(config_)) {
      const double v = apply(f, params_, m, n, point(), policy_, family_of(config_));
      const double fv = f(point());
      row({m, n, config_.x, config_.y, v, fv, std::abs(v - fv)});
    }
  }

  void moments()
  {
    columns({"m", "n", "x", "y", "one", "t", "tau", "t2_plus_tau2", "central_moment", "gap_one", "gap_t", "gap_tau",
             "gap_t2_plus_tau2"});
    const auto family = family_of(config_);
    const CompactRegion<double> region(config_.A);
    for (const auto& [m, n] : pairs_of(config_)) {
      const auto mo = moments_closed_form(params_, m, n, point(), family);
      const double cm = second_central_moment(params_, m, n, point(), family);
      const auto g = korovkin_gaps(params_, m, n, region, config_.grid, family);
      row({m, n, config_.x, config_.y, mo.one, mo.t, mo.tau, mo.t2_plus_tau2, cm, g.one, g.t, g.tau, g.t2_plus_tau2});
    }
  }

  void modulus()
  {
    columns({"kind", "delta", "gamma", "value", "closed_form", "has_closed_form"});
    const auto& f = entry_.function;
    const CompactRegion<double> region(config_.A);
    std::optional<AnalyticModuli<double>> exact;
    if (entry_.has_closed_form_moduli())
      exact = entry_.closed_form_moduli(config_.A);

    const double d = config_.delta;
    const auto full = full_modulus(f, region, d, config_.grid);
    const auto [wx, wy] = partial_moduli(f, region, d, config_.grid);
    auto add = [&](const char* kind, double value, const std::function<double(double)>* closed) {
      const bool has = closed && *closed;
      row({std::string(kind), d, 1.0, value, has ? (*closed)(d) : 0.0, long(has)});
    };
    add("full", full.value, exact ? &exact->full : nullptr);
    add("partial_x", wx.value, exact ? &exact->partial_x : nullptr);
    add("partial_y", wy.value, exact ? &exact->partial_y : nullptr);
    if (f.growth == Growth::rho_dominated)
      add("weighted", weighted_modulus(f, d, config_.S, config_.grid).value, nullptr);

    const auto lip = lipschitz_ratio(f, config_.gamma, region, config_.samples, config_.seed, config_.grid);
    const bool has_lip = entry_.lipschitz && entry_.lipschitz->gamma == config_.gamma;
    row({std::string("lipschitz"), 0.0, config_.gamma, lip.M_estimate, has_lip ? entry_.lipschitz->M : 0.0,
         long(has_lip)});
  }

  void check_modulus_rate_cmd()
  {
    columns({"m", "n", "part", "lhs", "rhs", "margin", "holds", "caveat"});
    const CompactRegion<double> region(config_.A);
    ModuliSource source;
    if (config_.moduli == "closed_form")
      source = ModuliSource::closed_form;
    else if (config_.moduli == "grid")
      source = ModuliSource::grid;
    else
      throw DomainError("moduli must be closed_form or grid");
    std::optional<AnalyticModuli<double>> exact;
    if (entry_.has_closed_form_moduli())
      exact = entry_.closed_form_moduli(config_.A);

    for (const auto& [m, n] : pairs_of(config_)) {
      auto [a, b] = check_modulus_rate(entry_.function, params_, m, n, region, config_.grid, policy_, source, exact);
      for (auto [label, rep] : {std::pair{"a", a}, std::pair{"b", b}}) {
        const auto r = record(rep);
        row({m, n, std::string(label), r.lhs, r.rhs, r.margin, long(r.holds), std::string(to_string(r.caveat))});
      }
    }
  }

  void rth()
  {
    columns({"m", "n", "r", "x", "y", "value", "f", "abs_error"});
    const auto derivs = derivatives();
    const auto& f = entry_.function;
    for (const auto& [m, n] : pairs_of(config_)) {
      const double v = apply_rth(derivs, params_, m, n, config_.r, point(), policy_, family_of(config_));
      const double fv = f(point());
      row({m, n, long(config_.r), config_.x, config_.y, v, fv, std::abs(v - fv)});
    }
  }

  void check_rth_cmd()
  {
    columns({"m", "n", "r", "gamma", "M", "mode", "lhs", "rhs", "margin", "holds"});
    RthBoundMode mode;
    if (config_.rth_mode == "operator_norm")
      mode = RthBoundMode::operator_norm;
    else if (config_.rth_mode == "modulus_of_g")
      mode = RthBoundMode::modulus_of_g;
    else if (config_.rth_mode == "lipschitz_of_g")
      mode = RthBoundMode::lipschitz_of_g;
    else
      throw DomainError("rth_mode must be operator_norm, modulus_of_g or lipschitz_of_g");

    double M = config_.M;
    if (M <= 0) {
      const auto& dl = entry_.directional_lipschitz;
      if (!dl || dl->r != config_.r || dl->gamma != config_.gamma)
        throw PreconditionError("no Lipschitz constant for F^(r) of '" + config_.function +
                                "' at this r and gamma; pass --M");
      M = dl->M;
    }
    const auto derivs = derivatives();
    const CompactRegion<double> region(config_.A);
    for (const auto& [m, n] : pairs_of(config_)) {
      const auto r = record(check_rth_order_bound(derivs, entry_.function, params_, m, n, config_.r, config_.gamma, M,
                                                  region, config_.grid, policy_, mode));
      row({m, n, long(config_.r), config_.gamma, M, config_.rth_mode, r.lhs, r.rhs, r.margin, long(r.holds)});
    }
  }

  void weighted()
  {
    columns({"m", "n", "strip_estimate", "growth_tail", "quadratic_tail", "has_quadratic_tail", "certified",
             "operator_norm_bound", "rate_lhs", "rate_rhs", "rate_margin", "rate_holds", "c", "delta"});
    const TruncatedStrip<double> strip(config_.S);
    const auto pairs = pairs_of(config_);
    const auto conv = check_weighted_convergence(entry_.function, params_, pairs, WeightSpec<double>::power(config_.epsilon),
                                                 strip, config_.grid, policy_);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [m, n] = pairs[k];
      const auto& e = conv[k];
      const double norm = operator_rho_norm_bound(params_, m, n, strip, config_.grid);
      const auto r = record(check_weighted_modulus_rate(entry_.function, params_, m, n, config_.s, config_.grid, policy_));
      row({m, n, e.strip_estimate, e.growth_tail, e.quadratic_tail.value_or(0.0), long(e.quadratic_tail.has_value()),
           e.certified, norm, r.lhs, r.rhs, r.margin, long(r.holds), r.extra("c"), r.extra("delta")});
    }
  }

  void converge()
  {
    columns({"m", "n", "sup_error", "delta_m", "delta_n", "delta_mn", "gap_t", "gap_tau", "gap_t2_plus_tau2"});
    const CompactRegion<double> region(config_.A);
    for (const auto& [m, n] : pairs_of(config_)) {
      const double err = sup_error_on_region(entry_.function, params_, m, n, region, config_.grid, policy_);
      const auto d = deltas(m, n, params_, region);
      const auto g = korovkin_gaps(params_, m, n, region, config_.grid);
      row({m, n, err, d.delta_m, d.delta_n, d.delta_mn, g.t, g.tau, g.t2_plus_tau2});
    }
  }

  const ExperimentConfig& config_;
  CorpusEntry entry_;
  StancuParams<double> params_;
  TruncationPolicy policy_;
  RunResult result_;
};

std::string format_double(double v)
{
  if (!std::isfinite(v))
    throw Error("non-finite value in report table");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_cell(const Cell& c)
{
  if (const auto* d = std::get_if<double>(&c))
    return format_double(*d);
  if (const auto* l = std::get_if<long>(&c))
    return std::to_string(*l);
  return std::get<std::string>(c);
}

void write_atomically(const std::string& path, const std::string& contents)
{
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os)
      throw Error("cannot open '" + tmp + "' for writing");
    os << contents;
    if (!os)
      throw Error("failed writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

const char* error_type(const std::exception& e)
{
  if (dynamic_cast<const DomainError*>(&e))
    return "domain_error";
  if (dynamic_cast<const PreconditionError*>(&e))
    return "precondition_error";
  if (dynamic_cast<const TruncationError*>(&e))
    return "truncation_error";
  if (dynamic_cast<const EvaluationError*>(&e))
    return "evaluation_error";
  if (dynamic_cast<const LookupError*>(&e))
    return "lookup_error";
  return "error";
}

} // namespace

RunResult execute(const ExperimentConfig& config)
{
  check_ranges(config);
  return Runner(config).run();
}

std::string to_csv(const Table& table)
{
  std::ostringstream os;
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      os << (i ? "," : "") << format_cell(r[i]);
    os << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const Table& table)
{
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < r.size() && i < table.columns.size(); ++i) {
      std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, double>)
            format_double(v);
          obj[table.columns[i]] = v;
        },
        r[i]);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

int run(const ExperimentConfig& config)
{
  nlohmann::json sidecar;
  sidecar["config"] = to_json(config);
  sidecar["version"] = library_version;

  int status = 0;
  try {
    const RunResult result = execute(config);
    const std::string body = config.format == "json" ? to_json(result.table).dump(2) + "\n" : to_csv(result.table);
    if (config.out.empty())
      std::cout << body;
    else
      write_atomically(config.out, body);

    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : result.reports)
      reports.push_back({{"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin}, {"holds", r.holds},
                         {"caveat", to_string(r.caveat)}});
    sidecar["reports"] = reports;
    sidecar["caveats"] = result.caveats;
    sidecar["all_hold"] = result.all_hold();
    sidecar["error"] = nullptr;
    status = result.all_hold() ? 0 : 1;
  } catch (const std::exception& e) {
    sidecar["error"] = {{"type", error_type(e)}, {"message", e.what()}};
    if (const auto* t = dynamic_cast<const TruncationError*>(&e))
      sidecar["error"]["achieved_tail"] = t->achieved_tail();
    if (const auto* ev = dynamic_cast<const EvaluationError*>(&e)) {
      sidecar["error"]["x"] = ev->x();
      sidecar["error"]["y"] = ev->y();
    }
    std::cerr << "error: " << e.what() << '\n';
    status = 2;
  }

  if (!config.out.empty()) {
    try {
      write_atomically(config.out + ".json", sidecar.dump(2) + "\n");
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  } else if (status == 2) {
    std::cerr << sidecar["error"].dump() << '\n';
  }
  return status;
}

} // namespace bss
