#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "sbconc/bounds.hpp"
#include "sbconc/cli.hpp"
#include "sbconc/conditions.hpp"
#include "sbconc/errors.hpp"
#include "sbconc/harness.hpp"
#include "sbconc/instance.hpp"
#include "sbconc/scaling.hpp"
#include "sbconc/serialize.hpp"

namespace sbconc::cli {

namespace {

Cell opt_cell(const std::optional<double>& x) { return x ? Cell(*x) : Cell(); }

std::string method_name(BoundMethod m) { return std::string(to_string(m)); }
std::string tail_name(Tail t) { return std::string(to_string(t)); }

// Every bound applicable to (p, t) on one tail. Rows that cannot be evaluated
// come back invalid with the error text as the reason.
std::vector<TailBound> all_bounds(const SelfBoundingParams& p, double t, Tail tail) {
  using Fn = std::function<TailBound(const SelfBoundingParams&, double)>;
  std::vector<std::pair<BoundMethod, Fn>> fns;
  if (tail == Tail::upper) {
    fns = {{BoundMethod::mcdiarmid_ab, upper_tail_mcdiarmid_ab},
           {BoundMethod::boucheron_ab, upper_tail_boucheron_ab},
           {BoundMethod::mab_symmetric, upper_tail_symmetric},
           {BoundMethod::mab_improved, upper_tail_improved}};
    if (p.M <= 0.5 && p.a > 1.0 / 3.0) {
      fns.emplace_back(BoundMethod::mab_remark_strengthened, remark_strengthened_upper);
    }
    fns.emplace_back(BoundMethod::chernoff_exact, chernoff_upper_tail);
  } else {
    fns = {{BoundMethod::mcdiarmid_lower_ab, lower_tail_mcdiarmid_ab},
           {BoundMethod::mab_symmetric, lower_tail_symmetric},
           {BoundMethod::mab_improved, lower_tail_improved},
           {BoundMethod::chernoff_exact, chernoff_lower_tail}};
  }

  std::vector<TailBound> out;
  for (const auto& [method, fn] : fns) {
    TailBound b;
    try {
      b = fn(p, t);
    } catch (const std::exception& e) {
      b.exponent = std::nan("");
      b.probability = std::nan("");
      b.tail = tail;
      b.method = method;
      b.valid = false;
      b.reason = e.what();
    }
    const bool classical = method == BoundMethod::mcdiarmid_ab ||
                           method == BoundMethod::boucheron_ab ||
                           method == BoundMethod::mcdiarmid_lower_ab;
    if (classical && p.M > 1.0 && b.valid) {
      b.valid = false;
      b.reason = "(a,b) bound requires M <= 1";
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<Cell> bound_row(const TailBound& b) {
  return {tail_name(b.tail), method_name(b.method), b.exponent, b.probability, b.valid,
          b.window_max, b.reason};
}

void require_nondegenerate(const SelfBoundingParams& p) {
  try {
    p.validate();
  } catch (const InvalidParams& e) {
    throw UsageError(e.what());
  }
  if (!(p.variance_proxy() > 0.0)) throw UsageError("a E[Z] + b must be > 0");
}

CommandOutput cmd_bounds(const RunConfig& cfg) {
  const auto p = resolve_params(cfg);
  require_nondegenerate(p);
  const auto grid = resolve_t_grid(cfg.t_grid, p.mean_z);
  CommandOutput res;
  res.table.columns = columns_for(Command::bounds);
  for (double t : grid) {
    for (Tail tail : {Tail::upper, Tail::lower}) {
      for (const auto& b : all_bounds(p, t, tail)) {
        auto row = bound_row(b);
        row.insert(row.begin(), t);
        res.table.rows.push_back(std::move(row));
      }
    }
  }
  return res;
}

CommandOutput cmd_figure(const RunConfig& cfg) {
  auto base = resolve_params(cfg);
  const std::vector<double> ms = cfg.M ? std::vector<double>{*cfg.M} : cfg.m_list;
  if (ms.empty()) throw UsageError("figure: empty M list");
  const auto grid = resolve_t_grid(cfg.t_grid, base.mean_z);
  CommandOutput res;
  res.table.columns = columns_for(Command::figure);
  for (double M : ms) {
    auto p = base;
    p.M = M;
    require_nondegenerate(p);
    for (double t : grid) {
      for (Tail tail : {Tail::upper, Tail::lower}) {
        for (const auto& b : all_bounds(p, t, tail)) {
          auto row = bound_row(b);
          row.insert(row.begin(), {M, t});
          res.table.rows.push_back(std::move(row));
        }
      }
    }
  }
  return res;
}

CommandOutput cmd_deltas(const RunConfig& cfg) {
  const auto& g = cfg.deltas;
  if (g.a_points < 1 || g.M_points < 1) throw UsageError("deltas: grid needs at least one point");
  if (!(g.a_max >= g.a_min) || g.a_min < 0.0) throw UsageError("deltas: need 0 <= a-min <= a-max");
  if (!(g.M_max > g.M_min) || g.M_min < 0.0) throw UsageError("deltas: need 0 <= M-min < M-max");
  CommandOutput res;
  res.table.columns = columns_for(Command::deltas);
  for (std::size_t i = 0; i < g.a_points; ++i) {
    const double a = g.a_points == 1
                         ? g.a_max
                         : g.a_min + (g.a_max - g.a_min) * static_cast<double>(i) /
                                         static_cast<double>(g.a_points - 1);
    for (std::size_t j = 1; j <= g.M_points; ++j) {
      const double M =
          g.M_min + (g.M_max - g.M_min) * static_cast<double>(j) / static_cast<double>(g.M_points);
      const auto dp = delta_plus(a, M);
      const auto dm = delta_minus(a, M);
      res.table.rows.push_back({a, M, dp.value, std::string(to_string(dp.case_label)), dm.value,
                                std::string(to_string(dm.case_label))});
    }
  }
  return res;
}

CommandOutput cmd_conditions(const RunConfig& cfg) {
  const auto p = resolve_params(cfg);
  try {
    p.validate();
  } catch (const InvalidParams& e) {
    throw UsageError(e.what());
  }
  if (cfg.lambda_max && !(*cfg.lambda_max > 0.0)) throw UsageError("--lambda-max must be > 0");
  if (cfg.condition_grid < 1000) throw UsageError("--grid must be >= 1000");
  const auto r = condition_report(p.a, p.M, p, cfg.condition_grid,
                                  ExecPolicy::omp(cfg.threads), cfg.lambda_max);
  CommandOutput res;
  res.table.columns = columns_for(Command::conditions);
  res.table.rows.push_back({r.a,
                            r.M,
                            r.delta.value,
                            std::string(to_string(r.delta.case_label)),
                            r.gamma_improved,
                            r.gamma0_interval.hi,
                            r.condition1_interval.hi,
                            r.condition1_interval.reached_limit,
                            r.d_positive_interval.hi,
                            opt_cell(r.lambda_star),
                            opt_cell(r.lambda_tilde),
                            r.condition1_satisfied,
                            r.d_positive,
                            r.condition2_satisfied,
                            r.t_max,
                            r.improved_branch_applicable,
                            r.numerical_extension,
                            r.remark_regime});
  res.extra["report"] = r;
  return res;
}

CommandOutput cmd_scaling(const RunConfig& cfg) {
  const auto p = resolve_params(cfg);
  require_nondegenerate(p);
  const auto grid = resolve_t_grid(cfg.t_grid, p.mean_z);
  CommandOutput res;
  res.table.columns = columns_for(Command::scaling);
  for (double t : grid) {
    for (const auto& s : {compare_upper(p, t), compare_lower(p, t)}) {
      res.table.rows.push_back({tail_name(s.tail), s.t, s.rescaled_denominator,
                                s.direct_denominator, s.rescaled_exponent, s.direct_exponent,
                                std::string(to_string(s.tighter)), opt_cell(s.crossover_t),
                                opt_cell(s.quoted_threshold_t), s.in_window, s.regime_note});
    }
  }
  res.extra["rescaled_params"] = rescale_params(p);
  return res;
}

CommandOutput cmd_validate(const RunConfig& cfg) {
  if (cfg.samples < kMinTailSamples) throw UsageError("validate: --samples must be >= 10000");
  InstanceArgs args;
  args.n = cfg.n;
  args.alphabet = cfg.alphabet;
  args.M = cfg.M.value_or(1.0);
  args.p_include = cfg.p_include;

  SelfBoundingInstance inst;
  try {
    inst = make_registered_instance(cfg.instance, args);
  } catch (const InvalidParams& e) {
    throw UsageError(e.what());
  }
  // Overrides replace the claimed parameters, which is how a deliberately
  // wrong claim is exercised. The sample draw does not change.
  auto& claimed = inst.claimed_params;
  if (cfg.a) claimed.a = *cfg.a;
  if (cfg.b) claimed.b = *cfg.b;
  if (cfg.mean) claimed.mean_z = *cfg.mean;
  require_nondegenerate(claimed);

  const auto grid = resolve_t_grid(cfg.t_grid, claimed.mean_z);
  const auto curve = estimate_tails(inst, grid, cfg.samples, cfg.seed, ExecPolicy::omp(cfg.threads));

  CommandOutput res;
  res.table.columns = columns_for(Command::validate);
  std::size_t failures = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    for (Tail tail : {Tail::upper, Tail::lower}) {
      const bool upper = tail == Tail::upper;
      const double emp = upper ? curve.upper_probs[k] : curve.lower_probs[k];
      const double radius = upper ? curve.upper_ci_radius[k] : curve.lower_ci_radius[k];
      const double lower_limit = emp - radius;
      const auto sym = upper ? upper_tail_symmetric(claimed, t) : lower_tail_symmetric(claimed, t);
      const auto imp = upper ? upper_tail_improved(claimed, t) : lower_tail_improved(claimed, t);
      const auto che = upper ? chernoff_upper_tail(claimed, t) : chernoff_lower_tail(claimed, t);
      const bool in_window = sym.valid;
      double tightest = 1.0;
      for (const auto* b : {&sym, &imp, &che}) {
        if (b->valid) tightest = std::min(tightest, b->probability);
      }
      const bool pass = !in_window || lower_limit <= tightest;
      if (!pass) ++failures;
      auto bound_cell = [](const TailBound& b) { return b.valid ? Cell(b.probability) : Cell(); };
      res.table.rows.push_back({t, tail_name(tail), emp, radius, lower_limit, bound_cell(sym),
                                bound_cell(imp), bound_cell(che), in_window, pass});
    }
  }
  res.validation_failed = failures > 0;
  res.extra["instance"] = Json{{"name", inst.name},
                               {"n", inst.n},
                               {"claimed_params", inst.claimed_params},
                               {"spec", inst.spec}};
  res.extra["curve"] = curve;
  res.extra["failures"] = failures;
  return res;
}

void write_cell(std::ostream& os, const Cell& c) {
  struct Visitor {
    std::ostream& os;
    void operator()(std::monostate) const {}
    void operator()(double x) const {
      if (std::isnan(x)) {
        os << "nan";
      } else if (std::isinf(x)) {
        os << (x > 0 ? "inf" : "-inf");
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        os << buf;
      }
    }
    void operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) {
        os << s;
        return;
      }
      os << '"';
      for (char ch : s) {
        if (ch == '"') os << '"';
        os << ch;
      }
      os << '"';
    }
    void operator()(bool b) const { os << (b ? "true" : "false"); }
    void operator()(std::uint64_t u) const { os << u; }
  };
  std::visit(Visitor{os}, c);
}

Json cell_to_json(const Cell& c) {
  struct Visitor {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(double x) const { return number_to_json(x); }
    Json operator()(const std::string& s) const { return s; }
    Json operator()(bool b) const { return b; }
    Json operator()(std::uint64_t u) const { return u; }
  };
  return std::visit(Visitor{}, c);
}

Json grid_to_json(const GridSpec& g) {
  return Json{{"min", g.min ? number_to_json(*g.min) : Json(nullptr)},
              {"max", g.max ? number_to_json(*g.max) : Json(nullptr)},
              {"points", g.points},
              {"scale", g.log ? "log" : "lin"}};
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::bounds: return "bounds";
    case Command::figure: return "figure";
    case Command::deltas: return "deltas";
    case Command::conditions: return "conditions";
    case Command::scaling: return "scaling";
    case Command::validate: return "validate";
  }
  return "unknown";
}

SelfBoundingParams resolve_params(const RunConfig& cfg) {
  return SelfBoundingParams{cfg.M.value_or(1.0), cfg.a.value_or(1.0), cfg.b.value_or(0.0),
                            cfg.mean.value_or(5.0)};
}

std::vector<double> resolve_t_grid(const GridSpec& grid, double mean_z) {
  if (grid.points < 1) throw UsageError("t grid is empty (--t-points must be >= 1)");
  const double hi = grid.max.value_or(2.0 * mean_z);
  if (!std::isfinite(hi) || !(hi > 0.0)) {
    throw UsageError("t grid is empty: --t-max must be > 0 (defaults to 2 E[Z])");
  }
  if (grid.min && (!std::isfinite(*grid.min) || *grid.min < 0.0 || *grid.min >= hi)) {
    throw UsageError("t grid is empty: need 0 <= --t-min < --t-max");
  }
  const auto n = grid.points;
  std::vector<double> out(n);
  if (grid.log) {
    const double lo = grid.min.value_or(hi * 1e-3);
    if (!(lo > 0.0)) throw UsageError("log t grid needs --t-min > 0");
    if (n == 1) return {hi};
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
    out.back() = hi;
  } else if (grid.min) {
    if (n == 1) return {hi};
    const double lo = *grid.min;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = hi * static_cast<double>(i + 1) / static_cast<double>(n);
    }
  }
  return out;
}

const std::vector<std::string>& columns_for(Command c) {
  static const std::map<Command, std::vector<std::string>> kColumns{
      {Command::bounds,
       {"t", "tail", "method", "exponent", "probability", "valid", "window_max", "reason"}},
      {Command::figure,
       {"M", "t", "tail", "method", "exponent", "probability", "valid", "window_max", "reason"}},
      {Command::deltas,
       {"a", "M", "delta_plus", "delta_plus_case", "delta_minus", "delta_minus_case"}},
      {Command::conditions,
       {"a", "M", "delta_plus", "delta_plus_case", "gamma", "gamma0_hi", "condition1_hi",
        "condition1_reached_limit", "d_positive_hi", "lambda_star", "lambda_tilde",
        "condition1_satisfied", "d_positive", "condition2_satisfied", "t_max",
        "improved_branch_applicable", "numerical_extension", "remark_regime"}},
      {Command::scaling,
       {"tail", "t", "rescaled_denominator", "direct_denominator", "rescaled_exponent",
        "direct_exponent", "tighter", "crossover_t", "quoted_threshold_t", "in_window",
        "regime_note"}},
      {Command::validate,
       {"t", "tail", "empirical", "ci_radius", "empirical_lower_limit", "symmetric", "improved",
        "chernoff", "in_window", "pass"}},
  };
  return kColumns.at(c);
}

CommandOutput run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::bounds: return cmd_bounds(cfg);
    case Command::figure: return cmd_figure(cfg);
    case Command::deltas: return cmd_deltas(cfg);
    case Command::conditions: return cmd_conditions(cfg);
    case Command::scaling: return cmd_scaling(cfg);
    case Command::validate: return cmd_validate(cfg);
  }
  throw UsageError("unknown command");
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      write_cell(os, row[i]);
    }
    os << '\n';
  }
}

Json to_json_document(const RunConfig& cfg, const CommandOutput& result) {
  Json config{{"M", cfg.M ? number_to_json(*cfg.M) : Json(nullptr)},
              {"a", cfg.a ? number_to_json(*cfg.a) : Json(nullptr)},
              {"b", cfg.b ? number_to_json(*cfg.b) : Json(nullptr)},
              {"mean", cfg.mean ? number_to_json(*cfg.mean) : Json(nullptr)},
              {"t_grid", grid_to_json(cfg.t_grid)},
              {"lambda_max", cfg.lambda_max ? number_to_json(*cfg.lambda_max) : Json(nullptr)},
              {"samples", cfg.samples},
              {"seed", cfg.seed}};
  if (cfg.command == Command::validate) {
    config["instance"] = cfg.instance;
    config["n"] = cfg.n;
    config["alphabet"] = cfg.alphabet;
    config["p_include"] = cfg.p_include;
  }
  if (cfg.command == Command::figure) {
    Json ms = Json::array();
    for (double m : cfg.m_list) ms.push_back(number_to_json(m));
    config["M_list"] = ms;
  }

  Json rows = Json::array();
  for (const auto& row : result.table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[result.table.columns[i]] = cell_to_json(row[i]);
    rows.push_back(std::move(obj));
  }
  Json doc{{"command", std::string(to_string(cfg.command))},
           {"config", config},
           {"columns", result.table.columns},
           {"rows", rows}};
  for (const auto& [k, v] : result.extra.items()) doc[k] = v;
  return doc;
}

}  // namespace sbconc::cli
