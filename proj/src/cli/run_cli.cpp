#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sbconc/cli.hpp"
#include "sbconc/errors.hpp"

namespace sbconc::cli {

namespace {

class Diagnostics {
 public:
  explicit Diagnostics(std::ostream& err) : err_(err) {
    color_ = &err == &std::cerr && std::getenv("NO_COLOR") == nullptr && isatty(fileno(stderr));
  }

  void error(const std::string& msg) const {
    err_ << (color_ ? "\033[1;31merror:\033[0m " : "error: ") << msg << '\n';
  }

 private:
  std::ostream& err_;
  bool color_ = false;
};

std::string column_footer(Command c) {
  std::string s = "CSV columns:\n  ";
  const auto& cols = columns_for(c);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) s += ',';
    s += cols[i];
  }
  return s;
}

void add_param_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--M", cfg.M, "per-coordinate difference cap M (default 1)");
  sub->add_option("--a", cfg.a, "self-bounding coefficient a (default 1)");
  sub->add_option("--b", cfg.b, "self-bounding offset b (default 0)");
  sub->add_option("--mean", cfg.mean, "E[Z] (default 5)");
}

void add_grid_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--t-min", cfg.t_grid.min, "smallest t; without it the grid is (0, t-max]");
  sub->add_option("--t-max", cfg.t_grid.max, "largest t (default 2 E[Z])");
  sub->add_option("--t-points", cfg.t_grid.points, "number of t values")->capture_default_str();
  sub->add_option_function<std::string>(
         "--t-scale", [&cfg](const std::string& s) { cfg.t_grid.log = s == "log"; },
         "grid spacing")
      ->check(CLI::IsMember({"lin", "log"}))
      ->default_str("lin");
}

void add_output_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.output_path, "write to this file instead of stdout");
  sub->add_option_function<std::string>(
         "--format", [&cfg](const std::string& s) { cfg.format = s == "json" ? Format::json : Format::csv; },
         "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_str("csv");
  sub->add_option("--threads", cfg.threads, "OpenMP threads, 0 for the runtime default")
      ->check(CLI::NonNegativeNumber);
  // Accepted everywhere so that one config line works for every subcommand.
  sub->add_option("--lambda-max", cfg.lambda_max, "upper end of the lambda scan (conditions)");
  sub->add_option("--samples", cfg.samples, "Monte Carlo samples (validate)")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "RNG seed (validate)")->capture_default_str();
  sub->add_option("--instance", cfg.instance, "instance name (validate)")->capture_default_str();
}

CLI::App* add_command(CLI::App& app, RunConfig& cfg, Command c, const std::string& help) {
  auto* sub = app.add_subcommand(std::string(to_string(c)), help);
  sub->callback([&cfg, c] { cfg.command = c; });
  sub->footer(column_footer(c));
  add_param_flags(sub, cfg);
  add_grid_flags(sub, cfg);
  add_output_flags(sub, cfg);
  return sub;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const Diagnostics diag(err);
  RunConfig cfg;

  CLI::App app{"Tail bounds for (M,a,b) self-bounding functions", "sbconc"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 usage error, 2 validation failure, 3 I/O error.");

  add_command(app, cfg, Command::bounds, "every tail bound over a t grid");
  auto* figure = add_command(app, cfg, Command::figure, "bound curves for a list of M values");
  figure->add_option("--M-list", cfg.m_list, "M values (ignored when --M is given)")
      ->delimiter(',')
      ->capture_default_str();
  auto* deltas = add_command(app, cfg, Command::deltas, "piecewise delta_+/delta_- case map");
  deltas->add_option("--a-min", cfg.deltas.a_min)->capture_default_str();
  deltas->add_option("--a-max", cfg.deltas.a_max)->capture_default_str();
  deltas->add_option("--a-points", cfg.deltas.a_points)->capture_default_str();
  deltas->add_option("--M-min", cfg.deltas.M_min, "exclusive lower end")->capture_default_str();
  deltas->add_option("--M-max", cfg.deltas.M_max)->capture_default_str();
  deltas->add_option("--M-points", cfg.deltas.M_points)->capture_default_str();
  auto* conditions = add_command(app, cfg, Command::conditions,
                                 "check the lambda conditions behind the improved bounds");
  conditions->add_option("--grid", cfg.condition_grid, "lambda grid points (>= 1000)")
      ->capture_default_str();
  add_command(app, cfg, Command::scaling, "direct bound versus rescaling f / M");
  auto* validate = add_command(app, cfg, Command::validate,
                               "Monte Carlo tails of a sample instance against the bounds");
  validate->add_option("--n", cfg.n, "coordinates")->capture_default_str();
  validate->add_option("--alphabet", cfg.alphabet, "alphabet size (distinct-values)")
      ->capture_default_str();
  validate->add_option("--p-include", cfg.p_include, "activation probability (coverage-*)")
      ->capture_default_str();
  validate->footer(column_footer(Command::validate) +
                   "\nInstances: distinct-values, coverage-singletons, coverage-pairs.\n"
                   "--M scales the instance; --a, --b, --mean override its claimed parameters.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diag.error(e.what());
    err << "run 'sbconc --help' for usage\n";
    return kExitUsage;
  }

  CommandOutput result;
  try {
    result = run_command(cfg);
  } catch (const UsageError& e) {
    diag.error(e.what());
    return kExitUsage;
  } catch (const InvalidParams& e) {
    diag.error(e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    diag.error(e.what());
    return kExitUsage;
  }

  std::ostringstream body;
  if (cfg.format == Format::json) {
    body << to_json_document(cfg, result).dump(2) << '\n';
  } else {
    write_csv(body, result.table);
  }

  if (cfg.output_path.empty()) {
    out << body.str();
    out.flush();
    if (!out) {
      diag.error("failed writing to standard output");
      return kExitIo;
    }
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      diag.error("cannot open '" + cfg.output_path + "' for writing");
      return kExitIo;
    }
    file << body.str();
    file.close();
    if (!file) {
      diag.error("failed writing '" + cfg.output_path + "'");
      return kExitIo;
    }
  }

  if (result.validation_failed) {
    diag.error("validation failed: empirical tail exceeds a bound (see pass column)");
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace sbconc::cli
