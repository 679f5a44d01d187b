#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sbconc/bounds.hpp"
#include "sbconc/instance.hpp"
#include "sbconc/serialize.hpp"

namespace sbconc::cli {

enum class Command { bounds, figure, deltas, conditions, scaling, validate };
enum class Format { csv, json };

std::string_view to_string(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

// Bad flag values or combinations; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Deviation grid. Without an explicit minimum a linear grid is
/// (0, max] with `points` equal steps; with one it includes both ends.
/// max defaults to 2 E[Z].
struct GridSpec {
  std::optional<double> min;
  std::optional<double> max;
  std::size_t points = 200;
  bool log = false;
};

/// (a, M) rectangle for the deltas map. a runs over [a_min, a_max]
/// inclusive, M over (M_min, M_max].
struct DeltaGrid {
  double a_min = 0.0;
  double a_max = 1.2;
  std::size_t a_points = 25;
  double M_min = 0.0;
  double M_max = 3.0;
  std::size_t M_points = 30;
};

struct RunConfig {
  Command command = Command::bounds;
  // Unset values fall back to M = 1, a = 1, b = 0, E[Z] = 5, or for validate
  // to the instance's own claimed parameters.
  std::optional<double> M;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> mean;
  GridSpec t_grid;
  std::optional<double> lambda_max;
  std::size_t condition_grid = 10000;
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  std::string instance = "distinct-values";
  std::size_t n = 50;
  std::size_t alphabet = 50;
  double p_include = 0.5;
  std::vector<double> m_list{0.25, 0.5, 1.0, 2.0};
  DeltaGrid deltas;
  std::string output_path;
  Format format = Format::csv;
  int threads = 0;
};

/// Parameters for every command except validate.
SelfBoundingParams resolve_params(const RunConfig& cfg);

/// Throws UsageError for an empty, non-ascending or non-positive grid.
std::vector<double> resolve_t_grid(const GridSpec& grid, double mean_z);

using Cell = std::variant<std::monostate, double, std::string, bool, std::uint64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CommandOutput {
  Table table;
  Json extra = Json::object();  // appended to JSON documents
  bool validation_failed = false;
};

CommandOutput run_command(const RunConfig& cfg);

/// Doubles as %.17g, non-finite values as inf/-inf/nan, absent cells empty.
void write_csv(std::ostream& os, const Table& table);
Json to_json_document(const RunConfig& cfg, const CommandOutput& result);

/// Column lists, also printed by --help.
const std::vector<std::string>& columns_for(Command c);

/// Full command-line entry point. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sbconc::cli
