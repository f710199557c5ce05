#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gpage/ensembles.hpp"

namespace gpage::cli {

inline constexpr std::uint64_t kDefaultSeed = 20210611;
inline constexpr const char* kSeedEnv = "GAUSSIAN_PAGE_SEED";
inline constexpr const char* kFormatTag = "# gaussian-page v1";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

enum class Command { PageCurve, Density, Variance, Sample, Dist };
enum class Mode { Exact, Quadrature, MonteCarlo, Limit };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::PageCurve;
  int n = 0;
  std::optional<int> n_a;  // empty: sweep
  EnsembleKind ensemble = EnsembleKind::Gaussian;
  Mode mode = Mode::Exact;
  std::uint64_t samples = 10000;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  Format format = Format::Csv;
  std::string out;  // empty: stdout
  int points = 101;
  int bins = 50;
  double tail_tol = 1e-10;
};

/// Thrown for flag combinations the commands do not support (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One output cell: integer, real, or label.
struct Cell {
  enum class Kind { Integer, Real, Text } kind;
  std::int64_t integer = 0;
  double real = 0.0;
  std::string text;

  static Cell of(std::int64_t v) { return {Kind::Integer, v, 0.0, {}}; }
  static Cell of(double v) { return {Kind::Real, 0, v, {}}; }
  static Cell of(std::string v) { return {Kind::Text, 0, 0.0, std::move(v)}; }
};

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Reals are printed with 17 significant digits.
std::string format_real(double v);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

/// Checks mode / ensemble combinations; throws UsageError.
void validate(const RunConfig& config);

/// Computes the table for a validated config.
Table compute(const RunConfig& config);

/// validate + compute + write; returns the process exit code and reports
/// failures on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point (parsing via CLI11).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string_view command_name(Command c);
std::string_view mode_name(Mode m);

}  // namespace gpage::cli
