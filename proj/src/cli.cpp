#include "gpage/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gpage/errors.hpp"
#include "gpage/formulas.hpp"
#include "gpage/gstates.hpp"
#include "gpage/rmt.hpp"
#include "gpage/stats.hpp"

namespace gpage::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MCPlan plan_for(const RunConfig& c) { return MCPlan{c.samples, c.seed, c.workers, 0}; }

int smaller_side(int n, int n_a) { return std::min(n_a, n - n_a); }

std::vector<int> subsystem_sizes(const RunConfig& c, int first) {
  if (c.n_a) return {*c.n_a};
  std::vector<int> sizes;
  for (int k = first; k <= c.n / 2; ++k) sizes.push_back(k);
  return sizes;
}

Table page_curve(const RunConfig& c) {
  Table t{"page-curve", {"N", "N_A", "f", "value", "std", "std_error", "samples", "mode", "ensemble"},
          {}};
  const std::string mode(mode_name(c.mode));
  const std::string ens(ensemble_name(c.ensemble));
  for (int n_a : subsystem_sizes(c, 0)) {
    const int small = smaller_side(c.n, n_a);
    const double f = static_cast<double>(n_a) / c.n;
    const double f_small = static_cast<double>(small) / c.n;
    double value = 0.0;
    double sd = 0.0;
    double se = 0.0;
    std::int64_t samples = 0;
    switch (c.mode) {
      case Mode::Exact:
        if (c.ensemble == EnsembleKind::Gaussian) {
          value = gaussian_average_exact(c.n, n_a);
          sd = small > 0 ? std::sqrt(variance_finite_n(small, c.n - 2 * small, c.tail_tol)) : 0.0;
        } else {
          value = page_average_exact(c.n, small);
          sd = small > 0 ? kNaN : 0.0;
        }
        break;
      case Mode::Quadrature:
        if (small > 0) {
          const JacobiKernel ctx(small, c.n - 2 * small);
          value = average_entropy_quadrature(ctx);
          sd = std::sqrt(variance_finite_n(ctx, c.tail_tol));
        }
        break;
      case Mode::Limit:
        if (small > 0) {
          if (c.ensemble == EnsembleKind::Gaussian) {
            value = gaussian_thermo(c.n, f_small);
            sd = gaussian_std_limit(f_small);
          } else if (c.ensemble == EnsembleKind::HaarPure) {
            value = page_thermo(c.n, f_small);
            sd = page_std_thermo(c.n, f_small);
          } else {
            value = c.n * lrv_density(f_small);
            sd = kNaN;
          }
        }
        break;
      case Mode::MonteCarlo: {
        const MCEstimate e = mc_estimate(entropy_sampler(c.ensemble, c.n, n_a), plan_for(c));
        value = e.mean;
        sd = std::sqrt(e.variance);
        se = e.std_error;
        samples = static_cast<std::int64_t>(e.n);
        break;
      }
    }
    t.rows.push_back({Cell::of(std::int64_t{c.n}), Cell::of(std::int64_t{n_a}), Cell::of(f),
                      Cell::of(value), Cell::of(sd), Cell::of(se), Cell::of(samples),
                      Cell::of(mode), Cell::of(ens)});
  }
  return t;
}

std::vector<double> pooled_spectra(const RunConfig& c, int n_a) {
  const SystemSplit split(c.n, n_a);
  std::vector<double> all;
  all.reserve(c.samples * static_cast<std::uint64_t>(n_a));
  MCPlan p = plan_for(c);
  if (p.workers == 0) p.workers = 1;
  p.streams = p.workers;
  // Spectra are gathered stream by stream for reproducibility.
  for (unsigned s = 0; s < p.streams; ++s) {
    RngStream rng(p.seed, s);
    const std::uint64_t lo = c.samples * s / p.streams;
    const std::uint64_t hi = c.samples * (s + 1) / p.streams;
    for (std::uint64_t k = lo; k < hi; ++k) {
      const ComplexStructure j = c.ensemble == EnsembleKind::Hamiltonian
                                     ? eigenstate_structure(sample_random_hamiltonian(c.n, rng),
                                                            sample_occupation(c.n, rng))
                                     : sample_gaussian_state(c.n, rng);
      const RestrictedSpectrum spec = restrict(j, split);
      all.insert(all.end(), spec.x.begin(), spec.x.end());
    }
  }
  return all;
}

Table density(const RunConfig& c) {
  if (!c.n_a) throw UsageError("density requires a single --NA value");
  const int small = smaller_side(c.n, *c.n_a);
  if (small < 1) throw UsageError("density requires 1 <= N_A < N");
  Table t{"density", {"x", "rho"}, {}};
  const JacobiKernel ctx(small, c.n - 2 * small);
  if (c.mode == Mode::Exact) {
    if (c.points < 2) throw UsageError("--points must be >= 2");
    for (int k = 0; k < c.points; ++k) {
      const double x = static_cast<double>(k) / (c.points - 1);
      t.rows.push_back({Cell::of(x), Cell::of(ctx.level_density(x))});
    }
    return t;
  }
  const std::vector<double> xs = pooled_spectra(c, small);
  const Histogram h = histogram(xs, static_cast<std::size_t>(c.bins), 0.0, 1.0 + 1e-12);
  const double width = (h.edges.back() - h.edges.front()) / c.bins;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const double centre = 0.5 * (h.edges[k] + h.edges[k + 1]);
    t.rows.push_back({Cell::of(centre),
                      Cell::of(static_cast<double>(h.counts[k]) /
                               (static_cast<double>(h.total) * width))});
  }
  return t;
}

Table variance_table(const RunConfig& c) {
  Table t{"variance",
          {"N", "N_A", "f", "finite_n", "mc", "mc_std_error", "samples", "limit",
           "leading_summand"},
          {}};
  for (int n_a : subsystem_sizes(c, 1)) {
    const int small = smaller_side(c.n, n_a);
    if (small < 1) throw UsageError("variance requires 1 <= N_A < N");
    const double f = static_cast<double>(small) / c.n;
    const double exact = variance_finite_n(small, c.n - 2 * small, c.tail_tol);
    double mc = kNaN;
    double mc_se = kNaN;
    std::int64_t samples = 0;
    if (c.mode == Mode::MonteCarlo) {
      const MCEstimate e = mc_estimate(entropy_sampler(c.ensemble, c.n, n_a), plan_for(c));
      mc = e.variance;
      mc_se = e.variance_std_error;
      samples = static_cast<std::int64_t>(e.n);
    }
    t.rows.push_back({Cell::of(std::int64_t{c.n}), Cell::of(std::int64_t{n_a}),
                      Cell::of(static_cast<double>(n_a) / c.n), Cell::of(exact), Cell::of(mc),
                      Cell::of(mc_se), Cell::of(samples), Cell::of(gaussian_variance_limit(f)),
                      Cell::of(sbar_lk(0, 0, f))});
  }
  return t;
}

int single_subsystem(const RunConfig& c, const char* who) {
  if (!c.n_a) throw UsageError(std::string(who) + " requires a single --NA value");
  return *c.n_a;
}

Table sample_table(const RunConfig& c) {
  const int n_a = single_subsystem(c, "sample");
  Table t{"sample", {"index", "entropy"}, {}};
  const std::vector<double> xs = mc_samples(entropy_sampler(c.ensemble, c.n, n_a), plan_for(c));
  for (std::size_t k = 0; k < xs.size(); ++k)
    t.rows.push_back({Cell::of(static_cast<std::int64_t>(k)), Cell::of(xs[k])});
  return t;
}

Table dist_table(const RunConfig& c) {
  const int n_a = single_subsystem(c, "dist");
  const int small = smaller_side(c.n, n_a);
  Table t{"dist", {"bin_lo", "bin_hi", "count", "density"}, {}};
  const std::vector<double> xs = mc_samples(entropy_sampler(c.ensemble, c.n, n_a), plan_for(c));
  const double hi = std::max(small, 1) * std::numbers::ln2 + 1e-12;
  const Histogram h = histogram(xs, static_cast<std::size_t>(c.bins), 0.0, hi);
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const double width = h.edges[k + 1] - h.edges[k];
    t.rows.push_back({Cell::of(h.edges[k]), Cell::of(h.edges[k + 1]),
                      Cell::of(static_cast<std::int64_t>(h.counts[k])),
                      Cell::of(static_cast<double>(h.counts[k]) /
                               (static_cast<double>(h.total) * width))});
  }
  return t;
}

void write_cell(const Cell& cell, std::ostream& out) {
  switch (cell.kind) {
    case Cell::Kind::Integer: out << cell.integer; break;
    case Cell::Kind::Real: out << format_real(cell.real); break;
    case Cell::Kind::Text: out << cell.text; break;
  }
}

template <typename E>
E parse_enum(const std::string& text, std::initializer_list<std::pair<const char*, E>> table,
             const char* what) {
  for (const auto& [name, value] : table)
    if (text == name) return value;
  throw UsageError(std::string("unknown ") + what + " '" + text + "'");
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::PageCurve: return "page-curve";
    case Command::Density: return "density";
    case Command::Variance: return "variance";
    case Command::Sample: return "sample";
    case Command::Dist: return "dist";
  }
  return "unknown";
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Exact: return "exact";
    case Mode::Quadrature: return "quadrature";
    case Mode::MonteCarlo: return "mc";
    case Mode::Limit: return "limit";
  }
  return "unknown";
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Table& table, std::ostream& out) {
  out << kFormatTag << '\n';
  for (std::size_t k = 0; k < table.columns.size(); ++k)
    out << (k ? "," : "") << table.columns[k];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out << ',';
      write_cell(row[k], out);
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["format"] = "gaussian-page v1";
  doc["command"] = table.command;
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      switch (cell.kind) {
        case Cell::Kind::Integer: r.push_back(cell.integer); break;
        case Cell::Kind::Real:
          if (std::isfinite(cell.real))
            r.push_back(cell.real);
          else
            r.push_back(nullptr);
          break;
        case Cell::Kind::Text: r.push_back(cell.text); break;
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void validate(const RunConfig& c) {
  if (c.n < 1) throw UsageError("--N must be >= 1");
  if (c.n_a && (*c.n_a < 0 || *c.n_a > c.n)) throw UsageError("--NA must lie in [0, N]");
  if (c.workers < 1) throw UsageError("--workers must be >= 1");
  if (c.bins < 1) throw UsageError("--bins must be >= 1");
  if (!(c.tail_tol > 0.0)) throw UsageError("--tail-tol must be > 0");

  const bool gaussian = c.ensemble == EnsembleKind::Gaussian;
  const bool haar = c.ensemble == EnsembleKind::HaarPure;
  const bool sampling =
      c.mode == Mode::MonteCarlo || c.command == Command::Sample || c.command == Command::Dist;
  switch (c.command) {
    case Command::PageCurve:
      if (c.mode == Mode::Exact && !(gaussian || haar))
        throw UsageError("mode exact requires ensemble gaussian or haar-pure");
      if (c.mode == Mode::Quadrature && !gaussian)
        throw UsageError("mode quadrature requires ensemble gaussian");
      if (c.mode == Mode::Limit && c.ensemble == EnsembleKind::Hamiltonian)
        throw UsageError("mode limit is not available for ensemble hamiltonian");
      break;
    case Command::Density:
      if (c.mode != Mode::Exact && c.mode != Mode::MonteCarlo)
        throw UsageError("density supports modes exact and mc");
      if (c.mode == Mode::MonteCarlo && !(gaussian || c.ensemble == EnsembleKind::Hamiltonian))
        throw UsageError("density mc requires ensemble gaussian or hamiltonian");
      break;
    case Command::Variance:
      if (c.mode != Mode::Exact && c.mode != Mode::MonteCarlo)
        throw UsageError("variance supports modes exact and mc");
      break;
    case Command::Sample:
    case Command::Dist:
      break;
  }
  if (sampling && c.samples < 2) throw UsageError("--samples must be >= 2");
  if (sampling && haar && c.n > kMaxPureStateModes)
    throw ResourceLimit("haar-pure sampling is limited to N <= " +
                        std::to_string(kMaxPureStateModes));
}

Table compute(const RunConfig& c) {
  switch (c.command) {
    case Command::PageCurve: return page_curve(c);
    case Command::Density: return density(c);
    case Command::Variance: return variance_table(c);
    case Command::Sample: return sample_table(c);
    case Command::Dist: return dist_table(c);
  }
  throw UsageError("unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const Table table = compute(config);
    std::ostringstream buffer;
    if (config.format == Format::Json)
      write_json(table, buffer);
    else
      write_csv(table, buffer);
    if (config.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) {
        err << "error: cannot open " << config.out << " for writing\n";
        return kExitFailure;
      }
      file << buffer.str();
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Average entanglement entropy of random fermionic Gaussian states"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  std::string command;
  int n = 0;
  std::string n_a = "sweep";
  std::string ensemble = "gaussian";
  std::string mode = "exact";
  std::string format = "csv";
  RunConfig config;
  std::uint64_t seed = 0;

  app.add_option("command", command, "page-curve | density | variance | sample | dist")
      ->required();
  app.add_option("--N", n, "Total number of fermionic modes")->required();
  app.add_option("--NA", n_a, "Subsystem size, or 'sweep' for 0..N/2");
  app.add_option("--ensemble", ensemble, "gaussian | haar-pure | hamiltonian | number-conserving");
  app.add_option("--mode", mode, "exact | quadrature | mc | limit");
  app.add_option("--samples", config.samples, "Monte Carlo sample count");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  app.add_option("--workers", config.workers, "Monte Carlo worker threads");
  app.add_option("--format", format, "csv | json");
  app.add_option("--out", config.out, "Output path (default: stdout)");
  app.add_option("--points", config.points, "Grid points for density");
  app.add_option("--bins", config.bins, "Histogram bins for dist and density --mode mc");
  app.add_option("--tail-tol", config.tail_tol, "Truncation tolerance of the variance sum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    config.command = parse_enum<Command>(command,
                                         {{"page-curve", Command::PageCurve},
                                          {"density", Command::Density},
                                          {"variance", Command::Variance},
                                          {"sample", Command::Sample},
                                          {"dist", Command::Dist}},
                                         "command");
    config.ensemble = parse_enum<EnsembleKind>(
        ensemble,
        {{"gaussian", EnsembleKind::Gaussian},
         {"haar-pure", EnsembleKind::HaarPure},
         {"hamiltonian", EnsembleKind::Hamiltonian},
         {"number-conserving", EnsembleKind::NumberConserving}},
        "ensemble");
    config.mode = parse_enum<Mode>(mode,
                                   {{"exact", Mode::Exact},
                                    {"quadrature", Mode::Quadrature},
                                    {"mc", Mode::MonteCarlo},
                                    {"limit", Mode::Limit}},
                                   "mode");
    config.format =
        parse_enum<Format>(format, {{"csv", Format::Csv}, {"json", Format::Json}}, "format");
    config.n = n;
    if (n_a != "sweep") {
      std::size_t used = 0;
      const int value = std::stoi(n_a, &used);
      if (used != n_a.size()) throw UsageError("--NA expects an integer or 'sweep'");
      config.n_a = value;
    }
    if (seed_opt->count() > 0) {
      config.seed = seed;
    } else if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
      std::size_t used = 0;
      config.seed = std::stoull(env, &used);
      if (used != std::string(env).size())
        throw UsageError(std::string(kSeedEnv) + " must be an unsigned integer");
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "error: malformed numeric value (" << e.what() << ")\n";
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace gpage::cli
