#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "fsweep/bounds.hpp"
#include "fsweep/oracles.hpp"
#include "fsweep/refinement.hpp"

namespace fsweep::cli {

inline constexpr int kExitConverged = 0;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitInputError = 3;
inline constexpr int kExitOracleFailure = 4;

/// `--oracle` value: a corpus model name, `csv=<path>` or `ts=<path>:<ij>`.
struct OracleSpec {
  enum class Kind { Model, Csv, Touchstone };
  Kind kind = Kind::Model;
  std::string target;
  std::pair<int, int> ports{1, 1};
};

OracleSpec parse_oracle_spec(std::string_view text);

/// "<f_min>:<f_max>" in Hz.
FrequencyBand parse_band(std::string_view text);

struct RunManifest {
  OracleSpec oracle;
  std::string corpus_path = FSWEEP_DEFAULT_CORPUS;
  std::optional<FrequencyBand> band;
  std::optional<std::size_t> dense_points;
  std::size_t n_parts = 70;
  double threshold = 0.05;
  std::optional<std::size_t> seed_samples;
  std::size_t max_iterations = 20;
  std::string out_dir = ".";
  bool emit_plot_data = false;
};

/// Oracle plus the sweep configuration it implies (band and, for tables
/// without an explicit --dense, the table's own grid).
struct ResolvedRun {
  std::unique_ptr<ResponseOracle> oracle;
  SweepConfig config;
};

ResolvedRun resolve(const RunManifest& manifest);

/// Batch parallelism: hardware concurrency capped by SWEEP_THREADS.
std::size_t thread_budget();

/// Stable key=value report document.
std::string format_report(const SweepReport& report, const SweepConfig& config,
                          std::string_view oracle_name);

int cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err);
int cmd_bounds(const BoundParams& params, std::ostream& out, std::ostream& err);
int cmd_compare(const std::string& reconstructed, const std::string& truth, std::size_t n_parts,
                std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fsweep::cli
