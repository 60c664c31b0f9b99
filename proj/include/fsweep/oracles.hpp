#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fsweep/domain.hpp"

namespace fsweep {

/// An expensive frequency-domain solver. Implementations must be pure and
/// safe to call concurrently.
class ResponseOracle {
 public:
  virtual ~ResponseOracle() = default;
  /// Response at f (Hz). Throws OracleError on failure.
  virtual double evaluate(double f) const = 0;
  virtual std::string describe() const = 0;
};

class FunctionOracle final : public ResponseOracle {
 public:
  FunctionOracle(std::function<double(double)> fn, std::string name = "function")
      : fn_(std::move(fn)), name_(std::move(name)) {}
  double evaluate(double f) const override { return fn_(f); }
  std::string describe() const override { return name_; }

 private:
  std::function<double(double)> fn_;
  std::string name_;
};

/// H(s) = direct_term + sum_k residues[k] / (s - poles[k]), poles in rad/s.
struct PoleResidueModel {
  std::string name;
  std::string description;
  std::vector<std::complex<double>> poles;
  std::vector<std::complex<double>> residues;
  double direct_term = 0.0;
  /// Nominal sweep band, when the corpus record carries one.
  std::optional<FrequencyBand> band;

  /// Throws InputError unless lengths match, every pole is stable and
  /// complex poles (with their residues) come in conjugate pairs.
  void validate() const;
};

/// |H(j 2 pi f)|.
double rational_eval(const PoleResidueModel& model, double f);

class RationalOracle final : public ResponseOracle {
 public:
  explicit RationalOracle(PoleResidueModel model);
  double evaluate(double f) const override;
  std::string describe() const override { return "model:" + model_.name; }
  const PoleResidueModel& model() const noexcept { return model_; }

 private:
  PoleResidueModel model_;
};

/// Parses a corpus document: {"models": [{"name", "description", "band_hz",
/// "direct_term", "poles": [[re, im], ...], "residues": [[re, im], ...]}]}.
std::vector<PoleResidueModel> parse_corpus(std::string_view json_text);
std::vector<PoleResidueModel> load_corpus_file(const std::string& path);
const PoleResidueModel& find_model(std::span<const PoleResidueModel> corpus,
                                   std::string_view name);

/// A solver run stored at fixed discrete frequencies.
struct TabulatedSweep {
  SampleGrid grid;
  std::vector<double> values;
  std::string source;
  std::vector<std::string> warnings;

  TabulatedSweep(SampleGrid g, std::vector<double> v, std::string src = {});
  std::vector<Sample> samples() const;
};

/// Stored value at the grid point within `tolerance` of f (default: the
/// band tolerance). Off-grid queries throw OracleError.
double tabulated_eval(const TabulatedSweep& sweep, double f,
                      std::optional<double> tolerance = std::nullopt);

class TabulatedOracle final : public ResponseOracle {
 public:
  explicit TabulatedOracle(TabulatedSweep sweep) : sweep_(std::move(sweep)) {}
  double evaluate(double f) const override { return tabulated_eval(sweep_, f); }
  std::string describe() const override { return "table:" + sweep_.source; }
  const TabulatedSweep& sweep() const noexcept { return sweep_; }

 private:
  TabulatedSweep sweep_;
};

/// Two numeric columns (frequency_hz, value) separated by a comma or
/// whitespace. A non-numeric first row is a header; blank lines and lines
/// starting with '#' or '!' are skipped. Rows are sorted by frequency and
/// duplicates rejected. Errors carry the 1-based line number.
TabulatedSweep parse_csv_sweep(std::string_view text, std::string source = {});

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// "frequency_hz,<value_header>" followed by one row per sample.
std::string format_csv(std::span<const Sample> samples, std::string_view value_header = "value");

/// Touchstone v1 S-parameter file (1 or 2 ports). Returns |S_ij| in linear
/// magnitude on the file's frequency grid, in Hz. Ports are 1-based.
TabulatedSweep parse_touchstone(std::string_view text, std::pair<int, int> port_pair,
                                std::string source = {});

std::string read_text_file(const std::string& path);

}  // namespace fsweep
