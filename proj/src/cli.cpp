#include "fsweep/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fsweep/error.hpp"

namespace fsweep::cli {

namespace {

std::optional<double> to_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size()) return std::nullopt;
  return v;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw InputError("failed writing '" + path.string() + "'");
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  return out;
}

std::vector<Sample> to_db(std::span<const Sample> samples) {
  std::vector<Sample> out(samples.begin(), samples.end());
  for (Sample& s : out) s.value = std::max(20.0 * std::log10(std::abs(s.value)), -300.0);
  return out;
}

}  // namespace

OracleSpec parse_oracle_spec(std::string_view text) {
  OracleSpec spec;
  if (text.starts_with("csv=")) {
    spec.kind = OracleSpec::Kind::Csv;
    spec.target = std::string(text.substr(4));
  } else if (text.starts_with("ts=")) {
    spec.kind = OracleSpec::Kind::Touchstone;
    const std::string_view rest = text.substr(3);
    const auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || rest.size() - colon != 3) {
      throw InputError("touchstone oracle must look like ts=<path>:<ij>, e.g. ts=filter.s2p:21");
    }
    const char i = rest[colon + 1];
    const char j = rest[colon + 2];
    if (i < '1' || i > '9' || j < '1' || j > '9') {
      throw InputError("touchstone port pair must be two digits");
    }
    spec.target = std::string(rest.substr(0, colon));
    spec.ports = {i - '0', j - '0'};
  } else {
    spec.kind = OracleSpec::Kind::Model;
    spec.target = std::string(text);
  }
  if (spec.target.empty()) throw InputError("empty oracle specification");
  return spec;
}

FrequencyBand parse_band(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("band must be <f_min>:<f_max> in Hz");
  const auto lo = to_number(text.substr(0, colon));
  const auto hi = to_number(text.substr(colon + 1));
  if (!lo || !hi) throw InputError("band edges must be numeric (Hz)");
  return FrequencyBand(*lo, *hi);
}

std::size_t thread_budget() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SWEEP_THREADS")) {
    const auto v = to_number(env);
    if (v && *v >= 1.0) n = std::min(n, static_cast<std::size_t>(*v));
  }
  return n;
}

ResolvedRun resolve(const RunManifest& m) {
  std::unique_ptr<ResponseOracle> oracle;
  std::optional<FrequencyBand> band = m.band;
  std::optional<SampleGrid> table_grid;

  switch (m.oracle.kind) {
    case OracleSpec::Kind::Model: {
      const auto corpus = load_corpus_file(m.corpus_path);
      const PoleResidueModel& model = find_model(corpus, m.oracle.target);
      if (!band) band = model.band;
      oracle = std::make_unique<RationalOracle>(model);
      break;
    }
    case OracleSpec::Kind::Csv:
    case OracleSpec::Kind::Touchstone: {
      const std::string text = read_text_file(m.oracle.target);
      TabulatedSweep sweep = m.oracle.kind == OracleSpec::Kind::Csv
                                 ? parse_csv_sweep(text, m.oracle.target)
                                 : parse_touchstone(text, m.oracle.ports, m.oracle.target);
      if (!band) band = sweep.grid.band();
      if (!m.dense_points && *band == sweep.grid.band()) table_grid = sweep.grid;
      oracle = std::make_unique<TabulatedOracle>(std::move(sweep));
      break;
    }
  }
  if (!band) throw InputError("no band given and the oracle does not define one");

  SweepConfig cfg(*band);
  cfg.dense_points = m.dense_points.value_or(table_grid ? table_grid->size() : 601);
  cfg.n_parts = m.n_parts;
  cfg.part_error_threshold = m.threshold;
  cfg.initial_samples = m.seed_samples;
  cfg.max_iterations = m.max_iterations;
  cfg.threads = thread_budget();
  cfg.dense_grid = table_grid;
  cfg.validate();
  return {std::move(oracle), std::move(cfg)};
}

std::string format_report(const SweepReport& r, const SweepConfig& cfg,
                          std::string_view oracle_name) {
  std::ostringstream o;
  const SampleGrid grid = cfg.grid();
  o << "report_version=1\n";
  o << "oracle=" << oracle_name << '\n';
  o << "band_hz=" << format_double(grid.band().f_min()) << ':' << format_double(grid.band().f_max())
    << '\n';
  o << "dense_points=" << r.dense_points << '\n';
  o << "parts=" << cfg.n_parts << '\n';
  o << "threshold=" << format_double(cfg.part_error_threshold) << '\n';
  o << "initial_samples=" << cfg.seed_count() << '\n';
  o << "max_iterations=" << cfg.max_iterations << '\n';
  o << "converged=" << (r.converged ? "true" : "false") << '\n';
  o << "saturated=" << (r.saturated ? "true" : "false") << '\n';
  o << "iterations=" << r.iteration_count() << '\n';
  o << "solver_calls=" << r.solver_calls << '\n';
  o << "reduction_ratio=" << format_double(r.reduction_ratio) << '\n';
  o << "global_error=" << format_double(r.global_error) << '\n';
  o << "edge_fallbacks=" << r.fallbacks << '\n';
  for (std::size_t i = 0; i < r.iterations.size(); ++i) {
    const IterationRecord& it = r.iterations[i];
    const std::string key = "iteration." + std::to_string(i + 1) + '.';
    double worst = 0.0;
    for (double e : it.part_errors) worst = std::max(worst, e);
    o << key << "samples=" << it.sample_count << '\n';
    o << key << "failing_parts=" << it.failing_parts << '\n';
    o << key << "inserted=" << it.inserted << '\n';
    o << key << "corrected=" << it.corrected << '\n';
    o << key << "max_part_error=" << format_double(worst) << '\n';
    o << key << "part_errors=" << join(it.part_errors) << '\n';
  }
  return o.str();
}

int cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  std::optional<ResolvedRun> resolved;
  try {
    resolved = resolve(manifest);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  ResolvedRun& run = *resolved;

  const std::filesystem::path dir(manifest.out_dir);
  auto emit = [&](const SweepReport& report) {
    std::filesystem::create_directories(dir);
    write_file(dir / "curve.csv", format_csv(report.final_curve));
    write_file(dir / "samples.csv", format_csv(report.samples));
    write_file(dir / "report.txt", format_report(report, run.config, run.oracle->describe()));
    if (manifest.emit_plot_data) {
      write_file(dir / "curve_db.csv", format_csv(to_db(report.final_curve), "value_db"));
      write_file(dir / "samples_db.csv", format_csv(to_db(report.samples), "value_db"));
    }
  };

  try {
    const SweepReport report = run_adaptive_sweep(*run.oracle, run.config);
    emit(report);
    out << "converged=" << (report.converged ? "true" : "false")
        << " solver_calls=" << report.solver_calls
        << " reduction_ratio=" << format_double(report.reduction_ratio)
        << " global_error=" << format_double(report.global_error) << '\n';
    if (!report.converged) {
      err << "warning: sweep did not converge within " << run.config.max_iterations
          << " iterations\n";
      return kExitNotConverged;
    }
    return kExitConverged;
  } catch (const SweepAborted& e) {
    err << "error: " << e.what() << " (after " << e.partial().iteration_count()
        << " iterations)\n";
    return kExitOracleFailure;
  } catch (const OracleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOracleFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int cmd_bounds(const BoundParams& p, std::ostream& out, std::ostream& err) {
  try {
    p.validate();
    out << "degree=" << p.degree << '\n';
    out << "interval=" << format_double(p.interval) << '\n';
    out << "cutoff=" << format_double(p.cutoff) << '\n';
    out << "energy_root=" << format_double(p.energy_root) << '\n';
    out << "r1_bound=" << format_double(r1_bound(p.degree, p.interval)) << '\n';
    out << "derivative_bound=" << format_double(derivative_bound(p)) << '\n';
    out << "truncation_bound=" << format_double(truncation_bound(p)) << '\n';
    out << "nyquist_check=" << (nyquist_check(p.interval, p.cutoff) ? "true" : "false") << '\n';
    return kExitConverged;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int cmd_compare(const std::string& reconstructed, const std::string& truth, std::size_t n_parts,
                std::ostream& out, std::ostream& err) {
  try {
    const TabulatedSweep rec = parse_csv_sweep(read_text_file(reconstructed), reconstructed);
    const TabulatedSweep ref = parse_csv_sweep(read_text_file(truth), truth);
    const double tol = ref.grid.band().tolerance();
    for (std::size_t i = 0; i < std::max(rec.grid.size(), ref.grid.size()); ++i) {
      if (i >= rec.grid.size() || i >= ref.grid.size() ||
          std::abs(rec.grid[i] - ref.grid[i]) > tol) {
        const double f = i < ref.grid.size() ? ref.grid[i] : rec.grid[i];
        throw InputError("grids differ, first mismatch at frequency " + format_double(f) + " Hz");
      }
    }
    const auto partition = partition_band(ref.grid.band(), n_parts);
    const auto parts = assess_parts(partition, ref.grid, rec.values, ref.values);
    out << "points=" << ref.grid.size() << '\n';
    out << "global_error=" << format_double(relative_error(rec.values, ref.values)) << '\n';
    out << "parts=" << n_parts << '\n';
    for (std::size_t p = 0; p < parts.size(); ++p) {
      out << "part." << p + 1 << '=' << format_double(parts[p].error) << '\n';
    }
    return kExitConverged;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive grouped-Lagrange frequency sweep"};
  app.set_config("--config", "", "TOML/INI file with option defaults (flags take precedence)");
  app.require_subcommand(1);

  RunManifest m;
  std::string band_text, oracle_text;
  std::size_t dense = 0, seeds = 0;
  auto* sweep = app.add_subcommand("sweep", "Run an adaptive sweep against an oracle");
  sweep->add_option("--oracle", oracle_text, "Model name, csv=<path> or ts=<path>:<ij>")
      ->required();
  sweep->add_option("--band", band_text, "<f_min>:<f_max> in Hz");
  auto* dense_opt = sweep->add_option("--dense", dense, "Dense grid points")
                        ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  sweep->add_option("--parts", m.n_parts, "Error-control parts")->check(CLI::PositiveNumber);
  sweep->add_option("--threshold", m.threshold, "Per-part relative error threshold")
      ->check(CLI::PositiveNumber);
  auto* seed_opt = sweep->add_option("--seed-samples", seeds, "Initial uniform samples")
                       ->check(CLI::Range(std::size_t{4}, std::size_t{100000000}));
  sweep->add_option("--max-iters", m.max_iterations, "Iteration cap")->check(CLI::PositiveNumber);
  sweep->add_option("--out", m.out_dir, "Output directory");
  sweep->add_option("--corpus", m.corpus_path, "Synthetic model corpus (JSON)");
  sweep->add_flag("--emit-plot-data", m.emit_plot_data, "Also write dB curves for plotting");

  BoundParams bp;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the truncation-error bounds");
  bounds->add_option("--degree", bp.degree, "Polynomial degree n")->required();
  bounds->add_option("--interval", bp.interval, "Sampling interval h (Hz)")->required();
  bounds->add_option("--cutoff", bp.cutoff, "Cut-off frequency f0 (Hz)")->required();
  bounds->add_option("--energy", bp.energy_root, "Energy root B")->required();

  std::string rec_path, truth_path;
  std::size_t compare_parts = 1;
  auto* compare = app.add_subcommand("compare", "Relative error of a curve against a reference");
  compare->add_option("reconstructed", rec_path, "Reconstructed curve CSV")->required();
  compare->add_option("truth", truth_path, "Reference curve CSV")->required();
  compare->add_option("--parts", compare_parts, "Partition for per-part errors")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitInputError;
  }

  if (sweep->parsed()) {
    try {
      m.oracle = parse_oracle_spec(oracle_text);
      if (!band_text.empty()) m.band = parse_band(band_text);
    } catch (const InputError& e) {
      err << "error: " << e.what() << '\n';
      return kExitInputError;
    }
    if (dense_opt->count() > 0) m.dense_points = dense;
    if (seed_opt->count() > 0) m.seed_samples = seeds;
    return cmd_sweep(m, out, err);
  }
  if (bounds->parsed()) return cmd_bounds(bp, out, err);
  return cmd_compare(rec_path, truth_path, compare_parts, out, err);
}

}  // namespace fsweep::cli
