#include "fsweep/oracles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "fsweep/error.hpp"
#include "text_util.hpp"

namespace fsweep {

namespace {

bool close(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) <= 1e-9 * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

void PoleResidueModel::validate() const {
  if (poles.size() != residues.size()) {
    throw InputError("model '" + name + "': poles and residues differ in length");
  }
  if (!std::isfinite(direct_term)) throw InputError("model '" + name + "': direct term not finite");
  std::vector<bool> used(poles.size(), false);
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const auto p = poles[i];
    const auto r = residues[i];
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()) || !std::isfinite(r.real()) ||
        !std::isfinite(r.imag())) {
      throw InputError("model '" + name + "': non-finite pole or residue");
    }
    if (!(p.real() < 0.0)) throw InputError("model '" + name + "': unstable pole");
    if (used[i]) continue;
    if (std::abs(p.imag()) <= 1e-12 * std::abs(p)) {
      if (std::abs(r.imag()) > 1e-12 * std::max(std::abs(r), 1e-300)) {
        throw InputError("model '" + name + "': real pole with complex residue");
      }
      used[i] = true;
      continue;
    }
    bool matched = false;
    for (std::size_t j = i + 1; j < poles.size() && !matched; ++j) {
      if (!used[j] && close(poles[j], std::conj(p)) && close(residues[j], std::conj(r))) {
        used[i] = used[j] = true;
        matched = true;
      }
    }
    if (!matched) throw InputError("model '" + name + "': complex pole without conjugate pair");
  }
}

double rational_eval(const PoleResidueModel& model, double f) {
  const std::complex<double> s(0.0, 2.0 * std::numbers::pi * f);
  std::complex<double> h(model.direct_term, 0.0);
  for (std::size_t k = 0; k < model.poles.size(); ++k) {
    h += model.residues[k] / (s - model.poles[k]);
  }
  return std::abs(h);
}

RationalOracle::RationalOracle(PoleResidueModel model) : model_(std::move(model)) {
  model_.validate();
}

double RationalOracle::evaluate(double f) const {
  if (!(f > 0.0) || !std::isfinite(f)) {
    throw OracleError("model '" + model_.name + "' evaluated at non-positive frequency");
  }
  return rational_eval(model_, f);
}

std::vector<PoleResidueModel> parse_corpus(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("corpus is not valid JSON: ") + e.what());
  }
  const auto complex_list = [](const json& arr, const std::string& what) {
    std::vector<std::complex<double>> out;
    for (const auto& v : arr) {
      if (!v.is_array() || v.size() != 2) throw InputError(what + " entries must be [re, im]");
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return out;
  };
  std::vector<PoleResidueModel> models;
  try {
    for (const auto& rec : doc.at("models")) {
      PoleResidueModel m;
      m.name = rec.at("name").get<std::string>();
      m.description = rec.value("description", "");
      m.direct_term = rec.value("direct_term", 0.0);
      m.poles = complex_list(rec.value("poles", json::array()), "poles");
      m.residues = complex_list(rec.value("residues", json::array()), "residues");
      if (rec.contains("band_hz")) {
        const auto& b = rec.at("band_hz");
        m.band = FrequencyBand(b.at(0).get<double>(), b.at(1).get<double>());
      }
      m.validate();
      models.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed corpus record: ") + e.what());
  }
  return models;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<PoleResidueModel> load_corpus_file(const std::string& path) {
  return parse_corpus(read_text_file(path));
}

const PoleResidueModel& find_model(std::span<const PoleResidueModel> corpus,
                                   std::string_view name) {
  for (const auto& m : corpus) {
    if (m.name == name) return m;
  }
  throw InputError("no model named '" + std::string(name) + "' in corpus");
}

TabulatedSweep::TabulatedSweep(SampleGrid g, std::vector<double> v, std::string src)
    : grid(std::move(g)), values(std::move(v)), source(std::move(src)) {
  if (values.size() != grid.size()) throw InputError("tabulated sweep: length mismatch");
}

std::vector<Sample> TabulatedSweep::samples() const {
  std::vector<Sample> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = {grid[i], values[i]};
  return out;
}

double tabulated_eval(const TabulatedSweep& sweep, double f, std::optional<double> tolerance) {
  const auto idx = sweep.grid.find(f, tolerance.value_or(sweep.grid.band().tolerance()));
  if (!idx) {
    throw OracleError("frequency " + format_double(f) + " Hz is not tabulated in '" +
                      sweep.source + "'");
  }
  return sweep.values[*idx];
}

TabulatedSweep parse_csv_sweep(std::string_view text, std::string source) {
  std::vector<Sample> rows;
  bool seen_data = false;
  bool seen_header = false;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == '!') return;
    const auto fields = detail::split_fields(line);
    const auto where = [&] { return (source.empty() ? "line " : source + ":") + std::to_string(line_no); };
    std::optional<double> f, v;
    if (fields.size() == 2) {
      f = detail::parse_number(fields[0]);
      v = detail::parse_number(fields[1]);
    }
    if (!f || !v) {
      if (!seen_data && !seen_header && fields.size() == 2 && !f && !v) {
        seen_header = true;
        return;
      }
      throw InputError(where() + ": expected two numeric columns, got '" + std::string(line) + "'");
    }
    if (!std::isfinite(*f) || !std::isfinite(*v)) throw InputError(where() + ": non-finite value");
    seen_data = true;
    rows.push_back({*f, *v});
  });
  if (rows.size() < 2) throw InputError("CSV sweep needs at least 2 rows");
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Sample& a, const Sample& b) { return a.freq < b.freq; });
  std::vector<double> freqs, values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].freq > rows[i - 1].freq)) {
      throw InputError("CSV sweep has duplicate frequency " + format_double(rows[i].freq));
    }
    freqs.push_back(rows[i].freq);
    values.push_back(rows[i].value);
  }
  const FrequencyBand band(freqs.front(), freqs.back());
  return TabulatedSweep(SampleGrid(band, std::move(freqs)), std::move(values), std::move(source));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_csv(std::span<const Sample> samples, std::string_view value_header) {
  std::string out = "frequency_hz,";
  out += value_header;
  out += '\n';
  for (const Sample& s : samples) {
    out += format_double(s.freq);
    out += ',';
    out += format_double(s.value);
    out += '\n';
  }
  return out;
}

}  // namespace fsweep
