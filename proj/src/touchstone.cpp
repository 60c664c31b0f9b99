#include <algorithm>
#include <cctype>
#include <cmath>

#include "fsweep/error.hpp"
#include "fsweep/oracles.hpp"
#include "text_util.hpp"

namespace fsweep {

namespace {

enum class Format { MA, DB, RI };

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

struct Options {
  double unit_scale = 1e9;
  Format format = Format::MA;
};

Options parse_option_line(std::string_view line, const std::string& where) {
  Options opt;
  const auto tokens = detail::split_fields(line.substr(1));
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string t = upper(tokens[i]);
    if (t == "HZ") opt.unit_scale = 1.0;
    else if (t == "KHZ") opt.unit_scale = 1e3;
    else if (t == "MHZ") opt.unit_scale = 1e6;
    else if (t == "GHZ") opt.unit_scale = 1e9;
    else if (t == "MA") opt.format = Format::MA;
    else if (t == "DB") opt.format = Format::DB;
    else if (t == "RI") opt.format = Format::RI;
    else if (t == "S") continue;
    else if (t == "Y" || t == "Z" || t == "H" || t == "G") {
      throw InputError(where + ": only S-parameter files are supported, got '" + t + "'");
    } else if (t == "R") {
      if (i + 1 >= tokens.size() || !detail::parse_number(tokens[i + 1])) {
        throw InputError(where + ": option 'R' needs a reference impedance");
      }
      ++i;
    } else {
      throw InputError(where + ": unsupported option token '" + std::string(tokens[i]) + "'");
    }
  }
  return opt;
}

}  // namespace

TabulatedSweep parse_touchstone(std::string_view text, std::pair<int, int> port_pair,
                                std::string source) {
  const std::string label = source.empty() ? std::string("touchstone") : source;
  Options opt;
  bool have_options = false;
  std::size_t columns = 0;
  bool in_noise = false;
  std::vector<double> freqs, values;
  std::vector<std::string> warnings;

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    if (in_noise) return;
    const std::string where = label + ":" + std::to_string(line_no);
    std::string_view line = raw.substr(0, raw.find('!'));
    line = detail::trim(line);
    if (line.empty()) return;
    if (line.front() == '#') {
      if (!have_options) opt = parse_option_line(line, where);
      have_options = true;
      return;
    }
    if (line.front() == '[') {
      throw InputError(where + ": Touchstone v2 keywords are not supported");
    }
    const auto fields = detail::split_fields(line);
    std::vector<double> nums;
    for (auto f : fields) {
      const auto v = detail::parse_number(f);
      if (!v) throw InputError(where + ": malformed number '" + std::string(f) + "'");
      nums.push_back(*v);
    }
    const double freq = nums.front() * opt.unit_scale;
    if (columns == 0) {
      if (nums.size() != 3 && nums.size() != 9) {
        throw InputError(where + ": expected 3 (1-port) or 9 (2-port) columns, got " +
                         std::to_string(nums.size()));
      }
      columns = nums.size();
    } else if (nums.size() != columns) {
      if (columns == 9 && nums.size() == 5 && !freqs.empty() && freq <= freqs.back()) {
        warnings.push_back(where + ": noise parameter section ignored");
        in_noise = true;
        return;
      }
      throw InputError(where + ": expected " + std::to_string(columns) + " columns, got " +
                       std::to_string(nums.size()));
    }
    if (!freqs.empty() && !(freq > freqs.back())) {
      throw InputError(where + ": frequencies must be strictly increasing");
    }

    const int ports = columns == 3 ? 1 : 2;
    const auto [i, j] = port_pair;
    if (i < 1 || j < 1 || i > ports || j > ports) {
      throw InputError(label + ": port pair (" + std::to_string(i) + "," + std::to_string(j) +
                       ") not available in a " + std::to_string(ports) + "-port file");
    }
    // Two-port rows are ordered S11 S21 S12 S22.
    const std::size_t k = static_cast<std::size_t>((j - 1) * ports + (i - 1));
    const double a = nums[1 + 2 * k];
    const double b = nums[2 + 2 * k];
    double mag = 0.0;
    switch (opt.format) {
      case Format::MA: mag = std::abs(a); break;
      case Format::DB: mag = std::pow(10.0, a / 20.0); break;
      case Format::RI: mag = std::hypot(a, b); break;
    }
    freqs.push_back(freq);
    values.push_back(mag);
  });

  if (freqs.size() < 2) throw InputError(label + ": needs at least 2 frequency points");
  const FrequencyBand band(freqs.front(), freqs.back());
  TabulatedSweep sweep(SampleGrid(band, std::move(freqs)), std::move(values), std::move(source));
  sweep.warnings = std::move(warnings);
  return sweep;
}

}  // namespace fsweep
