#include "fsweep/bounds.hpp"

#include <cmath>
#include <numbers>

#include "fsweep/error.hpp"

namespace fsweep {

using std::numbers::pi;

void BoundParams::validate() const {
  if (degree < 0) throw InputError("degree must be >= 0");
  if (!(interval > 0.0) || !std::isfinite(interval)) throw InputError("interval must be > 0");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw InputError("cut-off must be > 0");
  if (!(energy_root >= 0.0) || !std::isfinite(energy_root)) {
    throw InputError("energy root must be >= 0");
  }
}

double r1_bound(int degree, double interval) {
  if (degree < 0) throw InputError("degree must be >= 0");
  if (!(interval > 0.0)) throw InputError("interval must be > 0");
  const double m = degree + 1.0;
  return std::pow(pi * m / 2.0, -0.5) * std::pow(interval / 2.0, m);
}

double derivative_bound(const BoundParams& p) {
  p.validate();
  const double n = p.degree;
  return p.energy_root * pi * std::pow(2.0 * n + 3.0, -0.5) *
         std::pow(2.0 * pi * p.cutoff, n + 1.5);
}

double truncation_bound(const BoundParams& p) {
  p.validate();
  const double m = p.degree + 1.0;
  return p.energy_root / m * std::sqrt(2.0 * p.cutoff / pi) *
         std::pow(pi * p.interval * p.cutoff, m);
}

bool nyquist_check(double interval, double cutoff) {
  if (!(interval > 0.0) || !(cutoff > 0.0)) {
    throw InputError("interval and cut-off must be > 0");
  }
  return interval < 1.0 / (pi * cutoff);
}

}  // namespace fsweep
