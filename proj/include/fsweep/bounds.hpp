#pragma once

namespace fsweep {

/// Parameters of the band-limited truncation analysis.
///
/// `degree` is the interpolating polynomial degree n (support size - 1),
/// `interval` the even sampling interval h, `cutoff` the band limit f0 of the
/// response and `energy_root` B, the square root of its finite energy.
struct BoundParams {
  int degree = 0;
  double interval = 0.0;
  double cutoff = 0.0;
  double energy_root = 0.0;

  /// Throws InputError unless degree >= 0, h > 0, f0 > 0 and B >= 0.
  void validate() const;
};

/// Bound on |v(x)| / (n+1)! for n+1 evenly spaced nodes:
/// [pi (n+1) / 2]^(-1/2) (h/2)^(n+1).
double r1_bound(int degree, double interval);

/// Bound on |f^(n+1)| for a band-limited response:
/// B pi (2n+3)^(-1/2) (2 pi f0)^(n+3/2).
double derivative_bound(const BoundParams& p);

/// Truncation bound B/(n+1) (2 f0/pi)^(1/2) (pi h f0)^(n+1).
double truncation_bound(const BoundParams& p);

/// Sampling-interval condition h < 1/(pi f0).
bool nyquist_check(double interval, double cutoff);

}  // namespace fsweep
