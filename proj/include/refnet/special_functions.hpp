#pragma once

namespace refnet {

/// Riemann zeta function for real s > 1, relative error below 1e-10.
double zeta(double s);

/// Polylogarithm Li_s(x) = sum_{k>=1} x^k / k^s for s > 1 and 0 <= x <= 1.
/// polylog(s, 1) == zeta(s).
double polylog(double s, double x);

}  // namespace refnet
