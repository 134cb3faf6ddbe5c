#pragma once

#include <functional>
#include <vector>

namespace lc {

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod on [a,b] (finite), split at the given interior points.
double integrate(const Fn& f, double a, double b, const std::vector<double>& breaks = {});

// Integral over 0 <= a < b <= inf computed in the variable s = log x.
// Breakpoints are in x units; 0 and inf ends are handled by infinite-range rules.
double integrate_log(const Fn& f, double a, double b, const std::vector<double>& breaks = {});

// Fourier-type integrals of f over [a,b], b may be +inf.
double integrate_cos(const Fn& f, double omega, double a, double b);
double integrate_sin(const Fn& f, double omega, double a, double b);

// Largest x in [lo,hi] (to relative tolerance) with f(x) > target for non-increasing f.
// Returns the upper end of the final bracket, so f(result) <= target.
double invert_decreasing(const Fn& f, double target, double lo, double hi, double rel_tol = 1e-12);

// Upper incomplete gamma Gamma(s, z) for any real s and z > 0.
double upper_gamma(double s, double z);

// Stirling number of the second kind.
double stirling2(int n, int k);

// cos(y) - 1 and sin(y) - y without cancellation for small y.
double cosm1(double y);
double sinmx(double y);

}  // namespace lc
