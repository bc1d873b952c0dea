#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>

namespace frozenstar {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// sin(pi*w), exact zero at integer w.
double sin_pi(double w);
/// cos(pi*w), exact zero at half-integer w.
double cos_pi(double w);
cplx sin_pi(cplx w);
cplx cos_pi(cplx w);

/// sin(w)/w with the removable singularity at 0 filled in.
cplx sinc(cplx w);

/// sin(pi*w)/w, equal to pi at w = 0.
cplx pi_sinc(cplx w);

/// Integral over [0, pi] of sin(z t) sin(k t) dt, closed form, entire in z.
cplx sine_overlap(cplx z, int k);

// Composite Simpson over uniformly spaced samples with spacing h. An odd
// interval count closes the last three intervals with the 3/8 rule.
cplx simpson(std::span<const cplx> samples, double h);

// Composite 20-point Gauss-Legendre over `panels` equal panels.
cplx gauss_legendre(const std::function<cplx(double)>& f, double a, double b,
                    std::size_t panels = 16);

}  // namespace frozenstar
