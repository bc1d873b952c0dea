#include "frozenstar/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frozenstar/errors.hpp"

namespace frozenstar {

PotentialCoeffs PotentialCoeffs::zeros(std::vector<double> lengths, std::size_t order) {
  PotentialCoeffs c;
  c.order = order;
  c.coeffs.assign(lengths.size(), std::vector<cplx>(order));
  c.lengths = std::move(lengths);
  return c;
}

bool PotentialCoeffs::is_real() const {
  for (const auto& edge : coeffs)
    for (const cplx& q : edge)
      if (q.imag() != 0.0) return false;
  return true;
}

bool PotentialCoeffs::is_zero() const {
  for (const auto& edge : coeffs)
    for (const cplx& q : edge)
      if (q != cplx{}) return false;
  return true;
}

void PotentialCoeffs::validate() const {
  if (coeffs.size() != lengths.size()) {
    throw Error(ErrorCode::InvalidModel, "one coefficient sequence per edge required");
  }
  for (const auto& edge : coeffs) {
    if (edge.size() != order) {
      throw Error(ErrorCode::InvalidModel, "coefficient sequence length must equal order");
    }
    for (const cplx& q : edge) {
      if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) {
        throw Error(ErrorCode::InvalidModel, "non-finite potential coefficient");
      }
    }
  }
  for (double l : lengths) {
    if (!(l > 0.0)) throw Error(ErrorCode::InvalidModel, "edge lengths must be positive");
  }
}

double sine_mode(std::size_t n, double length, double x) {
  return sin_pi(static_cast<double>(n) * (length - x) / length);
}

SineCoefficients sine_coefficients(const SampledFunction& f, std::size_t order) {
  const std::size_t m = f.intervals();
  if (order < 1) throw Error(ErrorCode::OutOfDomain, "order must be at least 1");
  if (m < 2) throw Error(ErrorCode::OutOfDomain, "need at least 2 sample intervals");
  if (!(f.length > 0.0)) throw Error(ErrorCode::OutOfDomain, "edge length must be positive");

  SineCoefficients out;
  out.grid_too_coarse = m < 8 * order;
  out.values.resize(order);
  const double h = f.length / static_cast<double>(m);
  std::vector<cplx> integrand(m + 1);
  for (std::size_t n = 1; n <= order; ++n) {
    for (std::size_t i = 0; i <= m; ++i) {
      const double x = f.length * static_cast<double>(i) / static_cast<double>(m);
      integrand[i] = f.values[i] * sine_mode(n, f.length, x);
    }
    out.values[n - 1] = 2.0 / f.length * simpson(integrand, h);
  }
  return out;
}

cplx sine_synthesis(const PotentialCoeffs& c, std::size_t j, double x) {
  const double l = c.lengths.at(j);
  if (!(x >= 0.0 && x <= l)) {
    std::ostringstream msg;
    msg << "x = " << x << " outside [0, " << l << "]";
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  cplx sum{};
  for (std::size_t n = 1; n <= c.order; ++n) sum += c.at(j, n) * sine_mode(n, l, x);
  return sum;
}

cplx sine_transform(const PotentialCoeffs& c, std::size_t j, cplx z) {
  // Substituting t = pi (l - x) / l maps every term onto [0, pi].
  cplx sum{};
  for (std::size_t n = 1; n <= c.order; ++n) {
    sum += c.at(j, n) * sine_overlap(z, static_cast<int>(n));
  }
  return 2.0 / kPi * sum;
}

cplx resonant_ratio(cplx z, std::size_t n, double length, double eps) {
  const double pole = static_cast<double>(n) * kPi / length;
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  const cplx below = z - pole;
  if (std::abs(below) < eps) {
    // sin(z l) = (-1)^n sin((z - pole) l)
    return parity * length * sinc(below * length) / (z + pole);
  }
  const cplx above = z + pole;
  if (std::abs(above) < eps) {
    return parity * length * sinc(above * length) / (z - pole);
  }
  return sin_pi(z * (length / kPi)) / (z * z - pole * pole);
}

cplx sine_identity_lhs(const PotentialCoeffs& c, std::size_t j, cplx z, double eps) {
  const double l = c.lengths.at(j);
  cplx sum{};
  for (std::size_t n = 1; n <= c.order; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double pole = static_cast<double>(n) * kPi / l;
    sum += sign * pole * c.at(j, n) * resonant_ratio(z, n, l, eps);
  }
  return sum;
}

cplx sine_identity_rhs(const PotentialCoeffs& c, std::size_t j, cplx z, std::size_t panels) {
  const double l = c.lengths.at(j);
  const cplx eta = z * (l / kPi);
  auto integrand = [&](double x) {
    const double arg = std::clamp(l / kPi * (kPi - x), 0.0, l);
    return sine_synthesis(c, j, arg) * std::sin(eta * x);
  };
  return l / kPi * gauss_legendre(integrand, 0.0, kPi, panels);
}

}  // namespace frozenstar
