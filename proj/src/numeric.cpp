#include "frozenstar/numeric.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

#include "frozenstar/errors.hpp"

namespace frozenstar {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ModeRequired: return "ModeRequired";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::PoleWindow: return "PoleWindow";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NonPositiveReciprocal: return "NonPositiveReciprocal";
    case ErrorCode::MaxItersExceeded: return "MaxItersExceeded";
    case ErrorCode::AmbiguousSolution: return "AmbiguousSolution";
    case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
    case ErrorCode::EigensolverFailure: return "EigensolverFailure";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::IO: return "IO";
    case ErrorCode::FingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

double sin_pi(double w) {
  const double r = std::remainder(w, 2.0);  // exact, r in [-1, 1]
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(kPi * r);
}

double cos_pi(double w) {
  const double r = std::remainder(w, 2.0);
  if (std::abs(r) == 0.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (std::abs(r) == 1.0) return -1.0;
  return std::cos(kPi * r);
}

cplx sin_pi(cplx w) {
  if (w.imag() == 0.0) return {sin_pi(w.real()), 0.0};
  const double b = kPi * w.imag();
  return {sin_pi(w.real()) * std::cosh(b), cos_pi(w.real()) * std::sinh(b)};
}

cplx cos_pi(cplx w) {
  if (w.imag() == 0.0) return {cos_pi(w.real()), 0.0};
  const double b = kPi * w.imag();
  return {cos_pi(w.real()) * std::cosh(b), -sin_pi(w.real()) * std::sinh(b)};
}

cplx sinc(cplx w) {
  if (std::abs(w) < 1e-4) {
    const cplx w2 = w * w;
    return 1.0 - w2 / 6.0 + w2 * w2 / 120.0;
  }
  return std::sin(w) / w;
}

cplx pi_sinc(cplx w) {
  if (std::abs(w) < 1e-5) return kPi * sinc(kPi * w);
  return sin_pi(w) / w;
}

cplx sine_overlap(cplx z, int k) {
  const double kk = static_cast<double>(k);
  return 0.5 * (pi_sinc(z - kk) - pi_sinc(z + kk));
}

cplx simpson(std::span<const cplx> samples, double h) {
  const std::size_t n = samples.size();
  if (n < 3) throw std::invalid_argument("simpson: need at least 3 samples");
  const std::size_t intervals = n - 1;
  std::size_t simpson_end = intervals;
  cplx tail{};
  if (intervals % 2 == 1) {
    if (intervals < 3) throw std::invalid_argument("simpson: need at least 2 intervals");
    simpson_end = intervals - 3;
    const std::size_t s = simpson_end;
    tail = 3.0 * h / 8.0 *
           (samples[s] + 3.0 * samples[s + 1] + 3.0 * samples[s + 2] + samples[s + 3]);
  }
  cplx sum{};
  if (simpson_end > 0) {
    sum = samples[0] + samples[simpson_end];
    for (std::size_t i = 1; i < simpson_end; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * samples[i];
    sum *= h / 3.0;
  }
  return sum + tail;
}

cplx gauss_legendre(const std::function<cplx(double)>& f, double a, double b,
                    std::size_t panels) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const double width = (b - a) / static_cast<double>(panels);
  cplx total{};
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    total += rule::integrate(f, lo, lo + width);
  }
  return total;
}

}  // namespace frozenstar
