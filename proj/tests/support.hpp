#pragma once

#include "frozenstar/model.hpp"
#include "oracle.hpp"

namespace support {

inline frozenstar::PotentialCoeffs coeffs_of(const oracle::Star& s) {
  frozenstar::PotentialCoeffs c = frozenstar::PotentialCoeffs::zeros(s.l, s.q.empty() ? 1 : s.q[0].size());
  for (std::size_t j = 0; j < s.q.size(); ++j) c.coeffs[j] = s.q[j];
  return c;
}

inline frozenstar::ModelConfig model_of(const oracle::Star& s,
                                        frozenstar::Mode mode = frozenstar::Mode::Verbatim) {
  return frozenstar::ModelConfig(s.l, s.chords, coeffs_of(s), mode);
}

inline double rel(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace support
