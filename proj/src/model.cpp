#include "frozenstar/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "frozenstar/errors.hpp"

namespace frozenstar {

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::Normalized ? "normalized" : "verbatim";
}

Mode mode_from_string(std::string_view text) {
  if (text == "verbatim" || text == "Verbatim") return Mode::Verbatim;
  if (text == "normalized" || text == "Normalized") return Mode::Normalized;
  throw Error(ErrorCode::ConfigParse, "unknown mode '" + std::string(text) + "'");
}

Fingerprint& Fingerprint::add(std::string_view text) {
  for (unsigned char ch : text) {
    state_ ^= ch;
    state_ *= 1099511628211ull;
  }
  return add(static_cast<std::uint64_t>(text.size()));
}

Fingerprint& Fingerprint::add(std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    state_ ^= (value >> (8 * i)) & 0xffu;
    state_ *= 1099511628211ull;
  }
  return *this;
}

Fingerprint& Fingerprint::add(double value) {
  // Canonicalize -0.0 so that equal values hash equally.
  if (value == 0.0) value = 0.0;
  return add(std::bit_cast<std::uint64_t>(value));
}

std::string Fingerprint::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

ModelConfig::ModelConfig(std::vector<double> lengths, std::vector<double> chords,
                         PotentialCoeffs potentials, Mode mode, double pole_window)
    : lengths_(std::move(lengths)),
      chords_(std::move(chords)),
      potentials_(std::move(potentials)),
      mode_(mode),
      pole_window_(pole_window) {
  const std::size_t m = lengths_.size();
  if (m < 2) throw Error(ErrorCode::InvalidModel, "at least 2 edges required");
  if (chords_.size() != m) throw Error(ErrorCode::InvalidModel, "one chord per edge required");
  for (double l : lengths_) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::InvalidModel, "edge lengths must be positive");
    }
  }
  for (double c : chords_) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw Error(ErrorCode::InvalidModel, "chord lengths must be positive");
    }
  }
  if (mode_ == Mode::Normalized) {
    for (double& l : lengths_) {
      if (std::abs(l - kPi) > 1e-12) {
        throw Error(ErrorCode::InvalidModel, "normalized mode requires every edge length = pi");
      }
      l = kPi;
    }
  }
  if (potentials_.lengths.empty() && potentials_.coeffs.empty()) {
    potentials_ = PotentialCoeffs::zeros(lengths_, potentials_.order);
  }
  if (potentials_.lengths.size() != m) {
    throw Error(ErrorCode::InvalidModel, "potential edge count differs from graph");
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (std::abs(potentials_.lengths[j] - lengths_[j]) > 1e-12 * lengths_[j]) {
      throw Error(ErrorCode::InvalidModel, "potential edge lengths differ from graph");
    }
  }
  potentials_.lengths = lengths_;
  potentials_.validate();

  // Poles of edge j sit pi/l_j apart; the window must not swallow two of them.
  double max_len = 0.0;
  for (double l : lengths_) max_len = std::max(max_len, l);
  if (!(pole_window_ > 0.0) || pole_window_ >= 0.5 * kPi / max_len) {
    throw Error(ErrorCode::InvalidModel, "pole window must lie in (0, pi / (2 max l))");
  }
}

ModelConfig ModelConfig::from_graph(const StarGraphSpec& graph, PotentialCoeffs potentials,
                                    Mode mode, double pole_window) {
  return ModelConfig(graph.lengths(), chords_from_angles(graph).chords, std::move(potentials),
                     mode, pole_window);
}

ModelConfig ModelConfig::with_chords(std::vector<double> chords) const {
  return ModelConfig(lengths_, std::move(chords), potentials_, mode_, pole_window_);
}

ModelConfig ModelConfig::with_potentials(PotentialCoeffs potentials) const {
  return ModelConfig(lengths_, chords_, std::move(potentials), mode_, pole_window_);
}

std::string ModelConfig::lengths_fingerprint() const {
  Fingerprint fp;
  fp.add("lengths").add(to_string(mode_));
  for (double l : lengths_) fp.add(l);
  return fp.hex();
}

std::string ModelConfig::chords_fingerprint() const {
  Fingerprint fp;
  fp.add("chords");
  for (double c : chords_) fp.add(c);
  return fp.hex();
}

std::string ModelConfig::potentials_fingerprint() const {
  Fingerprint fp;
  fp.add("potentials").add(static_cast<std::uint64_t>(potentials_.order));
  for (const auto& edge : potentials_.coeffs) {
    for (const cplx& q : edge) fp.add(q.real()).add(q.imag());
  }
  return fp.hex();
}

std::string ModelConfig::fingerprint() const {
  Fingerprint fp;
  fp.add(lengths_fingerprint()).add(chords_fingerprint()).add(potentials_fingerprint());
  fp.add(pole_window_);
  return fp.hex();
}

}  // namespace frozenstar
