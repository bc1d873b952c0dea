#include <cmath>
#include <random>

#include "doctest.h"
#include "frozenstar/errors.hpp"
#include "frozenstar/fd_oracle.hpp"
#include "support.hpp"

using namespace frozenstar;
using oracle::pi;
using support::model_of;

namespace {

ModelConfig free_star(std::size_t m, Mode mode = Mode::Verbatim) {
  oracle::Star s{std::vector<double>(m, pi), std::vector<double>(m, 1.0), std::vector<std::vector<cplx>>(m, {0.0})};
  return model_of(s, mode);
}

double max_rel_error(const OracleSpectrum& s, const std::vector<double>& exact) {
  double worst = 0.0;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    worst = std::max(worst, std::abs(s.eigenvalues[k] - exact[k]) / exact[k]);
  }
  return worst;
}

}  // namespace

TEST_CASE("coarse meshes are refused") {
  const auto cfg = free_star(2);
  try {
    assemble(cfg, pi / 16.0);
    FAIL("expected MeshTooCoarse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MeshTooCoarse);
  }
  CHECK_NOTHROW(assemble(cfg, pi / 17.0));
  CHECK_THROWS_AS(assemble(cfg, 0.0), Error);
}

TEST_CASE("free operator rows") {
  const double h = pi / 40.0;
  const auto d = assemble(free_star(3), h);
  REQUIRE(d.interior_count() == 3 * 39);
  CHECK(d.is_real());
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i + 1 < d.interior[j]; ++i) {
      // Stencils of -psi'' sum to zero except next to the pinned tip.
      CHECK(std::abs(d.op.row(static_cast<Eigen::Index>(d.offsets[j] + i)).sum()) < 1e-9);
    }
  }
  // Vertex row: the one-sided derivative stencil also sums to zero.
  CHECK(std::abs(d.op.row(static_cast<Eigen::Index>(d.vertex_index())).sum()) < 1e-9);
}

TEST_CASE("potential enters only through the vertex column") {
  std::mt19937_64 rng(80);
  const auto s = oracle::random_star(rng, 3, 4, 0.5);
  const auto cfg = model_of(s);
  const double h = 0.02;
  const auto d = assemble(cfg, h);
  const auto free = assemble(cfg.with_potentials(PotentialCoeffs::zeros(s.l, 4)), h);
  const auto v = static_cast<Eigen::Index>(d.vertex_index());
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 1; i <= d.interior[j]; ++i) {
      const auto row = static_cast<Eigen::Index>(d.offsets[j] + i - 1);
      const double x = d.steps[j] * static_cast<double>(i);
      CHECK(std::abs(d.op(row, v) - free.op(row, v) - oracle::potential(s, j, x)) < 1e-12);
      CHECK((d.op.row(row).head(v) - free.op.row(row).head(v)).norm() == 0.0);
    }
  }
}

TEST_CASE("two free edges form a Dirichlet interval of length 2 pi") {
  const auto s = spectrum(assemble(free_star(2), pi / 400.0), 3);
  CHECK(max_rel_error(s, {0.25, 1.0, 2.25}) < 1e-3);
  for (const cplx& ev : s.eigenvalues) CHECK(ev.imag() == 0.0);
}

TEST_CASE("three free edges: multiplicities of the secular equation") {
  // sin(sqrt(lambda) pi) = 0 branch has multiplicity m - 1, the
  // cos(sqrt(lambda) pi) = 0 branch is simple.
  const auto s = spectrum(assemble(free_star(3), pi / 200.0), 6);
  const std::vector<double> exact{0.25, 1.0, 1.0, 2.25, 4.0, 4.0};
  CHECK(max_rel_error(s, exact) < 1e-3);
  CHECK(std::abs(s.eigenvalues[1] - s.eigenvalues[2]) < 1e-9);
  CHECK(std::abs(s.eigenvalues[4] - s.eigenvalues[5]) < 1e-9);
}

TEST_CASE("halving the mesh cuts the error by four") {
  const auto coarse = spectrum(assemble(free_star(2), pi / 100.0), 3);
  const auto fine = spectrum(assemble(free_star(2), pi / 200.0), 3);
  const std::vector<double> exact{0.25, 1.0, 2.25};
  for (std::size_t k = 0; k < 3; ++k) {
    const double ratio = std::abs(coarse.eigenvalues[k] - exact[k]) / std::abs(fine.eigenvalues[k] - exact[k]);
    CHECK(ratio >= 3.6);
    CHECK(ratio <= 4.4);
  }
}

TEST_CASE("eliminating the vertex matches the generalized problem") {
  std::mt19937_64 rng(81);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 3; ++trial) {
    oracle::Star s = oracle::random_star(rng, 3, 3, 0.0);
    for (auto& e : s.q) for (cplx& c : e) c = 0.5 * g(rng);
    const auto d = assemble(model_of(s), 0.04);
    const auto a = spectrum(d, 8);
    const auto b = spectrum_generalized(d, 8);
    REQUIRE(b.eigenvalues.size() == 8);
    for (std::size_t k = 0; k < 8; ++k) {
      CHECK(std::abs(a.eigenvalues[k] - b.eigenvalues[k]) / std::abs(a.eigenvalues[k]) < 1e-10);
    }
  }
}

TEST_CASE("real potentials give conjugate pairs") {
  std::mt19937_64 rng(82);
  std::normal_distribution<double> g;
  oracle::Star s = oracle::random_star(rng, 4, 4, 0.0);
  for (auto& e : s.q) for (cplx& c : e) c = 3.0 * g(rng);
  const auto d = assemble(model_of(s), 0.03);
  REQUIRE(d.is_real());
  const auto sp = spectrum(d, 20);
  for (const cplx& ev : sp.eigenvalues) {
    if (ev.imag() == 0.0) continue;
    double best = 1e300;
    for (const cplx& other : sp.eigenvalues) best = std::min(best, std::abs(other - std::conj(ev)));
    CHECK(best < 1e-8 * std::abs(ev));
  }
}

TEST_CASE("complex potentials use the complex solver and refuse QZ") {
  std::mt19937_64 rng(83);
  const auto d = assemble(model_of(oracle::random_star(rng, 3, 3, 0.5)), 0.04);
  CHECK_FALSE(d.is_real());
  CHECK(spectrum(d, 4).eigenvalues.size() == 4);
  CHECK_THROWS_AS(spectrum_generalized(d, 4), Error);
}

TEST_CASE("asking for more eigenvalues than unknowns fails") {
  const auto d = assemble(free_star(2), pi / 17.0);
  try {
    spectrum(d, d.interior_count() + 1);
    FAIL("expected EigensolverFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EigensolverFailure);
  }
}

TEST_CASE("zero table") {
  const auto cfg = free_star(3, Mode::Normalized);
  const auto sp = spectrum(assemble(cfg, pi / 100.0), 6);
  CHECK(compare_phi_zeros(cfg, sp, 3.0, 1.0).empty());
  const auto table = compare_phi_zeros(cfg, sp, 0.5, 2.5);
  bool one = false, two = false;
  for (const auto& row : table) {
    if (std::abs(row.z - 1.0) < 1e-12) one = true;
    if (std::abs(row.z - 2.0) < 1e-12) two = true;
    CHECK(std::abs(row.lambda - row.z * row.z) < 1e-12);
    CHECK(std::isfinite(row.distance));
  }
  CHECK(one);
  CHECK(two);
}
