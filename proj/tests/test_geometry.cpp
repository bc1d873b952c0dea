#include <cmath>
#include <random>

#include "doctest.h"
#include "frozenstar/errors.hpp"
#include "frozenstar/geometry.hpp"
#include "oracle.hpp"

using namespace frozenstar;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Usage;
}

}  // namespace

TEST_CASE("equilateral star has chords sqrt(3)") {
  const double t = 2.0 * oracle::pi / 3.0;
  const auto ext = chords_from_angles(StarGraphSpec({1, 1, 1}, {t, t, t}));
  for (double c : ext.chords) CHECK(c == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("right angle between edges 3 and 4 gives chord 5") {
  const double r = oracle::pi / 2.0;
  const auto ext = chords_from_angles(StarGraphSpec({3, 4, 5}, {r, 0.75 * oracle::pi, 0.75 * oracle::pi}));
  CHECK(ext.chords[0] == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("chords agree with tips placed in the plane") {
  const std::vector<double> l{1.0, 1.3, 0.9, 1.1};
  const std::vector<double> th{1.9, 1.4, 1.5, 2.0 * oracle::pi - 4.8};
  const auto ext = chords_from_angles(StarGraphSpec(l, th));
  const auto ref = oracle::planar_chords(l, th);
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(ext.chords[j] - ref[j]) < 1e-13);
}

TEST_CASE("chords of nearly straight and nearly closed fans stay accurate") {
  // theta near 0 makes the law of cosines cancel badly in its naive form.
  const std::vector<double> l{1.0, 1.0 + 1e-9, 2.0};
  const std::vector<double> th{1e-6, oracle::pi - 0.3, oracle::pi + 0.3 - 1e-6};
  const auto ext = chords_from_angles(StarGraphSpec(l, th));
  const auto ref = oracle::planar_chords(l, th);
  CHECK(std::abs(ext.chords[0] - ref[0]) / ref[0] < 1e-6);
  CHECK(std::abs(ext.chords[1] - ref[1]) / ref[1] < 1e-13);
}

TEST_CASE("inverse law of cosines recovers the equilateral angles") {
  const auto a = angles_from_chords({1, 1, 1}, ExtendedGraphSpec{{std::sqrt(3.0), std::sqrt(3.0), std::sqrt(3.0)}});
  for (double t : a.angles) CHECK(t == doctest::Approx(2.0 * oracle::pi / 3.0).epsilon(1e-14));
  CHECK(a.closure_defect < 1e-14);
}

TEST_CASE("angles to chords to angles round trip") {
  const std::vector<double> l{1.0, 1.3, 0.9, 1.1};
  const std::vector<double> th{1.9, 1.4, 1.5, 2.0 * oracle::pi - 4.8};
  const auto back = angles_from_chords(l, chords_from_angles(StarGraphSpec(l, th)));
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(back.angles[j] - th[j]) < 1e-12);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> angles;
    const auto s = oracle::random_star(rng, 3 + trial % 4, 1, 0.0, &angles);
    const auto ext = chords_from_angles(StarGraphSpec(s.l, angles));
    const auto rec = angles_from_chords(s.l, ext);
    for (std::size_t j = 0; j < s.l.size(); ++j) CHECK(std::abs(rec.angles[j] - angles[j]) < 1e-12);
    const auto again = chords_from_angles(StarGraphSpec(s.l, rec.angles));
    for (std::size_t j = 0; j < s.l.size(); ++j) {
      CHECK(std::abs(again.chords[j] - ext.chords[j]) / ext.chords[j] < 1e-12);
    }
  }
}

TEST_CASE("cyclic relabelling of edges rotates the chords") {
  const std::vector<double> l{1.0, 1.3, 0.9, 1.1};
  const std::vector<double> th{1.9, 1.4, 1.5, 2.0 * oracle::pi - 4.8};
  const auto a = chords_from_angles(StarGraphSpec(l, th)).chords;
  const auto b = chords_from_angles(StarGraphSpec({1.3, 0.9, 1.1, 1.0}, {1.4, 1.5, th[3], 1.9})).chords;
  for (std::size_t j = 0; j < 4; ++j) CHECK(b[j] == doctest::Approx(a[(j + 1) % 4]).epsilon(1e-14));
}

TEST_CASE("impossible chord is a triangle violation") {
  CHECK(code_of([] { angles_from_chords({1, 1, 1}, ExtendedGraphSpec{{2.1, 1.0, 1.0}}); }) ==
        ErrorCode::TriangleViolation);
}

TEST_CASE("reflex angle comes back as its mirror with a closure violation") {
  const std::vector<double> l{1.0, 1.2, 0.8};
  const std::vector<double> th{3.6, 1.3, 2.0 * oracle::pi - 4.9};
  const auto ext = chords_from_angles(StarGraphSpec(l, th));
  const auto principal = principal_angles_from_chords(l, ext);
  CHECK(principal.angles[0] == doctest::Approx(2.0 * oracle::pi - 3.6).epsilon(1e-12));
  CHECK(principal.closure_defect == doctest::Approx(2.0 * (3.6 - oracle::pi)).epsilon(1e-12));
  CHECK(code_of([&] { angles_from_chords(l, ext); }) == ErrorCode::ClosureViolation);
}

TEST_CASE("angle recovery needs three edges") {
  CHECK(code_of([] { angles_from_chords({1, 1}, ExtendedGraphSpec{{1.0, 1.0}}); }) ==
        ErrorCode::InvalidGeometry);
}

TEST_CASE("invalid stars are rejected") {
  const double t = 2.0 * oracle::pi / 3.0;
  CHECK(code_of([] { StarGraphSpec({1.0}, {2.0 * oracle::pi}); }) == ErrorCode::InvalidGeometry);
  CHECK(code_of([&] { StarGraphSpec({1, -1, 1}, {t, t, t}); }) == ErrorCode::InvalidGeometry);
  CHECK(code_of([&] { StarGraphSpec({1, 1, 1}, {t, t, t + 1e-6}); }) == ErrorCode::InvalidGeometry);
  CHECK(code_of([] { StarGraphSpec({1, 1}, {2.0 * oracle::pi, 0.0}); }) == ErrorCode::InvalidGeometry);
  CHECK(code_of([&] { StarGraphSpec({1, 1}, {t, t}); }) == ErrorCode::InvalidGeometry);
  CHECK_NOTHROW(StarGraphSpec({1, 1, 1}, {t, t, t + 1e-10}));
}
