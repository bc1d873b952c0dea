// Serial vs OpenMP timings for the grid kernels.
#include <chrono>
#include <cstdio>
#include <functional>

#include "frozenstar/characteristic.hpp"
#include "frozenstar/io.hpp"
#include "frozenstar/recovery.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace frozenstar;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return dt.count() / reps;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %9.3f ms   parallel %9.3f ms   speedup %5.2fx\n", name, 1e3 * serial,
              1e3 * parallel, serial / parallel);
}

}  // namespace

int main() {
  const io::RawConfig raw = io::parse_config(io::default_config(), 8);
  const ModelConfig cfg = raw.model();
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  const auto grid = SampleGridSpec::uniform(0.1, 40.0, 4000);
  const double s1 = seconds([&] { sample_phi(cfg, grid, Execution::Serial); }, 5);
  const double p1 = seconds([&] { sample_phi(cfg, grid, Execution::Parallel); }, 5);
  row("sample_phi (4000 pts)", s1, p1);

  TopologyRecoveryProblem tp;
  tp.lengths = cfg.lengths();
  tp.potentials = cfg.potentials();
  tp.observed = sample_phi(cfg, SampleGridSpec::uniform(0.2, 12.0, 400));
  const double s2 = seconds([&] { recover_chords(tp, Execution::Serial); }, 5);
  const double p2 = seconds([&] { recover_chords(tp, Execution::Parallel); }, 5);
  row("recover_chords (400 pts)", s2, p2);

  PotentialCoeffs truth = PotentialCoeffs::zeros(cfg.lengths(), 4);
  for (std::size_t j = 0; j < truth.edge_count(); ++j) {
    for (std::size_t n = 0; n < 4; ++n) truth.coeffs[j][n] = raw.potentials.coeffs[j][n];
  }
  PotentialRecoveryProblem pp;
  pp.lengths = cfg.lengths();
  pp.chords = cfg.chords();
  pp.order = 4;
  pp.observed = sample_phi(cfg.with_potentials(truth), SampleGridSpec::uniform(0.2, 20.0, 200));
  const PotentialCoeffs start = PotentialCoeffs::zeros(cfg.lengths(), 4);
  const double s3 = seconds([&] { potential_residual_system(pp, start, Execution::Serial); }, 3);
  const double p3 = seconds([&] { potential_residual_system(pp, start, Execution::Parallel); }, 3);
  row("Gauss-Newton assembly", s3, p3);
  return 0;
}
