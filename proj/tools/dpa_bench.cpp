// Throughput benchmark: single-chain growth speed, then the ensemble kernel
// with the serial reference (workers=1) against OpenMP worker counts. The
// two paths must produce identical count matrices; this also spot-checks
// that while timing.

#include <chrono>
#include <cstdio>
#include <cstdint>

#include "dpa/ensemble.hpp"
#include "dpa/params.hpp"
#include "dpa/simulator.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int main(int argc, char** argv) {
  const std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10)
                                   : 200000;
  const int runs = argc > 2 ? int(std::strtol(argv[2], nullptr, 10)) : 200;
  const auto params = dpa::ModelParams::validate(0.5, 0.5, 1.0, 1.0);

  {
    auto t0 = Clock::now();
    auto result = dpa::grow(params, n, 42);
    const double dt = seconds_since(t0);
    std::printf("single chain: n=%llu  %.3f s  %.1f Msteps/s  (total=%llu)\n",
                (unsigned long long)n, dt, double(n) / dt / 1e6,
                (unsigned long long)result.counts.total());
  }

  dpa::EnsembleSpec spec{params, n, runs, 7ULL, dpa::IndexWindow::make(2, 2),
                         1};
  dpa::EnsembleCounts reference;
  for (int workers : {1, 2, 4}) {
    spec.workers = workers;
    auto t0 = Clock::now();
    auto counts = dpa::run_ensemble(spec);
    const double dt = seconds_since(t0);
    const double steps = double(n) * runs;
    const char* match = "reference";
    if (workers == 1) {
      reference = counts;
    } else {
      match = counts.counts == reference.counts ? "identical" : "MISMATCH";
    }
    std::printf("ensemble: workers=%d  runs=%d  %.3f s  %.1f Msteps/s  [%s]\n",
                workers, runs, dt, steps / dt / 1e6, match);
  }
  return 0;
}
