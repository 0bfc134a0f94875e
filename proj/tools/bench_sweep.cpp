// Times the OpenMP trial loop against the serial reference on the same
// workload and verifies both produce identical records.
#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cfmimo/harness.hpp"

int main(int argc, char** argv) {
  using clock = std::chrono::steady_clock;
  using namespace cfmimo;

  SimConfig cfg;
  cfg.trials = argc > 1 ? std::stoi(argv[1]) : 64;
  cfg.snr_db = {-8.0, -4.0};
  cfg.detectors = {DetectorKind::SoftIc, DetectorKind::List};
  cfg.idd_iters = 2;

  const LdpcCode& code = default_code();

  const auto t0 = clock::now();
  const auto serial = sweep_serial(cfg, code);
  const auto t1 = clock::now();
  const auto parallel = sweep(cfg, code);
  const auto t2 = clock::now();

  const double serial_s = std::chrono::duration<double>(t1 - t0).count();
  const double parallel_s = std::chrono::duration<double>(t2 - t1).count();

  std::cout << "trials per point: " << cfg.trials << "\n";
#ifdef _OPENMP
  std::cout << "threads:          " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads:          1 (built without OpenMP)\n";
#endif
  std::cout << "serial:           " << serial_s << " s\n"
            << "parallel:         " << parallel_s << " s\n"
            << "speedup:          " << serial_s / parallel_s << "x\n";

  if (serial != parallel) {
    std::cerr << "MISMATCH between serial and parallel records\n";
    return 1;
  }
  std::cout << "records identical: yes\n";
  return 0;
}
