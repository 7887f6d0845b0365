// Compares the serial per-term reference against the OpenMP kernel for the
// growth-rate sequence, and the plain serial sum against the deterministic
// block sum. Run manually: build/bench/bench_asymptotics [N_max]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "torsionlab/asymptotics.hpp"
#include "torsionlab/parallel.hpp"

namespace tl = torsionlab;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t n_max = argc > 1 ? std::atoll(argv[1]) : 2000000;
  const int n = 2, j = 1;
  const tl::EigenvalueIndex ev = tl::eigenvalue_index(n, j);
  const tl::LaurentPolynomial delta = tl::alexander_torus(n);

  std::printf("threads: %d, N_max: %lld (n=%d, j=%d, p_k=%d)\n", tl::max_threads(),
              static_cast<long long>(n_max), n, j, ev.p_k);

  double t0 = now_ms();
  double serial = 0.0;
  for (std::int64_t i = 1; i <= n_max; ++i)
    serial += tl::torsion_log_term<tl::Cplx>(delta, ev.xi, i);
  double t1 = now_ms();
  std::printf("serial loop:        %10.1f ms  sum %.15g\n", t1 - t0, serial);

  t0 = now_ms();
  const double blocked = tl::block_sum(1, n_max + 1, [&](std::int64_t i) {
    return tl::torsion_log_term<tl::Cplx>(delta, ev.xi, i);
  });
  t1 = now_ms();
  std::printf("omp block_sum:      %10.1f ms  sum %.15g  |delta| %.3g\n", t1 - t0,
              blocked, std::fabs(blocked - serial));

  t0 = now_ms();
  const auto rep = tl::leading_coefficient_sequence(n, j, n_max);
  t1 = now_ms();
  std::printf("sequence kernel:    %10.1f ms  seq(N_max) %.15g  limit %.15g\n", t1 - t0,
              rep.sequence.back(), rep.predicted_limit);

  const std::int64_t small = std::min<std::int64_t>(n_max, 300);
  t0 = now_ms();
  const auto ref = tl::leading_coefficient_sequence_serial(n, j, small);
  t1 = now_ms();
  double worst = 0.0;
  for (size_t i = 0; i < ref.N.size(); ++i)
    worst = std::max(worst, std::fabs(ref.sequence[i] - rep.sequence[i]));
  std::printf("serial reference:   %10.1f ms  (N_max=%lld)  max |kernel - ref| %.3g\n",
              t1 - t0, static_cast<long long>(small), worst);
  return 0;
}
