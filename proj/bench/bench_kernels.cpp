// Wall-clock comparison of the OpenMP kernels against their serial references.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "rotres/operators.hpp"
#include "rotres/random_field.hpp"

using namespace rotres;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int L = argc > 1 ? std::atoi(argv[1]) : 12;
  const int N = argc > 2 ? std::atoi(argv[2]) : 8;
  std::printf("threads: %d\n", omp_get_max_threads());

  std::size_t np = 0, ns = 0;
  const double tp = best_of(3, [&] { np = enumerate_resonant_triads(L, EnumerationMode::nontrivial_only).triads.size(); });
  const double ts = best_of(3, [&] { ns = enumerate_resonant_triads_serial(L, EnumerationMode::nontrivial_only).triads.size(); });
  std::printf("enumerate nontrivial L=%d: parallel %.3fs serial %.3fs (%zu / %zu triads)\n", L, tp, ts, np, ns);

  const auto R = resonant_interactions(N);
  const auto a = helical_decompose(random_field(N, 1));
  const auto b = helical_decompose(random_field(N, 2));
  const double bp = best_of(20, [&] { (void)R->apply(a, b); });
  const double bs = best_of(20, [&] { (void)R->apply_serial(a, b); });
  std::printf("B_R triad sum N=%d (%zu terms): parallel %.3fms serial %.3fms\n", N, R->term_count(), bp * 1e3,
              bs * 1e3);
  return 0;
}
