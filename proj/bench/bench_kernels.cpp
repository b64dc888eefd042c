// Timing table: serial reference kernels vs the OpenMP flavors, with a
// check that both produce identical output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adspec/hamiltonian.hpp"
#include "adspec/kernels.hpp"
#include "adspec/rng.hpp"
#include "adspec/sat.hpp"

using namespace adspec;

namespace {

template <class F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(stop - start).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-22s %10.3f ms %10.3f ms %7.2fx   %s\n", name, serial * 1e3, parallel * 1e3,
              serial / parallel, same ? "identical" : "MISMATCH");
}

} // namespace

int main() {
  const int n = 18;
  const SatInstance inst = generate_single_solution_instance(n, 3.0, 12345);
  const std::size_t N = std::size_t{1} << n;

#ifdef _OPENMP
  std::printf("n=%d, %d threads\n\n", n, omp_get_max_threads());
#else
  std::printf("n=%d, OpenMP disabled\n\n", n);
#endif
  std::printf("%-22s %13s %13s %9s   %s\n", "kernel", "serial", "parallel", "speedup", "check");

  {
    kernels::EnumerationResult a, b;
    const double ts = time_best_of(3, [&] { a = kernels::count_satisfying_serial(n, inst.clauses); });
    const double tp = time_best_of(3, [&] { b = kernels::count_satisfying(n, inst.clauses); });
    row("count_satisfying", ts, tp, a.count == b.count && a.lowest == b.lowest);
  }
  {
    std::vector<std::int32_t> a, b;
    const double ts = time_best_of(3, [&] { a = kernels::violated_table_serial(n, inst.clauses); });
    const double tp = time_best_of(3, [&] { b = kernels::violated_table(n, inst.clauses); });
    row("violated_table", ts, tp, a == b);
  }
  {
    Rng rng(7);
    std::vector<double> diag(N), v(N), a(N), b(N);
    for (std::size_t i = 0; i < N; ++i) {
      diag[i] = rng.normal();
      v[i] = rng.normal();
    }
    const double ts =
        time_best_of(5, [&] { kernels::apply_diag_hamming1_serial(diag, -0.25, v, a); });
    const double tp = time_best_of(5, [&] { kernels::apply_diag_hamming1(diag, -0.25, v, b); });
    row("apply_diag_hamming1", ts, tp, a == b);
  }
  {
    Rng rng(11);
    std::vector<double> psi(N);
    double norm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      psi[i] = rng.normal();
      norm += psi[i] * psi[i];
    }
    norm = std::sqrt(norm);
    for (double& x : psi) x /= norm;
    const std::vector<int> kept{0, 1, 2, 3, 4, 5, 6, 7, 8};
    Eigen::MatrixXd a, b;
    const double ts = time_best_of(3, [&] { a = kernels::partial_trace_serial(psi, n, kept); });
    const double tp = time_best_of(3, [&] { b = kernels::partial_trace(psi, n, kept); });
    row("partial_trace", ts, tp, a == b);
  }
  return 0;
}
