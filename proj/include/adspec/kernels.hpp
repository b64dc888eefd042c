#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "adspec/sat.hpp"

// Data-parallel inner loops, each in an OpenMP flavor and a serial reference
// flavor. Every parallel kernel assigns each output element to exactly one
// thread and accumulates it in a fixed order, so the two flavors produce
// bit-identical results for any thread count.

namespace adspec::kernels {

struct EnumerationResult {
  std::uint64_t count = 0;
  std::uint32_t lowest = 0xffffffffu; // lowest satisfying assignment, or 0xffffffff
};

EnumerationResult count_satisfying(int n, std::span<const Clause> clauses);
EnumerationResult count_satisfying_serial(int n, std::span<const Clause> clauses);

/// Early-exit variant for rejection sampling: stops once `cap` satisfying
/// assignments have been seen. Returns min(count, cap).
EnumerationResult count_satisfying_capped(int n, std::span<const Clause> clauses,
                                          std::uint64_t cap);

/// Per-basis-state violated-clause counts, length 2^n.
std::vector<std::int32_t> violated_table(int n, std::span<const Clause> clauses);
std::vector<std::int32_t> violated_table_serial(int n, std::span<const Clause> clauses);

/// out[i] = diag[i] * v[i] + coupling * sum_k v[i ^ (1 << k)]
void apply_diag_hamming1(std::span<const double> diag, double coupling,
                         std::span<const double> v, std::span<double> out);
void apply_diag_hamming1_serial(std::span<const double> diag, double coupling,
                                std::span<const double> v, std::span<double> out);

/// Partial trace of |psi><psi| keeping the listed qubits (distinct, each < n).
/// Reduced index bit p corresponds to kept[p].
Eigen::MatrixXd partial_trace(std::span<const double> amplitudes, int n,
                              std::span<const int> kept);
Eigen::MatrixXd partial_trace_serial(std::span<const double> amplitudes, int n,
                                     std::span<const int> kept);

} // namespace adspec::kernels
