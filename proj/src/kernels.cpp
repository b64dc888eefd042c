#include "adspec/kernels.hpp"

#include <cstddef>
#include <stdexcept>

namespace adspec::kernels {
namespace {

struct FlatClauses {
  std::vector<std::uint32_t> masks;
  std::vector<std::uint32_t> values;
};

FlatClauses flatten(std::span<const Clause> clauses) {
  FlatClauses f;
  f.masks.reserve(clauses.size());
  f.values.reserve(clauses.size());
  for (const Clause& c : clauses) {
    f.masks.push_back(c.falsify_mask());
    f.values.push_back(c.falsify_value());
  }
  return f;
}

void check_enumeration_n(int n) {
  if (n < 0 || n > kMaxEnumerationVars)
    throw std::invalid_argument("enumeration requires 0 <= n <= " +
                                std::to_string(kMaxEnumerationVars));
}

bool satisfies(const FlatClauses& f, std::uint32_t a) {
  const std::size_t m = f.masks.size();
  for (std::size_t j = 0; j < m; ++j)
    if ((a & f.masks[j]) == f.values[j]) return false;
  return true;
}

int log2_dim(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim)
    throw std::invalid_argument("vector length is not a power of two");
  return n;
}

} // namespace

EnumerationResult count_satisfying_serial(int n, std::span<const Clause> clauses) {
  check_enumeration_n(n);
  const FlatClauses f = flatten(clauses);
  const std::uint64_t dim = std::uint64_t{1} << n;
  EnumerationResult r;
  for (std::uint64_t a = 0; a < dim; ++a) {
    if (satisfies(f, static_cast<std::uint32_t>(a))) {
      ++r.count;
      if (a < r.lowest) r.lowest = static_cast<std::uint32_t>(a);
    }
  }
  return r;
}

EnumerationResult count_satisfying(int n, std::span<const Clause> clauses) {
  check_enumeration_n(n);
  const FlatClauses f = flatten(clauses);
  const long long dim = 1ll << n;
  std::uint64_t count = 0;
  std::uint32_t lowest = 0xffffffffu;
#pragma omp parallel for schedule(static) reduction(+ : count) reduction(min : lowest)
  for (long long a = 0; a < dim; ++a) {
    if (satisfies(f, static_cast<std::uint32_t>(a))) {
      ++count;
      if (static_cast<std::uint32_t>(a) < lowest) lowest = static_cast<std::uint32_t>(a);
    }
  }
  return {count, lowest};
}

EnumerationResult count_satisfying_capped(int n, std::span<const Clause> clauses,
                                          std::uint64_t cap) {
  check_enumeration_n(n);
  const FlatClauses f = flatten(clauses);
  const std::uint64_t dim = std::uint64_t{1} << n;
  // Fixed block decomposition: the early exit happens on block boundaries
  // only, so the result is independent of the thread count.
  const std::uint64_t block = std::uint64_t{1} << 16;
  EnumerationResult r;
  for (std::uint64_t lo = 0; lo < dim; lo += block) {
    const long long hi = static_cast<long long>(lo + block < dim ? lo + block : dim);
    std::uint64_t count = 0;
    std::uint32_t lowest = 0xffffffffu;
#pragma omp parallel for schedule(static) reduction(+ : count) reduction(min : lowest)
    for (long long a = static_cast<long long>(lo); a < hi; ++a) {
      if (satisfies(f, static_cast<std::uint32_t>(a))) {
        ++count;
        if (static_cast<std::uint32_t>(a) < lowest) lowest = static_cast<std::uint32_t>(a);
      }
    }
    r.count += count;
    if (lowest < r.lowest) r.lowest = lowest;
    if (r.count >= cap) break;
  }
  if (r.count > cap) r.count = cap;
  return r;
}

std::vector<std::int32_t> violated_table_serial(int n, std::span<const Clause> clauses) {
  check_enumeration_n(n);
  const FlatClauses f = flatten(clauses);
  const std::size_t m = f.masks.size();
  std::vector<std::int32_t> table(std::size_t{1} << n);
  for (std::size_t a = 0; a < table.size(); ++a) {
    std::int32_t v = 0;
    for (std::size_t j = 0; j < m; ++j)
      if ((static_cast<std::uint32_t>(a) & f.masks[j]) == f.values[j]) ++v;
    table[a] = v;
  }
  return table;
}

std::vector<std::int32_t> violated_table(int n, std::span<const Clause> clauses) {
  check_enumeration_n(n);
  const FlatClauses f = flatten(clauses);
  const std::size_t m = f.masks.size();
  std::vector<std::int32_t> table(std::size_t{1} << n);
  const long long dim = static_cast<long long>(table.size());
#pragma omp parallel for schedule(static)
  for (long long a = 0; a < dim; ++a) {
    std::int32_t v = 0;
    for (std::size_t j = 0; j < m; ++j)
      if ((static_cast<std::uint32_t>(a) & f.masks[j]) == f.values[j]) ++v;
    table[static_cast<std::size_t>(a)] = v;
  }
  return table;
}

void apply_diag_hamming1_serial(std::span<const double> diag, double coupling,
                                std::span<const double> v, std::span<double> out) {
  const std::size_t dim = v.size();
  if (diag.size() != dim || out.size() != dim)
    throw std::invalid_argument("apply: length mismatch");
  const int n = log2_dim(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += v[i ^ (std::size_t{1} << k)];
    out[i] = diag[i] * v[i] + coupling * acc;
  }
}

void apply_diag_hamming1(std::span<const double> diag, double coupling,
                         std::span<const double> v, std::span<double> out) {
  const std::size_t dim = v.size();
  if (diag.size() != dim || out.size() != dim)
    throw std::invalid_argument("apply: length mismatch");
  const int n = log2_dim(dim);
  const long long d = static_cast<long long>(dim);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < d; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += v[u ^ (std::size_t{1} << k)];
    out[u] = diag[u] * v[u] + coupling * acc;
  }
}

namespace {

struct TraceIndex {
  std::vector<std::size_t> kept_index; // scatter of the reduced index
  std::vector<std::size_t> env_index;  // scatter of the environment index
};

TraceIndex trace_index(std::size_t dim, int n, std::span<const int> kept) {
  std::uint32_t kept_mask = 0;
  for (int q : kept) {
    if (q < 0 || q >= n) throw std::invalid_argument("partial_trace: qubit index out of range");
    const std::uint32_t bit = 1u << q;
    if (kept_mask & bit) throw std::invalid_argument("partial_trace: duplicate qubit index");
    kept_mask |= bit;
  }
  TraceIndex ix;
  ix.kept_index.resize(std::size_t{1} << kept.size());
  for (std::size_t a = 0; a < ix.kept_index.size(); ++a) {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < kept.size(); ++p)
      if (a & (std::size_t{1} << p)) idx |= std::size_t{1} << kept[p];
    ix.kept_index[a] = idx;
  }
  std::vector<int> env;
  for (int q = 0; q < n; ++q)
    if (!(kept_mask & (1u << q))) env.push_back(q);
  ix.env_index.resize(std::size_t{1} << env.size());
  for (std::size_t e = 0; e < ix.env_index.size(); ++e) {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < env.size(); ++p)
      if (e & (std::size_t{1} << p)) idx |= std::size_t{1} << env[p];
    ix.env_index[e] = idx;
  }
  (void)dim;
  return ix;
}

} // namespace

Eigen::MatrixXd partial_trace_serial(std::span<const double> amplitudes, int n,
                                     std::span<const int> kept) {
  const std::size_t dim = amplitudes.size();
  if (dim != (std::size_t{1} << n)) throw std::invalid_argument("partial_trace: length mismatch");
  const TraceIndex ix = trace_index(dim, n, kept);
  const std::size_t r = ix.kept_index.size();
  Eigen::MatrixXd rho(r, r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a; b < r; ++b) {
      const std::size_t ia = ix.kept_index[a];
      const std::size_t ib = ix.kept_index[b];
      double acc = 0.0;
      for (std::size_t e = 0; e < ix.env_index.size(); ++e)
        acc += amplitudes[ia | ix.env_index[e]] * amplitudes[ib | ix.env_index[e]];
      rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
      rho(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = acc;
    }
  }
  return rho;
}

Eigen::MatrixXd partial_trace(std::span<const double> amplitudes, int n,
                              std::span<const int> kept) {
  const std::size_t dim = amplitudes.size();
  if (dim != (std::size_t{1} << n)) throw std::invalid_argument("partial_trace: length mismatch");
  const TraceIndex ix = trace_index(dim, n, kept);
  const std::size_t r = ix.kept_index.size();
  Eigen::MatrixXd rho(r, r);
  const long long rows = static_cast<long long>(r);
#pragma omp parallel for schedule(static)
  for (long long a = 0; a < rows; ++a) {
    for (std::size_t b = static_cast<std::size_t>(a); b < r; ++b) {
      const std::size_t ia = ix.kept_index[static_cast<std::size_t>(a)];
      const std::size_t ib = ix.kept_index[b];
      double acc = 0.0;
      for (std::size_t e = 0; e < ix.env_index.size(); ++e)
        acc += amplitudes[ia | ix.env_index[e]] * amplitudes[ib | ix.env_index[e]];
      rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
      rho(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = acc;
    }
  }
  return rho;
}

} // namespace adspec::kernels
