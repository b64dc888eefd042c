#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace adspec {

/// Assignments are packed into a word: bit k (least significant = variable 0)
/// holds the value of variable k. Exhaustive enumeration is capped here.
inline constexpr int kMaxEnumerationVars = 24;

struct Literal {
  int variable = 0;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// A 3-literal clause in canonical form: variable indices pairwise distinct
/// and stored in increasing order.
struct Clause {
  std::array<Literal, 3> literals;

  /// The clause is violated exactly when all three literals evaluate false,
  /// i.e. when the three relevant bits match the falsifying pattern
  /// (positive literal -> bit 0, negated -> bit 1).
  bool violated_by(std::uint32_t assignment) const {
    return (assignment & falsify_mask()) == falsify_value();
  }

  std::uint32_t falsify_mask() const {
    return (1u << literals[0].variable) | (1u << literals[1].variable) |
           (1u << literals[2].variable);
  }
  std::uint32_t falsify_value() const {
    std::uint32_t v = 0;
    for (const Literal& l : literals)
      if (l.negated) v |= 1u << l.variable;
    return v;
  }

  /// Packed key for duplicate detection; equal keys iff equal canonical clauses.
  std::uint32_t key() const {
    std::uint32_t k = 0;
    for (const Literal& l : literals)
      k = (k << 6) | (static_cast<std::uint32_t>(l.variable) << 1) | (l.negated ? 1u : 0u);
    return k;
  }

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Make a canonical clause from three literals; throws std::invalid_argument
/// on duplicate variables or indices outside [0, n).
Clause make_clause(Literal a, Literal b, Literal c, int n);

struct SatInstance {
  int n = 0;
  std::vector<Clause> clauses;
  double alpha = 0.0;          // always m/n
  std::uint32_t solution = 0;  // the unique satisfying assignment
  std::uint64_t seed = 0;
  long long tries = 0;         // accepted on this try of the rejection sampler

  int m() const { return static_cast<int>(clauses.size()); }

  friend bool operator==(const SatInstance&, const SatInstance&) = default;
};

/// Number of clauses whose three literals all evaluate false under the
/// assignment. Throws std::invalid_argument when the assignment has bits set
/// at or above position n.
int violated_count(const SatInstance& instance, std::uint32_t assignment);

/// Exact model count by full enumeration of 2^n assignments (n <= 24).
/// If solution_out is non-null and the count is >= 1, the lowest satisfying
/// assignment is stored there.
std::uint64_t count_solutions(int n, std::span<const Clause> clauses,
                              std::uint32_t* solution_out = nullptr);

/// Same enumeration, stopping as soon as `cap` solutions are found.
/// Returns min(count, cap).
std::uint64_t count_solutions_capped(int n, std::span<const Clause> clauses, std::uint64_t cap,
                                     std::uint32_t* solution_out = nullptr);

/// Rejection sampling for single-solution random 3-SAT: each try draws
/// m = round(alpha*n) distinct canonical clauses (3 distinct variables
/// uniformly without replacement, each literal negated with probability 1/2,
/// clause collisions redrawn) and accepts iff the instance has exactly one
/// satisfying assignment. Deterministic for fixed (n, alpha, seed).
/// Throws GenerationError when max_tries is exhausted.
SatInstance generate_single_solution_instance(int n, double alpha, std::uint64_t seed,
                                              long long max_tries = 100000);

/// Extended DIMACS CNF. Comment lines carry the solution bitstring
/// (leftmost character = variable 0), the generator seed, the try count and
/// alpha; read_dimacs re-verifies the single-solution invariant.
void write_dimacs(const SatInstance& instance, std::ostream& out);
SatInstance read_dimacs(std::istream& in);
void write_dimacs_file(const SatInstance& instance, const std::string& path);
SatInstance read_dimacs_file(const std::string& path);

/// Bitstring helpers for the DIMACS solution line ("101" -> bits).
std::uint32_t parse_bits(const std::string& s, int n);
std::string format_bits(std::uint32_t bits, int n);

} // namespace adspec
