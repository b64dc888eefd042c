#include "adspec/sat.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "adspec/errors.hpp"
#include "adspec/kernels.hpp"
#include "adspec/rng.hpp"
#include "adspec/version.hpp"

namespace adspec {
namespace {

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

long long max_distinct_clauses(int n) {
  const long long nc = n;
  return nc * (nc - 1) * (nc - 2) / 6 * 8;
}

} // namespace

Clause make_clause(Literal a, Literal b, Literal c, int n) {
  Clause cl{{a, b, c}};
  for (const Literal& l : cl.literals)
    if (l.variable < 0 || l.variable >= n)
      throw std::invalid_argument("clause variable out of range");
  std::sort(cl.literals.begin(), cl.literals.end(),
            [](const Literal& x, const Literal& y) { return x.variable < y.variable; });
  if (cl.literals[0].variable == cl.literals[1].variable ||
      cl.literals[1].variable == cl.literals[2].variable)
    throw std::invalid_argument("clause variables must be distinct");
  return cl;
}

int violated_count(const SatInstance& instance, std::uint32_t assignment) {
  if (instance.n < 32 && (assignment >> instance.n) != 0)
    throw std::invalid_argument("assignment has bits beyond variable count");
  int v = 0;
  for (const Clause& c : instance.clauses)
    if (c.violated_by(assignment)) ++v;
  return v;
}

std::uint64_t count_solutions(int n, std::span<const Clause> clauses,
                              std::uint32_t* solution_out) {
  const auto r = kernels::count_satisfying(n, clauses);
  if (solution_out && r.count >= 1) *solution_out = r.lowest;
  return r.count;
}

std::uint64_t count_solutions_capped(int n, std::span<const Clause> clauses, std::uint64_t cap,
                                     std::uint32_t* solution_out) {
  const auto r = kernels::count_satisfying_capped(n, clauses, cap);
  if (solution_out && r.count >= 1) *solution_out = r.lowest;
  return r.count;
}

SatInstance generate_single_solution_instance(int n, double alpha, std::uint64_t seed,
                                              long long max_tries) {
  if (n < 3 || n > kMaxEnumerationVars)
    throw std::invalid_argument("generation requires 3 <= n <= " +
                                std::to_string(kMaxEnumerationVars));
  const long long m = std::llround(alpha * n);
  if (m < 1) throw std::invalid_argument("round(alpha*n) must be >= 1");
  if (m > max_distinct_clauses(n))
    throw std::invalid_argument("more clauses requested than distinct canonical clauses exist");
  if (max_tries < 1) throw std::invalid_argument("max_tries must be >= 1");

  Rng rng(seed);
  std::vector<Clause> clauses(static_cast<std::size_t>(m));
  std::unordered_set<std::uint32_t> keys;
  for (long long attempt = 1; attempt <= max_tries; ++attempt) {
    keys.clear();
    for (long long j = 0; j < m; ++j) {
      for (;;) {
        const int v0 = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        int v1;
        do v1 = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        while (v1 == v0);
        int v2;
        do v2 = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        while (v2 == v0 || v2 == v1);
        const Clause c = make_clause({v0, rng.coin()}, {v1, rng.coin()}, {v2, rng.coin()}, n);
        if (keys.insert(c.key()).second) {
          clauses[static_cast<std::size_t>(j)] = c;
          break;
        }
      }
    }
    const auto r = kernels::count_satisfying_capped(n, clauses, 2);
    if (r.count == 1) {
      SatInstance inst;
      inst.n = n;
      inst.clauses = clauses;
      inst.alpha = static_cast<double>(m) / n;
      inst.solution = r.lowest;
      inst.seed = seed;
      inst.tries = attempt;
      return inst;
    }
  }
  throw GenerationError("no single-solution instance found in " + std::to_string(max_tries) +
                            " tries (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")",
                        max_tries);
}

std::uint32_t parse_bits(const std::string& s, int n) {
  if (static_cast<int>(s.size()) != n)
    throw std::invalid_argument("bitstring length " + std::to_string(s.size()) +
                                ", expected " + std::to_string(n));
  std::uint32_t bits = 0;
  for (int k = 0; k < n; ++k) {
    if (s[static_cast<std::size_t>(k)] == '1')
      bits |= 1u << k;
    else if (s[static_cast<std::size_t>(k)] != '0')
      throw std::invalid_argument("bitstring must contain only 0 and 1");
  }
  return bits;
}

std::string format_bits(std::uint32_t bits, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int k = 0; k < n; ++k)
    if (bits & (1u << k)) s[static_cast<std::size_t>(k)] = '1';
  return s;
}

void write_dimacs(const SatInstance& instance, std::ostream& out) {
  out << "c " << kVersion << "\n";
  out << "c solution " << format_bits(instance.solution, instance.n) << "\n";
  out << "c seed " << instance.seed << "\n";
  out << "c tries " << instance.tries << "\n";
  out << "c alpha " << shortest(instance.alpha) << "\n";
  out << "p cnf " << instance.n << " " << instance.m() << "\n";
  for (const Clause& c : instance.clauses) {
    for (const Literal& l : c.literals)
      out << (l.negated ? -(l.variable + 1) : (l.variable + 1)) << " ";
    out << "0\n";
  }
}

SatInstance read_dimacs(std::istream& in) {
  SatInstance inst;
  bool have_header = false;
  bool have_solution = false;
  bool have_alpha = false;
  std::string solution_bits;
  double alpha_comment = 0.0;
  int m_declared = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue; // blank line
    if (tok == "c") {
      std::string key;
      if (!(ls >> key)) continue;
      if (key == "solution") {
        if (!(ls >> solution_bits)) throw ParseError("missing solution bitstring", lineno);
        have_solution = true;
      } else if (key == "seed") {
        if (!(ls >> inst.seed)) throw ParseError("malformed seed", lineno);
      } else if (key == "tries") {
        if (!(ls >> inst.tries)) throw ParseError("malformed tries", lineno);
      } else if (key == "alpha") {
        if (!(ls >> alpha_comment)) throw ParseError("malformed alpha", lineno);
        have_alpha = true;
      }
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      if (have_header) throw ParseError("duplicate p line", lineno);
      if (!(ls >> fmt >> inst.n >> m_declared) || fmt != "cnf")
        throw ParseError("malformed header, expected 'p cnf n m'", lineno);
      if (inst.n < 1 || inst.n > kMaxEnumerationVars)
        throw ParseError("variable count outside [1, " +
                             std::to_string(kMaxEnumerationVars) + "]",
                         lineno);
      if (m_declared < 0) throw ParseError("negative clause count", lineno);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("clause before 'p cnf' header", lineno);
    std::istringstream cs(line);
    int lits[3];
    int terminator;
    if (!(cs >> lits[0] >> lits[1] >> lits[2] >> terminator) || terminator != 0)
      throw ParseError("expected three literals and terminating 0", lineno);
    int extra;
    if (cs >> extra) throw ParseError("trailing tokens after clause terminator", lineno);
    Literal parsed[3];
    for (int j = 0; j < 3; ++j) {
      if (lits[j] == 0) throw ParseError("literal 0 inside clause", lineno);
      const int var = std::abs(lits[j]) - 1;
      if (var >= inst.n) throw ParseError("literal exceeds variable count", lineno);
      parsed[j] = Literal{var, lits[j] < 0};
    }
    try {
      inst.clauses.push_back(make_clause(parsed[0], parsed[1], parsed[2], inst.n));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!have_header) throw ParseError("missing 'p cnf' header");
  if (inst.m() != m_declared)
    throw ParseError("clause count " + std::to_string(inst.m()) + " does not match declared " +
                     std::to_string(m_declared));
  std::unordered_set<std::uint32_t> keys;
  for (const Clause& c : inst.clauses)
    if (!keys.insert(c.key()).second) throw ParseError("duplicate clause");

  std::uint32_t derived = 0;
  const std::uint64_t count = count_solutions_capped(inst.n, inst.clauses, 2, &derived);
  if (count != 1)
    throw ParseError("instance has " + std::string(count == 0 ? "no" : "multiple") +
                     " satisfying assignments, expected exactly one");
  if (have_solution) {
    std::uint32_t stated;
    try {
      stated = parse_bits(solution_bits, inst.n);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("solution line: ") + e.what());
    }
    if (violated_count(inst, stated) != 0)
      throw ParseError("stated solution violates a clause");
    if (stated != derived) throw ParseError("stated solution is not the satisfying assignment");
    inst.solution = stated;
  } else {
    inst.solution = derived;
  }
  inst.alpha = static_cast<double>(inst.m()) / inst.n;
  if (have_alpha && std::abs(alpha_comment - inst.alpha) > 1e-12)
    throw ParseError("alpha comment disagrees with m/n");
  return inst;
}

void write_dimacs_file(const SatInstance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  write_dimacs(instance, out);
  out.flush();
  if (!out) throw ParseError("write failed for " + path);
}

SatInstance read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return read_dimacs(in);
}

} // namespace adspec
