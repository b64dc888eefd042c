#include "adspec/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adspec/eigen.hpp"
#include "adspec/entangle.hpp"
#include "adspec/errors.hpp"
#include "adspec/gaps.hpp"
#include "adspec/hamiltonian.hpp"
#include "adspec/sat.hpp"
#include "adspec/spectral.hpp"
#include "adspec/version.hpp"

namespace adspec {
namespace {

namespace fs = std::filesystem;

constexpr long long kGenerateMaxTries = 100000;

std::vector<double> make_t_grid(const RunConfig& c) {
  std::vector<double> grid(static_cast<std::size_t>(c.t_points));
  if (c.t_points == 1) {
    grid[0] = c.t_start;
    return grid;
  }
  const double step = (c.t_stop - c.t_start) / (c.t_points - 1);
  for (int i = 0; i < c.t_points; ++i) grid[static_cast<std::size_t>(i)] = c.t_start + i * step;
  return grid;
}

std::string out_path(const RunConfig& c, const std::string& name) {
  return (fs::path(c.out_dir) / name).string();
}

SatInstance instance_for(const RunConfig& c) {
  return generate_single_solution_instance(c.n, c.alpha, c.seed, kGenerateMaxTries);
}

void emit(CommandResult& result, const RunConfig& c, const std::string& name,
          const std::string& body, const std::string& extra_header = {}) {
  const std::string path = out_path(c, name);
  write_file_atomic(path, output_header(c) + extra_header + body);
  result.files.push_back(path);
}

} // namespace

std::string output_header(const RunConfig& config) {
  std::string header = "# ";
  header += kVersion;
  header += "\n";
  std::istringstream in(serialize_config(config));
  std::string line;
  while (std::getline(in, line)) header += "# " + line + "\n";
  return header;
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ComputeError("cannot open " + tmp + " for writing");
    out << text;
    out.flush();
    if (!out) throw ComputeError("write failed for " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw ComputeError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

CommandResult cmd_generate(const RunConfig& config) {
  struct Row {
    std::uint64_t seed = 0;
    bool ok = false;
    long long tries = 0;
    std::string solution;
    SatInstance instance;
  };
  std::vector<Row> rows(static_cast<std::size_t>(config.count));
  const long long count = config.count;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    Row& row = rows[static_cast<std::size_t>(i)];
    row.seed = config.seed + static_cast<std::uint64_t>(i);
    try {
      row.instance =
          generate_single_solution_instance(config.n, config.alpha, row.seed, kGenerateMaxTries);
      row.ok = true;
      row.tries = row.instance.tries;
      row.solution = format_bits(row.instance.solution, config.n);
    } catch (const GenerationError& e) {
      row.tries = e.tries();
    }
  }

  CommandResult result;
  std::string manifest = "seed,status,tries,solution\n";
  for (const Row& row : rows) {
    if (row.ok) {
      const std::string path = out_path(config, "inst_" + std::to_string(row.seed) + ".cnf");
      std::ostringstream body;
      write_dimacs(row.instance, body);
      write_file_atomic(path, body.str());
      result.files.push_back(path);
    }
    manifest += std::to_string(row.seed);
    manifest += row.ok ? ",ok," : ",fail,";
    manifest += std::to_string(row.tries);
    manifest += ",";
    manifest += row.solution;
    manifest += "\n";
  }
  emit(result, config, "manifest.csv", manifest);
  return result;
}

CommandResult cmd_spectrum(const RunConfig& config) {
  const SatInstance inst = instance_for(config);
  const DiagonalFinal h1 = build_h1(inst);
  const std::vector<double> grid = make_t_grid(config);
  const auto N = static_cast<Eigen::Index>(h1.entries.size());
  std::vector<Eigen::VectorXd> spectra(grid.size());
  const long long T = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long long c = 0; c < T; ++c)
    spectra[static_cast<std::size_t>(c)] =
        eig_full(build_ht(h1, grid[static_cast<std::size_t>(c)])).values;

  std::string body = "t,index,energy\n";
  for (std::size_t c = 0; c < grid.size(); ++c)
    for (Eigen::Index i = 0; i < N; ++i) {
      body += format_double(grid[c]);
      body += ",";
      body += std::to_string(i);
      body += ",";
      body += format_double(spectra[c][i]);
      body += "\n";
    }
  CommandResult result;
  emit(result, config, "spectrum.csv", body,
       "# solution=" + format_bits(inst.solution, inst.n) + "\n");
  return result;
}

CommandResult cmd_stats(const RunConfig& config) {
  const SatInstance inst = instance_for(config);
  const EigenSystem sys = eig_full(build_ht(inst, config.t_snapshot));
  const std::string source = "seed=" + std::to_string(config.seed) +
                             ",t=" + format_double(config.t_snapshot);
  SpectralWindow window;
  if (config.window == "core")
    window = window_by_fraction(sys.values, config.window_lo, config.window_hi, source);
  else if (config.window == "low")
    window = window_low_energy(sys.values, 8, 1732.0 / 16384.0, source);
  else
    window = window_by_fraction(sys.values, 0.0, 1.0, source);
  const SpacingSample sample = unfold(window);

  std::string extra = "# window=" + config.window + " lo=" + format_double(window.lo) +
                      " hi=" + format_double(window.hi) +
                      " levels=" + std::to_string(window.energies.size()) + "\n";
  const auto raw = sample.fit.raw_coeffs();
  extra += "# fit_coeffs=" + format_double(raw[0]) + "," + format_double(raw[1]) + "," +
           format_double(raw[2]) + "," + format_double(raw[3]) + "\n";
  extra += "# clamped=" + std::to_string(sample.clamped) + "\n";

  const Histogram hist = histogram(sample, config.bin_width, config.s_max);
  std::string hist_body = "s,density,poisson,wigner_goe,semi_poisson\n";
  for (std::size_t j = 0; j < hist.density.size(); ++j) {
    const double s = hist.bin_center(j);
    hist_body += format_double(s) + "," + format_double(hist.density[j]) + "," +
                 format_double(reference_pdf(ReferenceLaw::poisson, s)) + "," +
                 format_double(reference_pdf(ReferenceLaw::wigner_goe, s)) + "," +
                 format_double(reference_pdf(ReferenceLaw::semi_poisson, s)) + "\n";
  }

  std::string cdf_body = "s,empirical,poisson,wigner_goe,semi_poisson\n";
  for (const auto& [s, f] : cumulative(sample))
    cdf_body += format_double(s) + "," + format_double(f) + "," +
                format_double(reference_cdf(ReferenceLaw::poisson, s)) + "," +
                format_double(reference_cdf(ReferenceLaw::wigner_goe, s)) + "," +
                format_double(reference_cdf(ReferenceLaw::semi_poisson, s)) + "\n";

  std::string ks_body = "law,ks_distance\n";
  for (ReferenceLaw law :
       {ReferenceLaw::poisson, ReferenceLaw::wigner_goe, ReferenceLaw::semi_poisson})
    ks_body += std::string(law_name(law)) + "," + format_double(ks_distance(sample, law)) + "\n";

  CommandResult result;
  emit(result, config, "stats_hist.csv", hist_body, extra);
  emit(result, config, "stats_cdf.csv", cdf_body, extra);
  emit(result, config, "stats_ks.csv", ks_body, extra);
  return result;
}

CommandResult cmd_entangle(const RunConfig& config) {
  const SatInstance inst = instance_for(config);
  const DiagonalFinal h1 = build_h1(inst);
  const std::vector<double> grid = make_t_grid(config);
  const auto N = static_cast<Eigen::Index>(h1.entries.size());
  Eigen::MatrixXd lambda(N, static_cast<Eigen::Index>(grid.size()));
  Eigen::MatrixXd entropy(N, static_cast<Eigen::Index>(grid.size()));
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const EigenSystem sys = eig_full(build_ht(h1, grid[c]));
    const auto col = static_cast<Eigen::Index>(c);
    const long long states = N;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < states; ++i) {
      StateVector state{inst.n, sys.vectors.col(static_cast<Eigen::Index>(i))};
      lambda(static_cast<Eigen::Index>(i), col) = ppt_avg(state);
      entropy(static_cast<Eigen::Index>(i), col) = entropy_half(state);
    }
  }

  const auto heatmap_body = [&](const Eigen::MatrixXd& map) {
    std::string body = "t,i,value\n";
    for (std::size_t c = 0; c < grid.size(); ++c)
      for (Eigen::Index i = 0; i < N; ++i)
        body += format_double(grid[c]) + "," + std::to_string(i) + "," +
                format_double(map(i, static_cast<Eigen::Index>(c))) + "\n";
    return body;
  };
  CommandResult result;
  emit(result, config, "lambda_min.csv", heatmap_body(lambda));
  emit(result, config, "entropy.csv", heatmap_body(entropy));
  return result;
}

CommandResult cmd_gaps(const RunConfig& config) {
  std::vector<int> sizes = config.n_list.empty() ? std::vector<int>{config.n} : config.n_list;

  std::string gaps_body = "seed,n,alpha,t_min,delta,tries\n";
  std::string stats_body = "n,alpha,count,mean,median,min,max\n";
  std::string hist_body = "n,s,density\n";
  std::vector<EnsembleGapStats> per_n;
  for (int n : sizes) {
    const long long count = config.count;
    std::vector<GapRecord> records(static_cast<std::size_t>(count));
    std::vector<char> ok(static_cast<std::size_t>(count), 0);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
      try {
        const SatInstance inst = generate_single_solution_instance(
            n, config.alpha, config.seed + static_cast<std::uint64_t>(i), kGenerateMaxTries);
        records[static_cast<std::size_t>(i)] =
            find_min_gap(inst, config.grid_step, config.tol);
        ok[static_cast<std::size_t>(i)] = 1;
      } catch (const GenerationError&) {
        // skipped seeds are visible as gaps in the CSV seed column
      }
    }
    std::vector<GapRecord> kept;
    for (long long i = 0; i < count; ++i)
      if (ok[static_cast<std::size_t>(i)]) kept.push_back(records[static_cast<std::size_t>(i)]);
    if (kept.size() < 2)
      throw ComputeError("n=" + std::to_string(n) + ": only " + std::to_string(kept.size()) +
                         " instances generated, need >= 2");
    for (const GapRecord& r : kept)
      gaps_body += std::to_string(r.seed) + "," + std::to_string(r.n) + "," +
                   format_double(r.alpha) + "," + format_double(r.t_min) + "," +
                   format_double(r.delta) + "," + std::to_string(r.tries) + "\n";
    const EnsembleGapStats stats = ensemble_stats(kept);
    stats_body += std::to_string(stats.n) + "," + format_double(stats.alpha) + "," +
                  std::to_string(stats.count) + "," + format_double(stats.mean) + "," +
                  format_double(stats.median) + "," + format_double(stats.min) + "," +
                  format_double(stats.max) + "\n";
    const Histogram hist =
        histogram(std::span<const double>(stats.normalized), config.bin_width, config.s_max);
    for (std::size_t j = 0; j < hist.density.size(); ++j)
      hist_body += std::to_string(n) + "," + format_double(hist.bin_center(j)) + "," +
                   format_double(hist.density[j]) + "\n";
    per_n.push_back(stats);
  }

  CommandResult result;
  emit(result, config, "gaps.csv", gaps_body);
  emit(result, config, "gap_stats.csv", stats_body);
  emit(result, config, "gap_hist.csv", hist_body);
  if (per_n.size() >= 3) {
    const ScalingTable table = scaling_table(per_n);
    std::string scaling_body = "n,count,median_over_n,mean_over_n,min,max,reference\n";
    for (const ScalingRow& r : table.rows)
      scaling_body += std::to_string(r.n) + "," + std::to_string(r.count) + "," +
                      format_double(r.median_over_n) + "," + format_double(r.mean_over_n) + "," +
                      format_double(r.min_delta) + "," + format_double(r.max_delta) + "," +
                      format_double(r.reference) + "\n";
    const std::string extra = "# rate=" + format_double(table.rate) +
                              " intercept=" + format_double(table.intercept) +
                              " reference_rate=" + format_double(table.reference_rate) + "\n";
    emit(result, config, "gap_scaling.csv", scaling_body, extra);
  }
  return result;
}

CommandResult cmd_flow(const RunConfig& config) {
  const SatInstance inst = instance_for(config);
  const std::vector<double> grid = make_t_grid(config);
  const Eigen::MatrixXd p = probability_flow(inst, grid);
  const std::vector<std::vector<int>> iso = flow_isolines(p, config.levels);

  std::string body = "t,i,p\n";
  for (std::size_t c = 0; c < grid.size(); ++c)
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      body += format_double(grid[c]) + "," + std::to_string(i) + "," +
              format_double(p(i, static_cast<Eigen::Index>(c))) + "\n";
  CommandResult result;
  emit(result, config, "flow_p.csv", body,
       "# solution=" + format_bits(inst.solution, inst.n) + "\n");

  for (std::size_t l = 0; l < config.levels.size(); ++l) {
    std::string iso_body = "t,index\n";
    for (std::size_t c = 0; c < grid.size(); ++c)
      iso_body += format_double(grid[c]) + "," + std::to_string(iso[l][c]) + "\n";
    emit(result, config, "flow_isoline_" + format_double(config.levels[l]) + ".csv", iso_body,
         "# level=" + format_double(config.levels[l]) + "\n");
  }
  return result;
}

CommandResult run_command(const RunConfig& config) {
  validate(config);
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw ConfigError("out_dir: cannot create " + config.out_dir + ": " + ec.message());
#ifdef _OPENMP
  if (config.jobs > 0) omp_set_num_threads(config.jobs);
#endif
  if (config.command == "generate") return cmd_generate(config);
  if (config.command == "spectrum") return cmd_spectrum(config);
  if (config.command == "stats") return cmd_stats(config);
  if (config.command == "entangle") return cmd_entangle(config);
  if (config.command == "gaps") return cmd_gaps(config);
  if (config.command == "flow") return cmd_flow(config);
  throw ConfigError("command: unknown command " + config.command);
}

} // namespace adspec
