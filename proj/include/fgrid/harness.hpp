#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "fgrid/config.hpp"
#include "fgrid/csv.hpp"
#include "fgrid/edge.hpp"

namespace fgrid {

struct RunReport {
  std::vector<double> abs_errors;
  double max_error = std::numeric_limits<double>::quiet_NaN();
  double l2_error = std::numeric_limits<double>::quiet_NaN();
  double cond_psi = std::numeric_limits<double>::quiet_NaN();
  double imag_l2 = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::string, double>> stage_seconds;
};

namespace harness_detail {

class StageTimer {
 public:
  explicit StageTimer(RunReport& report) : report_(report) {}
  void mark(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    report_.stage_seconds.emplace_back(
        name, std::chrono::duration<double>(now - last_).count());
    last_ = now;
  }

 private:
  RunReport& report_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

struct Problem {
  SamplingPattern pattern;
  ComplexVector fhat;
  PiecewiseFunction fn;
  bool has_truth = false;
};

inline SamplingPattern make_pattern(const ExperimentConfig& cfg, int n) {
  switch (cfg.sampling) {
    case SamplingKind::uniform: return uniform_pattern(n);
    case SamplingKind::jittered: return jittered_pattern(n, cfg.theta, cfg.seed);
    case SamplingKind::logarithmic: return logarithmic_pattern(n, cfg.v);
    case SamplingKind::custom:
      throw std::invalid_argument("custom sampling requires a data file");
  }
  throw std::invalid_argument("unknown sampling kind");
}

inline WindowSpec make_window(const ExperimentConfig& cfg) {
  if (cfg.window == WindowKind::constant) return constant_window();
  return exponential_window(cfg.window_a);
}

inline PiecewiseFunction make_function(const ExperimentConfig& cfg) {
  if (cfg.function == FunctionId::ex41) return ex41();
  if (cfg.function == FunctionId::ex42) return ex42();
  throw std::invalid_argument("function=none requires a data file");
}

inline Problem make_problem(const ExperimentConfig& cfg, int n) {
  Problem pr;
  if (!cfg.data.empty()) {
    std::ifstream is(cfg.data);
    if (!is) throw std::invalid_argument("cannot open data file: " + cfg.data);
    const SampledData data = load_samples(is);
    pr.pattern = pattern_from_lambdas(data.lambdas);
    pr.fhat = data.fhat;
    pr.has_truth = false;
  } else {
    pr.fn = make_function(cfg);
    pr.pattern = make_pattern(cfg, n);
    pr.fhat = sample_fourier(pr.fn, pr.pattern);
    pr.has_truth = true;
  }
  if (cfg.noise_sigma > 0.0) perturb_samples(pr.fhat, cfg.noise_sigma, cfg.seed);
  return pr;
}

inline int resolve_m(const ExperimentConfig& cfg, int n) {
  if (!(cfg.m_factor > 0.0))
    throw std::invalid_argument("m-factor must be positive");
  return std::max(1, int(std::ceil(cfg.m_factor * double(n))));
}

inline int resolve_grid(const ExperimentConfig& cfg, int m) {
  const int grid = cfg.grid > 0 ? cfg.grid : default_grid_size(m);
  if (grid < 2 * m + 1)
    throw std::invalid_argument("grid must have at least 2m+1 points");
  return grid;
}

// Coefficient route shared by reconstruction and edge detection.
inline CoefficientVector route_coeffs(const ExperimentConfig& cfg,
                                      const SpectralSystem& sys,
                                      const ComplexVector& data) {
  switch (cfg.method) {
    case Method::fa:
      return frame_coeffs(sys, data);
    case Method::fcg: {
      DcfOperator D = optimal_banded(sys, resolve_r(cfg, sys.pattern.n));
      if (cfg.dcf_real) D.take_real_part();
      return fcg_coeffs(sys, D, data);
    }
    case Method::cg: {
      const DcfOperator D = trapezoid_dcf(sys.pattern);
      CoefficientVector c = regrid(sys, D, data, cfg.q);
      apply_filter(c, cfg.filter);
      return c;
    }
  }
  throw std::invalid_argument("unknown method");
}

inline void error_stats(const std::vector<cd>& recon, const std::vector<double>& truth,
                        RunReport& report) {
  report.abs_errors.resize(recon.size());
  double max_err = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < recon.size(); ++i) {
    const double e = std::abs(recon[i] - truth[i]);
    report.abs_errors[i] = e;
    max_err = std::max(max_err, e);
    sq += e * e;
  }
  report.max_error = max_err;
  report.l2_error = std::sqrt(sq / double(recon.size()));
}

inline std::string config_comment(const ExperimentConfig& cfg) {
  return "config: " + to_string(cfg);
}

inline double maybe_cond(const SpectralSystem& sys) {
  if (sys.Psi.rows() > 600) return std::numeric_limits<double>::quiet_NaN();
  return condition_number(sys.Psi);
}

} // namespace harness_detail

struct ReconstructionRun {
  RunReport report;
  csv::Table table;
};

// Writes columns x, reconstruction, truth, abs_error. The truth and error
// columns are nan when samples come from an external data file.
inline ReconstructionRun run_reconstruction(const ExperimentConfig& cfg) {
  ReconstructionRun run;
  harness_detail::StageTimer timer(run.report);

  const auto problem = harness_detail::make_problem(cfg, cfg.n);
  const int n = problem.pattern.n;
  const int m = harness_detail::resolve_m(cfg, n);
  const int grid = harness_detail::resolve_grid(cfg, m);
  const WindowSpec window = harness_detail::make_window(cfg);
  const SpectralSystem sys = build_system(problem.pattern, window, m);
  timer.mark("assemble");

  const CoefficientVector coeffs = harness_detail::route_coeffs(cfg, sys, problem.fhat);
  timer.mark("coefficients");

  const std::vector<cd> recon = evaluate(coeffs, window, grid);
  timer.mark("evaluate");

  run.report.cond_psi = harness_detail::maybe_cond(sys);
  std::vector<double> truth;
  if (problem.has_truth) {
    truth.resize(std::size_t(grid));
    for (int p = 0; p < grid; ++p)
      truth[std::size_t(p)] = eval(problem.fn, double(p) / double(grid));
    harness_detail::error_stats(recon, truth, run.report);
  }
  timer.mark("report");

  run.table.comments = {harness_detail::config_comment(cfg), "artifact: reconstruction"};
  run.table.header = {"x", "reconstruction", "truth", "abs_error"};
  const std::string nan_cell = "nan";
  for (int p = 0; p < grid; ++p) {
    const std::size_t i = std::size_t(p);
    run.table.rows.push_back(
        {csv::fmt_cell(double(p) / double(grid)), csv::fmt_cell(recon[i].real()),
         problem.has_truth ? csv::fmt_cell(truth[i]) : nan_cell,
         problem.has_truth ? csv::fmt_cell(run.report.abs_errors[i]) : nan_cell});
  }
  return run;
}

struct ConvergenceRow {
  int n = 0;
  std::string r_label;
  int r = 0;
  double max_error = 0.0;
  double l2_error = 0.0;
};

struct ConvergenceRun {
  std::vector<ConvergenceRow> rows;
  csv::Table table;
};

// Sweeps the configured n list with bandwidths r in {1, ceil(log2 n), n+1}.
inline ConvergenceRun run_convergence(const ExperimentConfig& cfg) {
  if (cfg.n_list.empty())
    throw std::invalid_argument("convergence: empty n list");
  if (!cfg.data.empty())
    throw std::invalid_argument("convergence: external data files are not supported");
  ConvergenceRun run;
  const WindowSpec window = harness_detail::make_window(cfg);
  const PiecewiseFunction fn = harness_detail::make_function(cfg);

  for (int n : cfg.n_list) {
    const SamplingPattern pattern = harness_detail::make_pattern(cfg, n);
    ComplexVector fhat = sample_fourier(fn, pattern);
    if (cfg.noise_sigma > 0.0) perturb_samples(fhat, cfg.noise_sigma, cfg.seed);
    const int m = harness_detail::resolve_m(cfg, n);
    const int grid = harness_detail::resolve_grid(cfg, m);
    const SpectralSystem sys = build_system(pattern, window, m);
    const ComplexMatrix T = system_t_matrix(sys);
    const ComplexMatrix psi_adj = sys.Psi.adjoint();

    std::vector<double> truth(static_cast<std::size_t>(grid));
    for (int p = 0; p < grid; ++p)
      truth[std::size_t(p)] = eval(fn, double(p) / double(grid));

    const int r_log = std::max(1, int(std::ceil(std::log2(double(n)))));
    const std::pair<std::string, int> sweeps[] = {
        {"1", 1}, {"log2", r_log}, {"full", n + 1}};
    for (const auto& [label, r] : sweeps) {
      DcfOperator D = optimal_banded_from(T, psi_adj, n, r);
      if (cfg.dcf_real) D.take_real_part();
      const CoefficientVector coeffs = fcg_coeffs(sys, D, fhat);
      const std::vector<cd> recon = evaluate(coeffs, window, grid);
      RunReport stats;
      harness_detail::error_stats(recon, truth, stats);
      run.rows.push_back({n, label, r, stats.max_error, stats.l2_error});
    }
  }

  run.table.comments = {harness_detail::config_comment(cfg), "artifact: convergence"};
  run.table.header = {"n", "r", "max_error", "l2_error"};
  for (const auto& row : run.rows)
    run.table.rows.push_back({std::to_string(row.n), row.r_label,
                              csv::fmt_cell(row.max_error), csv::fmt_cell(row.l2_error)});
  return run;
}

struct EdgeRun {
  RunReport report;
  csv::Table map_table;   // x, edge_map, target_edge_field, abs_error
  csv::Table jumps_table; // location, amplitude, true_location, true_amplitude
  JumpEstimate detected;
  JumpList true_jumps;
};

inline EdgeRun run_edges(const ExperimentConfig& cfg) {
  EdgeRun run;
  harness_detail::StageTimer timer(run.report);

  const auto problem = harness_detail::make_problem(cfg, cfg.n);
  const int n = problem.pattern.n;
  const int m = harness_detail::resolve_m(cfg, n);
  const int grid = harness_detail::resolve_grid(cfg, m);
  const WindowSpec window = harness_detail::make_window(cfg);

  EdgeConfig ecfg;
  ecfg.epsilon = resolve_epsilon(cfg, n);
  ecfg.bump_b = cfg.bump_b;
  ecfg.threshold = cfg.threshold;
  ecfg.min_amplitude = cfg.min_jump;

  const SpectralSystem sys = build_system(problem.pattern, window, m);
  timer.mark("assemble");

  const ComplexVector conc = concentration_coeffs(problem.pattern, problem.fhat, ecfg);
  const CoefficientVector coeffs = harness_detail::route_coeffs(cfg, sys, conc);
  timer.mark("coefficients");

  const EdgeMap map = edge_map_from_coeffs(coeffs, window, grid);
  run.report.imag_l2 = map.imag_l2;
  run.report.cond_psi = harness_detail::maybe_cond(sys);
  run.detected = locate_jumps(map.values, ecfg);
  timer.mark("evaluate");

  std::vector<double> target;
  if (problem.has_truth) {
    run.true_jumps = jumps(problem.fn);
    target = target_edge_field(run.true_jumps, ecfg, grid);
    std::vector<cd> map_cd(map.values.begin(), map.values.end());
    harness_detail::error_stats(map_cd, target, run.report);
  }
  timer.mark("report");

  run.map_table.comments = {harness_detail::config_comment(cfg), "artifact: edge_map"};
  run.map_table.header = {"x", "edge_map", "target_edge_field", "abs_error"};
  for (int p = 0; p < grid; ++p) {
    const std::size_t i = std::size_t(p);
    run.map_table.rows.push_back(
        {csv::fmt_cell(double(p) / double(grid)), csv::fmt_cell(map.values[i]),
         problem.has_truth ? csv::fmt_cell(target[i]) : "nan",
         problem.has_truth ? csv::fmt_cell(run.report.abs_errors[i]) : "nan"});
  }

  run.jumps_table.comments = {harness_detail::config_comment(cfg), "artifact: jumps"};
  run.jumps_table.header = {"location", "amplitude", "true_location", "true_amplitude"};
  for (const auto& peak : run.detected) {
    std::string tloc = "nan", tamp = "nan";
    if (!run.true_jumps.empty()) {
      const Jump* best = nullptr;
      for (const auto& jmp : run.true_jumps)
        if (best == nullptr ||
            std::abs(jmp.xi - peak.location) < std::abs(best->xi - peak.location))
          best = &jmp;
      tloc = csv::fmt_cell(best->xi);
      tamp = csv::fmt_cell(best->amplitude);
    }
    run.jumps_table.rows.push_back(
        {csv::fmt_cell(peak.location), csv::fmt_cell(peak.amplitude), tloc, tamp});
  }
  return run;
}

struct DcfRun {
  DcfOperator dcf;
  csv::Table table;
};

// Diagonal operators dump as (index, value); banded ones as (row, col, value).
inline DcfRun run_dcf_dump(const ExperimentConfig& cfg) {
  DcfRun run;
  const SamplingPattern pattern = harness_detail::make_pattern(cfg, cfg.n);
  const int n = pattern.n;
  if (cfg.dcf_kind == DcfKind::trapezoid) {
    run.dcf = trapezoid_dcf(pattern);
  } else {
    const WindowSpec window = harness_detail::make_window(cfg);
    const SpectralSystem sys = build_system(pattern, window,
                                            harness_detail::resolve_m(cfg, n));
    run.dcf = optimal_banded(sys, resolve_r(cfg, n));
  }
  if (cfg.dcf_real) run.dcf.take_real_part();

  run.table.comments = {harness_detail::config_comment(cfg), "artifact: dcf"};
  if (run.dcf.diagonal()) {
    run.table.header = {"index", "value"};
    for (int j = -n; j <= n; ++j)
      run.table.rows.push_back(
          {std::to_string(j), csv::fmt_cell(run.dcf.entry(j + n, j + n))});
  } else {
    run.table.header = {"row", "col", "value"};
    for (int j = 0; j < run.dcf.size(); ++j)
      for (int off = -(run.dcf.r - 1); off <= run.dcf.r - 1; ++off) {
        const int i = j + off;
        if (i < 0 || i >= run.dcf.size()) continue;
        run.table.rows.push_back({std::to_string(i - n), std::to_string(j - n),
                                  csv::fmt_cell(run.dcf.entry(i, j))});
      }
  }
  return run;
}

// Plain-text pattern dump, prefixed with the config line.
inline std::string run_sample(const ExperimentConfig& cfg) {
  const SamplingPattern pattern = harness_detail::make_pattern(cfg, cfg.n);
  std::ostringstream os;
  os << "# " << harness_detail::config_comment(cfg) << "\n";
  save_pattern(pattern, os);
  return os.str();
}

inline void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path);
}

// Derived path for the second edge-detection CSV: stem + "_jumps" + extension.
inline std::string jumps_path(const std::string& out) {
  const auto dot = out.find_last_of('.');
  const auto slash = out.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out + "_jumps";
  return out.substr(0, dot) + "_jumps" + out.substr(dot);
}

struct RegressResult {
  bool ok = true;
  int files = 0;
  std::vector<std::string> messages;
};

namespace harness_detail {

inline bool cells_match(const std::string& a, const std::string& b, double rtol,
                        double atol, std::string& why) {
  const auto za = csv::parse_complex(a);
  const auto zb = csv::parse_complex(b);
  if (za && zb) {
    const bool nan_a = std::isnan(za->real()) || std::isnan(za->imag());
    const bool nan_b = std::isnan(zb->real()) || std::isnan(zb->imag());
    if (nan_a || nan_b) {
      if (nan_a && nan_b) return true;
      why = "nan mismatch";
      return false;
    }
    const double diff = std::abs(*za - *zb);
    const double bound = atol + rtol * std::max(std::abs(*za), std::abs(*zb));
    if (diff <= bound) return true;
    why = "|" + a + " - " + b + "| = " + detail::fmt17(diff) + " > " +
          detail::fmt17(bound);
    return false;
  }
  if (a == b) return true;
  why = "'" + a + "' != '" + b + "'";
  return false;
}

inline const std::string* find_config_comment(const std::vector<std::string>& comments) {
  for (const auto& c : comments)
    if (c.rfind("config: ", 0) == 0) return &c;
  return nullptr;
}

inline std::string artifact_kind(const std::vector<std::string>& comments) {
  for (const auto& c : comments)
    if (c.rfind("artifact: ", 0) == 0) return c.substr(10);
  return "";
}

inline csv::Table regenerate(const ExperimentConfig& cfg, const std::string& artifact) {
  switch (cfg.task) {
    case Task::reconstruct: return run_reconstruction(cfg).table;
    case Task::convergence: return run_convergence(cfg).table;
    case Task::dcf: return run_dcf_dump(cfg).table;
    case Task::edges: {
      const EdgeRun e = run_edges(cfg);
      return artifact == "jumps" ? e.jumps_table : e.map_table;
    }
    case Task::sample:
      throw std::invalid_argument("sample artifacts are text, not CSV");
  }
  throw std::invalid_argument("unknown task in baseline config");
}

} // namespace harness_detail

// Re-runs the config embedded in every baseline file and compares fresh output
// column by column. Numeric cells use |a-b| <= atol + rtol*max(|a|,|b|).
inline RegressResult regress_against(const std::string& baseline_dir, double rtol = 1e-9,
                                     double atol = 1e-12,
                                     const std::string& fresh_dir = "") {
  namespace fs = std::filesystem;
  RegressResult result;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(baseline_dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  for (const auto& path : files) {
    const std::string ext = path.extension().string();
    if (ext != ".csv" && ext != ".txt") continue;
    ++result.files;
    const std::string name = path.filename().string();
    try {
      if (ext == ".txt") {
        std::ifstream is(path, std::ios::binary);
        std::stringstream buffer;
        buffer << is.rdbuf();
        const std::string baseline = buffer.str();
        const auto pos = baseline.find("# config: ");
        if (pos == std::string::npos)
          throw std::runtime_error("no config line");
        const auto eol = baseline.find('\n', pos);
        const ExperimentConfig cfg =
            parse_config(baseline.substr(pos + 10, eol - pos - 10));
        const std::string fresh = run_sample(cfg);
        if (!fresh_dir.empty()) write_text_file(fresh, fresh_dir + "/" + name);
        if (fresh != baseline) {
          result.ok = false;
          result.messages.push_back(name + ": text differs");
        }
        continue;
      }
      const csv::Table baseline = csv::read_file(path.string());
      const std::string* cfg_comment =
          harness_detail::find_config_comment(baseline.comments);
      if (cfg_comment == nullptr) throw std::runtime_error("no config comment");
      const ExperimentConfig cfg = parse_config(cfg_comment->substr(8));
      const csv::Table fresh = harness_detail::regenerate(
          cfg, harness_detail::artifact_kind(baseline.comments));
      if (!fresh_dir.empty()) csv::write_file(fresh, fresh_dir + "/" + name);

      if (fresh.header != baseline.header) {
        result.ok = false;
        result.messages.push_back(name + ": header differs");
        continue;
      }
      if (fresh.rows.size() != baseline.rows.size()) {
        result.ok = false;
        result.messages.push_back(name + ": row count differs");
        continue;
      }
      for (std::size_t r = 0; r < fresh.rows.size() && result.messages.size() < 50; ++r) {
        if (fresh.rows[r].size() != baseline.rows[r].size()) {
          result.ok = false;
          result.messages.push_back(name + ": row " + std::to_string(r) + " width differs");
          continue;
        }
        for (std::size_t c = 0; c < fresh.rows[r].size(); ++c) {
          std::string why;
          if (!harness_detail::cells_match(baseline.rows[r][c], fresh.rows[r][c], rtol,
                                           atol, why)) {
            result.ok = false;
            result.messages.push_back(name + ": row " + std::to_string(r) + " col " +
                                      std::to_string(c) + ": " + why);
          }
        }
      }
    } catch (const std::exception& e) {
      result.ok = false;
      result.messages.push_back(name + ": " + e.what());
    }
  }
  return result;
}

} // namespace fgrid
