// Experiment CLI: reconstruction, DCF dumps, convergence sweeps, edge
// detection, and CSV regression checks from non-uniform Fourier samples.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "fgrid/fgrid.hpp"

namespace {

using namespace fgrid;

struct CommonOpts {
  std::string function = "ex41";
  std::string data;
  std::string sampling;
  std::string window = "exp:a=5e-05";
  std::string method = "fcg";
  std::string r = "log2";
  double m_factor = 1.0;
  int grid = 0;
  std::uint64_t seed = 0;
  std::string q = "full";
  std::string filter = "none";
  std::string noise = "0";
  bool dcf_real = false;
  std::string eps = "const:0.02";
  std::string bump = "gaussian:b=5";
  double threshold = 0.3;
  double min_jump = 0.25;
  std::string dcf_kind = "frame";
  std::string n_list = "16,32,64,128";
  std::string out;
};

void add_sampling_options(CLI::App* cmd, CommonOpts& o, bool required) {
  auto* opt = cmd->add_option("--sampling", o.sampling,
                              "jittered:n=..,theta=.. | log:n=..,v=.. | uniform:n=..");
  if (required) opt->required();
  cmd->add_option("--seed", o.seed,
                  "RNG seed; every run is bit-reproducible for a fixed seed "
                  "(counter-based generator, order-independent draws)");
}

void add_window_option(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--window", o.window, "exp:a=<real> | const (default exp:a=5e-05)");
}

void add_system_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--m-factor", o.m_factor, "mode half-width m = ceil(factor * n)");
  cmd->add_option("--r", o.r, "DCF bandwidth: integer | log2 | full");
  cmd->add_flag("--dcf-real", o.dcf_real, "use the real part of the computed DCFs");
}

void add_function_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--function", o.function, "ex41 | ex42");
  cmd->add_option("--data", o.data,
                  "three-column sample file (lambda, Re fhat, Im fhat); "
                  "overrides --function/--sampling");
  cmd->add_option("--noise", o.noise,
                  "sigma=<real>: std of a complex Gaussian perturbation of the samples");
}

void add_reconstruct_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--grid", o.grid, "evaluation grid size (default max(1024, 4(2m+1)))");
  cmd->add_option("--q", o.q, "gridding kernel truncation radius, or 'full' (cg only)");
  cmd->add_option("--filter", o.filter, "exp:p=<int>,c=<real> | none (cg only)");
  cmd->add_option("--method", o.method, "fa | cg | fcg");
}

ExperimentConfig to_config(const CommonOpts& o, Task task) {
  ExperimentConfig cfg;
  cfg.task = task;
  if (o.function == "ex41") cfg.function = FunctionId::ex41;
  else if (o.function == "ex42") cfg.function = FunctionId::ex42;
  else throw std::invalid_argument("unknown function: " + o.function);
  cfg.data = o.data;
  if (!o.data.empty()) cfg.function = FunctionId::none;
  if (!o.sampling.empty()) parse_sampling_spec(o.sampling, cfg);
  else if (o.data.empty()) throw std::invalid_argument("--sampling (or --data) is required");
  else cfg.sampling = SamplingKind::custom;
  parse_window_spec(o.window, cfg);
  if (o.method == "fa") cfg.method = Method::fa;
  else if (o.method == "cg") cfg.method = Method::cg;
  else if (o.method == "fcg") cfg.method = Method::fcg;
  else throw std::invalid_argument("unknown method: " + o.method);
  parse_r_spec(o.r, cfg);
  cfg.m_factor = o.m_factor;
  cfg.grid = o.grid;
  cfg.seed = o.seed;
  if (o.q == "full") cfg.q.reset();
  else cfg.q = detail::to_double(o.q, "q");
  parse_filter_spec(o.filter, cfg);
  std::string sigma = o.noise;
  if (sigma.rfind("sigma=", 0) == 0) sigma = sigma.substr(6);
  cfg.noise_sigma = detail::to_double(sigma, "noise");
  cfg.dcf_real = o.dcf_real;
  parse_eps_spec(o.eps, cfg);
  parse_bump_spec(o.bump, cfg);
  cfg.threshold = o.threshold;
  cfg.min_jump = o.min_jump;
  if (o.dcf_kind == "trapezoid") cfg.dcf_kind = DcfKind::trapezoid;
  else if (o.dcf_kind == "frame") cfg.dcf_kind = DcfKind::frame;
  else throw std::invalid_argument("unknown dcf kind: " + o.dcf_kind);
  cfg.n_list.clear();
  std::istringstream ss(o.n_list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) cfg.n_list.push_back(detail::to_int(item, "n-list"));
  return cfg;
}

void print_report(const RunReport& r) {
  std::printf("max_error=%.6e  l2_error=%.6e", r.max_error, r.l2_error);
  if (!std::isnan(r.cond_psi)) std::printf("  cond_psi=%.3e", r.cond_psi);
  if (!std::isnan(r.imag_l2)) std::printf("  imag_residue_l2=%.3e", r.imag_l2);
  std::printf("\n");
  for (const auto& [name, sec] : r.stage_seconds)
    std::printf("  %-14s %8.3f s\n", name.c_str(), sec);
}

int dispatch(const std::string& sub, const CommonOpts& o, double tol_rel, double tol_abs,
             const std::string& regress_dir) {
  if (sub == "regress") {
    const RegressResult res = regress_against(regress_dir, tol_rel, tol_abs, o.out);
    std::printf("%d file(s) checked\n", res.files);
    for (const auto& msg : res.messages) std::printf("  %s\n", msg.c_str());
    if (!res.ok) {
      std::printf("REGRESSION FAILED\n");
      return 1;
    }
    std::printf("regression OK\n");
    return 0;
  }

  if (o.out.empty()) throw std::invalid_argument("--out is required");

  if (sub == "sample") {
    write_text_file(run_sample(to_config(o, Task::sample)), o.out);
    std::printf("wrote %s\n", o.out.c_str());
  } else if (sub == "dcf") {
    const DcfRun run = run_dcf_dump(to_config(o, Task::dcf));
    csv::write_file(run.table, o.out);
    std::printf("wrote %s (%zu entries", o.out.c_str(), run.table.rows.size());
    if (!run.dcf.degenerate_columns.empty())
      std::printf(", %zu degenerate columns", run.dcf.degenerate_columns.size());
    std::printf(")\n");
  } else if (sub == "reconstruct") {
    const ReconstructionRun run = run_reconstruction(to_config(o, Task::reconstruct));
    csv::write_file(run.table, o.out);
    std::printf("wrote %s\n", o.out.c_str());
    print_report(run.report);
  } else if (sub == "convergence") {
    const ConvergenceRun run = run_convergence(to_config(o, Task::convergence));
    csv::write_file(run.table, o.out);
    std::printf("wrote %s\n", o.out.c_str());
    for (const auto& row : run.rows)
      std::printf("  n=%4d  r=%-5s  max=%.6e  l2=%.6e\n", row.n, row.r_label.c_str(),
                  row.max_error, row.l2_error);
  } else if (sub == "edges") {
    const EdgeRun run = run_edges(to_config(o, Task::edges));
    csv::write_file(run.map_table, o.out);
    const std::string jpath = jumps_path(o.out);
    csv::write_file(run.jumps_table, jpath);
    std::printf("wrote %s and %s\n", o.out.c_str(), jpath.c_str());
    std::printf("%zu jump(s) detected\n", run.detected.size());
    for (const auto& pk : run.detected)
      std::printf("  x=%.6f  amplitude=%+.6f\n", pk.location, pk.amplitude);
    print_report(run.report);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fgrid: function reconstruction and jump detection from "
               "non-uniform Fourier samples (frame approximation, convolutional "
               "gridding, and frame-theoretic DCFs)"};
  app.require_subcommand(1);

  CommonOpts o;
  double tol_rel = 1e-9, tol_abs = 1e-12;
  std::string regress_dir;

  auto* sample = app.add_subcommand("sample", "generate a sampling pattern");
  add_sampling_options(sample, o, true);
  sample->add_option("--out", o.out, "output text file")->required();

  auto* dcf = app.add_subcommand("dcf", "dump density compensation factors");
  add_sampling_options(dcf, o, true);
  add_window_option(dcf, o);
  add_system_options(dcf, o);
  dcf->add_option("--dcf", o.dcf_kind, "trapezoid | frame");
  dcf->add_option("--out", o.out, "output CSV")->required();

  auto* rec = app.add_subcommand("reconstruct", "recover a function on a uniform grid");
  add_function_options(rec, o);
  add_sampling_options(rec, o, false);
  add_window_option(rec, o);
  add_system_options(rec, o);
  add_reconstruct_options(rec, o);
  rec->add_option("--out", o.out, "output CSV (x, reconstruction, truth, abs_error)")
      ->required();

  auto* conv = app.add_subcommand("convergence", "error sweep over n and bandwidth r");
  add_function_options(conv, o);
  add_sampling_options(conv, o, true);
  add_window_option(conv, o);
  conv->add_option("--m-factor", o.m_factor, "mode half-width m = ceil(factor * n)");
  conv->add_option("--n-list", o.n_list, "comma-separated n values");
  conv->add_option("--out", o.out, "output CSV (n, r, max_error, l2_error)")->required();

  auto* edg = app.add_subcommand("edges", "detect jump discontinuities");
  add_function_options(edg, o);
  add_sampling_options(edg, o, false);
  add_window_option(edg, o);
  add_system_options(edg, o);
  edg->add_option("--grid", o.grid, "evaluation grid size");
  edg->add_option("--method", o.method, "fa | cg | fcg");
  edg->add_option("--eps-policy", o.eps, "const:<v> | power:<c>,<gamma> (eps_n = c n^-gamma)");
  edg->add_option("--bump", o.bump, "gaussian:b=<real>");
  edg->add_option("--threshold", o.threshold, "peak acceptance fraction of the global max");
  edg->add_option("--min-jump", o.min_jump, "absolute peak acceptance floor");
  edg->add_option("--out", o.out, "output CSV; a *_jumps.csv is written alongside")
      ->required();

  auto* reg = app.add_subcommand("regress", "re-run configs embedded in baseline CSVs and compare");
  reg->add_option("dir", regress_dir, "baseline directory")->required();
  reg->add_option("--out", o.out, "optional directory for the fresh outputs");
  reg->add_option("--tol-rel", tol_rel, "relative tolerance for numeric cells");
  reg->add_option("--tol-abs", tol_abs, "absolute tolerance for numeric cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), o, tol_rel, tol_abs,
                    regress_dir);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
