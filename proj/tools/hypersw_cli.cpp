// Experiment harness: each subcommand writes one CSV (use `--out -` for
// standard output). Identical invocations with the same --seed produce
// byte-identical CSV, timing columns excepted.
#include "CLI11.hpp"

#include "hypersw/experiments.hpp"

#include <fstream>
#include <iostream>

using namespace hypersw;

namespace {

SliceLoss parse_loss(const std::string& s) {
  if (s == "ghsw") return SliceLoss::GHSW;
  if (s == "hhsw") return SliceLoss::HHSW;
  if (s == "swl") return SliceLoss::SWL;
  if (s == "swp") return SliceLoss::SWP;
  throw CLI::ValidationError("--loss", "expected one of ghsw/hhsw/swl/swp");
}

Model parse_model(const std::string& s) {
  if (s == "lorentz") return Model::Lorentz;
  if (s == "poincare") return Model::Poincare;
  throw CLI::ValidationError("--model", "expected lorentz or poincare");
}

void write_out(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  if (path == "-") {
    write_csv(std::cout, header, rows);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  write_csv(os, header, rows);
}

// Particle snapshot files: header x0,...,xD then one coordinate row per
// particle.
void write_snapshot(const std::string& path, const Matrix& pts) {
  std::vector<std::string> header;
  for (int j = 0; j < pts.cols(); ++j) header.push_back("x" + std::to_string(j));
  std::vector<std::vector<std::string>> rows;
  rows.reserve(pts.rows());
  for (int i = 0; i < pts.rows(); ++i) {
    std::vector<std::string> row;
    for (int j = 0; j < pts.cols(); ++j) row.push_back(format_double(pts(i, j)));
    rows.push_back(std::move(row));
  }
  write_out(path, header, rows);
}

Matrix read_snapshot(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open particle file: " + path);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {  // header
      first = false;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("particle file has no rows: " + path);
  Matrix pts(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) {
      throw std::runtime_error("ragged particle file: " + path);
    }
    for (size_t j = 0; j < rows[i].size(); ++j) pts(i, j) = rows[i][j];
  }
  return pts;
}

int run(int argc, char** argv) {
  CLI::App app{"Sliced optimal-transport discrepancies on hyperbolic space"};
  app.require_subcommand(1);

  // ---- bench ----
  BenchSpec bench;
  std::string bench_out = "-";
  auto* cmd_bench = app.add_subcommand("bench", "Runtime scaling of the estimators");
  cmd_bench->add_option("--n", bench.n_list, "Support sizes")->delimiter(',');
  cmd_bench->add_option("--method", bench.methods, "Methods (ghsw,hhsw,swl,swp,wexact)")
      ->delimiter(',');
  cmd_bench->add_option("--d", bench.d, "Intrinsic dimension");
  cmd_bench->add_option("--L", bench.num_projections, "Projection count");
  cmd_bench->add_option("--p", bench.order, "Order p");
  cmd_bench->add_option("--seed", bench.seed, "RNG seed");
  cmd_bench->add_option("--repeats", bench.repeats, "Timing repeats");
  cmd_bench->add_option("--threads", bench.threads, "Worker threads (0 = auto)");
  cmd_bench->add_option("--out", bench_out, "Output CSV path or -");

  // ---- curve-wnd ----
  CurveWndSpec cw;
  std::string cw_out = "-";
  auto* cmd_cw = app.add_subcommand("curve-wnd", "Distances against geodesic offset");
  cmd_cw->add_option("--n", cw.n, "Samples per measure");
  cmd_cw->add_option("--L", cw.num_projections, "Projection count");
  cmd_cw->add_option("--p", cw.order, "Order p");
  cmd_cw->add_option("--t-min", cw.t_min, "Grid start");
  cmd_cw->add_option("--t-max", cw.t_max, "Grid end");
  cmd_cw->add_option("--t-steps", cw.t_steps, "Grid points");
  cmd_cw->add_option("--seeds", cw.num_seeds, "Seeds to average");
  cmd_cw->add_option("--seed", cw.seed, "Base RNG seed");
  cmd_cw->add_option("--threads", cw.threads, "Worker threads (0 = auto)");
  cmd_cw->add_flag(
      "--no-exact", [&cw](std::int64_t) { cw.include_exact = false; },
      "Skip the exact reference solver");
  cmd_cw->add_option("--out", cw_out, "Output CSV path or -");

  // ---- curve-trees ----
  CurveTreesSpec ct;
  std::string ct_out = "-";
  auto* cmd_ct = app.add_subcommand("curve-trees", "Distances between tree embeddings");
  cmd_ct->add_option("--r", ct.branching, "Branching factor");
  cmd_ct->add_option("--depth", ct.depth, "Tree depth");
  cmd_ct->add_option("--tau", ct.taus, "Scale values")->delimiter(',');
  cmd_ct->add_option("--tau-base", ct.tau_base, "Reference scale");
  cmd_ct->add_option("--L", ct.num_projections, "Projection count");
  cmd_ct->add_option("--p", ct.order, "Order p");
  cmd_ct->add_option("--seeds", ct.num_seeds, "Seeds to average");
  cmd_ct->add_option("--seed", ct.seed, "Base RNG seed");
  cmd_ct->add_option("--threads", ct.threads, "Worker threads (0 = auto)");
  cmd_ct->add_option("--out", ct_out, "Output CSV path or -");

  // ---- flow ----
  std::string flow_preset = "wnd-near";
  std::string flow_loss = "ghsw";
  std::string flow_model;
  std::string flow_out = "-";
  std::vector<double> flow_mean;
  double flow_var = 0.1;
  double flow_lr = -1.0;
  int flow_iters = -1, flow_L = -1, flow_n = -1, flow_log_every = -1;
  double flow_p = -1.0;
  std::uint64_t flow_seed = 0;
  int flow_threads = 0;
  bool flow_show = false;
  bool flow_exact_exp = false;
  auto* cmd_flow = app.add_subcommand("flow", "Riemannian gradient flow toward a target");
  cmd_flow->add_option("--preset", flow_preset,
                       "wnd-near | wnd-far | mixture-near | mixture-far");
  cmd_flow->add_option("--loss", flow_loss, "ghsw | hhsw | swl | swp");
  cmd_flow->add_option("--model", flow_model, "lorentz | poincare");
  cmd_flow->add_option("--mean", flow_mean,
                       "Custom target mean (ambient coordinates, replaces the preset target)")
      ->delimiter(',');
  cmd_flow->add_option("--var", flow_var, "Custom target variance");
  cmd_flow->add_option("--lr", flow_lr, "Learning rate");
  cmd_flow->add_option("--iters", flow_iters, "Iterations");
  cmd_flow->add_option("--L", flow_L, "Projection count");
  cmd_flow->add_option("--n", flow_n, "Particles / batch size");
  cmd_flow->add_option("--p", flow_p, "Order p");
  cmd_flow->add_option("--log-every", flow_log_every, "Logging stride");
  cmd_flow->add_option("--seed", flow_seed, "RNG seed");
  cmd_flow->add_option("--threads", flow_threads, "Worker threads (0 = auto)");
  cmd_flow->add_flag("--exact-exp", flow_exact_exp, "Use the exponential-map ball step");
  cmd_flow->add_flag("--show-preset", flow_show, "Print the preset parameters and exit");
  std::string flow_init, flow_snapshots;
  cmd_flow->add_option("--init", flow_init, "Initial particle cloud CSV");
  cmd_flow->add_option("--snapshots", flow_snapshots,
                       "Write <prefix><iter>.csv particle snapshots at each log point");
  cmd_flow->add_option("--out", flow_out, "Output CSV path or -");

  // ---- sample-complexity ----
  SampleComplexitySpec sc;
  std::string sc_out = "-";
  auto* cmd_sc = app.add_subcommand("sample-complexity",
                                    "Estimator error between independent draws");
  cmd_sc->add_option("--n", sc.n_list, "Sample counts")->delimiter(',');
  cmd_sc->add_option("--d", sc.dims, "Dimensions")->delimiter(',');
  cmd_sc->add_option("--L", sc.num_projections, "Projection count");
  cmd_sc->add_option("--seeds", sc.num_seeds, "Seeds to average");
  cmd_sc->add_option("--seed", sc.seed, "Base RNG seed");
  cmd_sc->add_option("--threads", sc.threads, "Worker threads (0 = auto)");
  cmd_sc->add_flag(
      "--no-exact", [&sc](std::int64_t) { sc.include_exact = false; },
      "Skip the exact reference");
  cmd_sc->add_option("--out", sc_out, "Output CSV path or -");

  // ---- tree-embed ----
  TreeEmbedSpec te;
  std::string te_out = "-";
  auto* cmd_te = app.add_subcommand("tree-embed", "Embed a balanced tree in the disk");
  cmd_te->add_option("--r", te.branching, "Branching factor");
  cmd_te->add_option("--depth", te.depth, "Tree depth");
  cmd_te->add_option("--tau", te.tau, "Scale in (0,1)");
  cmd_te->add_option("--out", te_out, "Output CSV path or -");

  CLI11_PARSE(app, argc, argv);

  if (cmd_bench->parsed()) {
    std::vector<std::vector<std::string>> rows;
    for (const BenchRow& r : bench_runtime(bench)) {
      rows.push_back({r.method, std::to_string(r.n), format_double(r.seconds)});
    }
    write_out(bench_out, {"method", "n", "seconds"}, rows);
  } else if (cmd_cw->parsed()) {
    std::vector<std::vector<std::string>> rows;
    for (const CurveRow& r : curve_wnd(cw)) {
      rows.push_back({r.method, format_double(r.x), format_double(r.value)});
    }
    write_out(cw_out, {"method", "t", "value"}, rows);
  } else if (cmd_ct->parsed()) {
    std::vector<std::vector<std::string>> rows;
    for (const CurveRow& r : curve_trees(ct)) {
      rows.push_back({r.method, format_double(r.x), format_double(r.value)});
    }
    write_out(ct_out, {"method", "tau", "value"}, rows);
  } else if (cmd_flow->parsed()) {
    FlowPreset preset = make_flow_preset(flow_preset);
    preset.cfg.loss = parse_loss(flow_loss);
    if (!flow_model.empty()) preset.cfg.model = parse_model(flow_model);
    if (!flow_mean.empty()) {
      Vector m(flow_mean.size());
      for (size_t i = 0; i < flow_mean.size(); ++i) m[i] = flow_mean[i];
      preset.target = make_wrapped_mixture(
          {make_wrapped_normal_iso(LorentzPoint{renormalize_lorentz(std::move(m))}, flow_var)},
          Vector::Ones(1));
      preset.name = "custom";
    }
    if (flow_lr > 0) preset.cfg.learning_rate = flow_lr;
    if (flow_iters > 0) preset.cfg.iterations = flow_iters;
    if (flow_L > 0) preset.cfg.num_projections = flow_L;
    if (flow_n > 0) preset.cfg.batch_size = flow_n;
    if (flow_p >= 1.0) preset.cfg.order = flow_p;
    if (flow_log_every > 0) preset.cfg.log_every = flow_log_every;
    preset.cfg.seed = flow_seed;
    preset.cfg.threads = flow_threads;
    preset.cfg.poincare_exact_exp = flow_exact_exp;
    if (flow_show) {
      std::cout << describe_flow_preset(preset);
      return 0;
    }
    preset.cfg.record_snapshots = !flow_snapshots.empty();
    FlowResult res;
    if (!flow_init.empty()) {
      const Matrix init = read_snapshot(flow_init);
      preset.cfg.batch_size = static_cast<int>(init.rows());
      res = run_flow(preset_target_sampler(preset), preset.cfg, {}, &init);
    } else {
      res = run_flow_preset(preset);
    }
    std::vector<std::vector<std::string>> rows;
    for (const FlowRow& r : res.log) {
      rows.push_back({std::to_string(r.iter), format_double(r.w2_exact),
                      format_double(r.loss_estimate), format_double(r.wallclock_ms)});
    }
    write_out(flow_out, {"iter", "w2_exact", "loss_estimate", "wallclock_ms"}, rows);
    for (size_t i = 0; i < res.snapshots.size(); ++i) {
      write_snapshot(flow_snapshots + std::to_string(res.log[i].iter) + ".csv",
                     res.snapshots[i]);
    }
  } else if (cmd_sc->parsed()) {
    std::vector<std::vector<std::string>> rows;
    for (const SampleComplexityRow& r : sample_complexity(sc)) {
      rows.push_back({r.method, std::to_string(r.d), std::to_string(r.n),
                      format_double(r.mean_value)});
    }
    write_out(sc_out, {"method", "d", "n", "mean_value"}, rows);
  } else if (cmd_te->parsed()) {
    write_out(te_out, {"node_id", "parent_id", "x", "y"}, tree_embed_rows(te));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const FlowBlowupError& e) {
    std::cerr << "numerical_blowup: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "domain_error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid_argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
