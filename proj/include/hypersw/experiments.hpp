#pragma once

#include "hypersw/distributions.hpp"
#include "hypersw/flows.hpp"
#include "hypersw/trees.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hypersw {

// Formats a double with 17 significant digits (round-trip safe).
std::string format_double(double v);

// One CSV row; fields are written verbatim, comma separated, LF terminated.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// ---------------------------------------------------------------- benchmark

struct BenchSpec {
  std::vector<int> n_list{100, 1000, 10000, 50000, 100000};
  std::vector<std::string> methods{"ghsw", "hhsw", "swl", "swp", "wexact"};
  int d = 2;
  int num_projections = 200;
  double order = 2.0;
  std::uint64_t seed = 0;
  int repeats = 5;  // median over repeats after one warmup
  int threads = 0;
};

struct BenchRow {
  std::string method;
  int n;
  double seconds;
};

std::vector<BenchRow> bench_runtime(const BenchSpec& spec);

// ------------------------------------------------------ distance vs offset

struct CurveWndSpec {
  int n = 500;
  int num_projections = 200;
  double order = 2.0;
  double t_min = -10.0;
  double t_max = 10.0;
  int t_steps = 21;
  int num_seeds = 5;
  std::uint64_t seed = 0;
  bool include_exact = true;
  int threads = 0;
};

struct CurveRow {
  std::string method;
  double x;       // geodesic offset t, or tau for the tree curves
  double value;   // p-th root of the mean discrepancy across seeds
};

struct CurveSeedRow {
  std::string method;
  double x;
  int seed_index;
  double value;
};

// Distances between a wrapped normal at the origin and one slid along a
// geodesic, averaged over seeds. Per-seed values are appended to `per_seed`
// when given.
std::vector<CurveRow> curve_wnd(const CurveWndSpec& spec,
                                std::vector<CurveSeedRow>* per_seed = nullptr);

// ------------------------------------------------------- distance vs tau

struct CurveTreesSpec {
  int branching = 2;
  int depth = 5;
  double tau_base = 0.05;
  std::vector<double> taus{0.05, 0.25, 0.5, 0.8};
  int num_projections = 200;
  double order = 2.0;
  int num_seeds = 5;
  std::uint64_t seed = 0;
  int threads = 0;
};

std::vector<CurveRow> curve_trees(const CurveTreesSpec& spec);

// ------------------------------------------------------------ gradient flow

struct FlowPreset {
  std::string name;
  WrappedMixture target;  // on the Lorentz model
  FlowConfig cfg;
};

// Presets: wnd-near, wnd-far, mixture-near, mixture-far.
FlowPreset make_flow_preset(const std::string& name);
std::vector<std::string> flow_preset_names();
std::string describe_flow_preset(const FlowPreset& preset);

// Target sampler of a preset on the configured model.
TargetSampler preset_target_sampler(const FlowPreset& preset);

// Runs the preset flow; throws FlowBlowupError on numerical blow-up.
FlowResult run_flow_preset(const FlowPreset& preset);

// ------------------------------------------------------- sample complexity

struct SampleComplexitySpec {
  std::vector<int> n_list{100, 1000, 10000};
  std::vector<int> dims{3, 50};
  int num_projections = 1000;
  int num_seeds = 5;
  std::uint64_t seed = 0;
  bool include_exact = true;  // only where n <= kExactSupportCap and d == min dim
  int threads = 0;
};

struct SampleComplexityRow {
  std::string method;
  int d;
  int n;
  double mean_value;  // mean of the 2-root over seeds
};

// Expected discrepancy between two independent n-sample draws of a standard
// wrapped normal at the origin.
std::vector<SampleComplexityRow> sample_complexity(const SampleComplexitySpec& spec);

// --------------------------------------------------------- tree embedding

struct TreeEmbedSpec {
  int branching = 2;
  int depth = 5;
  double tau = 0.5;
};

// Rows (node_id, parent_id, x, y).
std::vector<std::vector<std::string>> tree_embed_rows(const TreeEmbedSpec& spec);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hypersw
