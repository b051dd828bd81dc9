#include "hypersw/experiments.hpp"

#include "hypersw/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace hypersw {

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

DiscreteMeasure wnd_measure(const WrappedNormal& dist, int n, std::uint64_t seed) {
  return make_uniform_measure(Model::Lorentz, sample_wnd(dist, n, seed));
}

double eval_method(const std::string& method, const DiscreteMeasure& mu,
                   const DiscreteMeasure& nu, const SlicedConfig& cfg) {
  if (method == "ghsw") return ghsw(mu, nu, cfg);
  if (method == "hhsw") return hhsw(mu, nu, cfg);
  if (method == "swl") {
    SlicedConfig c = cfg;
    c.model = Model::Lorentz;
    return euclidean_sw(mu, nu, c);
  }
  if (method == "swp") {
    SlicedConfig c = cfg;
    c.model = Model::Poincare;
    return euclidean_sw(mu, nu, c);
  }
  if (method == "wexact") return wasserstein_geodesic_ref(mu, nu, cfg.order);
  throw std::invalid_argument("unknown method: " + method);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  for (size_t i = 0; i < header.size(); ++i) {
    os << header[i] << (i + 1 == header.size() ? "\n" : ",");
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      os << row[i] << (i + 1 == row.size() ? "\n" : ",");
    }
  }
}

std::vector<BenchRow> bench_runtime(const BenchSpec& spec) {
  std::vector<BenchRow> out;
  const WrappedNormal source = make_wrapped_normal_iso(lorentz_origin(spec.d), 1.0);
  for (const int n : spec.n_list) {
    const DiscreteMeasure mu = wnd_measure(source, n, derive_seed(spec.seed, 2 * n));
    const DiscreteMeasure nu = wnd_measure(source, n, derive_seed(spec.seed, 2 * n + 1));
    SlicedConfig cfg;
    cfg.num_projections = spec.num_projections;
    cfg.order = spec.order;
    cfg.seed = derive_seed(spec.seed, n);
    cfg.threads = spec.threads;
    for (const auto& method : spec.methods) {
      if (method == "wexact" && n > kExactSupportCap) continue;
      eval_method(method, mu, nu, cfg);  // warmup
      std::vector<double> times(spec.repeats);
      for (int r = 0; r < spec.repeats; ++r) {
        const double t0 = now_seconds();
        eval_method(method, mu, nu, cfg);
        times[r] = now_seconds() - t0;
      }
      out.push_back(BenchRow{method, n, median(times)});
    }
  }
  return out;
}

std::vector<CurveRow> curve_wnd(const CurveWndSpec& spec, std::vector<CurveSeedRow>* per_seed) {
  const int d = 2;
  std::vector<std::string> methods{"ghsw", "hhsw", "swl", "swp"};
  if (spec.include_exact) methods.push_back("wexact");
  const Direction axis = make_direction(Vector::Unit(d, 0));
  const WrappedNormal base = make_wrapped_normal_iso(lorentz_origin(d), 1.0);

  std::vector<CurveRow> out;
  for (int step = 0; step < spec.t_steps; ++step) {
    const double t =
        spec.t_steps == 1
            ? spec.t_min
            : spec.t_min + (spec.t_max - spec.t_min) * step / (spec.t_steps - 1);
    const WrappedNormal moving = make_wrapped_normal_iso(geodesic_point(axis, t), 1.0);
    std::vector<double> acc(methods.size(), 0.0);
    for (int s = 0; s < spec.num_seeds; ++s) {
      const std::uint64_t run = derive_seed(spec.seed, 1000003ULL * step + s);
      const DiscreteMeasure mu = wnd_measure(base, spec.n, derive_seed(run, 0));
      const DiscreteMeasure nu = wnd_measure(moving, spec.n, derive_seed(run, 1));
      SlicedConfig cfg;
      cfg.num_projections = spec.num_projections;
      cfg.order = spec.order;
      cfg.seed = derive_seed(spec.seed, 7700 + s);  // shared directions across t
      cfg.threads = spec.threads;
      for (size_t m = 0; m < methods.size(); ++m) {
        const double v = p_root(eval_method(methods[m], mu, nu, cfg), spec.order);
        acc[m] += v;
        if (per_seed != nullptr) {
          per_seed->push_back(CurveSeedRow{methods[m], t, s, v});
        }
      }
    }
    for (size_t m = 0; m < methods.size(); ++m) {
      out.push_back(CurveRow{methods[m], t, acc[m] / spec.num_seeds});
    }
  }
  return out;
}

std::vector<CurveRow> curve_trees(const CurveTreesSpec& spec) {
  const Tree tree = balanced_tree(spec.branching, spec.depth);
  const DiscreteMeasure base = embedding_to_measure(sarkar_embed(tree, spec.tau_base));
  const std::vector<std::string> methods{"ghsw", "hhsw", "swl", "swp", "wexact"};

  std::vector<CurveRow> out;
  for (const double tau : spec.taus) {
    const DiscreteMeasure other = embedding_to_measure(sarkar_embed(tree, tau));
    std::vector<double> acc(methods.size(), 0.0);
    for (int s = 0; s < spec.num_seeds; ++s) {
      SlicedConfig cfg;
      cfg.num_projections = spec.num_projections;
      cfg.order = spec.order;
      cfg.seed = derive_seed(spec.seed, 4400 + s);
      cfg.threads = spec.threads;
      cfg.model = Model::Poincare;  // evaluate HHSW on the ball side
      for (size_t m = 0; m < methods.size(); ++m) {
        acc[m] += p_root(eval_method(methods[m], base, other, cfg), spec.order);
      }
    }
    for (size_t m = 0; m < methods.size(); ++m) {
      out.push_back(CurveRow{methods[m], tau, acc[m] / spec.num_seeds});
    }
  }
  return out;
}

FlowPreset make_flow_preset(const std::string& name) {
  FlowPreset preset;
  preset.name = name;
  FlowConfig cfg;
  cfg.loss = SliceLoss::GHSW;
  cfg.num_projections = 1000;
  cfg.batch_size = 500;
  cfg.model = Model::Lorentz;
  cfg.order = 2.0;
  cfg.log_every = 100;

  auto wnd_target = [](Vector mean_coords) {
    LorentzPoint mean{renormalize_lorentz(std::move(mean_coords))};
    std::vector<WrappedNormal> comps{make_wrapped_normal_iso(std::move(mean), 0.1)};
    return make_wrapped_mixture(std::move(comps), Vector::Ones(1));
  };
  auto mixture_target = [](double radius) {
    const std::vector<std::pair<double, double>> ball_means{
        {0.0, -radius}, {0.0, radius}, {radius, 0.0}, {-radius, 0.0}, {0.0, 0.1}};
    std::vector<WrappedNormal> comps;
    for (const auto& [x, y] : ball_means) {
      Vector b(2);
      b << x, y;
      comps.push_back(make_wrapped_normal_iso(to_lorentz(make_poincare(b)), 0.01));
    }
    return make_wrapped_mixture(std::move(comps), Vector::Constant(5, 0.2));
  };

  if (name == "wnd-near") {
    Vector m(3);
    m << 1.5, 1.25, 0.0;
    preset.target = wnd_target(std::move(m));
    cfg.learning_rate = 5.0;
    cfg.iterations = 2000;
  } else if (name == "wnd-far") {
    Vector m(3);
    m << 8.0, std::sqrt(63.0), 0.0;
    preset.target = wnd_target(std::move(m));
    cfg.learning_rate = 5.0;
    cfg.iterations = 2000;
  } else if (name == "mixture-near") {
    preset.target = mixture_target(0.5);
    cfg.learning_rate = 1.0;
    cfg.iterations = 5000;
  } else if (name == "mixture-far") {
    preset.target = mixture_target(0.9);
    cfg.learning_rate = 1.0;
    cfg.iterations = 5000;
  } else {
    throw std::invalid_argument("unknown flow preset: " + name);
  }
  preset.cfg = cfg;
  return preset;
}

std::vector<std::string> flow_preset_names() {
  return {"wnd-near", "wnd-far", "mixture-near", "mixture-far"};
}

std::string describe_flow_preset(const FlowPreset& preset) {
  std::string s = "preset: " + preset.name + "\n";
  s += "loss: " + std::string(preset.cfg.loss == SliceLoss::GHSW   ? "ghsw"
                              : preset.cfg.loss == SliceLoss::HHSW ? "hhsw"
                              : preset.cfg.loss == SliceLoss::SWL  ? "swl"
                                                                   : "swp") +
       "\n";
  s += "model: " + std::string(preset.cfg.model == Model::Lorentz ? "lorentz" : "poincare") + "\n";
  s += "learning_rate: " + format_double(preset.cfg.learning_rate) + "\n";
  s += "iterations: " + std::to_string(preset.cfg.iterations) + "\n";
  s += "num_projections: " + std::to_string(preset.cfg.num_projections) + "\n";
  s += "batch_size: " + std::to_string(preset.cfg.batch_size) + "\n";
  s += "order: " + format_double(preset.cfg.order) + "\n";
  s += "log_every: " + std::to_string(preset.cfg.log_every) + "\n";
  for (size_t c = 0; c < preset.target.components.size(); ++c) {
    const auto& comp = preset.target.components[c];
    s += "component " + std::to_string(c) + ": weight " +
         format_double(preset.target.mixing[static_cast<Eigen::Index>(c)]) + ", mean (";
    for (Eigen::Index i = 0; i < comp.mean.coords.size(); ++i) {
      s += format_double(comp.mean.coords[i]);
      if (i + 1 < comp.mean.coords.size()) s += ", ";
    }
    s += "), variance " + format_double(comp.cov(0, 0)) + "\n";
  }
  return s;
}

TargetSampler preset_target_sampler(const FlowPreset& preset) {
  const WrappedMixture target = preset.target;
  const Model model = preset.cfg.model;
  return [target, model](int n, std::uint64_t seed) {
    Matrix pts = sample_mixture(target, n, seed);
    if (model == Model::Poincare) {
      return convert_measure(make_uniform_measure(Model::Lorentz, std::move(pts)),
                             Model::Poincare)
          .points;
    }
    return pts;
  };
}

FlowResult run_flow_preset(const FlowPreset& preset) {
  return run_flow(preset_target_sampler(preset), preset.cfg);
}

std::vector<SampleComplexityRow> sample_complexity(const SampleComplexitySpec& spec) {
  std::vector<SampleComplexityRow> out;
  const int exact_dim =
      spec.dims.empty() ? -1 : *std::min_element(spec.dims.begin(), spec.dims.end());
  for (const int d : spec.dims) {
    const WrappedNormal source = make_wrapped_normal_iso(lorentz_origin(d), 1.0);
    for (const int n : spec.n_list) {
      double acc_ghsw = 0.0, acc_hhsw = 0.0, acc_exact = 0.0;
      const bool with_exact = spec.include_exact && d == exact_dim && n <= kExactSupportCap;
      for (int s = 0; s < spec.num_seeds; ++s) {
        const std::uint64_t run = derive_seed(spec.seed, (d * 131071ULL + n) * 31ULL + s);
        const DiscreteMeasure mu = wnd_measure(source, n, derive_seed(run, 0));
        const DiscreteMeasure nu = wnd_measure(source, n, derive_seed(run, 1));
        SlicedConfig cfg;
        cfg.num_projections = spec.num_projections;
        cfg.order = 2.0;
        cfg.seed = derive_seed(spec.seed, 9900 + s);
        cfg.threads = spec.threads;
        acc_ghsw += p_root(ghsw(mu, nu, cfg), 2.0);
        acc_hhsw += p_root(hhsw(mu, nu, cfg), 2.0);
        if (with_exact) acc_exact += p_root(wasserstein_geodesic_ref(mu, nu, 2.0), 2.0);
      }
      out.push_back(SampleComplexityRow{"ghsw", d, n, acc_ghsw / spec.num_seeds});
      out.push_back(SampleComplexityRow{"hhsw", d, n, acc_hhsw / spec.num_seeds});
      if (with_exact) {
        out.push_back(SampleComplexityRow{"wexact", d, n, acc_exact / spec.num_seeds});
      }
    }
  }
  return out;
}

std::vector<std::vector<std::string>> tree_embed_rows(const TreeEmbedSpec& spec) {
  const TreeEmbedding e = sarkar_embed(balanced_tree(spec.branching, spec.depth), spec.tau);
  std::vector<std::vector<std::string>> rows;
  rows.reserve(e.size());
  for (int i = 0; i < e.size(); ++i) {
    rows.push_back({std::to_string(i), std::to_string(e.parent[i]),
                    format_double(e.coords(i, 0)), format_double(e.coords(i, 1))});
  }
  return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two points");
  }
  const int n = static_cast<int>(x.size());
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

}  // namespace hypersw
