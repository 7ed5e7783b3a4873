// ccl — command-line front end of the convergence-asymmetry causal toolkit.
//
// Subcommands: score-pair, exp1, boundary, gradvar, ccl-sweep, tuebingen,
// pac-bound, lambda2-threshold. Exit codes: 0 success, 1 usage or
// configuration error, 2 data error (unreadable/unparseable/degenerate
// input), 3 numeric failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccl/bounds.hpp"
#include "ccl/dgp.hpp"
#include "ccl/errors.hpp"
#include "ccl/experiments.hpp"
#include "ccl/report.hpp"
#include "ccl/textfmt.hpp"
#include "ccl/tuebingen.hpp"
#include "ccl/version.hpp"

namespace {

namespace fs = std::filesystem;

std::string read_input_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ccl::IoError("cannot open input: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Training/protocol knobs shared by the scoring subcommands.
struct ProtocolOptions {
  std::string arch = "64-64-tanh-adam";
  double tau = 0.05;
  std::uint64_t t_max = 3000;
  std::size_t batch_size = 64;
  std::uint64_t eval_every = 1;
  double holdout_fraction = 0.2;
  bool no_normalize = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--arch", arch,
                    "Architecture preset (see `ccl exp1 --help` for names)")
        ->capture_default_str();
    cmd->add_option("--tau", tau, "Held-out MSE convergence threshold")
        ->capture_default_str();
    cmd->add_option("--t-max", t_max, "Training step cap per direction")
        ->capture_default_str();
    cmd->add_option("--batch-size", batch_size, "Mini-batch size")
        ->capture_default_str();
    cmd->add_option("--eval-every", eval_every,
                    "Held-out evaluation cadence in steps")
        ->capture_default_str();
    cmd->add_option("--holdout-fraction", holdout_fraction,
                    "Fraction of rows held out for convergence checks")
        ->capture_default_str();
    cmd->add_flag("--no-normalize", no_normalize,
                  "Train on raw values instead of z-scored series");
  }

  ccl::RunConfig run_config() const {
    const ccl::ArchSpec spec = ccl::architecture_from_name(arch);
    ccl::RunConfig cfg;
    cfg.mlp = spec.mlp;
    cfg.opt = spec.opt;
    cfg.train.tau = tau;
    cfg.train.t_max = t_max;
    cfg.train.batch_size = batch_size;
    cfg.train.eval_every = eval_every;
    cfg.train.holdout_fraction = holdout_fraction;
    cfg.normalize = !no_normalize;
    return cfg;
  }

  void describe(ccl::RunManifest& m) const {
    manifest_set(m, "arch", arch);
    manifest_set(m, "tau", tau);
    manifest_set(m, "t_max", t_max);
    manifest_set(m, "batch_size", static_cast<std::uint64_t>(batch_size));
    manifest_set(m, "eval_every", eval_every);
    manifest_set(m, "holdout_fraction", holdout_fraction);
    manifest_set(m, "normalize", !no_normalize);
  }
};

struct ScorePairOptions {
  std::string input;
  std::uint64_t seed = 1;
  bool shared_init = false;
  ProtocolOptions protocol;
};

int run_score_pair(const ScorePairOptions& opt) {
  const ccl::SampleSet data =
      ccl::sample_set_from_csv(read_input_text(opt.input));
  ccl::RunConfig cfg = opt.protocol.run_config();
  cfg.shared_init = opt.shared_init;
  const ccl::CcaScore score = ccl::score_pair(data.x, data.y, cfg, opt.seed);
  std::cout << ccl::cca_score_json(score);
  return 0;
}

struct Exp1Options {
  std::string out;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t n_seeds = 5;
  std::size_t n_samples = 1000;
  std::optional<double> sigma;  // unset: per-mechanism defaults
  std::vector<std::string> dgps;
  std::vector<std::string> archs;
  ProtocolOptions protocol;
};

// Records the noise level actually used: one entry when overridden, the
// per-mechanism defaults otherwise.
void describe_noise(ccl::RunManifest& m, const std::optional<double>& sigma,
                    const std::vector<ccl::DgpKind>& kinds) {
  if (sigma) {
    manifest_set(m, "sigma", *sigma);
    return;
  }
  for (ccl::DgpKind kind : kinds)
    manifest_set(m, "sigma." + std::string(ccl::dgp_name(kind)),
                 ccl::default_noise(kind));
}

int run_exp1(const Exp1Options& opt) {
  ccl::GridConfig cfg;
  cfg.n_seeds = opt.n_seeds;
  cfg.n_samples = opt.n_samples;
  cfg.sigma = opt.sigma;
  cfg.master_seed = opt.seed;
  cfg.jobs = opt.jobs;
  const ccl::RunConfig proto = opt.protocol.run_config();
  cfg.train = proto.train;
  cfg.normalize = proto.normalize;
  if (!opt.dgps.empty()) {
    cfg.dgps.clear();
    for (const auto& name : opt.dgps) cfg.dgps.push_back(ccl::dgp_from_name(name));
  }
  if (!opt.archs.empty()) {
    cfg.architectures.clear();
    for (const auto& name : opt.archs)
      cfg.architectures.push_back(ccl::architecture_from_name(name));
  }

  const ccl::GridReport report = ccl::run_dgp_grid(cfg);

  ccl::RunManifest manifest = ccl::make_manifest("exp1", opt.seed, opt.jobs);
  opt.protocol.describe(manifest);
  manifest_set(manifest, "n_seeds", static_cast<std::uint64_t>(opt.n_seeds));
  manifest_set(manifest, "n_samples", static_cast<std::uint64_t>(opt.n_samples));
  describe_noise(manifest, opt.sigma, cfg.dgps);
  write_grid_outputs(report, manifest, opt.out);

  for (const auto& total : report.dgp_totals)
    std::cout << total.dgp << ": " << total.n_correct << "/" << total.n_total
              << " correct\n";
  std::cout << "outputs written to " << opt.out << "\n";
  return 0;
}

struct BoundaryOptions {
  std::string out;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t n_seeds = 30;
  std::size_t n_samples = 1000;
  double sigma = 0.1;
  double noninjective_tau = 1.2;
  std::size_t contrast_n = 150;
  double contrast_sigma = 0.12;
  ProtocolOptions protocol;
};

int run_boundary(const BoundaryOptions& opt) {
  ccl::BoundaryConfig cfg;
  cfg.n_seeds = opt.n_seeds;
  cfg.n_samples = opt.n_samples;
  cfg.sigma = opt.sigma;
  cfg.noninjective_tau = opt.noninjective_tau;
  cfg.contrast_n = opt.contrast_n;
  cfg.contrast_sigma = opt.contrast_sigma;
  cfg.master_seed = opt.seed;
  cfg.jobs = opt.jobs;
  cfg.arch = ccl::architecture_from_name(opt.protocol.arch);
  const ccl::RunConfig proto = opt.protocol.run_config();
  cfg.train = proto.train;

  const ccl::BoundaryReport report = ccl::run_boundary_suite(cfg);

  ccl::RunManifest manifest = ccl::make_manifest("boundary", opt.seed, opt.jobs);
  opt.protocol.describe(manifest);
  manifest_set(manifest, "n_seeds", static_cast<std::uint64_t>(opt.n_seeds));
  manifest_set(manifest, "n_samples", static_cast<std::uint64_t>(opt.n_samples));
  manifest_set(manifest, "sigma", opt.sigma);
  manifest_set(manifest, "noninjective_tau", opt.noninjective_tau);
  manifest_set(manifest, "contrast_n", static_cast<std::uint64_t>(opt.contrast_n));
  manifest_set(manifest, "contrast_sigma", opt.contrast_sigma);
  write_boundary_outputs(report, manifest, opt.out);

  for (const auto& row : report.scale_contrast)
    std::cout << "cubic " << row.variant << ": mean t_fwd "
              << ccl::format_double(row.mean_t_fwd) << ", mean t_rev "
              << ccl::format_double(row.mean_t_rev) << ", " << row.n_correct
              << "/" << row.n_total << " correct\n";
  std::cout << "outputs written to " << opt.out << "\n";
  return 0;
}

struct GradVarOptions {
  std::string out;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t n_seeds = 10;
  std::size_t n_batches = 50;
  std::size_t n_samples = 1000;
  std::optional<double> sigma;  // unset: per-mechanism defaults
  std::vector<std::uint64_t> phases;
  ProtocolOptions protocol;
};

int run_gradvar(const GradVarOptions& opt) {
  ccl::GradVarConfig cfg;
  cfg.n_seeds = opt.n_seeds;
  cfg.n_batches = opt.n_batches;
  cfg.n_samples = opt.n_samples;
  cfg.sigma = opt.sigma;
  cfg.master_seed = opt.seed;
  cfg.jobs = opt.jobs;
  if (!opt.phases.empty()) cfg.phases = opt.phases;
  cfg.arch = ccl::architecture_from_name(opt.protocol.arch);
  const ccl::RunConfig proto = opt.protocol.run_config();
  cfg.train = proto.train;

  const ccl::GradVarReport report = ccl::run_gradvar_experiment(cfg);

  ccl::RunManifest manifest = ccl::make_manifest("gradvar", opt.seed, opt.jobs);
  opt.protocol.describe(manifest);
  manifest_set(manifest, "n_seeds", static_cast<std::uint64_t>(opt.n_seeds));
  manifest_set(manifest, "n_batches", static_cast<std::uint64_t>(opt.n_batches));
  manifest_set(manifest, "n_samples", static_cast<std::uint64_t>(opt.n_samples));
  {
    std::vector<ccl::DgpKind> kinds;
    for (const auto& v : cfg.variants)
      if (std::find(kinds.begin(), kinds.end(), v.kind) == kinds.end())
        kinds.push_back(v.kind);
    describe_noise(manifest, opt.sigma, kinds);
  }
  write_gradvar_outputs(report, manifest, opt.out);

  for (const auto& s : report.summaries)
    std::cout << s.dgp << (s.normalized ? " (z)" : " (raw)") << " step "
              << s.phase << ": variance ratio "
              << ccl::format_double(s.mean_ratio) << "\n";
  std::cout << "outputs written to " << opt.out << "\n";
  return 0;
}

struct SweepOptions {
  std::string out;
  std::uint64_t seed = 1;
  std::vector<double> lambda2;
  double lambda3 = 0.0025;
  std::size_t n_samples = 1000;
  double sigma1 = 0.1;
  double sigma2 = 0.1;
  std::uint64_t max_iters = 10;
  double tau = 1.2;
  std::uint64_t t_max = 1000;
};

int run_sweep(const SweepOptions& opt) {
  ccl::SweepConfig cfg;
  if (!opt.lambda2.empty()) cfg.lambda2_values = opt.lambda2;
  cfg.lambda3 = opt.lambda3;
  cfg.scm.n = opt.n_samples;
  cfg.scm.sigma1 = opt.sigma1;
  cfg.scm.sigma2 = opt.sigma2;
  cfg.max_iters = opt.max_iters;
  cfg.cca.train.tau = opt.tau;
  cfg.cca.train.t_max = opt.t_max;
  cfg.master_seed = opt.seed;

  const ccl::SweepReport report = ccl::run_ccl_sweep(cfg);

  ccl::RunManifest manifest = ccl::make_manifest("ccl-sweep", opt.seed, 1);
  std::string lambdas;
  for (double v : cfg.lambda2_values) {
    if (!lambdas.empty()) lambdas += ";";
    lambdas += ccl::format_double(v);
  }
  manifest_set(manifest, "lambda2_values", lambdas);
  manifest_set(manifest, "lambda3", cfg.lambda3);
  manifest_set(manifest, "n_samples", static_cast<std::uint64_t>(cfg.scm.n));
  manifest_set(manifest, "sigma1", cfg.scm.sigma1);
  manifest_set(manifest, "sigma2", cfg.scm.sigma2);
  manifest_set(manifest, "max_iters", cfg.max_iters);
  manifest_set(manifest, "tau", opt.tau);
  manifest_set(manifest, "t_max", opt.t_max);
  write_sweep_outputs(report, manifest, opt.out);

  for (const auto& row : report.rows)
    std::cout << "lambda2=" << ccl::format_double(row.lambda2) << ": "
              << row.spurious_edges << " spurious, "
              << (row.monotone ? "monotone" : "NOT monotone") << ", "
              << row.iterations << " iterations\n";
  std::cout << "outputs written to " << opt.out << "\n";
  return 0;
}

struct TuebingenOptions {
  std::string data_dir;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t n_seeds = 5;
  std::size_t max_rows = 1000;
  ProtocolOptions protocol;
};

// Deterministic row cap: evenly strided selection, independent of seeds.
void cap_rows(ccl::Benchmark& benchmark, std::size_t max_rows) {
  if (max_rows == 0) return;
  for (auto& pair : benchmark.pairs) {
    if (pair.columns.empty() || pair.columns.front().size() <= max_rows)
      continue;
    const std::size_t n = pair.columns.front().size();
    ccl::ColumnData capped(pair.columns.size());
    for (std::size_t c = 0; c < pair.columns.size(); ++c) {
      capped[c].reserve(max_rows);
      for (std::size_t k = 0; k < max_rows; ++k)
        capped[c].push_back(pair.columns[c][k * n / max_rows]);
    }
    pair.columns = std::move(capped);
  }
}

int run_tuebingen_cmd(const TuebingenOptions& opt) {
  ccl::Benchmark benchmark = ccl::load_benchmark(opt.data_dir);
  for (const auto& warning : benchmark.warnings)
    std::cerr << "warning: " << warning << "\n";
  cap_rows(benchmark, opt.max_rows);

  ccl::TuebingenRunConfig cfg;
  cfg.run = opt.protocol.run_config();
  cfg.n_seeds = opt.n_seeds;
  cfg.master_seed = opt.seed;
  cfg.jobs = opt.jobs;

  const ccl::BenchmarkReport report = ccl::run_tuebingen(benchmark, cfg);

  ccl::RunManifest manifest = ccl::make_manifest("tuebingen", opt.seed, opt.jobs);
  opt.protocol.describe(manifest);
  manifest_set(manifest, "data_dir", opt.data_dir);
  manifest_set(manifest, "n_seeds", static_cast<std::uint64_t>(opt.n_seeds));
  manifest_set(manifest, "max_rows", static_cast<std::uint64_t>(opt.max_rows));
  write_tuebingen_outputs(report, manifest, opt.out);

  std::cout << "pairs scored: " << report.n_scored << " (skipped "
            << report.n_skipped_multivariate << " multivariate, "
            << report.n_failed << " failed)\n"
            << "weighted accuracy: "
            << ccl::format_double(report.metrics.weighted_accuracy) << "\n"
            << "unweighted accuracy: "
            << ccl::format_double(report.metrics.unweighted_accuracy) << "\n"
            << "weighted AUC: " << ccl::format_double(report.metrics.auc)
            << "\n"
            << "outputs written to " << opt.out << "\n";
  return 0;
}

struct PacBoundOptions {
  ccl::PacBoundInputs in;
};

int run_pac_bound(const PacBoundOptions& opt) {
  const double bound = ccl::compute_pac_bound(opt.in);
  std::cout << "{\n"
            << "  \"bound\": " << ccl::format_double(bound) << "\n"
            << "}\n";
  return 0;
}

struct Lambda2Options {
  double gamma = 0.9;
  double n_vars = 3;
  double max_edges = 3;
};

int run_lambda2_threshold(const Lambda2Options& opt) {
  const double threshold =
      ccl::lambda2_threshold(opt.gamma, opt.n_vars, opt.max_edges);
  std::cout << "{\n"
            << "  \"threshold\": " << ccl::format_double(threshold) << "\n"
            << "}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal direction from neural-network convergence asymmetry"};
  app.set_version_flag("--version", std::string("ccl ") + ccl::kVersion);
  app.set_config("--config", "", "Read options from an INI file");
  app.require_subcommand(1);

  ScorePairOptions score_opt;
  auto* score_cmd = app.add_subcommand(
      "score-pair", "Decide the causal direction of one (x, y) sample");
  score_cmd->add_option("input,--input", score_opt.input,
                        "CSV file with header x,y ('-' for stdin)")
      ->required();
  score_cmd->add_option("--seed", score_opt.seed, "Master seed")
      ->capture_default_str();
  score_cmd->add_flag("--shared-init", score_opt.shared_init,
                      "Reuse the forward random streams for the reverse fit");
  score_opt.protocol.attach(score_cmd);

  Exp1Options exp1_opt;
  auto* exp1_cmd = app.add_subcommand(
      "exp1", "Synthetic generator x architecture direction-accuracy grid");
  exp1_cmd->add_option("--out", exp1_opt.out, "Output directory")->required();
  exp1_cmd->add_option("--seed", exp1_opt.seed, "Master seed")
      ->capture_default_str();
  exp1_cmd->add_option("--jobs", exp1_opt.jobs, "Worker threads")
      ->capture_default_str();
  exp1_cmd->add_option("--n-seeds,--seeds", exp1_opt.n_seeds, "Seeds per grid cell")
      ->capture_default_str();
  exp1_cmd->add_option("--n", exp1_opt.n_samples, "Samples per dataset")
      ->capture_default_str();
  exp1_cmd->add_option("--sigma", exp1_opt.sigma,
                       "Noise standard deviation override "
                       "(default: per-mechanism, 0.16 for cubic, 0.1 otherwise)");
  exp1_cmd->add_option("--dgp", exp1_opt.dgps,
                       "Generator subset (sin exp05 cubic square linear2x)");
  exp1_cmd->add_option(
      "--arch-list", exp1_opt.archs,
      "Architecture subset (64-64-tanh-adam 128-128-tanh-adam "
      "32-32-32-tanh-adam 64-64-relu-adam 64-64-tanh-sgd 64-64-tanh-rmsprop)");
  exp1_opt.protocol.attach(exp1_cmd);

  BoundaryOptions boundary_opt;
  auto* boundary_cmd = app.add_subcommand(
      "boundary",
      "Linear-Gaussian, non-injective and scale-sensitivity boundary studies");
  boundary_cmd->add_option("--out", boundary_opt.out, "Output directory")
      ->required();
  boundary_cmd->add_option("--seed", boundary_opt.seed, "Master seed")
      ->capture_default_str();
  boundary_cmd->add_option("--jobs", boundary_opt.jobs, "Worker threads")
      ->capture_default_str();
  boundary_cmd->add_option("--n-seeds,--seeds", boundary_opt.n_seeds,
                           "Seeds per sub-experiment")
      ->capture_default_str();
  boundary_cmd->add_option("--n", boundary_opt.n_samples, "Samples per dataset")
      ->capture_default_str();
  boundary_cmd->add_option("--sigma", boundary_opt.sigma,
                           "Noise standard deviation")
      ->capture_default_str();
  boundary_cmd->add_option(
      "--noninjective-tau", boundary_opt.noninjective_tau,
      "Un-normalized threshold of the non-injective sub-experiment")
      ->capture_default_str();
  boundary_cmd->add_option("--contrast-n", boundary_opt.contrast_n,
                           "Samples per dataset in the scale-contrast study")
      ->capture_default_str();
  boundary_cmd->add_option("--contrast-sigma", boundary_opt.contrast_sigma,
                           "Noise level of the scale-contrast study")
      ->capture_default_str();
  boundary_opt.protocol.attach(boundary_cmd);

  GradVarOptions gradvar_opt;
  auto* gradvar_cmd = app.add_subcommand(
      "gradvar", "Mini-batch gradient-norm variance by direction");
  gradvar_cmd->add_option("--out", gradvar_opt.out, "Output directory")
      ->required();
  gradvar_cmd->add_option("--seed", gradvar_opt.seed, "Master seed")
      ->capture_default_str();
  gradvar_cmd->add_option("--jobs", gradvar_opt.jobs, "Worker threads")
      ->capture_default_str();
  gradvar_cmd->add_option("--n-seeds,--seeds", gradvar_opt.n_seeds,
                          "Seeds per variant")
      ->capture_default_str();
  gradvar_cmd->add_option("--n-batches", gradvar_opt.n_batches,
                          "Probe mini-batches per measurement")
      ->capture_default_str();
  gradvar_cmd->add_option("--n", gradvar_opt.n_samples, "Samples per dataset")
      ->capture_default_str();
  gradvar_cmd->add_option("--sigma", gradvar_opt.sigma,
                          "Noise standard deviation override "
                          "(default: per-mechanism)");
  gradvar_cmd->add_option("--phase", gradvar_opt.phases,
                          "Training steps before probing (repeatable)");
  gradvar_opt.protocol.attach(gradvar_cmd);

  SweepOptions sweep_opt;
  auto* sweep_cmd = app.add_subcommand(
      "ccl-sweep",
      "Complexity-weight sweep of the alternating structure search");
  sweep_cmd->add_option("--out", sweep_opt.out, "Output directory")->required();
  sweep_cmd->add_option("--seed", sweep_opt.seed, "Master seed")
      ->capture_default_str();
  sweep_cmd->add_option("--lambda2", sweep_opt.lambda2,
                        "Description-length weights to sweep");
  sweep_cmd->add_option("--lambda3", sweep_opt.lambda3,
                        "Convergence-asymmetry weight")
      ->capture_default_str();
  sweep_cmd->add_option("--n", sweep_opt.n_samples, "Samples per dataset")
      ->capture_default_str();
  sweep_cmd->add_option("--sigma1", sweep_opt.sigma1,
                        "Noise level of the squared mechanism")
      ->capture_default_str();
  sweep_cmd->add_option("--sigma2", sweep_opt.sigma2,
                        "Noise level of the combining mechanism")
      ->capture_default_str();
  sweep_cmd->add_option("--max-iters", sweep_opt.max_iters,
                        "Alternating-loop iteration cap")
      ->capture_default_str();
  sweep_cmd->add_option("--tau", sweep_opt.tau,
                        "Un-normalized convergence threshold of edge scoring")
      ->capture_default_str();
  sweep_cmd->add_option("--t-max", sweep_opt.t_max,
                        "Step cap per edge-scoring direction")
      ->capture_default_str();

  TuebingenOptions tueb_opt;
  auto* tueb_cmd = app.add_subcommand(
      "tuebingen", "Score a cause-effect-pairs benchmark directory");
  tueb_cmd->add_option("--data", tueb_opt.data_dir,
                       "Directory with pairmeta.txt and pairNNNN.txt files")
      ->required();
  tueb_cmd->add_option("--out", tueb_opt.out, "Output directory")->required();
  tueb_cmd->add_option("--seed", tueb_opt.seed, "Master seed")
      ->capture_default_str();
  tueb_cmd->add_option("--jobs", tueb_opt.jobs, "Worker threads")
      ->capture_default_str();
  tueb_cmd->add_option("--n-seeds,--seeds", tueb_opt.n_seeds,
                       "Seeds averaged per pair")
      ->capture_default_str();
  tueb_cmd->add_option("--max-rows", tueb_opt.max_rows,
                       "Evenly-strided row cap per pair (0 = no cap)")
      ->capture_default_str();
  tueb_opt.protocol.attach(tueb_cmd);

  PacBoundOptions pac_opt;
  auto* pac_cmd = app.add_subcommand(
      "pac-bound", "Sample-size bound for reliable orientation");
  pac_cmd->add_option("--c,--const", pac_opt.in.c, "Leading constant C")
      ->capture_default_str();
  pac_cmd->add_option("--tau-mix", pac_opt.in.tau_mix, "Mixing time")
      ->capture_default_str();
  pac_cmd->add_option("--dc,--d-c", pac_opt.in.d_c, "Concept-class complexity")
      ->capture_default_str();
  pac_cmd->add_option("--delta", pac_opt.in.delta, "Failure probability")
      ->capture_default_str();
  pac_cmd->add_option("--gamma", pac_opt.in.gamma, "Discount factor")
      ->capture_default_str();
  pac_cmd->add_option("--eps", pac_opt.in.eps, "Accuracy target")
      ->capture_default_str();

  Lambda2Options l2_opt;
  auto* l2_cmd = app.add_subcommand(
      "lambda2-threshold",
      "Complexity weight above which spurious edges are excluded");
  l2_cmd->add_option("--gamma", l2_opt.gamma, "Discount factor")
      ->capture_default_str();
  l2_cmd->add_option("--n-vars", l2_opt.n_vars, "Variable count v")
      ->capture_default_str();
  l2_cmd->add_option("--max-edges", l2_opt.max_edges,
                     "Maximum spurious-edge count")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*score_cmd) return run_score_pair(score_opt);
    if (*exp1_cmd) return run_exp1(exp1_opt);
    if (*boundary_cmd) return run_boundary(boundary_opt);
    if (*gradvar_cmd) return run_gradvar(gradvar_opt);
    if (*sweep_cmd) return run_sweep(sweep_opt);
    if (*tueb_cmd) return run_tuebingen_cmd(tueb_opt);
    if (*pac_cmd) return run_pac_bound(pac_opt);
    if (*l2_cmd) return run_lambda2_threshold(l2_opt);
  } catch (const ccl::InvalidConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ccl::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ccl::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ccl::ShapeMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ccl::DegenerateSeriesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ccl::DegenerateConditioningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
