#include "ccl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "ccl/errors.hpp"
#include "ccl/parallel.hpp"
#include "ccl/rng.hpp"

namespace ccl {

namespace {

// Seed-derivation tags of the experiment layer (the training layer uses
// 1..4, pair scoring 10/11, graph edges 20): 30 = dataset streams,
// 31 = scoring streams, 32 = gradient-probe dataset streams.
constexpr std::uint64_t kTagData = 30;
constexpr std::uint64_t kTagScore = 31;
constexpr std::uint64_t kTagGradData = 32;

std::uint64_t dgp_ord(DgpKind kind) { return static_cast<std::uint64_t>(kind); }

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& v) {
  MeanSd out;
  if (v.empty()) return out;
  double sum = 0.0;
  for (double x : v) sum += x;
  out.mean = sum / static_cast<double>(v.size());
  if (v.size() < 2) return out;
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return out;
}

ScaleContrastRow contrast_row(const std::string& variant,
                              const std::vector<RunRecord>& runs) {
  std::vector<double> t_fwd, t_rev;
  ScaleContrastRow row;
  row.variant = variant;
  for (const auto& r : runs) {
    t_fwd.push_back(static_cast<double>(r.score.t_fwd));
    t_rev.push_back(static_cast<double>(r.score.t_rev));
    if (r.correct) ++row.n_correct;
  }
  row.n_total = runs.size();
  const MeanSd f = mean_sd(t_fwd);
  const MeanSd r = mean_sd(t_rev);
  row.mean_t_fwd = f.mean;
  row.sd_t_fwd = f.sd;
  row.mean_t_rev = r.mean;
  row.sd_t_rev = r.sd;
  return row;
}

}  // namespace

std::vector<ArchSpec> default_architectures() {
  OptimizerSpec adam = OptimizerSpec::adam();
  OptimizerSpec sgd = OptimizerSpec::sgd();
  OptimizerSpec rmsprop = OptimizerSpec::rmsprop();

  auto mlp = [](std::vector<std::size_t> hidden, Activation act) {
    MlpConfig cfg;
    cfg.hidden = std::move(hidden);
    cfg.activation = act;
    return cfg;
  };

  return {
      {"64-64-tanh-adam", mlp({64, 64}, Activation::Tanh), adam},
      {"128-128-tanh-adam", mlp({128, 128}, Activation::Tanh), adam},
      {"32-32-32-tanh-adam", mlp({32, 32, 32}, Activation::Tanh), adam},
      {"64-64-relu-adam", mlp({64, 64}, Activation::ReLU), adam},
      {"64-64-tanh-sgd", mlp({64, 64}, Activation::Tanh), sgd},
      {"64-64-tanh-rmsprop", mlp({64, 64}, Activation::Tanh), rmsprop},
  };
}

ArchSpec architecture_from_name(const std::string& name) {
  for (auto& arch : default_architectures())
    if (arch.name == name) return arch;
  throw InvalidConfigError("unknown architecture preset: " + name);
}

GridReport run_dgp_grid(const GridConfig& cfg) {
  if (cfg.dgps.empty() || cfg.architectures.empty() || cfg.n_seeds == 0)
    throw InvalidConfigError("grid needs at least one generator, architecture and seed");

  GridReport report;
  report.config = cfg;

  const std::size_t n_arch = cfg.architectures.size();
  const std::size_t n_cells = cfg.dgps.size() * n_arch * cfg.n_seeds;
  report.runs.resize(n_cells);

  parallel_for(n_cells, cfg.jobs, [&](std::size_t cell) {
    const std::size_t seed_idx = cell % cfg.n_seeds;
    const std::size_t arch_idx = (cell / cfg.n_seeds) % n_arch;
    const std::size_t dgp_idx = cell / (cfg.n_seeds * n_arch);

    const DgpKind kind = cfg.dgps[dgp_idx];
    const ArchSpec& arch = cfg.architectures[arch_idx];

    // Every architecture sees the same dataset for a given (generator, seed).
    const std::uint64_t data_seed =
        derive_seed(cfg.master_seed, kTagData, dgp_ord(kind), seed_idx);
    const double sigma = cfg.sigma ? *cfg.sigma : default_noise(kind);
    const SampleSet data =
        sample_bivariate({kind, cfg.n_samples, sigma}, data_seed);

    RunConfig run;
    run.mlp = arch.mlp;
    run.train = cfg.train;
    run.opt = arch.opt;
    run.normalize = cfg.normalize;
    const std::uint64_t score_seed = derive_seed(
        derive_seed(cfg.master_seed, kTagScore, dgp_ord(kind), arch_idx),
        seed_idx);

    const ScoredPair scored = score_pair_traced(data.x, data.y, run, score_seed);

    RunRecord& rec = report.runs[cell];
    rec.dgp = dgp_name(kind);
    rec.arch = arch.name;
    rec.seed_index = seed_idx;
    rec.score = scored.score;
    rec.correct = scored.score.direction == Direction::XtoY;
    rec.fwd_trace = scored.fwd_trace;
    rec.rev_trace = scored.rev_trace;
  });

  for (std::size_t d = 0; d < cfg.dgps.size(); ++d) {
    DgpTotal total;
    total.dgp = dgp_name(cfg.dgps[d]);
    for (std::size_t a = 0; a < n_arch; ++a) {
      ArchCell arch_cell;
      arch_cell.dgp = total.dgp;
      arch_cell.arch = cfg.architectures[a].name;
      for (std::size_t s = 0; s < cfg.n_seeds; ++s) {
        const RunRecord& rec = report.runs[(d * n_arch + a) * cfg.n_seeds + s];
        ++arch_cell.n_total;
        ++total.n_total;
        if (rec.correct) {
          ++arch_cell.n_correct;
          ++total.n_correct;
        }
      }
      report.arch_cells.push_back(std::move(arch_cell));
    }
    report.dgp_totals.push_back(std::move(total));
  }
  return report;
}

BoundaryConfig::BoundaryConfig() : arch(default_architectures().front()) {}

BoundaryReport run_boundary_suite(const BoundaryConfig& cfg) {
  if (cfg.n_seeds == 0) throw InvalidConfigError("boundary suite needs seeds");

  BoundaryReport report;
  report.config = cfg;
  report.linear.resize(cfg.n_seeds);
  report.square.resize(cfg.n_seeds);
  report.cubic_raw.resize(cfg.n_seeds);
  report.cubic_z.resize(cfg.n_seeds);

  // Sub-experiment layout: 0 = linear-Gaussian control (standardized, tight
  // threshold), 1 = non-injective collapse (un-normalized, threshold between
  // the variable variances), 2/3 = the same cubic dataset scored raw/z-scored.
  struct Task {
    DgpKind kind;
    bool normalize;
    double tau;
    std::size_t n;
    double sigma;
    std::vector<RunRecord>* out;
  };
  const Task tasks[] = {
      {DgpKind::Linear2x, true, cfg.train.tau, cfg.n_samples, cfg.sigma,
       &report.linear},
      {DgpKind::Square, false, cfg.noninjective_tau, cfg.n_samples, cfg.sigma,
       &report.square},
      {DgpKind::Cubic, false, cfg.train.tau, cfg.contrast_n,
       cfg.contrast_sigma, &report.cubic_raw},
      {DgpKind::Cubic, true, cfg.train.tau, cfg.contrast_n,
       cfg.contrast_sigma, &report.cubic_z},
  };
  constexpr std::size_t kNTasks = 4;

  parallel_for(kNTasks * cfg.n_seeds, cfg.jobs, [&](std::size_t i) {
    const Task& task = tasks[i / cfg.n_seeds];
    const std::size_t seed_idx = i % cfg.n_seeds;

    const std::uint64_t data_seed =
        derive_seed(cfg.master_seed, kTagData, dgp_ord(task.kind), seed_idx);
    const SampleSet data =
        sample_bivariate({task.kind, task.n, task.sigma}, data_seed);

    RunConfig run;
    run.mlp = cfg.arch.mlp;
    run.train = cfg.train;
    run.train.tau = task.tau;
    run.opt = cfg.arch.opt;
    run.normalize = task.normalize;
    // Variants of the same generator share the scoring seed (slot 0 = the
    // suite's single architecture), so raw-vs-z-scored runs differ only in
    // the normalization applied to identical data and identical networks.
    const std::uint64_t score_seed = derive_seed(
        derive_seed(cfg.master_seed, kTagScore, dgp_ord(task.kind), 0),
        seed_idx);

    const ScoredPair scored = score_pair_traced(data.x, data.y, run, score_seed);

    RunRecord& rec = (*task.out)[seed_idx];
    rec.dgp = dgp_name(task.kind);
    rec.arch = cfg.arch.name;
    rec.seed_index = seed_idx;
    rec.score = scored.score;
    rec.correct = scored.score.direction == Direction::XtoY;
    rec.fwd_trace = scored.fwd_trace;
    rec.rev_trace = scored.rev_trace;
  });

  report.scale_contrast.push_back(contrast_row("raw", report.cubic_raw));
  report.scale_contrast.push_back(contrast_row("zscored", report.cubic_z));
  return report;
}

GradVarConfig::GradVarConfig() : arch(default_architectures().front()) {}

GradVarReport run_gradvar_experiment(const GradVarConfig& cfg) {
  if (cfg.variants.empty() || cfg.phases.empty() || cfg.n_seeds == 0)
    throw InvalidConfigError("gradient-variance study needs variants, phases and seeds");
  if (cfg.n_batches < 2)
    throw InvalidConfigError("variance needs at least two probe batches");

  GradVarReport report;
  report.config = cfg;

  const std::size_t n_cells =
      cfg.variants.size() * cfg.phases.size() * cfg.n_seeds;
  report.cells.resize(n_cells);

  parallel_for(n_cells, cfg.jobs, [&](std::size_t i) {
    const std::size_t seed_idx = i % cfg.n_seeds;
    const std::size_t phase_idx = (i / cfg.n_seeds) % cfg.phases.size();
    const std::size_t variant_idx = i / (cfg.n_seeds * cfg.phases.size());

    const GradVarVariant& variant = cfg.variants[variant_idx];
    const std::uint64_t phase = cfg.phases[phase_idx];

    // Phases and normalization variants of one generator share the dataset
    // and the training streams: the probe at step 200 inspects the same
    // trajectory whose step-0 state the other phase measured.
    const std::uint64_t data_seed = derive_seed(
        cfg.master_seed, kTagGradData, dgp_ord(variant.kind), seed_idx);
    const double sigma = cfg.sigma ? *cfg.sigma : default_noise(variant.kind);
    const SampleSet raw =
        sample_bivariate({variant.kind, cfg.n_samples, sigma}, data_seed);

    std::vector<double> x = raw.x, y = raw.y;
    if (variant.normalize) {
      x = zscore(x).values;
      y = zscore(y).values;
    }

    const Dataset fwd = make_dataset(x, y);
    const Dataset rev = make_dataset(y, x);

    TrainConfig tc = cfg.train;
    tc.seed = derive_seed(data_seed, 10);
    const GradVarResult res_fwd = gradient_norm_variance(
        cfg.arch.mlp, fwd, cfg.arch.opt, cfg.n_batches, phase, tc);
    tc.seed = derive_seed(data_seed, 11);
    const GradVarResult res_rev = gradient_norm_variance(
        cfg.arch.mlp, rev, cfg.arch.opt, cfg.n_batches, phase, tc);

    GradVarCell& cell = report.cells[i];
    cell.dgp = dgp_name(variant.kind);
    cell.normalized = variant.normalize;
    cell.phase = phase;
    cell.seed_index = seed_idx;
    cell.var_fwd = res_fwd.variance;
    cell.var_rev = res_rev.variance;
    cell.ratio = res_rev.variance / res_fwd.variance;
  });

  for (std::size_t v = 0; v < cfg.variants.size(); ++v) {
    for (std::size_t p = 0; p < cfg.phases.size(); ++p) {
      GradVarSummary summary;
      summary.dgp = dgp_name(cfg.variants[v].kind);
      summary.normalized = cfg.variants[v].normalize;
      summary.phase = cfg.phases[p];
      double sum = 0.0;
      for (std::size_t s = 0; s < cfg.n_seeds; ++s)
        sum += report.cells[(v * cfg.phases.size() + p) * cfg.n_seeds + s].ratio;
      summary.mean_ratio = sum / static_cast<double>(cfg.n_seeds);
      report.summaries.push_back(std::move(summary));
    }
  }
  return report;
}

SweepConfig::SweepConfig() {
  // Edge scorer of the sweep: un-normalized training with the threshold
  // placed between the variances of the squared variable's two sides, so
  // the degenerate reverse regression terminates early and the asymmetry
  // term can actually reward the spurious orientation at small lambda2.
  cca.normalize = false;
  cca.train.tau = 1.2;
  cca.train.t_max = 1000;
}

SweepReport run_ccl_sweep(const SweepConfig& cfg) {
  if (cfg.lambda2_values.empty())
    throw InvalidConfigError("sweep needs at least one lambda2 value");

  SweepReport report;
  report.config = cfg;

  report.truth.n_vars = 3;
  report.truth.add_edge(0, 1);  // x1 -> x2
  report.truth.add_edge(1, 2);  // x2 -> x3
  report.truth.add_edge(0, 2);  // x1 -> x3

  const std::uint64_t data_seed = derive_seed(cfg.master_seed, kTagData);
  const Scm3Sample sample = sample_scm3(cfg.scm, data_seed);
  const ColumnData data = {sample.x1, sample.x2, sample.x3};

  // One cache across the whole sweep: identical data, scoring protocol and
  // seed for every lambda2, so each variable pair is trained at most once.
  const std::uint64_t edge_seed = derive_seed(cfg.master_seed, kTagScore);
  CcaEdgeCache cache(data, cfg.cca, edge_seed);

  const Skeleton skeleton = Skeleton::complete(3);

  for (double lambda2 : cfg.lambda2_values) {
    CclParams params;
    params.lambda2 = lambda2;
    params.lambda3 = cfg.lambda3;
    params.max_iters = cfg.max_iters;
    params.seed = edge_seed;

    LoopTrace trace =
        ccl_plus_loop(data, params, cfg.cca, skeleton, &report.truth, &cache);

    SweepRow row;
    row.lambda2 = lambda2;
    row.objective_initial = trace.objectives.front();
    row.objective_final = trace.objectives.back();
    row.iterations = trace.iterations;
    row.monotone = trace.monotone;
    row.spurious_edges = trace.spurious.empty() ? 0 : trace.spurious.back();
    row.final_graph = trace.graphs.back();

    report.rows.push_back(std::move(row));
    report.traces.push_back(std::move(trace));
  }
  return report;
}

}  // namespace ccl
