#include "ccl/mlp.hpp"

#include <cmath>

#include "ccl/errors.hpp"
#include "ccl/rng.hpp"

namespace ccl {

namespace {

constexpr std::uint64_t kInitTag = 1;
constexpr std::uint64_t kSplitTag = 2;
constexpr std::uint64_t kBatchTag = 3;
constexpr std::uint64_t kProbeTag = 4;

void check_config(const MlpConfig& c) {
  if (c.input_dim == 0 || c.output_dim == 0)
    throw InvalidConfigError("mlp: input_dim and output_dim must be positive");
  if (c.hidden.empty())
    throw InvalidConfigError("mlp: at least one hidden layer is required");
  for (std::size_t h : c.hidden)
    if (h == 0) throw InvalidConfigError("mlp: hidden widths must be positive");
  if (c.init_norm_cap <= 0.0)
    throw InvalidConfigError("mlp: init_norm_cap must be positive");
}

Eigen::MatrixXd apply_activation(Activation a, const Eigen::MatrixXd& z) {
  if (a == Activation::Tanh) return z.array().tanh().matrix();
  return z.cwiseMax(0.0);
}

// Derivative expressed through the activation value (tanh) or pre-act (relu).
Eigen::ArrayXXd activation_grad(Activation a, const Eigen::MatrixXd& z,
                                const Eigen::MatrixXd& activated) {
  if (a == Activation::Tanh) return 1.0 - activated.array().square();
  return (z.array() > 0.0).cast<double>();
}

}  // namespace

const char* activation_name(Activation a) {
  return a == Activation::Tanh ? "tanh" : "relu";
}

Activation activation_from_name(const std::string& name) {
  if (name == "tanh") return Activation::Tanh;
  if (name == "relu") return Activation::ReLU;
  throw InvalidConfigError("unknown activation: " + name);
}

const char* optimizer_name(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::Sgd: return "sgd";
    case OptimizerKind::Adam: return "adam";
    case OptimizerKind::RmsProp: return "rmsprop";
  }
  throw InvalidConfigError("unknown OptimizerKind");
}

OptimizerKind optimizer_from_name(const std::string& name) {
  if (name == "sgd") return OptimizerKind::Sgd;
  if (name == "adam") return OptimizerKind::Adam;
  if (name == "rmsprop") return OptimizerKind::RmsProp;
  throw InvalidConfigError("unknown optimizer: " + name);
}

OptimizerSpec OptimizerSpec::sgd(double eta) {
  OptimizerSpec s;
  s.kind = OptimizerKind::Sgd;
  s.eta = eta;
  return s;
}

OptimizerSpec OptimizerSpec::adam(double eta) {
  OptimizerSpec s;
  s.kind = OptimizerKind::Adam;
  s.eta = eta;
  return s;
}

OptimizerSpec OptimizerSpec::rmsprop(double eta) {
  OptimizerSpec s;
  s.kind = OptimizerKind::RmsProp;
  s.eta = eta;
  return s;
}

std::size_t Mlp::num_params() const {
  std::size_t n = 0;
  for (const auto& layer : layers)
    n += static_cast<std::size_t>(layer.w.size() + layer.b.size());
  return n;
}

Mlp init_mlp(const MlpConfig& config, std::uint64_t seed) {
  check_config(config);
  Mlp mlp;
  mlp.config = config;
  Rng rng(seed);

  std::vector<std::size_t> dims;
  dims.push_back(config.input_dim);
  dims.insert(dims.end(), config.hidden.begin(), config.hidden.end());
  dims.push_back(config.output_dim);

  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const auto fan_in = static_cast<Eigen::Index>(dims[l]);
    const auto fan_out = static_cast<Eigen::Index>(dims[l + 1]);
    Layer layer;
    layer.w.resize(fan_out, fan_in);
    layer.b = Eigen::VectorXd::Zero(fan_out);
    const double s = std::sqrt(1.0 / static_cast<double>(fan_in));
    for (Eigen::Index o = 0; o < fan_out; ++o)
      for (Eigen::Index i = 0; i < fan_in; ++i)
        layer.w(o, i) = rng.uniform(-s, s);
    const double norm = layer.w.norm();
    if (norm > config.init_norm_cap) layer.w *= config.init_norm_cap / norm;
    mlp.layers.push_back(std::move(layer));
  }
  return mlp;
}

Eigen::MatrixXd forward(const Mlp& mlp, const Eigen::MatrixXd& inputs) {
  if (inputs.cols() != static_cast<Eigen::Index>(mlp.config.input_dim))
    throw ShapeMismatchError("forward: inputs have wrong dimensionality");
  Eigen::MatrixXd a = inputs.transpose();  // features x samples
  const std::size_t n_layers = mlp.layers.size();
  for (std::size_t l = 0; l < n_layers; ++l) {
    Eigen::MatrixXd z = mlp.layers[l].w * a;
    z.colwise() += mlp.layers[l].b;
    a = (l + 1 < n_layers) ? apply_activation(mlp.config.activation, z) : z;
  }
  return a.transpose();
}

std::vector<bool> hidden_unit_active(const Mlp& mlp,
                                     const Eigen::MatrixXd& inputs) {
  if (inputs.cols() != static_cast<Eigen::Index>(mlp.config.input_dim))
    throw ShapeMismatchError("hidden_unit_active: inputs have wrong dimensionality");
  std::vector<bool> pattern;
  Eigen::MatrixXd a = inputs.transpose();  // features x samples
  for (std::size_t l = 0; l + 1 < mlp.layers.size(); ++l) {
    Eigen::MatrixXd z = mlp.layers[l].w * a;
    z.colwise() += mlp.layers[l].b;
    pattern.reserve(pattern.size() + static_cast<std::size_t>(z.size()));
    for (Eigen::Index i = 0; i < z.size(); ++i)
      pattern.push_back(z.data()[i] > 0.0);
    a = apply_activation(mlp.config.activation, z);
  }
  return pattern;
}

Dataset make_dataset(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw ShapeMismatchError("make_dataset: series lengths differ");
  Dataset d;
  d.inputs.resize(static_cast<Eigen::Index>(x.size()), 1);
  d.targets.resize(static_cast<Eigen::Index>(y.size()), 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    d.inputs(static_cast<Eigen::Index>(i), 0) = x[i];
    d.targets(static_cast<Eigen::Index>(i), 0) = y[i];
  }
  return d;
}

double mse(const Mlp& mlp, const Eigen::MatrixXd& inputs,
           const Eigen::MatrixXd& targets) {
  if (inputs.rows() != targets.rows())
    throw ShapeMismatchError("mse: inputs/targets row mismatch");
  const Eigen::MatrixXd pred = forward(mlp, inputs);
  const double denom = static_cast<double>(pred.rows()) * static_cast<double>(pred.cols());
  return (pred - targets).squaredNorm() / denom;
}

OptState OptState::zeros_like(const Mlp& mlp) {
  OptState s;
  for (const auto& layer : mlp.layers) {
    s.m_w.emplace_back(Eigen::MatrixXd::Zero(layer.w.rows(), layer.w.cols()));
    s.v_w.emplace_back(Eigen::MatrixXd::Zero(layer.w.rows(), layer.w.cols()));
    s.m_b.emplace_back(Eigen::VectorXd::Zero(layer.b.size()));
    s.v_b.emplace_back(Eigen::VectorXd::Zero(layer.b.size()));
  }
  return s;
}

double Gradients::squared_norm() const {
  double n = 0.0;
  for (const auto& g : w) n += g.squaredNorm();
  for (const auto& g : b) n += g.squaredNorm();
  return n;
}

Gradients backprop(const Mlp& mlp, const Eigen::MatrixXd& batch_inputs,
                   const Eigen::MatrixXd& batch_targets) {
  if (batch_inputs.rows() != batch_targets.rows())
    throw ShapeMismatchError("backprop: inputs/targets row mismatch");
  const std::size_t n_layers = mlp.layers.size();
  const auto m = batch_inputs.rows();

  // Forward pass keeping pre- and post-activation values.
  std::vector<Eigen::MatrixXd> acts;   // acts[0] = inputs (features x samples)
  std::vector<Eigen::MatrixXd> preacts;
  acts.reserve(n_layers + 1);
  preacts.reserve(n_layers);
  acts.push_back(batch_inputs.transpose());
  for (std::size_t l = 0; l < n_layers; ++l) {
    Eigen::MatrixXd z = mlp.layers[l].w * acts.back();
    z.colwise() += mlp.layers[l].b;
    preacts.push_back(z);
    acts.push_back(l + 1 < n_layers ? apply_activation(mlp.config.activation, z)
                                    : std::move(z));
  }

  // Loss = mean over samples and output dims of squared error.
  const double denom = static_cast<double>(m) * static_cast<double>(mlp.config.output_dim);
  Eigen::MatrixXd delta = 2.0 * (acts.back() - batch_targets.transpose()) / denom;

  Gradients grads;
  grads.w.resize(n_layers);
  grads.b.resize(n_layers);
  for (std::size_t l = n_layers; l-- > 0;) {
    if (l + 1 < n_layers)  // hidden layer: apply activation derivative
      delta = (delta.array() *
               activation_grad(mlp.config.activation, preacts[l], acts[l + 1]))
                  .matrix();
    grads.w[l] = delta * acts[l].transpose();
    grads.b[l] = delta.rowwise().sum();
    if (l > 0) delta = mlp.layers[l].w.transpose() * delta;
  }
  return grads;
}

namespace {

void apply_update(Mlp& mlp, OptState& state, const Gradients& grads,
                  const OptimizerSpec& opt) {
  state.step += 1;
  switch (opt.kind) {
    case OptimizerKind::Sgd:
      for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
        mlp.layers[l].w -= opt.eta * grads.w[l];
        mlp.layers[l].b -= opt.eta * grads.b[l];
      }
      break;
    case OptimizerKind::Adam: {
      const double t = static_cast<double>(state.step);
      const double c1 = 1.0 - std::pow(opt.beta1, t);
      const double c2 = 1.0 - std::pow(opt.beta2, t);
      auto adam_step = [&](auto& m, auto& v, const auto& g, auto& param) {
        m = opt.beta1 * m + (1.0 - opt.beta1) * g;
        v = opt.beta2 * v + (1.0 - opt.beta2) * g.array().square().matrix();
        param.array() -=
            opt.eta * (m.array() / c1) / ((v.array() / c2).sqrt() + opt.eps);
      };
      for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
        adam_step(state.m_w[l], state.v_w[l], grads.w[l], mlp.layers[l].w);
        adam_step(state.m_b[l], state.v_b[l], grads.b[l], mlp.layers[l].b);
      }
      break;
    }
    case OptimizerKind::RmsProp: {
      auto rms_step = [&](auto& v, const auto& g, auto& param) {
        v = opt.decay * v + (1.0 - opt.decay) * g.array().square().matrix();
        param.array() -= opt.eta * g.array() / (v.array().sqrt() + opt.eps);
      };
      for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
        rms_step(state.v_w[l], grads.w[l], mlp.layers[l].w);
        rms_step(state.v_b[l], grads.b[l], mlp.layers[l].b);
      }
      break;
    }
  }
}

void check_train_config(const TrainConfig& tc) {
  if (tc.batch_size == 0) throw InvalidConfigError("train: batch_size must be positive");
  if (!(tc.tau > 0.0)) throw InvalidConfigError("train: tau must be positive");
  if (tc.t_max == 0) throw InvalidConfigError("train: t_max must be positive");
  if (tc.eval_every == 0) throw InvalidConfigError("train: eval_every must be positive");
  if (!(tc.holdout_fraction > 0.0 && tc.holdout_fraction < 1.0))
    throw InvalidConfigError("train: holdout_fraction must be in (0, 1)");
}

std::vector<Eigen::Index> shuffled_indices(Eigen::Index n, Rng& rng) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (Eigen::Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Eigen::Index>(
        rng.bounded(static_cast<std::uint64_t>(i) + 1));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  return idx;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m,
                          const std::vector<Eigen::Index>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  return out;
}

}  // namespace

double train_step(Mlp& mlp, OptState& state, const Eigen::MatrixXd& batch_inputs,
                  const Eigen::MatrixXd& batch_targets, const OptimizerSpec& opt) {
  const Eigen::MatrixXd pred = forward(mlp, batch_inputs);
  const double denom =
      static_cast<double>(pred.rows()) * static_cast<double>(pred.cols());
  const double loss = (pred - batch_targets).squaredNorm() / denom;
  const Gradients grads = backprop(mlp, batch_inputs, batch_targets);
  apply_update(mlp, state, grads, opt);
  return loss;
}

TrainTrace train_to_threshold(const MlpConfig& config, const Dataset& data,
                              const TrainConfig& tc, const OptimizerSpec& opt) {
  check_train_config(tc);
  const Eigen::Index n = data.inputs.rows();
  if (n != data.targets.rows())
    throw ShapeMismatchError("train: inputs/targets row mismatch");
  if (n < 10) throw DegenerateSeriesError("train: need at least 10 samples");

  // Holdout split: Fisher-Yates shuffle, last floor(fraction * n) rows held out.
  Rng split_rng(derive_seed(tc.seed, kSplitTag));
  const auto order = shuffled_indices(n, split_rng);
  auto n_hold = static_cast<Eigen::Index>(
      std::floor(tc.holdout_fraction * static_cast<double>(n)));
  if (n_hold < 1) n_hold = 1;
  if (n_hold >= n) n_hold = n - 1;
  const std::vector<Eigen::Index> train_rows(order.begin(), order.end() - n_hold);
  const std::vector<Eigen::Index> hold_rows(order.end() - n_hold, order.end());
  const Eigen::MatrixXd train_x = take_rows(data.inputs, train_rows);
  const Eigen::MatrixXd train_y = take_rows(data.targets, train_rows);
  const Eigen::MatrixXd hold_x = take_rows(data.inputs, hold_rows);
  const Eigen::MatrixXd hold_y = take_rows(data.targets, hold_rows);

  Mlp mlp = init_mlp(config, derive_seed(tc.seed, kInitTag));
  OptState state = OptState::zeros_like(mlp);
  Rng batch_rng(derive_seed(tc.seed, kBatchTag));

  const auto n_train = static_cast<std::uint64_t>(train_rows.size());
  const auto bs = static_cast<Eigen::Index>(tc.batch_size);
  Eigen::MatrixXd bx(bs, data.inputs.cols());
  Eigen::MatrixXd by(bs, data.targets.cols());

  TrainTrace trace;
  trace.train_losses.reserve(static_cast<std::size_t>(tc.t_max));
  for (std::uint64_t t = 1; t <= tc.t_max; ++t) {
    for (Eigen::Index r = 0; r < bs; ++r) {
      const auto pick = static_cast<Eigen::Index>(batch_rng.bounded(n_train));
      bx.row(r) = train_x.row(pick);
      by.row(r) = train_y.row(pick);
    }
    const double loss = train_step(mlp, state, bx, by, opt);
    trace.train_losses.push_back(loss);
    if (!std::isfinite(loss)) {
      trace.diverged = true;
      break;
    }
    if (t % tc.eval_every == 0) {
      const double hm = mse(mlp, hold_x, hold_y);
      trace.holdout_mse.push_back(hm);
      trace.final_holdout_mse = hm;
      if (!std::isfinite(hm)) {
        trace.diverged = true;
        break;
      }
      if (hm < tc.tau) {
        trace.converged = true;
        trace.steps_to_threshold = t;
        return trace;
      }
    }
  }
  // Capped (possibly with a divergence flag); never throws for divergence.
  trace.converged = false;
  trace.steps_to_threshold = tc.t_max;
  return trace;
}

GradVarResult gradient_norm_variance(const MlpConfig& config, const Dataset& data,
                                     const OptimizerSpec& opt,
                                     std::size_t n_batches, std::uint64_t at_step,
                                     const TrainConfig& tc) {
  check_train_config(tc);
  if (n_batches < 2)
    throw InvalidConfigError("gradient_norm_variance: need at least 2 batches");
  const Eigen::Index n = data.inputs.rows();
  if (n != data.targets.rows())
    throw ShapeMismatchError("gradient_norm_variance: inputs/targets row mismatch");
  if (static_cast<Eigen::Index>(tc.batch_size) > n)
    throw InvalidConfigError("gradient_norm_variance: batch_size exceeds dataset");

  Mlp mlp = init_mlp(config, derive_seed(tc.seed, kInitTag));
  OptState state = OptState::zeros_like(mlp);
  Rng batch_rng(derive_seed(tc.seed, kBatchTag));
  const auto bs = static_cast<Eigen::Index>(tc.batch_size);
  Eigen::MatrixXd bx(bs, data.inputs.cols());
  Eigen::MatrixXd by(bs, data.targets.cols());
  for (std::uint64_t t = 0; t < at_step; ++t) {
    for (Eigen::Index r = 0; r < bs; ++r) {
      const auto pick =
          static_cast<Eigen::Index>(batch_rng.bounded(static_cast<std::uint64_t>(n)));
      bx.row(r) = data.inputs.row(pick);
      by.row(r) = data.targets.row(pick);
    }
    (void)train_step(mlp, state, bx, by, opt);
  }

  // Probe batches: consecutive blocks of a seeded permutation, reshuffled
  // when exhausted, so small datasets are covered exactly.
  Rng probe_rng(derive_seed(tc.seed, kProbeTag));
  auto perm = shuffled_indices(n, probe_rng);
  std::size_t cursor = 0;
  GradVarResult result;
  result.squared_norms.reserve(n_batches);
  for (std::size_t k = 0; k < n_batches; ++k) {
    for (Eigen::Index r = 0; r < bs; ++r) {
      if (cursor == perm.size()) {
        perm = shuffled_indices(n, probe_rng);
        cursor = 0;
      }
      bx.row(r) = data.inputs.row(perm[cursor]);
      by.row(r) = data.targets.row(perm[cursor]);
      ++cursor;
    }
    result.squared_norms.push_back(backprop(mlp, bx, by).squared_norm());
  }

  double mean = 0.0;
  for (double v : result.squared_norms) mean += v;
  mean /= static_cast<double>(result.squared_norms.size());
  double var = 0.0;
  for (double v : result.squared_norms) var += (v - mean) * (v - mean);
  var /= static_cast<double>(result.squared_norms.size() - 1);
  result.mean = mean;
  result.variance = var;
  return result;
}

}  // namespace ccl
