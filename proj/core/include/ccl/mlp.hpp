#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace ccl {

enum class Activation : std::uint8_t { Tanh, ReLU };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

enum class OptimizerKind : std::uint8_t { Sgd, Adam, RmsProp };

const char* optimizer_name(OptimizerKind k);
OptimizerKind optimizer_from_name(const std::string& name);

struct OptimizerSpec {
  OptimizerKind kind = OptimizerKind::Adam;
  double eta = 1e-3;     // learning rate
  double beta1 = 0.9;    // Adam first-moment decay
  double beta2 = 0.999;  // Adam second-moment decay
  double eps = 1e-8;     // Adam / RMSProp denominator floor
  double decay = 0.9;    // RMSProp squared-gradient decay

  static OptimizerSpec sgd(double eta = 1e-2);
  static OptimizerSpec adam(double eta = 1e-3);
  static OptimizerSpec rmsprop(double eta = 1e-3);
};

struct MlpConfig {
  std::size_t input_dim = 1;
  std::vector<std::size_t> hidden = {64, 64};  // non-empty
  std::size_t output_dim = 1;
  Activation activation = Activation::Tanh;
  double init_norm_cap = 10.0;  // per-layer L2 cap B applied after init
};

// Dense layer, weights stored as (fan_out x fan_in).
struct Layer {
  Eigen::MatrixXd w;
  Eigen::VectorXd b;
};

struct Mlp {
  MlpConfig config;
  std::vector<Layer> layers;  // hidden layers + linear output layer

  std::size_t num_params() const;
};

// Initialization (documented so a PRNG trace reproduces it by hand):
// one Rng stream seeded with `seed`; for each layer in order, weight
// entries are drawn uniform(-s, s) with s = sqrt(1/fan_in), iterating the
// fan-in index fastest (w(0,0), w(0,1), ..., w(1,0), ...); biases start at
// zero and consume no draws. After filling a layer, if the Frobenius norm
// of its weight matrix exceeds config.init_norm_cap the matrix is rescaled
// to that norm.
Mlp init_mlp(const MlpConfig& config, std::uint64_t seed);

// Row-per-sample forward pass: inputs (n x input_dim) -> (n x output_dim).
// Hidden layers apply the configured activation; the output layer is linear.
Eigen::MatrixXd forward(const Mlp& mlp, const Eigen::MatrixXd& inputs);

// Sign pattern (pre-activation > 0) of every hidden unit for every sample,
// concatenated layer by layer in forward order. For ReLU networks two
// parameter settings with the same pattern lie in the same linear region, so
// finite-difference probes between them are well-defined; a probe that flips
// the pattern straddles a kink where the loss is not differentiable.
std::vector<bool> hidden_unit_active(const Mlp& mlp,
                                     const Eigen::MatrixXd& inputs);

struct Dataset {
  Eigen::MatrixXd inputs;   // n x input_dim
  Eigen::MatrixXd targets;  // n x output_dim
};

Dataset make_dataset(const std::vector<double>& x, const std::vector<double>& y);

// Mean squared error averaged over samples and output dimensions.
double mse(const Mlp& mlp, const Eigen::MatrixXd& inputs,
           const Eigen::MatrixXd& targets);

// Per-layer optimizer state (first/second moments, step counter).
struct OptState {
  std::vector<Eigen::MatrixXd> m_w, v_w;
  std::vector<Eigen::VectorXd> m_b, v_b;
  std::uint64_t step = 0;

  static OptState zeros_like(const Mlp& mlp);
};

// Full-parameter gradient of the batch MSE.
struct Gradients {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;

  double squared_norm() const;
};

Gradients backprop(const Mlp& mlp, const Eigen::MatrixXd& batch_inputs,
                   const Eigen::MatrixXd& batch_targets);

// One mini-batch update. Returns the batch MSE at the pre-update parameters.
double train_step(Mlp& mlp, OptState& state, const Eigen::MatrixXd& batch_inputs,
                  const Eigen::MatrixXd& batch_targets, const OptimizerSpec& opt);

struct TrainConfig {
  std::size_t batch_size = 64;
  double tau = 0.05;               // held-out MSE convergence threshold
  std::uint64_t t_max = 3000;      // step cap
  std::uint64_t eval_every = 1;    // held-out evaluation cadence (steps)
  double holdout_fraction = 0.2;   // in (0, 1)
  std::uint64_t seed = 0;          // master seed for init/split/batch streams
};

struct TrainTrace {
  std::vector<double> train_losses;      // one entry per executed step
  std::vector<double> holdout_mse;       // one entry per evaluation
  std::uint64_t steps_to_threshold = 0;  // first crossing step, else t_max
  bool converged = false;                // some holdout MSE fell below tau
  bool diverged = false;                 // non-finite loss; reported as capped
  double final_holdout_mse = 0.0;

  bool operator==(const TrainTrace&) const = default;
};

// Seeded sub-streams (derive_seed tags): 1 = init, 2 = holdout split,
// 3 = training batch draws, 4 = measurement batches. The holdout split is a
// Fisher-Yates shuffle of row indices; the last floor(holdout_fraction * n)
// shuffled indices form the holdout. Training batches are drawn with
// replacement from the training rows. Evaluation happens every eval_every
// steps; training stops at the first evaluation with holdout MSE < tau.
TrainTrace train_to_threshold(const MlpConfig& config, const Dataset& data,
                              const TrainConfig& tc, const OptimizerSpec& opt);

struct GradVarResult {
  std::vector<double> squared_norms;  // one per probed mini-batch
  double mean = 0.0;
  double variance = 0.0;  // sample variance (n - 1 denominator)
};

// Trains for at_step steps (same init/batch stream derivation as
// train_to_threshold, no holdout split, whole dataset trainable), then
// measures gradient squared-norms on n_batches mini-batches taken as
// consecutive blocks of a seeded permutation of the rows (re-shuffling when
// exhausted), without updating parameters.
GradVarResult gradient_norm_variance(const MlpConfig& config, const Dataset& data,
                                     const OptimizerSpec& opt,
                                     std::size_t n_batches, std::uint64_t at_step,
                                     const TrainConfig& tc);

}  // namespace ccl
