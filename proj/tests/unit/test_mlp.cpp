#include <doctest.h>

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ccl/dgp.hpp"
#include "ccl/errors.hpp"
#include "ccl/mlp.hpp"
#include "ccl/rng.hpp"

namespace {

// Central finite-difference gradient of the batch MSE with respect to every
// parameter, as an oracle for backprop.
ccl::Gradients finite_difference(ccl::Mlp mlp, const Eigen::MatrixXd& in,
                                 const Eigen::MatrixXd& tgt, double h) {
  auto loss = [&](const ccl::Mlp& m) {
    const Eigen::MatrixXd pred = ccl::forward(m, in);
    return (pred - tgt).squaredNorm() /
           static_cast<double>(in.rows() * tgt.cols());
  };
  ccl::Gradients g;
  g.w.resize(mlp.layers.size());
  g.b.resize(mlp.layers.size());
  for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
    g.w[l].resizeLike(mlp.layers[l].w);
    g.b[l].resizeLike(mlp.layers[l].b);
    for (Eigen::Index r = 0; r < mlp.layers[l].w.rows(); ++r)
      for (Eigen::Index c = 0; c < mlp.layers[l].w.cols(); ++c) {
        const double keep = mlp.layers[l].w(r, c);
        mlp.layers[l].w(r, c) = keep + h;
        const double up = loss(mlp);
        mlp.layers[l].w(r, c) = keep - h;
        const double dn = loss(mlp);
        mlp.layers[l].w(r, c) = keep;
        g.w[l](r, c) = (up - dn) / (2.0 * h);
      }
    for (Eigen::Index r = 0; r < mlp.layers[l].b.size(); ++r) {
      const double keep = mlp.layers[l].b(r);
      mlp.layers[l].b(r) = keep + h;
      const double up = loss(mlp);
      mlp.layers[l].b(r) = keep - h;
      const double dn = loss(mlp);
      mlp.layers[l].b(r) = keep;
      g.b[l](r) = (up - dn) / (2.0 * h);
    }
  }
  return g;
}

double max_rel_err(const ccl::Gradients& got, const ccl::Gradients& want) {
  double worst = 0.0;
  auto upd = [&](double g, double w) {
    const double denom = std::max({std::abs(g), std::abs(w), 1e-8});
    worst = std::max(worst, std::abs(g - w) / denom);
  };
  for (std::size_t l = 0; l < got.w.size(); ++l) {
    for (Eigen::Index r = 0; r < got.w[l].rows(); ++r)
      for (Eigen::Index c = 0; c < got.w[l].cols(); ++c)
        upd(got.w[l](r, c), want.w[l](r, c));
    for (Eigen::Index r = 0; r < got.b[l].size(); ++r)
      upd(got.b[l](r), want.b[l](r));
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("mlp");

TEST_CASE("init draws uniform(-s, s) weights and zero biases") {
  ccl::MlpConfig cfg;
  cfg.hidden = {8, 4};
  const ccl::Mlp mlp = ccl::init_mlp(cfg, 13);
  REQUIRE(mlp.layers.size() == 3);

  // Documented draw order: one stream, layers in order, fan-in fastest.
  ccl::Rng trace(13);
  const std::size_t fan_ins[3] = {1, 8, 4};
  for (std::size_t l = 0; l < 3; ++l) {
    const double s = std::sqrt(1.0 / static_cast<double>(fan_ins[l]));
    for (Eigen::Index r = 0; r < mlp.layers[l].w.rows(); ++r)
      for (Eigen::Index c = 0; c < mlp.layers[l].w.cols(); ++c)
        CHECK(mlp.layers[l].w(r, c) == trace.uniform(-s, s));
    for (Eigen::Index r = 0; r < mlp.layers[l].b.size(); ++r)
      CHECK(mlp.layers[l].b(r) == 0.0);
  }
}

TEST_CASE("init rescales layers above the norm cap") {
  ccl::MlpConfig cfg;
  cfg.hidden = {64};
  cfg.init_norm_cap = 0.05;  // far below the natural norm of a 64-wide layer
  const ccl::Mlp mlp = ccl::init_mlp(cfg, 3);
  for (const auto& layer : mlp.layers)
    CHECK(layer.w.norm() <= 0.05 + 1e-12);
}

TEST_CASE("num_params counts weights and biases") {
  ccl::MlpConfig cfg;
  cfg.hidden = {8, 4};
  const ccl::Mlp mlp = ccl::init_mlp(cfg, 1);
  // (1*8 + 8) + (8*4 + 4) + (4*1 + 1) = 16 + 36 + 5
  CHECK(mlp.num_params() == 57);
}

TEST_CASE("forward pass of a hand-built tanh net") {
  ccl::MlpConfig cfg;
  cfg.hidden = {2};
  ccl::Mlp mlp = ccl::init_mlp(cfg, 0);
  // h = tanh(W1 x + b1), y = W2 h + b2 with chosen parameters.
  mlp.layers[0].w << 1.0, -2.0;  // 2x1
  mlp.layers[0].b << 0.5, 0.0;
  mlp.layers[1].w << 3.0, 1.0;  // 1x2
  mlp.layers[1].b << -0.25;

  Eigen::MatrixXd in(2, 1);
  in << 0.7, -1.1;
  const Eigen::MatrixXd out = ccl::forward(mlp, in);
  for (int i = 0; i < 2; ++i) {
    const double x = in(i, 0);
    const double h1 = std::tanh(1.0 * x + 0.5);
    const double h2 = std::tanh(-2.0 * x);
    CHECK(out(i, 0) == doctest::Approx(3.0 * h1 + 1.0 * h2 - 0.25).epsilon(1e-15));
  }
}

TEST_CASE("relu forward clamps negatives") {
  ccl::MlpConfig cfg;
  cfg.hidden = {1};
  cfg.activation = ccl::Activation::ReLU;
  ccl::Mlp mlp = ccl::init_mlp(cfg, 0);
  mlp.layers[0].w << 1.0;
  mlp.layers[0].b << 0.0;
  mlp.layers[1].w << 1.0;
  mlp.layers[1].b << 0.0;
  Eigen::MatrixXd in(2, 1);
  in << -3.0, 2.0;
  const Eigen::MatrixXd out = ccl::forward(mlp, in);
  CHECK(out(0, 0) == 0.0);
  CHECK(out(1, 0) == 2.0);
}

TEST_CASE("hidden_unit_active reports the linear region per sample") {
  ccl::MlpConfig cfg;
  cfg.hidden = {2};
  cfg.activation = ccl::Activation::ReLU;
  ccl::Mlp mlp = ccl::init_mlp(cfg, 0);
  mlp.layers[0].w << 1.0, -1.0;  // unit 0 fires for x>0, unit 1 for x<0
  mlp.layers[0].b << 0.0, 0.0;
  mlp.layers[1].w << 1.0, 1.0;
  mlp.layers[1].b << 0.0;

  Eigen::MatrixXd in(2, 1);
  in << 2.0, -3.0;
  const std::vector<bool> pattern = ccl::hidden_unit_active(mlp, in);
  // One entry per (sample, hidden unit); x = 2 activates unit 0 only,
  // x = -3 activates unit 1 only. Output-layer units are not included.
  REQUIRE(pattern.size() == 4);
  const std::size_t on =
      static_cast<std::size_t>(std::count(pattern.begin(), pattern.end(), true));
  CHECK(on == 2);

  // Nudging a bias across zero flips exactly that unit's region.
  mlp.layers[0].b(0) = -2.5;
  const std::vector<bool> shifted = ccl::hidden_unit_active(mlp, in);
  CHECK(shifted != pattern);

  Eigen::MatrixXd wrong(2, 2);
  CHECK_THROWS_AS(ccl::hidden_unit_active(mlp, wrong), ccl::ShapeMismatchError);
}

TEST_CASE("backprop matches central finite differences") {
  ccl::Rng data_rng(17);
  int checked = 0;
  for (ccl::Activation act : {ccl::Activation::Tanh, ccl::Activation::ReLU}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      ccl::MlpConfig cfg;
      cfg.hidden = {5, 3};
      cfg.activation = act;
      const ccl::Mlp mlp = ccl::init_mlp(cfg, seed);

      Eigen::MatrixXd in(8, 1), tgt(8, 1);
      for (int i = 0; i < 8; ++i) {
        in(i, 0) = data_rng.normal();
        tgt(i, 0) = data_rng.normal();
      }
      const ccl::Gradients bp = ccl::backprop(mlp, in, tgt);
      const ccl::Gradients fd = finite_difference(mlp, in, tgt, 1e-6);
      CHECK(max_rel_err(bp, fd) < 1e-5);
      ++checked;
    }
  }
  CHECK(checked == 6);
}

TEST_CASE("gradient squared norm sums every parameter") {
  ccl::MlpConfig cfg;
  cfg.hidden = {3};
  const ccl::Mlp mlp = ccl::init_mlp(cfg, 21);
  Eigen::MatrixXd in(4, 1), tgt(4, 1);
  in << 0.1, -0.2, 0.3, 1.0;
  tgt << 1.0, 0.0, -1.0, 0.5;
  const ccl::Gradients g = ccl::backprop(mlp, in, tgt);
  double manual = 0.0;
  for (const auto& w : g.w) manual += w.squaredNorm();
  for (const auto& b : g.b) manual += b.squaredNorm();
  CHECK(g.squared_norm() == doctest::Approx(manual).epsilon(1e-15));
}

TEST_CASE("single SGD step has the closed-form update") {
  // Zero hidden weights make the prediction equal to the output bias, so
  // the only nonzero gradient is d/db2 (pred - y)^2 = 2 (pred - y).
  ccl::MlpConfig cfg;
  cfg.hidden = {1};
  ccl::Mlp mlp = ccl::init_mlp(cfg, 0);
  mlp.layers[0].w.setZero();
  mlp.layers[0].b.setZero();
  mlp.layers[1].w.setZero();
  mlp.layers[1].b.setZero();

  Eigen::MatrixXd in(1, 1), tgt(1, 1);
  in << 1.0;
  tgt << 1.0;
  ccl::OptState state = ccl::OptState::zeros_like(mlp);
  const double pre_loss =
      ccl::train_step(mlp, state, in, tgt, ccl::OptimizerSpec::sgd(0.1));

  CHECK(pre_loss == 1.0);                         // (0 - 1)^2
  CHECK(mlp.layers[1].b(0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(mlp.layers[1].w(0, 0) == 0.0);            // hidden output is tanh(0) = 0
  CHECK(mlp.layers[0].w(0, 0) == 0.0);            // dL/dh = w2 = 0
  CHECK(state.step == 1);
}

TEST_CASE("single Adam step applies bias-corrected moments") {
  ccl::MlpConfig cfg;
  cfg.hidden = {1};
  ccl::Mlp mlp = ccl::init_mlp(cfg, 0);
  for (auto& layer : mlp.layers) {
    layer.w.setZero();
    layer.b.setZero();
  }
  Eigen::MatrixXd in(1, 1), tgt(1, 1);
  in << 1.0;
  tgt << 1.0;
  ccl::OptState state = ccl::OptState::zeros_like(mlp);
  const ccl::OptimizerSpec adam = ccl::OptimizerSpec::adam(1e-3);
  (void)ccl::train_step(mlp, state, in, tgt, adam);

  // g = -2; after bias correction m_hat = g, v_hat = g^2, so the update is
  // eta * g / (sqrt(g^2) + eps).
  const double g = -2.0;
  const double expected = -adam.eta * g / (std::sqrt(g * g) + adam.eps);
  CHECK(mlp.layers[1].b(0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("train_to_threshold stops at the first passing evaluation") {
  const ccl::SampleSet s = ccl::sample_bivariate({ccl::DgpKind::Sin, 64, 0.1}, 2);
  const ccl::Dataset data = ccl::make_dataset(s.x, s.y);
  ccl::MlpConfig mcfg;
  mcfg.hidden = {4};

  ccl::TrainConfig tc;
  tc.tau = 1e9;  // every evaluation passes
  tc.eval_every = 7;
  tc.t_max = 100;
  tc.seed = 5;
  const ccl::TrainTrace trace =
      ccl::train_to_threshold(mcfg, data, tc, ccl::OptimizerSpec::adam());
  CHECK(trace.converged);
  CHECK(trace.steps_to_threshold == 7);
  CHECK(trace.train_losses.size() == 7);
  CHECK(trace.holdout_mse.size() == 1);
}

TEST_CASE("train_to_threshold caps when the threshold is unreachable") {
  const ccl::SampleSet s = ccl::sample_bivariate({ccl::DgpKind::Sin, 64, 0.1}, 2);
  const ccl::Dataset data = ccl::make_dataset(s.x, s.y);
  ccl::MlpConfig mcfg;
  mcfg.hidden = {4};

  ccl::TrainConfig tc;
  tc.tau = 1e-300;  // unreachable
  tc.eval_every = 10;
  tc.t_max = 50;
  tc.seed = 5;
  const ccl::TrainTrace trace =
      ccl::train_to_threshold(mcfg, data, tc, ccl::OptimizerSpec::adam());
  CHECK_FALSE(trace.converged);
  CHECK(trace.steps_to_threshold == 50);
  CHECK(trace.train_losses.size() == 50);
  CHECK(trace.holdout_mse.size() == 5);
}

TEST_CASE("divergence is reported as capped, never thrown") {
  const ccl::SampleSet s =
      ccl::sample_bivariate({ccl::DgpKind::Cubic, 128, 0.1}, 3);
  const ccl::Dataset data = ccl::make_dataset(s.x, s.y);
  ccl::MlpConfig mcfg;
  mcfg.hidden = {8};

  ccl::TrainConfig tc;
  tc.tau = 1e-12;
  tc.t_max = 200;
  tc.seed = 4;
  const ccl::TrainTrace trace =
      ccl::train_to_threshold(mcfg, data, tc, ccl::OptimizerSpec::sgd(1e9));
  CHECK(trace.diverged);
  CHECK_FALSE(trace.converged);
  CHECK(trace.steps_to_threshold == 200);
}

TEST_CASE("same seed, same trace; different seed, different trace") {
  const ccl::SampleSet s = ccl::sample_bivariate({ccl::DgpKind::Sin, 200, 0.1}, 8);
  const ccl::Dataset data = ccl::make_dataset(s.x, s.y);
  ccl::MlpConfig mcfg;
  mcfg.hidden = {8};
  ccl::TrainConfig tc;
  tc.t_max = 60;
  tc.tau = 1e-9;
  tc.seed = 42;
  const auto a = ccl::train_to_threshold(mcfg, data, tc, ccl::OptimizerSpec::adam());
  const auto b = ccl::train_to_threshold(mcfg, data, tc, ccl::OptimizerSpec::adam());
  CHECK(a == b);
  tc.seed = 43;
  const auto c = ccl::train_to_threshold(mcfg, data, tc, ccl::OptimizerSpec::adam());
  CHECK_FALSE(a == c);
}

TEST_CASE("whole-data probe batches have zero gradient variance") {
  const ccl::SampleSet s = ccl::sample_bivariate({ccl::DgpKind::Sin, 64, 0.1}, 6);
  const ccl::Dataset data = ccl::make_dataset(s.x, s.y);
  ccl::MlpConfig mcfg;
  mcfg.hidden = {6};

  ccl::TrainConfig tc;
  tc.batch_size = 64;  // every probe batch is a permutation of all rows
  tc.seed = 10;
  const ccl::GradVarResult res = ccl::gradient_norm_variance(
      mcfg, data, ccl::OptimizerSpec::adam(), 5, 0, tc);
  REQUIRE(res.squared_norms.size() == 5);
  for (double v : res.squared_norms)
    CHECK(v == doctest::Approx(res.squared_norms[0]).epsilon(1e-12));
  CHECK(res.variance == doctest::Approx(0.0).epsilon(1e-15));

  // At step 0 the probed parameters are the untouched init, so the probe
  // norm equals an independent whole-batch backprop at that init.
  const ccl::Mlp init = ccl::init_mlp(mcfg, ccl::derive_seed(10, 1));
  const ccl::Gradients g = ccl::backprop(init, data.inputs, data.targets);
  CHECK(res.squared_norms[0] == doctest::Approx(g.squared_norm()).epsilon(1e-12));
}

TEST_CASE("gradient_norm_variance reports sample statistics") {
  const ccl::SampleSet s = ccl::sample_bivariate({ccl::DgpKind::Cubic, 256, 0.1}, 7);
  const ccl::Dataset data = ccl::make_dataset(s.x, s.y);
  ccl::MlpConfig mcfg;
  mcfg.hidden = {8};
  ccl::TrainConfig tc;
  tc.batch_size = 32;
  tc.seed = 3;
  const ccl::GradVarResult res = ccl::gradient_norm_variance(
      mcfg, data, ccl::OptimizerSpec::adam(), 10, 5, tc);
  REQUIRE(res.squared_norms.size() == 10);
  double mean = 0.0;
  for (double v : res.squared_norms) mean += v;
  mean /= 10.0;
  double var = 0.0;
  for (double v : res.squared_norms) var += (v - mean) * (v - mean);
  var /= 9.0;
  CHECK(res.mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(res.variance == doctest::Approx(var).epsilon(1e-12));
}

TEST_SUITE_END();
