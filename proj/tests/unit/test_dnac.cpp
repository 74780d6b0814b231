#include <cmath>
#include <random>

#include <doctest.h>

#include "dnaclab/adam.hpp"
#include "dnaclab/dense_net.hpp"
#include "dnaclab/dnac.hpp"
#include "dnaclab/errors.hpp"
#include "dnaclab/replay.hpp"

using namespace dnaclab;

TEST_CASE("sgn_smoothed hard and boundary-layer forms")
{
  const Eigen::Vector2d e(0.004, -0.5);
  const Eigen::Vector2d hard = sgn_smoothed(e, 0.0);
  CHECK(hard(0) == 1.0);
  CHECK(hard(1) == -1.0);
  CHECK(sgn_smoothed(Eigen::Vector2d::Zero(), 0.0)(0) == 0.0);

  const Eigen::Vector2d soft = sgn_smoothed(e, 0.01);
  CHECK(soft(0) == doctest::Approx(0.4).epsilon(1e-15));  // inside the layer: e / boundary
  CHECK(soft(1) == -1.0);                                 // saturated
}

TEST_CASE("dnac config validation")
{
  DnacConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.k_gain(0) = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = DnacConfig{};
  cfg.minibatch_size = 30;  // does not divide 100
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = DnacConfig{};
  cfg.gamma_w = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("replay buffer fills once and refuses overflow")
{
  ReplayBuffer buf(3);
  ReplaySample s;
  s.x = Eigen::Vector2d(0.1, 0.2);
  s.x_dot = Eigen::Vector2d(0.0, 0.0);
  s.gu = Eigen::Vector2d(0.0, 0.0);
  CHECK_FALSE(buf.push(s));
  CHECK_FALSE(buf.push(s));
  CHECK(buf.push(s));  // true exactly when the buffer just filled
  CHECK(buf.full());
  CHECK_THROWS_AS(buf.push(s), ConfigError);
  buf.clear();
  CHECK(buf.size() == 0);

  s.x(0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(buf.push(s), InputError);
}

TEST_CASE("control law with zero outer weights reduces to the linear part")
{
  DnacController ctrl(DnacConfig{}, 42);
  const Eigen::Vector2d e(0.05, -0.02);
  const Eigen::Vector2d x_dot_d(0.3, 0.1);
  const Eigen::Vector2d x(0.2, -0.1);

  // fresh controller: outer weights are zero, so f_hat = 0
  CHECK(ctrl.estimate_uncertainty(x).norm() == 0.0);

  const Eigen::Vector2d u = ctrl.compute_control(e, x_dot_d, x);
  for (int i = 0; i < 2; ++i)
  {
    const double sgn = std::clamp(e(i) / 0.01, -1.0, 1.0);
    const double expected = (-10.0 * e(i) - 0.001 * sgn + x_dot_d(i)) / 100.0;
    CHECK(u(i) == doctest::Approx(expected).epsilon(1e-15));
  }

  CHECK_THROWS_AS(
      ctrl.compute_control(Eigen::Vector2d(std::nan(""), 0.0), x_dot_d, x), InputError);
}

TEST_CASE("outer weight update is one euler step of the adaptation law")
{
  DnacController ctrl(DnacConfig{}, 9);
  const Eigen::Vector2d e(0.03, -0.07);
  const Eigen::Vector2d x(0.4, 0.2);
  const double dt = 0.004;

  const Eigen::VectorXd sigma = ctrl.net().forward(x).features;
  ctrl.update_outer_weights(e, x, dt);

  const Eigen::MatrixXd expected = 10.0 * dt * sigma * e.transpose();
  CHECK((ctrl.net().outer_weights() - expected).norm() < 1e-15);

  // f_hat after the update follows W^T sigma
  const Eigen::Vector2d f_hat = ctrl.estimate_uncertainty(x);
  CHECK((f_hat - expected.transpose() * sigma).norm() < 1e-15);
  CHECK(ctrl.outer_weight_norm() == doctest::Approx(expected.norm()));
  CHECK(ctrl.healthy());
}

TEST_CASE("training cadence: one pass is 25 adam steps touching each sample 5 times")
{
  DnacController ctrl(DnacConfig{}, 0);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-0.3, 0.3);

  CHECK_THROWS_AS(ctrl.train_inner(), ConfigError);  // buffer not full

  bool due = false;
  for (int i = 0; i < 100; ++i)
  {
    ReplaySample s;
    s.x = Eigen::Vector2d(dist(rng), dist(rng));
    s.gu = Eigen::Vector2d(dist(rng), dist(rng));
    s.x_dot = s.gu + Eigen::Vector2d(0.1, -0.2);
    due = ctrl.record_sample(s);
    CHECK(due == (i == 99));
  }
  REQUIRE(due);

  const BatchTrainResult result = ctrl.train_inner();
  CHECK(result.ok);
  CHECK(result.epoch_losses.size() == 5);
  CHECK(ctrl.train_count() == 1);
  CHECK(ctrl.train_stats().passes == 1);
  CHECK(ctrl.train_stats().adam_steps == 25);
  CHECK(ctrl.train_stats().sample_touches == 500);
  CHECK(ctrl.train_stats().faults == 0);
  CHECK(ctrl.buffer().size() == 0);  // consumed
}

TEST_CASE("inner training reduces the loss on a stationary residual")
{
  std::mt19937 rng(2);
  FeedforwardNet net = make_estimator_net({3, 4}, 8, 2, rng);

  // A fresh estimator has a zero outer map, so inner gradients vanish. Give
  // the outer layer weight first, as the flight-time adaptation law would.
  std::uniform_real_distribution<double> wdist(-0.5, 0.5);
  for (int r = 0; r < net.outer_weights().rows(); ++r)
    for (int c = 0; c < net.outer_weights().cols(); ++c)
      net.outer_weights()(r, c) = wdist(rng);

  // x_dot = gu + f(x) with a smooth nonlinear residual the inner layers can fit
  const auto residual = [](const Eigen::Vector2d& x) {
    return Eigen::Vector2d(0.8 * std::tanh(2.0 * x(0)) - 0.3 * x(1), 0.5 * x(0) * x(1) + 0.2);
  };

  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  std::vector<ReplaySample> samples(100);
  for (ReplaySample& s : samples)
  {
    s.x = Eigen::Vector2d(dist(rng), dist(rng));
    s.gu = Eigen::Vector2d(dist(rng), dist(rng));
    s.x_dot = s.gu + residual(s.x);
  }

  AdamState adam(net, AdamConfig{});
  BatchTrainer trainer(20, 5, 1.0);

  double first = 0.0, last = 0.0;
  for (int pass = 0; pass < 8; ++pass)
  {
    const BatchTrainResult result = trainer.train(net, adam, samples, rng);
    REQUIRE(result.ok);
    if (pass == 0)
      first = result.epoch_losses.front();
    last = result.epoch_losses.back();
  }
  CHECK(last < first);
  CHECK(trainer.stats().passes == 8);
  CHECK(trainer.stats().adam_steps == 8 * 25);
}

TEST_CASE("checkpoint round trip restores the estimator and buffer")
{
  DnacController ctrl(DnacConfig{}, 17);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> dist(-0.4, 0.4);

  for (int i = 0; i < 100; ++i)
  {
    ReplaySample s;
    s.x = Eigen::Vector2d(dist(rng), dist(rng));
    s.gu = Eigen::Vector2d(dist(rng), dist(rng));
    s.x_dot = s.gu;
    ctrl.record_sample(s);
  }
  ctrl.train_inner();
  ctrl.update_outer_weights(Eigen::Vector2d(0.02, -0.05), Eigen::Vector2d(0.1, 0.3), 0.004);
  for (int i = 0; i < 7; ++i)
  {
    ReplaySample s;
    s.x = Eigen::Vector2d(dist(rng), dist(rng));
    s.gu = Eigen::Vector2d(dist(rng), dist(rng));
    s.x_dot = s.gu;
    ctrl.record_sample(s);
  }

  const std::string snapshot = ctrl.checkpoint_json();
  DnacController other(DnacConfig{}, 999);
  other.restore_checkpoint(snapshot);

  const Eigen::Vector2d x(0.21, -0.34);
  CHECK(other.estimate_uncertainty(x) == ctrl.estimate_uncertainty(x));
  CHECK(other.train_count() == ctrl.train_count());
  CHECK(other.buffer().size() == ctrl.buffer().size());
  CHECK(other.buffer().samples()[3].x == ctrl.buffer().samples()[3].x);

  CHECK_THROWS_AS(other.restore_checkpoint("{ not json"), ConfigError);
}

TEST_CASE("prediction is estimate plus control contribution")
{
  DnacController ctrl(DnacConfig{}, 8);
  ctrl.update_outer_weights(Eigen::Vector2d(0.1, 0.05), Eigen::Vector2d(0.3, -0.2), 0.01);
  const Eigen::Vector2d x(0.3, -0.2);
  const Eigen::Vector2d gu(1.5, -0.7);
  CHECK((ctrl.predict_xdot(x, gu) - (ctrl.estimate_uncertainty(x) + gu)).norm() == 0.0);
}
