#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>

#include "dnaclab/adam.hpp"
#include "dnaclab/dense_net.hpp"
#include "dnaclab/replay.hpp"

namespace dnaclab
{

// Control-law and training parameters. Defaults follow the reference
// configuration: K = 10 I, Ks = 0.001, g_hat = 100 I, Gamma_W = 10,
// M = 100, S_b = 20, N_e = 5.
struct DnacConfig
{
  Eigen::Vector2d k_gain = Eigen::Vector2d::Constant(10.0);      // diagonal of K
  double ks = 0.001;                                             // sliding-mode gain
  Eigen::Vector2d g_hat = Eigen::Vector2d::Constant(100.0);      // diagonal of g_hat
  double gamma_w = 10.0;                                         // online learning gain
  int buffer_size = 100;                                         // M
  int minibatch_size = 20;                                       // S_b
  int epochs = 5;                                                // N_e
  double loss_beta = 1.0;                                        // smooth L1 width
  double sgn_boundary = 0.01;                                    // rad; 0 = hard sign
  double w_norm_limit = 1e3;                                     // divergence guard on ||W||_F
  AdamConfig adam;
  std::vector<int> hidden_dims = {3, 4};
  int feature_dim = 8;

  void validate() const;
};

// Smoothed sign: hard componentwise sign when boundary == 0, otherwise
// e_i / boundary clamped to [-1, 1].
Eigen::Vector2d sgn_smoothed(const Eigen::Vector2d& e, double boundary);

// Deep nonlinear adaptive controller for the two augmented axes.
// The uncertainty model is output_weights^T sigma(features(x)); the outer
// weights integrate gamma_w * features * e^T in real time while the inner
// layers train on replay batches. Error convention throughout: e = x - x_d.
class DnacController
{
public:
  DnacController(DnacConfig config, std::uint32_t seed);

  // f_hat(x) = W^T sigma(Phi(x))
  Eigen::Vector2d estimate_uncertainty(const Eigen::Vector2d& x) const;

  // u = g_hat^{-1} (-K e - Ks sgn(e) + x_dot_d - f_hat(x))
  Eigen::Vector2d compute_control(const Eigen::Vector2d& e, const Eigen::Vector2d& x_dot_d,
                                  const Eigen::Vector2d& x) const;

  // Euler step of W_dot = gamma_w * sigma(Phi(x)) e^T
  void update_outer_weights(const Eigen::Vector2d& e, const Eigen::Vector2d& x, double dt);

  // Stores one sample; returns true when the buffer just filled and a
  // training pass is due.
  bool record_sample(const ReplaySample& sample);

  // Consumes the full buffer: one batch training pass on the inner layers
  // (outer weights frozen), then the buffer is cleared. result.ok == false
  // means the pass went non-finite and the previous weights were kept.
  BatchTrainResult train_inner();

  // x_dot estimate f_hat(x) + gu
  Eigen::Vector2d predict_xdot(const Eigen::Vector2d& x, const Eigen::Vector2d& gu) const;

  const DnacConfig& config() const { return config_; }
  const FeedforwardNet& net() const { return net_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  std::int64_t train_count() const { return train_count_; }
  const BatchTrainStats& train_stats() const { return trainer_.stats(); }
  double outer_weight_norm() const { return net_.outer_weights().norm(); }
  bool healthy() const;

  std::string checkpoint_json() const;
  void restore_checkpoint(const std::string& text);

private:
  DnacConfig config_;
  FeedforwardNet net_;
  AdamState adam_;
  ReplayBuffer buffer_;
  BatchTrainer trainer_;
  std::mt19937 rng_;
  std::uint32_t seed_;
  std::int64_t train_count_ = 0;
};

}  // namespace dnaclab
