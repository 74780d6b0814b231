#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "dnaclab/adam.hpp"
#include "dnaclab/dense_net.hpp"
#include "dnaclab/replay.hpp"

namespace dnaclab
{

// Solves A^T P + P A = -Q for symmetric P (2x2 case) via the Kronecker
// product formulation of the Lyapunov equation.
Eigen::Matrix2d lyapunov_solve(const Eigen::Matrix2d& a, const Eigen::Matrix2d& q);

struct MracConfig
{
  Eigen::Matrix2d a_m = -4.0 * Eigen::Matrix2d::Identity();
  Eigen::Matrix2d b_m = 4.0 * Eigen::Matrix2d::Identity();
  Eigen::Matrix2d q = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d k_m = 10.0 * Eigen::Matrix2d::Identity();
  Eigen::Matrix2d g_hat = 100.0 * Eigen::Matrix2d::Identity();
  double gamma = 10.0;
  double w_norm_limit = 1e3;

  void validate() const;
};

// Model-reference adaptive controller over a fixed quadratic polynomial
// basis. The reference model x_m' = A_m x_m + B_m r filters the attitude
// command; the adaptive weights follow the Lyapunov-derived law
// W' = gamma * phi(x) * e_m^T * P * B_m with e_m = x - x_m.
class MracController
{
public:
  static constexpr int kBasisDim = 6;

  explicit MracController(MracConfig cfg = {});

  // [1, roll, pitch, roll^2, pitch^2, roll*pitch]
  static Eigen::Matrix<double, kBasisDim, 1> basis(const Eigen::Vector2d& x);

  Eigen::Vector2d compute_control(const Eigen::Vector2d& x) const;
  void update_weights(const Eigen::Vector2d& x, double dt);
  void advance_reference(const Eigen::Vector2d& r, double dt);
  void reset_reference(const Eigen::Vector2d& x_m);

  Eigen::Vector2d model_state() const { return x_m_; }
  Eigen::Vector2d model_error(const Eigen::Vector2d& x) const { return x - x_m_; }
  const Eigen::Matrix<double, kBasisDim, 2>& weights() const { return w_; }
  const Eigen::Matrix2d& p() const { return p_; }
  double weight_norm() const { return w_.norm(); }
  bool healthy() const;
  const MracConfig& config() const { return cfg_; }

private:
  MracConfig cfg_;
  Eigen::Matrix2d p_;
  Eigen::Matrix<double, kBasisDim, 2> w_;
  Eigen::Vector2d x_m_;
};

struct DmracConfig
{
  MracConfig mrac;
  std::vector<int> hidden_dims = {3, 4};
  int feature_dim = 8;
  int buffer_size = 100;
  int minibatch_size = 20;
  int epochs = 5;
  double loss_beta = 1.0;
  AdamConfig adam;

  void validate() const;
};

// MRAC with the polynomial basis replaced by learned network features.
// The outer weights adapt with the same Lyapunov law; the inner layers
// train in batches from a replay buffer, identically to the estimator
// used by the main adaptive controller.
class DmracController
{
public:
  DmracController(DmracConfig cfg, std::uint32_t seed);

  Eigen::VectorXd features(const Eigen::Vector2d& x) const;
  Eigen::Vector2d compute_control(const Eigen::Vector2d& x) const;
  void update_weights(const Eigen::Vector2d& x, double dt);
  void advance_reference(const Eigen::Vector2d& r, double dt);
  void reset_reference(const Eigen::Vector2d& x_m);

  // Returns true exactly when the buffer just filled and a training pass is due.
  bool record_sample(const Eigen::Vector2d& x_dot, const Eigen::Vector2d& x,
                     const Eigen::Vector2d& gu);
  BatchTrainResult train_inner();

  Eigen::Vector2d model_state() const { return x_m_; }
  Eigen::Vector2d model_error(const Eigen::Vector2d& x) const { return x - x_m_; }
  const FeedforwardNet& net() const { return net_; }
  double weight_norm() const { return net_.outer_weights().norm(); }
  bool healthy() const;
  int train_count() const { return train_count_; }
  const BatchTrainStats& train_stats() const { return trainer_.stats(); }
  const DmracConfig& config() const { return cfg_; }

private:
  DmracConfig cfg_;
  Eigen::Matrix2d p_;
  Eigen::Vector2d x_m_;
  FeedforwardNet net_;
  AdamState adam_;
  ReplayBuffer buffer_;
  BatchTrainer trainer_;
  std::mt19937 rng_;
  int train_count_ = 0;
};

}  // namespace dnaclab
