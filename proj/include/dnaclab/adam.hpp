#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dnaclab/dense_net.hpp"

namespace dnaclab
{

struct AdamConfig
{
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Bias-corrected Adam update of a single parameter matrix; m and v are the
// caller-owned moment buffers, step_count the post-increment step index.
void adam_update(Eigen::MatrixXd& param, const Eigen::MatrixXd& grad, Eigen::MatrixXd& m,
                 Eigen::MatrixXd& v, std::int64_t step_count, const AdamConfig& cfg);

// Optimizer state for a network's inner layers. Moments start at zero and
// mirror the layer parameter shapes; the outer weight matrix is not touched.
class AdamState
{
public:
  AdamState() = default;
  AdamState(const FeedforwardNet& net, AdamConfig cfg);

  // One Adam step on every inner-layer weight and bias.
  // Throws TrainingError if any gradient entry is non-finite.
  void step(FeedforwardNet& net, const GradientSet& grads);

  std::int64_t step_count() const { return step_count_; }
  const AdamConfig& config() const { return cfg_; }

private:
  AdamConfig cfg_;
  std::int64_t step_count_ = 0;
  std::vector<Eigen::MatrixXd> m_weights_, v_weights_;
  std::vector<Eigen::VectorXd> m_bias_, v_bias_;
};

}  // namespace dnaclab
