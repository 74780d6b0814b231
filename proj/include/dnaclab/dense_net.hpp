#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dnaclab/activation.hpp"

namespace dnaclab
{

// One dense layer. Pre-activation is weights^T * input + bias, so weights is
// stored (fan_in x fan_out).
struct DenseLayer
{
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  ActivationKind activation = ActivationKind::HyperbolicTangent;

  int fan_in() const { return static_cast<int>(weights.rows()); }
  int fan_out() const { return static_cast<int>(weights.cols()); }
};

struct ForwardCache
{
  std::vector<Eigen::VectorXd> inputs;           // inputs[l] feeds layer l; inputs[0] = x
  std::vector<Eigen::VectorXd> pre_activations;  // z_l per layer
  Eigen::VectorXd features;                      // output of the last layer
};

// Per-parameter gradients, shapes mirroring FeedforwardNet.
struct GradientSet
{
  std::vector<Eigen::MatrixXd> weight_grads;
  std::vector<Eigen::VectorXd> bias_grads;
  Eigen::MatrixXd outer_grad;

  bool finite() const;
};

// Inner feature layers plus the linear outer weight matrix (L x n).
class FeedforwardNet
{
public:
  FeedforwardNet() = default;
  FeedforwardNet(std::vector<DenseLayer> layers, Eigen::MatrixXd outer_weights);

  // Inner layers from `dims` (e.g. {2,3,4,8}) with the given activations,
  // weights uniform in +-sqrt(6/(fan_in+fan_out)), biases zero, outer weights
  // (dims.back() x n_out) zero.
  static FeedforwardNet create(const std::vector<int>& dims,
                               const std::vector<ActivationKind>& activations, int n_out,
                               std::mt19937& rng);

  // The 2->3->4->8 tanh/log-sigmoid/tanh network with a (8 x 2) outer matrix.
  static FeedforwardNet default_architecture(std::mt19937& rng);

  int input_dim() const { return layers_.empty() ? 0 : layers_.front().fan_in(); }
  int feature_dim() const { return layers_.empty() ? 0 : layers_.back().fan_out(); }
  int output_dim() const { return static_cast<int>(outer_weights_.cols()); }

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }
  const Eigen::MatrixXd& outer_weights() const { return outer_weights_; }
  Eigen::MatrixXd& outer_weights() { return outer_weights_; }

  // features = chain of dense layers; output = outer_weights^T * features.
  ForwardCache forward(const Eigen::VectorXd& x) const;
  Eigen::VectorXd output_from_features(const Eigen::VectorXd& features) const;
  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;

  // Exact reverse-mode gradients of output_grad . output w.r.t. every parameter.
  GradientSet backward(const ForwardCache& cache, const Eigen::VectorXd& output_grad) const;

  GradientSet zero_gradients() const;

  std::string to_json() const;
  static FeedforwardNet from_json(const std::string& text);

private:
  void validate() const;

  std::vector<DenseLayer> layers_;
  Eigen::MatrixXd outer_weights_;  // (L x n)
};

// Uncertainty-estimator network over the two-axis state: hidden sizes from
// `hidden_dims`, feature layer of `feature_dim`, activations tanh with a
// log-sigmoid second layer, (feature_dim x n_out) zero outer weights.
FeedforwardNet make_estimator_net(const std::vector<int>& hidden_dims, int feature_dim, int n_out,
                                  std::mt19937& rng);

}  // namespace dnaclab
