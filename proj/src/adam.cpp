#include "dnaclab/adam.hpp"

#include <cmath>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

void adam_update(Eigen::MatrixXd& param, const Eigen::MatrixXd& grad, Eigen::MatrixXd& m,
                 Eigen::MatrixXd& v, std::int64_t step_count, const AdamConfig& cfg)
{
  m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
  v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad.cwiseProduct(grad);
  const double m_corr = 1.0 - std::pow(cfg.beta1, static_cast<double>(step_count));
  const double v_corr = 1.0 - std::pow(cfg.beta2, static_cast<double>(step_count));
  param.array() -=
      cfg.learning_rate * (m.array() / m_corr) / ((v.array() / v_corr).sqrt() + cfg.epsilon);
}

AdamState::AdamState(const FeedforwardNet& net, AdamConfig cfg) : cfg_(cfg)
{
  if (cfg_.learning_rate <= 0.0)
    throw ConfigError("adam learning rate must be positive");
  for (const auto& layer : net.layers())
  {
    m_weights_.emplace_back(Eigen::MatrixXd::Zero(layer.fan_in(), layer.fan_out()));
    v_weights_.emplace_back(Eigen::MatrixXd::Zero(layer.fan_in(), layer.fan_out()));
    m_bias_.emplace_back(Eigen::VectorXd::Zero(layer.fan_out()));
    v_bias_.emplace_back(Eigen::VectorXd::Zero(layer.fan_out()));
  }
}

void AdamState::step(FeedforwardNet& net, const GradientSet& grads)
{
  auto& layers = net.layers();
  if (layers.size() != m_weights_.size() || grads.weight_grads.size() != layers.size())
    throw ConfigError("adam state does not match network");
  for (size_t l = 0; l < layers.size(); ++l)
    if (!grads.weight_grads[l].allFinite() || !grads.bias_grads[l].allFinite())
      throw TrainingError("non-finite gradient in layer " + std::to_string(l));

  ++step_count_;
  const double m_corr = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_count_));
  const double v_corr = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_count_));
  for (size_t l = 0; l < layers.size(); ++l)
  {
    auto& mw = m_weights_[l];
    auto& vw = v_weights_[l];
    mw = cfg_.beta1 * mw + (1.0 - cfg_.beta1) * grads.weight_grads[l];
    vw = cfg_.beta2 * vw + (1.0 - cfg_.beta2) * grads.weight_grads[l].cwiseAbs2();
    layers[l].weights.array() -=
        cfg_.learning_rate * (mw.array() / m_corr) / ((vw.array() / v_corr).sqrt() + cfg_.epsilon);

    auto& mb = m_bias_[l];
    auto& vb = v_bias_[l];
    mb = cfg_.beta1 * mb + (1.0 - cfg_.beta1) * grads.bias_grads[l];
    vb = cfg_.beta2 * vb + (1.0 - cfg_.beta2) * grads.bias_grads[l].cwiseAbs2();
    layers[l].bias.array() -=
        cfg_.learning_rate * (mb.array() / m_corr) / ((vb.array() / v_corr).sqrt() + cfg_.epsilon);
  }
}

}  // namespace dnaclab
