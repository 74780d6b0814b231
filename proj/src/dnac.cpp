#include "dnaclab/dnac.hpp"

#include <json.hpp>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

using nlohmann::json;

void DnacConfig::validate() const
{
  if ((k_gain.array() <= 0.0).any())
    throw ConfigError("K diagonal entries must be positive");
  if ((g_hat.array() <= 0.0).any())
    throw ConfigError("g_hat diagonal entries must be positive");
  if (ks < 0.0 || sgn_boundary < 0.0)
    throw ConfigError("Ks and the sign boundary must be nonnegative");
  if (gamma_w <= 0.0)
    throw ConfigError("gamma_w must be positive");
  if (buffer_size <= 0 || minibatch_size <= 0 || epochs <= 0)
    throw ConfigError("buffer, minibatch, and epoch counts must be positive");
  if (buffer_size % minibatch_size != 0)
    throw ConfigError("minibatch size must divide the buffer size");
  if (loss_beta <= 0.0)
    throw ConfigError("loss beta must be positive");
}

Eigen::Vector2d sgn_smoothed(const Eigen::Vector2d& e, double boundary)
{
  Eigen::Vector2d s;
  for (int i = 0; i < 2; ++i)
  {
    if (boundary == 0.0)
      s(i) = (e(i) > 0.0) ? 1.0 : (e(i) < 0.0 ? -1.0 : 0.0);
    else
      s(i) = std::clamp(e(i) / boundary, -1.0, 1.0);
  }
  return s;
}

DnacController::DnacController(DnacConfig config, std::uint32_t seed)
  : config_(std::move(config))
  , net_()
  , adam_()
  , buffer_(config_.buffer_size)
  , trainer_(config_.minibatch_size, config_.epochs, config_.loss_beta)
  , rng_(seed)
  , seed_(seed)
{
  config_.validate();
  net_ = make_estimator_net(config_.hidden_dims, config_.feature_dim, 2, rng_);
  adam_ = AdamState(net_, config_.adam);
}

Eigen::Vector2d DnacController::estimate_uncertainty(const Eigen::Vector2d& x) const
{
  return net_.evaluate(x);
}

Eigen::Vector2d DnacController::compute_control(const Eigen::Vector2d& e,
                                                const Eigen::Vector2d& x_dot_d,
                                                const Eigen::Vector2d& x) const
{
  if (!e.allFinite() || !x_dot_d.allFinite() || !x.allFinite())
    throw InputError("non-finite control input");
  const Eigen::Vector2d f_hat = estimate_uncertainty(x);
  const Eigen::Vector2d raw = -config_.k_gain.cwiseProduct(e) -
                              config_.ks * sgn_smoothed(e, config_.sgn_boundary) + x_dot_d - f_hat;
  return raw.cwiseQuotient(config_.g_hat);
}

void DnacController::update_outer_weights(const Eigen::Vector2d& e, const Eigen::Vector2d& x,
                                          double dt)
{
  if (dt <= 0.0)
    throw ConfigError("dt must be positive");
  const ForwardCache cache = net_.forward(x);
  net_.outer_weights() += config_.gamma_w * dt * cache.features * e.transpose();
}

bool DnacController::record_sample(const ReplaySample& sample)
{
  return buffer_.push(sample);
}

BatchTrainResult DnacController::train_inner()
{
  if (!buffer_.full())
    throw ConfigError("train_inner requires a full buffer");
  BatchTrainResult result = trainer_.train(net_, adam_, buffer_.samples(), rng_);
  buffer_.clear();
  ++train_count_;
  return result;
}

Eigen::Vector2d DnacController::predict_xdot(const Eigen::Vector2d& x,
                                             const Eigen::Vector2d& gu) const
{
  return estimate_uncertainty(x) + gu;
}

bool DnacController::healthy() const
{
  const double w_norm = outer_weight_norm();
  return std::isfinite(w_norm) && w_norm < config_.w_norm_limit;
}

std::string DnacController::checkpoint_json() const
{
  json doc;
  doc["network"] = json::parse(net_.to_json());
  doc["train_count"] = train_count_;
  doc["seed"] = seed_;
  json buf = json::array();
  for (const auto& s : buffer_.samples())
  {
    buf.push_back({{"x_dot", {s.x_dot(0), s.x_dot(1)}},
                   {"x", {s.x(0), s.x(1)}},
                   {"gu", {s.gu(0), s.gu(1)}}});
  }
  doc["buffer"] = std::move(buf);
  return doc.dump(2);
}

void DnacController::restore_checkpoint(const std::string& text)
{
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (const json::exception& e)
  {
    throw ConfigError(std::string("bad checkpoint json: ") + e.what());
  }
  net_ = FeedforwardNet::from_json(doc.at("network").dump());
  train_count_ = doc.value("train_count", 0);
  buffer_.clear();
  for (const auto& js : doc.at("buffer"))
  {
    ReplaySample s;
    s.x_dot = Eigen::Vector2d(js.at("x_dot")[0].get<double>(), js.at("x_dot")[1].get<double>());
    s.x = Eigen::Vector2d(js.at("x")[0].get<double>(), js.at("x")[1].get<double>());
    s.gu = Eigen::Vector2d(js.at("gu")[0].get<double>(), js.at("gu")[1].get<double>());
    buffer_.push(s);
  }
}

}  // namespace dnaclab
