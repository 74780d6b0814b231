#include "dnaclab/dense_net.hpp"

#include <json.hpp>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

using nlohmann::json;

bool GradientSet::finite() const
{
  for (const auto& g : weight_grads)
    if (!g.allFinite())
      return false;
  for (const auto& g : bias_grads)
    if (!g.allFinite())
      return false;
  return outer_grad.allFinite();
}

FeedforwardNet::FeedforwardNet(std::vector<DenseLayer> layers, Eigen::MatrixXd outer_weights)
  : layers_(std::move(layers)), outer_weights_(std::move(outer_weights))
{
  validate();
}

void FeedforwardNet::validate() const
{
  if (layers_.empty())
    throw ConfigError("network needs at least one layer");
  for (size_t l = 0; l + 1 < layers_.size(); ++l)
  {
    if (layers_[l].fan_out() != layers_[l + 1].fan_in())
      throw ConfigError("layer " + std::to_string(l) + " fan_out does not chain into layer " +
                        std::to_string(l + 1));
  }
  for (size_t l = 0; l < layers_.size(); ++l)
  {
    if (layers_[l].bias.size() != layers_[l].fan_out())
      throw ConfigError("layer " + std::to_string(l) + " bias length mismatch");
    if (!layers_[l].weights.allFinite() || !layers_[l].bias.allFinite())
      throw ConfigError("layer " + std::to_string(l) + " has non-finite parameters");
  }
  if (outer_weights_.rows() != layers_.back().fan_out())
    throw ConfigError("outer weight rows must equal the feature dimension");
  if (!outer_weights_.allFinite())
    throw ConfigError("outer weights have non-finite entries");
}

FeedforwardNet FeedforwardNet::create(const std::vector<int>& dims,
                                      const std::vector<ActivationKind>& activations, int n_out,
                                      std::mt19937& rng)
{
  if (dims.size() < 2 || activations.size() != dims.size() - 1)
    throw ConfigError("need one activation per layer");
  std::vector<DenseLayer> layers;
  layers.reserve(dims.size() - 1);
  for (size_t l = 0; l + 1 < dims.size(); ++l)
  {
    DenseLayer layer;
    const int fan_in = dims[l];
    const int fan_out = dims[l + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    layer.weights.resize(fan_in, fan_out);
    for (int i = 0; i < fan_in; ++i)
      for (int j = 0; j < fan_out; ++j)
        layer.weights(i, j) = dist(rng);
    layer.bias = Eigen::VectorXd::Zero(fan_out);
    layer.activation = activations[l];
    layers.push_back(std::move(layer));
  }
  return FeedforwardNet(std::move(layers), Eigen::MatrixXd::Zero(dims.back(), n_out));
}

FeedforwardNet FeedforwardNet::default_architecture(std::mt19937& rng)
{
  return create({2, 3, 4, 8},
                {ActivationKind::HyperbolicTangent, ActivationKind::LogSigmoid,
                 ActivationKind::HyperbolicTangent},
                2, rng);
}

ForwardCache FeedforwardNet::forward(const Eigen::VectorXd& x) const
{
  if (x.size() != input_dim())
    throw ConfigError("input length " + std::to_string(x.size()) + " does not match net input " +
                      std::to_string(input_dim()));
  if (!x.allFinite())
    throw InputError("non-finite network input");

  ForwardCache cache;
  cache.inputs.reserve(layers_.size());
  cache.pre_activations.reserve(layers_.size());

  Eigen::VectorXd a = x;
  for (const auto& layer : layers_)
  {
    cache.inputs.push_back(a);
    Eigen::VectorXd z = layer.weights.transpose() * a + layer.bias;
    cache.pre_activations.push_back(z);
    a.resize(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      a(i) = activate(layer.activation, z(i));
  }
  cache.features = a;
  return cache;
}

Eigen::VectorXd FeedforwardNet::output_from_features(const Eigen::VectorXd& features) const
{
  return outer_weights_.transpose() * features;
}

Eigen::VectorXd FeedforwardNet::evaluate(const Eigen::VectorXd& x) const
{
  return output_from_features(forward(x).features);
}

GradientSet FeedforwardNet::backward(const ForwardCache& cache,
                                     const Eigen::VectorXd& output_grad) const
{
  if (cache.inputs.size() != layers_.size() || cache.pre_activations.size() != layers_.size())
    throw ConfigError("forward cache does not match this network");
  if (output_grad.size() != output_dim())
    throw ConfigError("output gradient length mismatch");

  GradientSet grads = zero_gradients();
  grads.outer_grad = cache.features * output_grad.transpose();

  Eigen::VectorXd delta = outer_weights_ * output_grad;  // d/d features
  for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l)
  {
    const auto& layer = layers_[l];
    const auto& z = cache.pre_activations[l];
    Eigen::VectorXd dz(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      dz(i) = delta(i) * activate_deriv(layer.activation, z(i));
    grads.weight_grads[l] = cache.inputs[l] * dz.transpose();
    grads.bias_grads[l] = dz;
    if (l > 0)
      delta = layer.weights * dz;
  }
  return grads;
}

GradientSet FeedforwardNet::zero_gradients() const
{
  GradientSet grads;
  grads.weight_grads.reserve(layers_.size());
  grads.bias_grads.reserve(layers_.size());
  for (const auto& layer : layers_)
  {
    grads.weight_grads.emplace_back(Eigen::MatrixXd::Zero(layer.fan_in(), layer.fan_out()));
    grads.bias_grads.emplace_back(Eigen::VectorXd::Zero(layer.fan_out()));
  }
  grads.outer_grad = Eigen::MatrixXd::Zero(outer_weights_.rows(), outer_weights_.cols());
  return grads;
}

namespace
{

json matrix_to_json(const Eigen::MatrixXd& m)
{
  // row-major nested arrays
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
  {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows)
{
  if (!rows.is_array() || rows.empty())
    throw ConfigError("expected a non-empty 2d array");
  const size_t ncols = rows.front().size();
  Eigen::MatrixXd m(rows.size(), ncols);
  for (size_t i = 0; i < rows.size(); ++i)
  {
    if (rows[i].size() != ncols)
      throw ConfigError("ragged weight matrix");
    for (size_t j = 0; j < ncols; ++j)
      m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

}  // namespace

std::string FeedforwardNet::to_json() const
{
  json doc;
  doc["layers"] = json::array();
  for (const auto& layer : layers_)
  {
    json jl;
    jl["weights"] = matrix_to_json(layer.weights);
    jl["bias"] = std::vector<double>(layer.bias.data(), layer.bias.data() + layer.bias.size());
    jl["activation"] = activation_name(layer.activation);
    doc["layers"].push_back(std::move(jl));
  }
  doc["outer_weights"] = matrix_to_json(outer_weights_);
  return doc.dump(2);
}

FeedforwardNet FeedforwardNet::from_json(const std::string& text)
{
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (const json::exception& e)
  {
    throw ConfigError(std::string("bad network json: ") + e.what());
  }
  std::vector<DenseLayer> layers;
  for (const auto& jl : doc.at("layers"))
  {
    DenseLayer layer;
    layer.weights = matrix_from_json(jl.at("weights"));
    const auto bias = jl.at("bias").get<std::vector<double>>();
    layer.bias = Eigen::Map<const Eigen::VectorXd>(bias.data(), bias.size());
    layer.activation = activation_from_name(jl.at("activation").get<std::string>());
    layers.push_back(std::move(layer));
  }
  return FeedforwardNet(std::move(layers), matrix_from_json(doc.at("outer_weights")));
}

FeedforwardNet make_estimator_net(const std::vector<int>& hidden_dims, int feature_dim, int n_out,
                                  std::mt19937& rng)
{
  std::vector<int> dims;
  dims.push_back(2);
  dims.insert(dims.end(), hidden_dims.begin(), hidden_dims.end());
  dims.push_back(feature_dim);
  std::vector<ActivationKind> acts(dims.size() - 1, ActivationKind::HyperbolicTangent);
  if (acts.size() >= 2)
    acts[1] = ActivationKind::LogSigmoid;
  return FeedforwardNet::create(dims, acts, n_out, rng);
}

}  // namespace dnaclab
