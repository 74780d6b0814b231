#pragma once

#include <cmath>
#include <string>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

enum class ActivationKind
{
  HyperbolicTangent,
  LogSigmoid,
  Identity
};

// log(sigmoid(z)) without overflow: z - log1p(e^z) for z < 0, -log1p(e^-z) otherwise.
inline double log_sigmoid(double z)
{
  if (z < 0.0)
    return z - std::log1p(std::exp(z));
  return -std::log1p(std::exp(-z));
}

// d/dz log(sigmoid(z)) = sigmoid(-z)
inline double log_sigmoid_deriv(double z)
{
  if (z >= 0.0)
  {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

inline double activate(ActivationKind kind, double z)
{
  switch (kind)
  {
  case ActivationKind::HyperbolicTangent:
    return std::tanh(z);
  case ActivationKind::LogSigmoid:
    return log_sigmoid(z);
  case ActivationKind::Identity:
    return z;
  }
  return z;
}

inline double activate_deriv(ActivationKind kind, double z)
{
  switch (kind)
  {
  case ActivationKind::HyperbolicTangent:
  {
    const double t = std::tanh(z);
    return 1.0 - t * t;
  }
  case ActivationKind::LogSigmoid:
    return log_sigmoid_deriv(z);
  case ActivationKind::Identity:
    return 1.0;
  }
  return 1.0;
}

inline std::string activation_name(ActivationKind kind)
{
  switch (kind)
  {
  case ActivationKind::HyperbolicTangent:
    return "tanh";
  case ActivationKind::LogSigmoid:
    return "log_sigmoid";
  case ActivationKind::Identity:
    return "identity";
  }
  return "identity";
}

inline ActivationKind activation_from_name(const std::string& name)
{
  if (name == "tanh")
    return ActivationKind::HyperbolicTangent;
  if (name == "log_sigmoid")
    return ActivationKind::LogSigmoid;
  if (name == "identity")
    return ActivationKind::Identity;
  throw ConfigError("unknown activation: " + name);
}

}  // namespace dnaclab
