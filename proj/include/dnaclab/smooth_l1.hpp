#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "dnaclab/errors.hpp"

namespace dnaclab
{

struct SmoothL1Result
{
  double loss = 0.0;
  Eigen::VectorXd grad;  // d loss / d pred
};

// Piecewise quadratic/linear loss with smoothing width beta, averaged over all
// elements. The gradient carries the same 1/N factor.
inline SmoothL1Result smooth_l1(const Eigen::VectorXd& pred, const Eigen::VectorXd& target,
                                double beta)
{
  if (beta <= 0.0)
    throw ConfigError("smooth l1 beta must be positive");
  if (pred.size() != target.size())
    throw ConfigError("smooth l1 length mismatch");

  SmoothL1Result out;
  out.grad = Eigen::VectorXd::Zero(pred.size());
  const double inv_n = 1.0 / static_cast<double>(pred.size());
  for (Eigen::Index i = 0; i < pred.size(); ++i)
  {
    const double d = pred(i) - target(i);
    if (std::abs(d) < beta)
    {
      out.loss += 0.5 * d * d / beta;
      out.grad(i) = d / beta * inv_n;
    }
    else
    {
      out.loss += std::abs(d) - 0.5 * beta;
      out.grad(i) = (d > 0.0 ? 1.0 : -1.0) * inv_n;
    }
  }
  out.loss *= inv_n;
  return out;
}

}  // namespace dnaclab
