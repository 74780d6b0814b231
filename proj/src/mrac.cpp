#include "dnaclab/mrac.hpp"

#include <cmath>

#include "dnaclab/errors.hpp"

namespace dnaclab
{
namespace
{

Eigen::Vector2d rk4_linear(const Eigen::Vector2d& x, const Eigen::Matrix2d& a,
                           const Eigen::Matrix2d& b, const Eigen::Vector2d& r, double dt)
{
  const auto f = [&](const Eigen::Vector2d& s) -> Eigen::Vector2d { return a * s + b * r; };
  const Eigen::Vector2d k1 = f(x);
  const Eigen::Vector2d k2 = f(x + 0.5 * dt * k1);
  const Eigen::Vector2d k3 = f(x + 0.5 * dt * k2);
  const Eigen::Vector2d k4 = f(x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Eigen::Matrix2d lyapunov_solve(const Eigen::Matrix2d& a, const Eigen::Matrix2d& q)
{
  if (!a.allFinite() || !q.allFinite())
    throw ConfigError("lyapunov_solve requires finite matrices");
  const Eigen::Matrix2d at = a.transpose();
  // Columns of the 4x4 system are vec(A^T E_ij + E_ij A) over the basis
  // matrices E_ij, with column-major vec.
  Eigen::Matrix4d m;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i)
    {
      Eigen::Matrix2d e = Eigen::Matrix2d::Zero();
      e(i, j) = 1.0;
      const Eigen::Matrix2d le = at * e + e * a;
      m.col(2 * j + i) = Eigen::Map<const Eigen::Vector4d>(le.data());
    }
  const Eigen::Vector4d rhs = -Eigen::Map<const Eigen::Vector4d>(q.data());
  Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
  if (!lu.isInvertible())
    throw ConfigError("Lyapunov equation is singular for the given reference matrix");
  const Eigen::Vector4d vp = lu.solve(rhs);
  Eigen::Matrix2d p = Eigen::Map<const Eigen::Matrix2d>(vp.data());
  p = 0.5 * (p + p.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(p);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw ConfigError("Lyapunov solution is not positive definite");
  return p;
}

void MracConfig::validate() const
{
  if (!a_m.allFinite() || !b_m.allFinite() || !q.allFinite() || !k_m.allFinite() ||
      !g_hat.allFinite())
    throw ConfigError("reference model matrices must be finite");
  if (a_m.trace() >= 0.0 || a_m.determinant() <= 0.0)
    throw ConfigError("reference matrix A_m must be Hurwitz");
  if ((q - q.transpose()).norm() > 1e-12 * (1.0 + q.norm()))
    throw ConfigError("Q must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(q);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw ConfigError("Q must be positive definite");
  if (std::abs(g_hat.determinant()) < 1e-12)
    throw ConfigError("g_hat must be invertible");
  if (gamma <= 0.0)
    throw ConfigError("adaptation gain must be positive");
  if (w_norm_limit <= 0.0)
    throw ConfigError("weight norm limit must be positive");
}

MracController::MracController(MracConfig cfg) : cfg_(cfg)
{
  cfg_.validate();
  p_ = lyapunov_solve(cfg_.a_m, cfg_.q);
  w_.setZero();
  x_m_.setZero();
}

Eigen::Matrix<double, MracController::kBasisDim, 1> MracController::basis(const Eigen::Vector2d& x)
{
  Eigen::Matrix<double, kBasisDim, 1> phi;
  phi << 1.0, x(0), x(1), x(0) * x(0), x(1) * x(1), x(0) * x(1);
  return phi;
}

Eigen::Vector2d MracController::compute_control(const Eigen::Vector2d& x) const
{
  if (!x.allFinite())
    throw InputError("non-finite state");
  const Eigen::Vector2d e_m = x - x_m_;
  const Eigen::Vector2d raw = -cfg_.k_m * e_m - w_.transpose() * basis(x);
  return cfg_.g_hat.inverse() * raw;
}

void MracController::update_weights(const Eigen::Vector2d& x, double dt)
{
  if (dt <= 0.0)
    throw ConfigError("dt must be positive");
  const Eigen::Vector2d e_m = x - x_m_;
  w_ += cfg_.gamma * dt * basis(x) * (e_m.transpose() * p_ * cfg_.b_m);
}

void MracController::advance_reference(const Eigen::Vector2d& r, double dt)
{
  if (dt <= 0.0)
    throw ConfigError("dt must be positive");
  x_m_ = rk4_linear(x_m_, cfg_.a_m, cfg_.b_m, r, dt);
}

void MracController::reset_reference(const Eigen::Vector2d& x_m)
{
  x_m_ = x_m;
}

bool MracController::healthy() const
{
  const double norm = w_.norm();
  return std::isfinite(norm) && norm < cfg_.w_norm_limit && x_m_.allFinite();
}

void DmracConfig::validate() const
{
  mrac.validate();
  if (buffer_size <= 0 || minibatch_size <= 0 || epochs <= 0)
    throw ConfigError("buffer, minibatch, and epoch counts must be positive");
  if (buffer_size % minibatch_size != 0)
    throw ConfigError("minibatch size must divide the buffer size");
  if (loss_beta <= 0.0)
    throw ConfigError("loss beta must be positive");
  if (feature_dim <= 0)
    throw ConfigError("feature dimension must be positive");
  for (int d : hidden_dims)
    if (d <= 0)
      throw ConfigError("hidden layer sizes must be positive");
}

DmracController::DmracController(DmracConfig cfg, std::uint32_t seed)
  : cfg_(std::move(cfg))
  , p_(Eigen::Matrix2d::Zero())
  , x_m_(Eigen::Vector2d::Zero())
  , net_()
  , adam_()
  , buffer_(cfg_.buffer_size)
  , trainer_(cfg_.minibatch_size, cfg_.epochs, cfg_.loss_beta)
  , rng_(seed)
{
  cfg_.validate();
  p_ = lyapunov_solve(cfg_.mrac.a_m, cfg_.mrac.q);
  net_ = make_estimator_net(cfg_.hidden_dims, cfg_.feature_dim, 2, rng_);
  adam_ = AdamState(net_, cfg_.adam);
}

Eigen::VectorXd DmracController::features(const Eigen::Vector2d& x) const
{
  return net_.forward(x).features;
}

Eigen::Vector2d DmracController::compute_control(const Eigen::Vector2d& x) const
{
  if (!x.allFinite())
    throw InputError("non-finite state");
  const Eigen::Vector2d e_m = x - x_m_;
  const Eigen::Vector2d raw =
      -cfg_.mrac.k_m * e_m - Eigen::Vector2d(net_.evaluate(x));
  return cfg_.mrac.g_hat.inverse() * raw;
}

void DmracController::update_weights(const Eigen::Vector2d& x, double dt)
{
  if (dt <= 0.0)
    throw ConfigError("dt must be positive");
  const Eigen::Vector2d e_m = x - x_m_;
  const Eigen::VectorXd phi = features(x);
  net_.outer_weights() += cfg_.mrac.gamma * dt * phi * (e_m.transpose() * p_ * cfg_.mrac.b_m);
}

void DmracController::advance_reference(const Eigen::Vector2d& r, double dt)
{
  if (dt <= 0.0)
    throw ConfigError("dt must be positive");
  x_m_ = rk4_linear(x_m_, cfg_.mrac.a_m, cfg_.mrac.b_m, r, dt);
}

void DmracController::reset_reference(const Eigen::Vector2d& x_m)
{
  x_m_ = x_m;
}

bool DmracController::record_sample(const Eigen::Vector2d& x_dot, const Eigen::Vector2d& x,
                                    const Eigen::Vector2d& gu)
{
  return buffer_.push(ReplaySample{x_dot, x, gu});
}

BatchTrainResult DmracController::train_inner()
{
  if (!buffer_.full())
    throw ConfigError("train_inner requires a full buffer");
  BatchTrainResult result = trainer_.train(net_, adam_, buffer_.samples(), rng_);
  buffer_.clear();
  ++train_count_;
  return result;
}

bool DmracController::healthy() const
{
  const double norm = weight_norm();
  return std::isfinite(norm) && norm < cfg_.mrac.w_norm_limit && x_m_.allFinite();
}

}  // namespace dnaclab
