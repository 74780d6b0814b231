#include "dnaclab/replay.hpp"

#include <algorithm>
#include <numeric>

#include "dnaclab/errors.hpp"
#include "dnaclab/log.hpp"
#include "dnaclab/smooth_l1.hpp"

namespace dnaclab
{

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity)
{
  if (capacity <= 0)
    throw ConfigError("replay buffer capacity must be positive");
  samples_.reserve(capacity);
}

bool ReplayBuffer::push(const ReplaySample& sample)
{
  if (!sample.x_dot.allFinite() || !sample.x.allFinite() || !sample.gu.allFinite())
    throw InputError("non-finite replay sample");
  if (full())
    throw ConfigError("replay buffer already full; train before pushing more samples");
  samples_.push_back(sample);
  return full();
}

BatchTrainer::BatchTrainer(int minibatch_size, int epochs, double loss_beta)
  : minibatch_size_(minibatch_size), epochs_(epochs), loss_beta_(loss_beta)
{
  if (minibatch_size <= 0 || epochs <= 0)
    throw ConfigError("minibatch size and epoch count must be positive");
  if (loss_beta <= 0.0)
    throw ConfigError("loss beta must be positive");
}

double BatchTrainer::full_buffer_loss(const FeedforwardNet& net,
                                      const std::vector<ReplaySample>& samples) const
{
  const int n = net.output_dim();
  Eigen::VectorXd pred(samples.size() * n), target(samples.size() * n);
  for (size_t k = 0; k < samples.size(); ++k)
  {
    pred.segment(k * n, n) = net.evaluate(samples[k].x) + samples[k].gu;
    target.segment(k * n, n) = samples[k].x_dot;
  }
  return smooth_l1(pred, target, loss_beta_).loss;
}

BatchTrainResult BatchTrainer::train(FeedforwardNet& net, AdamState& adam,
                                     const std::vector<ReplaySample>& samples, std::mt19937& rng)
{
  const int m = static_cast<int>(samples.size());
  if (m % minibatch_size_ != 0)
    throw ConfigError("buffer size must be a multiple of the minibatch size");
  const int n_segments = m / minibatch_size_;
  const int n = net.output_dim();

  std::vector<int> order(n_segments);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  // restored verbatim if the pass goes non-finite
  const FeedforwardNet net_backup = net;
  const AdamState adam_backup = adam;

  BatchTrainResult result;
  result.epoch_losses.reserve(epochs_);
  std::vector<ForwardCache> caches(minibatch_size_);

  for (int epoch = 0; epoch < epochs_; ++epoch)
  {
    for (int seg : order)
    {
      const int base = seg * minibatch_size_;
      Eigen::VectorXd pred(minibatch_size_ * n), target(minibatch_size_ * n);
      for (int i = 0; i < minibatch_size_; ++i)
      {
        const auto& s = samples[base + i];
        caches[i] = net.forward(s.x);
        pred.segment(i * n, n) = net.output_from_features(caches[i].features) + s.gu;
        target.segment(i * n, n) = s.x_dot;
      }
      const SmoothL1Result loss = smooth_l1(pred, target, loss_beta_);
      if (!std::isfinite(loss.loss))
      {
        net = net_backup;
        adam = adam_backup;
        ++stats_.faults;
        log::warn("batch training produced a non-finite loss; pass discarded");
        result.ok = false;
        return result;
      }

      GradientSet grads = net.zero_gradients();
      for (int i = 0; i < minibatch_size_; ++i)
      {
        const GradientSet g = net.backward(caches[i], loss.grad.segment(i * n, n));
        for (size_t l = 0; l < grads.weight_grads.size(); ++l)
        {
          grads.weight_grads[l] += g.weight_grads[l];
          grads.bias_grads[l] += g.bias_grads[l];
        }
      }
      try
      {
        adam.step(net, grads);
      }
      catch (const TrainingError&)
      {
        net = net_backup;
        adam = adam_backup;
        ++stats_.faults;
        log::warn("batch training produced non-finite gradients; pass discarded");
        result.ok = false;
        return result;
      }
      ++stats_.adam_steps;
      stats_.sample_touches += minibatch_size_;
    }
    result.epoch_losses.push_back(full_buffer_loss(net, samples));
  }

  ++stats_.passes;
  return result;
}

}  // namespace dnaclab
