#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "dnaclab/adam.hpp"
#include "dnaclab/dense_net.hpp"

namespace dnaclab
{

// One buffered triple: measured state derivative, state, and g_hat times the
// total applied input at the sample instant.
struct ReplaySample
{
  Eigen::Vector2d x_dot = Eigen::Vector2d::Zero();
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  Eigen::Vector2d gu = Eigen::Vector2d::Zero();
};

// Fixed-capacity store consumed by one inner-layer training pass, then cleared.
class ReplayBuffer
{
public:
  explicit ReplayBuffer(int capacity = 100);

  // Appends a sample; returns true exactly when the buffer just reached capacity.
  bool push(const ReplaySample& sample);

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(samples_.size()); }
  bool full() const { return size() == capacity_; }
  void clear() { samples_.clear(); }

  const std::vector<ReplaySample>& samples() const { return samples_; }

private:
  int capacity_;
  std::vector<ReplaySample> samples_;
};

struct BatchTrainResult
{
  bool ok = true;
  std::vector<double> epoch_losses;  // full-buffer loss after each epoch
};

struct BatchTrainStats
{
  std::int64_t passes = 0;
  std::int64_t adam_steps = 0;
  std::int64_t sample_touches = 0;  // one per sample per minibatch visit
  std::int64_t faults = 0;
};

// Inner-layer batch training: the buffer is split into contiguous segments of
// minibatch_size, the segment order is shuffled once, and every segment is
// visited once per epoch. The outer weight matrix is held fixed; only inner
// layer parameters move. On any non-finite loss or gradient the pass is
// abandoned and the pre-pass network and optimizer state are restored.
class BatchTrainer
{
public:
  BatchTrainer(int minibatch_size, int epochs, double loss_beta);

  BatchTrainResult train(FeedforwardNet& net, AdamState& adam,
                         const std::vector<ReplaySample>& samples, std::mt19937& rng);

  const BatchTrainStats& stats() const { return stats_; }

private:
  double full_buffer_loss(const FeedforwardNet& net,
                          const std::vector<ReplaySample>& samples) const;

  int minibatch_size_;
  int epochs_;
  double loss_beta_;
  BatchTrainStats stats_;
};

}  // namespace dnaclab
