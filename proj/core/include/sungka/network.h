#pragma once

// Dense feed-forward Q-network (affine -> ReLU -> ... -> affine) with manual
// backpropagation for the masked-action MSE loss used by DQN.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sungka/env.h"

namespace sungka {

inline const std::vector<int> kDefaultLayerDims = {14, 64, 64, 7};

// Observations are divided by this before entering the first layer.
inline constexpr double kInputScale = 1.0 / kTotalStones;

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out

  friend bool operator==(const DenseLayer& a, const DenseLayer& b) {
    return a.weight.rows() == b.weight.rows() && a.weight.cols() == b.weight.cols() &&
           a.bias.size() == b.bias.size() && a.weight == b.weight && a.bias == b.bias;
  }
};

class QNetwork {
 public:
  QNetwork() = default;
  // All parameters zero. Needs at least an input and an output dimension.
  explicit QNetwork(std::vector<int> layer_dims);

  const std::vector<int>& layer_dims() const { return dims_; }
  int input_size() const { return dims_.front(); }
  int output_size() const { return dims_.back(); }
  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::size_t parameter_count() const;
  bool all_finite() const;

  // Throws std::invalid_argument if input.size() != input_size().
  Eigen::VectorXd forward(const Eigen::VectorXd& input) const;
  // One sample per column.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& inputs) const;

  friend bool operator==(const QNetwork&, const QNetwork&) = default;

 private:
  std::vector<int> dims_;
  std::vector<DenseLayer> layers_;
};

// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), biases zero.
QNetwork init_network(std::uint64_t seed, const std::vector<int>& layer_dims = kDefaultLayerDims);

// Network input for an observation. With `canonical`, a seat-Two mover sees
// its own houses first.
Eigen::VectorXd encode(const Observation& obs, Player seat = Player::kOne, bool canonical = false);

// forward(encode(observe(board))) for the 7 seat-local actions.
Eigen::VectorXd q_values(const QNetwork& net, const Observation& obs, Player seat = Player::kOne,
                         bool canonical = false);

// Same shape as the network; holds d(loss)/d(parameter).
using Gradients = std::vector<DenseLayer>;

Gradients zero_gradients(const QNetwork& net);

// Mean over the batch of (Q(x_i)[a_i] - y_i)^2. Inputs are one column per
// sample.
double masked_mse(const QNetwork& net, const Eigen::MatrixXd& inputs, std::span<const int> actions,
                  const Eigen::VectorXd& targets);

// Same loss, plus its gradient with respect to every parameter.
double masked_mse_gradients(const QNetwork& net, const Eigen::MatrixXd& inputs,
                            std::span<const int> actions, const Eigen::VectorXd& targets,
                            Gradients& grads);

enum class OptimizerKind { kAdam, kSgd };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kAdam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class Optimizer {
 public:
  Optimizer(const QNetwork& net, OptimizerConfig config);

  void step(QNetwork& net, const Gradients& grads);
  const OptimizerConfig& config() const { return config_; }

 private:
  OptimizerConfig config_;
  Gradients first_moment_;
  Gradients second_moment_;
  long steps_ = 0;
};

}  // namespace sungka
