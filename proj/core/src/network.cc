#include "sungka/network.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace sungka {

QNetwork::QNetwork(std::vector<int> layer_dims) : dims_(std::move(layer_dims)) {
  if (dims_.size() < 2) throw std::invalid_argument("network needs at least two layer dims");
  for (int d : dims_)
    if (d <= 0) throw std::invalid_argument("layer dims must be positive");
  layers_.reserve(dims_.size() - 1);
  for (std::size_t i = 0; i + 1 < dims_.size(); ++i) {
    layers_.push_back({Eigen::MatrixXd::Zero(dims_[i + 1], dims_[i]),
                       Eigen::VectorXd::Zero(dims_[i + 1])});
  }
}

std::size_t QNetwork::parameter_count() const {
  std::size_t n = 0;
  for (const DenseLayer& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

bool QNetwork::all_finite() const {
  for (const DenseLayer& l : layers_)
    if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
  return true;
}

Eigen::VectorXd QNetwork::forward(const Eigen::VectorXd& input) const {
  if (dims_.empty()) throw std::logic_error("forward on an empty network");
  if (input.size() != input_size())
    throw std::invalid_argument("network expects " + std::to_string(input_size()) +
                                " inputs, got " + std::to_string(input.size()));
  Eigen::VectorXd x = input;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    x = layers_[i].weight * x + layers_[i].bias;
    if (i + 1 < layers_.size()) x = x.cwiseMax(0.0);
  }
  return x;
}

Eigen::MatrixXd QNetwork::forward_batch(const Eigen::MatrixXd& inputs) const {
  if (inputs.rows() != input_size())
    throw std::invalid_argument("network expects " + std::to_string(input_size()) +
                                " input rows, got " + std::to_string(inputs.rows()));
  Eigen::MatrixXd x = inputs;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    Eigen::MatrixXd z = layers_[i].weight * x;
    z.colwise() += layers_[i].bias;
    if (i + 1 < layers_.size()) z = z.cwiseMax(0.0);
    x = std::move(z);
  }
  return x;
}

QNetwork init_network(std::uint64_t seed, const std::vector<int>& layer_dims) {
  QNetwork net(layer_dims);
  Rng rng = make_rng(seed, kTagInit);
  for (DenseLayer& layer : net.layers()) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.weight.cols()));
    std::uniform_real_distribution<double> dist(-bound, bound);
    // Row-major fill order so the draw sequence matches the file layout.
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = dist(rng);
  }
  return net;
}

Eigen::VectorXd encode(const Observation& obs, Player seat, bool canonical) {
  Eigen::VectorXd x(kNumHouses);
  const bool rotate = canonical && seat == Player::kTwo;
  for (int i = 0; i < kNumHouses; ++i) {
    const int src = rotate ? (i + kHousesPerSide) % kNumHouses : i;
    x[i] = obs[static_cast<std::size_t>(src)] * kInputScale;
  }
  return x;
}

Eigen::VectorXd q_values(const QNetwork& net, const Observation& obs, Player seat,
                         bool canonical) {
  return net.forward(encode(obs, seat, canonical));
}

Gradients zero_gradients(const QNetwork& net) {
  Gradients g;
  g.reserve(net.layers().size());
  for (const DenseLayer& l : net.layers())
    g.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                 Eigen::VectorXd::Zero(l.bias.size())});
  return g;
}

namespace {

void check_batch(const QNetwork& net, const Eigen::MatrixXd& inputs, std::span<const int> actions,
                 const Eigen::VectorXd& targets) {
  const auto n = inputs.cols();
  if (n == 0) throw std::invalid_argument("empty batch");
  if (static_cast<Eigen::Index>(actions.size()) != n || targets.size() != n)
    throw std::invalid_argument("batch inputs, actions and targets differ in length");
  for (int a : actions)
    if (a < 0 || a >= net.output_size()) throw std::invalid_argument("action index out of range");
}

}  // namespace

double masked_mse(const QNetwork& net, const Eigen::MatrixXd& inputs, std::span<const int> actions,
                  const Eigen::VectorXd& targets) {
  check_batch(net, inputs, actions, targets);
  const Eigen::MatrixXd q = net.forward_batch(inputs);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < inputs.cols(); ++i) {
    const double diff = q(actions[static_cast<std::size_t>(i)], i) - targets[i];
    sum += diff * diff;
  }
  return sum / static_cast<double>(inputs.cols());
}

double masked_mse_gradients(const QNetwork& net, const Eigen::MatrixXd& inputs,
                            std::span<const int> actions, const Eigen::VectorXd& targets,
                            Gradients& grads) {
  check_batch(net, inputs, actions, targets);
  const auto& layers = net.layers();
  const std::size_t depth = layers.size();
  const Eigen::Index batch = inputs.cols();

  // activations[0] = input, activations[i] = output of layer i-1 (post-ReLU
  // for hidden layers).
  std::vector<Eigen::MatrixXd> activations;
  activations.reserve(depth + 1);
  activations.push_back(inputs);
  for (std::size_t i = 0; i < depth; ++i) {
    Eigen::MatrixXd z = layers[i].weight * activations.back();
    z.colwise() += layers[i].bias;
    if (i + 1 < depth) z = z.cwiseMax(0.0);
    activations.push_back(std::move(z));
  }

  const Eigen::MatrixXd& q = activations.back();
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(q.rows(), batch);
  double sum = 0.0;
  const double scale = 2.0 / static_cast<double>(batch);
  for (Eigen::Index i = 0; i < batch; ++i) {
    const int a = actions[static_cast<std::size_t>(i)];
    const double diff = q(a, i) - targets[i];
    sum += diff * diff;
    delta(a, i) = scale * diff;
  }

  if (grads.size() != depth) grads = zero_gradients(net);
  for (std::size_t i = depth; i-- > 0;) {
    grads[i].weight.noalias() = delta * activations[i].transpose();
    grads[i].bias = delta.rowwise().sum();
    if (i == 0) break;
    Eigen::MatrixXd back = layers[i].weight.transpose() * delta;
    // ReLU derivative: pass-through where the hidden unit was active.
    delta = (activations[i].array() > 0.0).select(back, 0.0);
  }
  return sum / static_cast<double>(batch);
}

Optimizer::Optimizer(const QNetwork& net, OptimizerConfig config)
    : config_(config), first_moment_(zero_gradients(net)), second_moment_(zero_gradients(net)) {
  if (!(config_.learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
}

void Optimizer::step(QNetwork& net, const Gradients& grads) {
  auto& layers = net.layers();
  if (grads.size() != layers.size()) throw std::invalid_argument("gradient shape mismatch");
  const double lr = config_.learning_rate;
  if (config_.kind == OptimizerKind::kSgd) {
    for (std::size_t i = 0; i < layers.size(); ++i) {
      layers[i].weight -= lr * grads[i].weight;
      layers[i].bias -= lr * grads[i].bias;
    }
    return;
  }

  ++steps_;
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  const double step_size = lr / correction1;
  const double sqrt_c2 = std::sqrt(correction2);
  const double eps = config_.epsilon;

  auto update = [&](auto& param, const auto& grad, auto& m, auto& v) {
    m = b1 * m + (1.0 - b1) * grad;
    v = b2 * v + (1.0 - b2) * grad.cwiseProduct(grad);
    param.array() -= step_size * m.array() / (v.array().sqrt() / sqrt_c2 + eps);
  };
  for (std::size_t i = 0; i < layers.size(); ++i) {
    update(layers[i].weight, grads[i].weight, first_moment_[i].weight, second_moment_[i].weight);
    update(layers[i].bias, grads[i].bias, first_moment_[i].bias, second_moment_[i].bias);
  }
}

}  // namespace sungka
