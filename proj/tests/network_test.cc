#include "sungka/network.h"

#include <gtest/gtest.h>

#include <random>

#include "support/finite_difference.h"

namespace sungka {
namespace {

Eigen::MatrixXd random_inputs(Rng& rng, int batch) {
  std::uniform_int_distribution<int> stones(0, 14);
  Eigen::MatrixXd x(14, batch);
  for (int c = 0; c < batch; ++c)
    for (int r = 0; r < 14; ++r) x(r, c) = stones(rng) * kInputScale;
  return x;
}

TEST(NetworkTest, InitIsDeterministicPerSeed) {
  const QNetwork a = init_network(42);
  const QNetwork b = init_network(42);
  const QNetwork c = init_network(43);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  EXPECT_EQ(a.layer_dims(), kDefaultLayerDims);
  EXPECT_EQ(a.layer_dims(), (std::vector<int>{14, 64, 64, 7}));
  EXPECT_EQ(a.parameter_count(), 14u * 64 + 64 + 64 * 64 + 64 + 64 * 7 + 7);
  EXPECT_EQ(init_network(42, {14, 128, 128, 7}).parameter_count(),
            14u * 128 + 128 + 128 * 128 + 128 + 128 * 7 + 7);
  for (const DenseLayer& l : a.layers()) {
    EXPECT_TRUE(l.bias.isZero());
    const double bound = 1.0 / std::sqrt(static_cast<double>(l.weight.cols()));
    EXPECT_LE(l.weight.cwiseAbs().maxCoeff(), bound);
  }
}

TEST(NetworkTest, ZeroInputGivesBiasImage) {
  QNetwork net = init_network(1);
  EXPECT_TRUE(net.forward(Eigen::VectorXd::Zero(14)).isZero());
  net.layers()[0].bias.setConstant(0.5);
  net.layers()[2].bias.setConstant(-0.25);
  Eigen::VectorXd h = net.layers()[0].bias.cwiseMax(0.0);
  h = (net.layers()[1].weight * h + net.layers()[1].bias).cwiseMax(0.0);
  const Eigen::VectorXd expected = net.layers()[2].weight * h + net.layers()[2].bias;
  const Eigen::VectorXd out = net.forward(Eigen::VectorXd::Zero(14));
  EXPECT_TRUE(out.allFinite());
  EXPECT_TRUE(out.isApprox(expected, 1e-14));
}

TEST(NetworkTest, ZeroParametersGiveZeroOutput) {
  const QNetwork net(kDefaultLayerDims);
  Observation obs{};
  obs.fill(7);
  EXPECT_TRUE(q_values(net, obs).isZero());
  EXPECT_EQ(q_values(net, obs).size(), 7);
}

TEST(NetworkTest, HiddenRowScalingIsLinear) {
  QNetwork net = init_network(9);
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(14, 0.0, 1.0);
  const double before = (net.layers()[0].weight.row(3) * x)(0);
  net.layers()[0].weight.row(3) *= 2.5;
  EXPECT_NEAR((net.layers()[0].weight.row(3) * x)(0), 2.5 * before, 1e-12);
}

TEST(NetworkTest, HandBuiltSingleUnitNetwork) {
  QNetwork net({14, 1, 7});
  for (int i = 0; i < 14; ++i) net.layers()[0].weight(0, i) = (i % 2 == 0) ? 0.5 : -0.25;
  net.layers()[0].bias[0] = 0.1;
  for (int k = 0; k < 7; ++k) {
    net.layers()[1].weight(k, 0) = k - 3.0;
    net.layers()[1].bias[k] = 0.01 * k;
  }
  Observation obs{};
  obs.fill(7);
  obs[0] = 14;
  // Hidden pre-activation: 7 houses at +0.5, 7 at -0.25, scaled by 1/98.
  // Even indices sum to 14 + 6*7 = 56, odd to 49.
  const double hidden = std::max(0.0, 0.5 * 56.0 / 98.0 - 0.25 * 49.0 / 98.0 + 0.1);
  const Eigen::VectorXd q = q_values(net, obs);
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(q[k], (k - 3.0) * hidden + 0.01 * k, 1e-12);

  // Switch the unit off: negative pre-activation clamps to zero.
  net.layers()[0].bias[0] = -10.0;
  const Eigen::VectorXd off = q_values(net, obs);
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(off[k], 0.01 * k, 1e-12);
}

TEST(NetworkTest, WrongInputLengthRejected) {
  const QNetwork net = init_network(1);
  EXPECT_THROW(net.forward(Eigen::VectorXd::Zero(13)), std::invalid_argument);
  EXPECT_THROW(net.forward_batch(Eigen::MatrixXd::Zero(15, 2)), std::invalid_argument);
  EXPECT_THROW(QNetwork({14}), std::invalid_argument);
}

TEST(NetworkTest, BatchMatchesSingle) {
  const QNetwork net = init_network(2);
  Rng rng(3);
  const Eigen::MatrixXd x = random_inputs(rng, 5);
  const Eigen::MatrixXd q = net.forward_batch(x);
  for (int c = 0; c < 5; ++c) EXPECT_TRUE(q.col(c).isApprox(net.forward(x.col(c)), 1e-14));
}

TEST(NetworkTest, CanonicalEncodingRotatesSeatTwo) {
  Observation obs{};
  for (int i = 0; i < 14; ++i) obs[static_cast<std::size_t>(i)] = i;
  const Eigen::VectorXd plain = encode(obs, Player::kTwo, false);
  const Eigen::VectorXd rotated = encode(obs, Player::kTwo, true);
  EXPECT_DOUBLE_EQ(plain[0], 0.0);
  EXPECT_DOUBLE_EQ(rotated[0], 7 * kInputScale);
  EXPECT_DOUBLE_EQ(rotated[7], 0.0);
  EXPECT_TRUE(encode(obs, Player::kOne, true).isApprox(plain));
}

TEST(NetworkTest, GradientsMatchFiniteDifferences) {
  Rng rng(123);
  for (int trial = 0; trial < 5; ++trial) {
    QNetwork net = init_network(100 + static_cast<std::uint64_t>(trial), {14, 4, 7});
    for (DenseLayer& l : net.layers()) l.bias.setRandom();
    const int batch = 6;
    const Eigen::MatrixXd x = random_inputs(rng, batch);
    std::vector<int> actions;
    std::uniform_int_distribution<int> pick(0, 6);
    for (int i = 0; i < batch; ++i) actions.push_back(pick(rng));
    const Eigen::VectorXd y = Eigen::VectorXd::Random(batch) * 5.0;

    Gradients analytic;
    const double loss = masked_mse_gradients(net, x, actions, y, analytic);
    EXPECT_DOUBLE_EQ(loss, masked_mse(net, x, actions, y));
    const Gradients numeric = testing::numeric_gradients(net, x, actions, y);
    EXPECT_LT(testing::max_relative_error(analytic, numeric), 1e-4);
  }
}

TEST(NetworkTest, SingleSampleLossIsSquaredError) {
  const QNetwork net = init_network(5, {14, 4, 7});
  Eigen::MatrixXd x = Eigen::MatrixXd::Constant(14, 1, 7 * kInputScale);
  const std::vector<int> action{3};
  Eigen::VectorXd y(1);
  y << 2.0;
  const double v = net.forward(x.col(0))[3];
  EXPECT_NEAR(masked_mse(net, x, action, y), (v - 2.0) * (v - 2.0), 1e-14);
}

TEST(NetworkTest, AdamZeroGradientIsNoop) {
  QNetwork net = init_network(1, {14, 4, 7});
  const QNetwork before = net;
  Optimizer adam(net, {});
  adam.step(net, zero_gradients(net));
  EXPECT_EQ(net, before);
}

TEST(NetworkTest, SgdStepIsPlainGradientDescent) {
  QNetwork net = init_network(1, {14, 4, 7});
  const QNetwork before = net;
  Gradients g = zero_gradients(net);
  g[1].weight(2, 3) = 4.0;
  g[0].bias[1] = -2.0;
  OptimizerConfig config;
  config.kind = OptimizerKind::kSgd;
  config.learning_rate = 0.5;
  Optimizer sgd(net, config);
  sgd.step(net, g);
  EXPECT_DOUBLE_EQ(net.layers()[1].weight(2, 3), before.layers()[1].weight(2, 3) - 2.0);
  EXPECT_DOUBLE_EQ(net.layers()[0].bias[1], before.layers()[0].bias[1] + 1.0);
}

TEST(NetworkTest, AdamFirstStepMovesByLearningRate) {
  // With bias correction the first Adam step is lr * sign(g) (up to epsilon).
  QNetwork net = init_network(1, {14, 4, 7});
  const QNetwork before = net;
  Gradients g = zero_gradients(net);
  g[1].weight(0, 0) = 0.3;
  g[1].bias[6] = -7.0;
  Optimizer adam(net, {});
  adam.step(net, g);
  EXPECT_NEAR(net.layers()[1].weight(0, 0), before.layers()[1].weight(0, 0) - 1e-3, 1e-10);
  EXPECT_NEAR(net.layers()[1].bias[6], before.layers()[1].bias[6] + 1e-3, 1e-10);
  EXPECT_EQ(net.layers()[0], before.layers()[0]);
}

TEST(NetworkTest, GradientStepReducesLoss) {
  Rng rng(31);
  QNetwork net = init_network(8);
  const Eigen::MatrixXd x = random_inputs(rng, 32);
  std::vector<int> actions;
  std::uniform_int_distribution<int> pick(0, 6);
  for (int i = 0; i < 32; ++i) actions.push_back(pick(rng));
  const Eigen::VectorXd y = Eigen::VectorXd::Random(32) * 10.0;
  OptimizerConfig config;
  config.learning_rate = 1e-4;
  Optimizer adam(net, config);
  Gradients g;
  const double before = masked_mse_gradients(net, x, actions, y, g);
  adam.step(net, g);
  EXPECT_LT(masked_mse(net, x, actions, y), before);
}

}  // namespace
}  // namespace sungka
