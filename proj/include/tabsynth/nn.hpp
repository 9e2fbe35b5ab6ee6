#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tabsynth/rng.hpp"

namespace tabsynth {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when training produces a non-finite quantity. Callers treat it as
/// a divergence signal, not as a programming error.
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Activation { LeakyRelu, Sigmoid, Identity };

struct DenseLayer {
  Matrix weights;  // out_dim x in_dim
  Vector biases;   // out_dim
  Activation activation = Activation::Identity;
  double leaky_slope = 0.2;

  int in_dim() const { return static_cast<int>(weights.cols()); }
  int out_dim() const { return static_cast<int>(weights.rows()); }
};

/// Plain fully connected network. Dropout (inverted convention) is applied
/// after each hidden activation, only in training mode and only when
/// dropout_probability > 0 — i.e. only the GAN generator carries it.
struct MlpNetwork {
  std::vector<DenseLayer> layers;
  double dropout_probability = 0.0;

  int input_dim() const { return layers.front().in_dim(); }
  int output_dim() const { return layers.back().out_dim(); }
};

/// Everything backward() needs: per-layer inputs, pre-activations and the
/// scaled dropout masks actually drawn during the forward pass.
struct ForwardCache {
  std::vector<Matrix> inputs;           // input to layer l, n x in_dim
  std::vector<Matrix> pre_activations;  // z = x W^T + b
  std::vector<Matrix> activations;      // act(z), before dropout
  std::vector<Matrix> dropout_masks;    // 0 or 1/(1-p); empty when not applied
};

struct Gradients {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

struct AdamState {
  std::vector<Matrix> first_moment_w, second_moment_w;
  std::vector<Vector> first_moment_b, second_moment_b;
  std::int64_t step_count = 0;
  double learning_rate = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Weights uniform in ±sqrt(6/(fan_in+fan_out)), biases zero.
MlpNetwork init_network(const std::vector<int>& layer_dims,
                        const std::vector<Activation>& activations, Rng& rng,
                        double leaky_slope = 0.2, double dropout_probability = 0.0);

/// Batch forward pass, one sample per row. With training=false the pass is a
/// pure function of (net, input) and `rng` may be null. `cache` may be null
/// when no backward pass will follow.
Matrix forward(const MlpNetwork& net, const Matrix& input, bool training,
               Rng* rng, ForwardCache* cache);

inline Matrix infer(const MlpNetwork& net, const Matrix& input) {
  return forward(net, input, false, nullptr, nullptr);
}

/// -[t ln p + (1-t) ln(1-p)], with p clamped to [1e-7, 1-1e-7].
double bce_loss(double prediction, double target);
double bce_gradient(double prediction, double target);

/// Mean BCE over a batch of predictions against one target label, and its
/// gradient with respect to each prediction.
double bce_loss_mean(const Matrix& predictions, double target);
Matrix bce_gradient_mean(const Matrix& predictions, double target);

/// Exact gradients of the scalar loss whose gradient w.r.t. the network
/// output is `loss_gradient`. When `input_gradient` is non-null it receives
/// dLoss/dInput (used to chain the discriminator into the generator).
Gradients backward(const MlpNetwork& net, const ForwardCache& cache,
                   const Matrix& loss_gradient, Matrix* input_gradient = nullptr);

AdamState make_adam_state(const MlpNetwork& net, double learning_rate);

/// Standard bias-corrected Adam update over all layer parameters. Throws
/// DivergenceError if any gradient is non-finite.
void adam_step(MlpNetwork& net, const Gradients& grads, AdamState& state);

/// Flat-parameter Adam state, for uses outside a network context.
struct AdamStateFlat {
  Eigen::ArrayXd first_moment, second_moment;
  std::int64_t step_count = 0;
  double learning_rate = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};
AdamStateFlat make_adam_state_flat(Eigen::Index size, double learning_rate);
void adam_step(Eigen::ArrayXd& params, const Eigen::ArrayXd& grads, AdamStateFlat& state);

}  // namespace tabsynth
