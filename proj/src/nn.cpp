#include "tabsynth/nn.hpp"

#include <algorithm>
#include <cmath>

namespace tabsynth {

namespace {

constexpr double kBceClamp = 1e-7;

double clamp_probability(double p) {
  return std::min(std::max(p, kBceClamp), 1.0 - kBceClamp);
}

void apply_activation(const DenseLayer& layer, const Matrix& z, Matrix& a) {
  switch (layer.activation) {
    case Activation::LeakyRelu:
      a = z.cwiseMax(z * layer.leaky_slope);
      break;
    case Activation::Sigmoid:
      a = ((-z.array()).exp() + 1.0).inverse();
      break;
    case Activation::Identity:
      a = z;
      break;
  }
}

// dZ = dA ⊙ act'(z), written into dA in place.
void apply_activation_gradient(const DenseLayer& layer, const Matrix& z,
                               const Matrix& a, Matrix& da) {
  switch (layer.activation) {
    case Activation::LeakyRelu:
      da.array() *= (z.array() >= 0.0).select(1.0, layer.leaky_slope);
      break;
    case Activation::Sigmoid:
      da.array() *= a.array() * (1.0 - a.array());
      break;
    case Activation::Identity:
      break;
  }
}

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

template <typename P, typename G, typename M, typename V>
void adam_update(P&& params, const G& grads, M&& m, V&& v, std::int64_t step_count,
                 double lr, double beta1, double beta2, double epsilon) {
  m = beta1 * m + (1.0 - beta1) * grads;
  v = beta2 * v + (1.0 - beta2) * grads.square();
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step_count));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step_count));
  params -= lr * (m / c1) / ((v / c2).sqrt() + epsilon);
}

}  // namespace

MlpNetwork init_network(const std::vector<int>& layer_dims,
                        const std::vector<Activation>& activations, Rng& rng,
                        double leaky_slope, double dropout_probability) {
  if (layer_dims.size() < 2)
    throw std::invalid_argument("need at least input and output dimensions");
  for (int d : layer_dims) {
    if (d < 1) throw std::invalid_argument("layer dimensions must be positive");
  }
  if (activations.size() != layer_dims.size() - 1)
    throw std::invalid_argument("need one activation per weight layer");
  if (dropout_probability < 0.0 || dropout_probability >= 1.0)
    throw std::invalid_argument("dropout probability must lie in [0,1)");

  MlpNetwork net;
  net.dropout_probability = dropout_probability;
  net.layers.reserve(layer_dims.size() - 1);
  for (size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    const int fan_in = layer_dims[l];
    const int fan_out = layer_dims[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    DenseLayer layer;
    layer.activation = activations[l];
    layer.leaky_slope = leaky_slope;
    layer.weights.resize(fan_out, fan_in);
    for (int i = 0; i < fan_out; ++i) {
      for (int j = 0; j < fan_in; ++j) layer.weights(i, j) = dist(rng);
    }
    layer.biases = Vector::Zero(fan_out);
    net.layers.push_back(std::move(layer));
  }
  return net;
}

Matrix forward(const MlpNetwork& net, const Matrix& input, bool training,
               Rng* rng, ForwardCache* cache) {
  if (net.layers.empty()) throw std::invalid_argument("network has no layers");
  if (input.cols() != net.input_dim())
    throw std::invalid_argument("input width " + std::to_string(input.cols()) +
                                " does not match network input dimension " +
                                std::to_string(net.input_dim()));
  const size_t nl = net.layers.size();
  if (cache) {
    cache->inputs.assign(nl, Matrix());
    cache->pre_activations.assign(nl, Matrix());
    cache->activations.assign(nl, Matrix());
    cache->dropout_masks.assign(nl, Matrix());
  }
  const bool use_dropout = training && net.dropout_probability > 0.0;
  if (use_dropout && rng == nullptr)
    throw std::invalid_argument("training-mode dropout needs a random source");

  Matrix a = input;
  for (size_t l = 0; l < nl; ++l) {
    const DenseLayer& layer = net.layers[l];
    if (cache) cache->inputs[l] = a;
    Matrix z = (a * layer.weights.transpose()).rowwise() + layer.biases.transpose();
    Matrix act;
    apply_activation(layer, z, act);
    if (cache) {
      cache->pre_activations[l] = std::move(z);
      cache->activations[l] = act;
    }
    if (use_dropout && l + 1 < nl) {
      const double keep = 1.0 - net.dropout_probability;
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      Matrix mask(act.rows(), act.cols());
      for (Eigen::Index i = 0; i < mask.rows(); ++i) {
        for (Eigen::Index j = 0; j < mask.cols(); ++j) {
          mask(i, j) = unit(*rng) < net.dropout_probability ? 0.0 : 1.0 / keep;
        }
      }
      act.array() *= mask.array();
      if (cache) cache->dropout_masks[l] = std::move(mask);
    }
    a = std::move(act);
  }
  return a;
}

double bce_loss(double prediction, double target) {
  if (target != 0.0 && target != 1.0)
    throw std::invalid_argument("BCE target must be 0 or 1");
  const double p = clamp_probability(prediction);
  return -(target * std::log(p) + (1.0 - target) * std::log(1.0 - p));
}

double bce_gradient(double prediction, double target) {
  if (target != 0.0 && target != 1.0)
    throw std::invalid_argument("BCE target must be 0 or 1");
  const double p = clamp_probability(prediction);
  return -target / p + (1.0 - target) / (1.0 - p);
}

double bce_loss_mean(const Matrix& predictions, double target) {
  if (predictions.size() == 0) throw std::invalid_argument("empty prediction batch");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < predictions.rows(); ++i) {
    for (Eigen::Index j = 0; j < predictions.cols(); ++j) {
      sum += bce_loss(predictions(i, j), target);
    }
  }
  return sum / static_cast<double>(predictions.size());
}

Matrix bce_gradient_mean(const Matrix& predictions, double target) {
  if (predictions.size() == 0) throw std::invalid_argument("empty prediction batch");
  Matrix grad(predictions.rows(), predictions.cols());
  const double inv_n = 1.0 / static_cast<double>(predictions.size());
  for (Eigen::Index i = 0; i < predictions.rows(); ++i) {
    for (Eigen::Index j = 0; j < predictions.cols(); ++j) {
      grad(i, j) = bce_gradient(predictions(i, j), target) * inv_n;
    }
  }
  return grad;
}

Gradients backward(const MlpNetwork& net, const ForwardCache& cache,
                   const Matrix& loss_gradient, Matrix* input_gradient) {
  const size_t nl = net.layers.size();
  if (cache.inputs.size() != nl)
    throw std::invalid_argument("cache does not match network layout");
  if (loss_gradient.rows() != cache.activations.back().rows() ||
      loss_gradient.cols() != net.output_dim())
    throw std::invalid_argument("loss gradient shape mismatch");

  Gradients grads;
  grads.weights.resize(nl);
  grads.biases.resize(nl);

  Matrix da = loss_gradient;
  for (size_t li = nl; li-- > 0;) {
    const DenseLayer& layer = net.layers[li];
    if (cache.dropout_masks[li].size() > 0) da.array() *= cache.dropout_masks[li].array();
    apply_activation_gradient(layer, cache.pre_activations[li], cache.activations[li], da);
    grads.weights[li].noalias() = da.transpose() * cache.inputs[li];
    grads.biases[li] = da.colwise().sum().transpose();
    if (li > 0 || input_gradient != nullptr) {
      Matrix prev;
      prev.noalias() = da * layer.weights;
      da = std::move(prev);
    }
  }
  if (input_gradient) *input_gradient = std::move(da);
  return grads;
}

AdamState make_adam_state(const MlpNetwork& net, double learning_rate) {
  AdamState state;
  state.learning_rate = learning_rate;
  for (const DenseLayer& layer : net.layers) {
    state.first_moment_w.push_back(Matrix::Zero(layer.weights.rows(), layer.weights.cols()));
    state.second_moment_w.push_back(Matrix::Zero(layer.weights.rows(), layer.weights.cols()));
    state.first_moment_b.push_back(Vector::Zero(layer.biases.size()));
    state.second_moment_b.push_back(Vector::Zero(layer.biases.size()));
  }
  return state;
}

void adam_step(MlpNetwork& net, const Gradients& grads, AdamState& state) {
  const size_t nl = net.layers.size();
  if (grads.weights.size() != nl || state.first_moment_w.size() != nl)
    throw std::invalid_argument("gradient/state layer count mismatch");
  for (size_t l = 0; l < nl; ++l) {
    if (grads.weights[l].rows() != net.layers[l].weights.rows() ||
        grads.weights[l].cols() != net.layers[l].weights.cols() ||
        grads.biases[l].size() != net.layers[l].biases.size())
      throw std::invalid_argument("gradient shape mismatch at layer " + std::to_string(l));
    if (!all_finite(grads.weights[l]) || !all_finite(grads.biases[l]))
      throw DivergenceError("non-finite gradient at layer " + std::to_string(l));
  }
  ++state.step_count;
  for (size_t l = 0; l < nl; ++l) {
    auto w = net.layers[l].weights.array();
    auto gw = grads.weights[l].array();
    auto mw = state.first_moment_w[l].array();
    auto vw = state.second_moment_w[l].array();
    adam_update(w, gw, mw, vw, state.step_count, state.learning_rate, state.beta1,
                state.beta2, state.epsilon);
    auto b = net.layers[l].biases.array();
    auto gb = grads.biases[l].array();
    auto mb = state.first_moment_b[l].array();
    auto vb = state.second_moment_b[l].array();
    adam_update(b, gb, mb, vb, state.step_count, state.learning_rate, state.beta1,
                state.beta2, state.epsilon);
  }
}

AdamStateFlat make_adam_state_flat(Eigen::Index size, double learning_rate) {
  AdamStateFlat state;
  state.learning_rate = learning_rate;
  state.first_moment = Eigen::ArrayXd::Zero(size);
  state.second_moment = Eigen::ArrayXd::Zero(size);
  return state;
}

void adam_step(Eigen::ArrayXd& params, const Eigen::ArrayXd& grads, AdamStateFlat& state) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size())
    throw std::invalid_argument("parameter/gradient/state size mismatch");
  if (!grads.isFinite().all()) throw DivergenceError("non-finite gradient");
  ++state.step_count;
  adam_update(params, grads, state.first_moment, state.second_moment, state.step_count,
              state.learning_rate, state.beta1, state.beta2, state.epsilon);
}

}  // namespace tabsynth
