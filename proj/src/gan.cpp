#include "tabsynth/gan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace tabsynth {

namespace {

using nlohmann::json;

std::vector<int> sorted_ascending(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> sorted_descending(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<int>());
  return v;
}

void validate_config(const GanConfig& config) {
  if (config.hidden_sizes.empty())
    throw std::invalid_argument("GAN needs at least one hidden layer size");
  for (int h : config.hidden_sizes) {
    if (h < 1) throw std::invalid_argument("hidden sizes must be positive");
  }
  if (config.latent_dim < 1) throw std::invalid_argument("latent_dim must be positive");
  if (config.batch_size < 1) throw std::invalid_argument("batch_size must be positive");
  if (config.epochs < 0) throw std::invalid_argument("epochs must be non-negative");
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::LeakyRelu: return "leaky_relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Identity: return "identity";
  }
  return "identity";
}

Activation activation_from_name(const std::string& name) {
  if (name == "leaky_relu") return Activation::LeakyRelu;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "identity") return Activation::Identity;
  throw std::runtime_error("unknown activation '" + name + "'");
}

json network_to_json(const MlpNetwork& net) {
  json layers = json::array();
  for (const DenseLayer& layer : net.layers) {
    std::vector<double> w(layer.weights.size());
    for (int i = 0; i < layer.out_dim(); ++i) {
      for (int j = 0; j < layer.in_dim(); ++j) {
        w[static_cast<size_t>(i) * layer.in_dim() + j] = layer.weights(i, j);
      }
    }
    std::vector<double> b(layer.biases.data(), layer.biases.data() + layer.biases.size());
    layers.push_back({{"in_dim", layer.in_dim()},
                      {"out_dim", layer.out_dim()},
                      {"activation", activation_name(layer.activation)},
                      {"leaky_slope", layer.leaky_slope},
                      {"weights", w},
                      {"biases", b}});
  }
  return {{"dropout_probability", net.dropout_probability}, {"layers", layers}};
}

MlpNetwork network_from_json(const json& j) {
  MlpNetwork net;
  net.dropout_probability = j.at("dropout_probability").get<double>();
  for (const auto& lj : j.at("layers")) {
    DenseLayer layer;
    const int in_dim = lj.at("in_dim").get<int>();
    const int out_dim = lj.at("out_dim").get<int>();
    layer.activation = activation_from_name(lj.at("activation").get<std::string>());
    layer.leaky_slope = lj.at("leaky_slope").get<double>();
    auto w = lj.at("weights").get<std::vector<double>>();
    auto b = lj.at("biases").get<std::vector<double>>();
    if (static_cast<int>(w.size()) != in_dim * out_dim ||
        static_cast<int>(b.size()) != out_dim)
      throw std::runtime_error("corrupt network JSON: weight shape mismatch");
    layer.weights.resize(out_dim, in_dim);
    for (int i = 0; i < out_dim; ++i) {
      for (int jx = 0; jx < in_dim; ++jx) {
        layer.weights(i, jx) = w[static_cast<size_t>(i) * in_dim + jx];
      }
    }
    layer.biases = Eigen::Map<Vector>(b.data(), out_dim);
    net.layers.push_back(std::move(layer));
  }
  return net;
}

}  // namespace

std::string GanConfig::name() const {
  std::string out;
  for (size_t i = 0; i < hidden_sizes.size(); ++i) {
    if (i) out += "/";
    out += std::to_string(hidden_sizes[i]);
  }
  return out;
}

GanModel build_gan(const GanConfig& config, int data_dim, Rng& rng) {
  validate_config(config);
  if (data_dim < 2)
    throw std::invalid_argument("data_dim must cover at least one feature plus the label");

  const auto ascending = sorted_ascending(config.hidden_sizes);
  const auto descending = sorted_descending(config.hidden_sizes);

  std::vector<int> gen_dims{config.latent_dim};
  gen_dims.insert(gen_dims.end(), ascending.begin(), ascending.end());
  gen_dims.push_back(data_dim);
  std::vector<Activation> gen_acts(ascending.size(), Activation::LeakyRelu);
  gen_acts.push_back(Activation::Sigmoid);

  std::vector<int> disc_dims{data_dim};
  disc_dims.insert(disc_dims.end(), descending.begin(), descending.end());
  disc_dims.push_back(1);
  std::vector<Activation> disc_acts(descending.size(), Activation::LeakyRelu);
  disc_acts.push_back(Activation::Sigmoid);

  GanModel model;
  model.config = config;
  model.data_dim = data_dim;
  model.generator = init_network(gen_dims, gen_acts, rng, config.leaky_slope,
                                 config.dropout_probability);
  model.discriminator = init_network(disc_dims, disc_acts, rng, config.leaky_slope, 0.0);
  model.generator_opt = make_adam_state(model.generator, config.learning_rate);
  model.discriminator_opt = make_adam_state(model.discriminator, config.learning_rate);
  return model;
}

GanModel build_gan(const GanConfig& config, int data_dim) {
  Rng rng = make_rng(config.seed);
  return build_gan(config, data_dim, rng);
}

Vector sample_latent(const GanConfig& config, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector z(config.latent_dim);
  for (int i = 0; i < config.latent_dim; ++i) z(i) = normal(rng);
  return z;
}

Matrix sample_latent_batch(const GanConfig& config, int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(n, config.latent_dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < config.latent_dim; ++j) z(i, j) = normal(rng);
  }
  return z;
}

std::pair<double, double> train_discriminator_step(GanModel& model,
                                                   const Matrix& real_batch, Rng& rng) {
  if (real_batch.cols() != model.data_dim)
    throw std::invalid_argument("real batch width does not match data_dim");
  MlpNetwork& disc = model.discriminator;

  // Update toward 1 on the real rows.
  ForwardCache cache;
  Matrix preds = forward(disc, real_batch, true, &rng, &cache);
  const double real_loss = bce_loss_mean(preds, 1.0);
  if (!std::isfinite(real_loss)) throw DivergenceError("non-finite discriminator loss");
  Gradients grads = backward(disc, cache, bce_gradient_mean(preds, 1.0));
  adam_step(disc, grads, model.discriminator_opt);

  // Update toward 0 on a fresh fake batch of the same size.
  const int n = static_cast<int>(real_batch.rows());
  Matrix latents = sample_latent_batch(model.config, n, rng);
  Matrix fakes = forward(model.generator, latents, true, &rng, nullptr);
  preds = forward(disc, fakes, true, &rng, &cache);
  const double fake_loss = bce_loss_mean(preds, 0.0);
  if (!std::isfinite(fake_loss)) throw DivergenceError("non-finite discriminator loss");
  grads = backward(disc, cache, bce_gradient_mean(preds, 0.0));
  adam_step(disc, grads, model.discriminator_opt);

  return {real_loss, fake_loss};
}

double train_generator_step(GanModel& model, Rng& rng) {
  Matrix latents = sample_latent_batch(model.config, model.config.batch_size, rng);
  ForwardCache gen_cache, disc_cache;
  Matrix fakes = forward(model.generator, latents, true, &rng, &gen_cache);
  Matrix preds = forward(model.discriminator, fakes, true, &rng, &disc_cache);
  const double loss = bce_loss_mean(preds, 1.0);
  if (!std::isfinite(loss)) throw DivergenceError("non-finite generator loss");

  Matrix dfakes;
  (void)backward(model.discriminator, disc_cache, bce_gradient_mean(preds, 1.0), &dfakes);
  Gradients grads = backward(model.generator, gen_cache, dfakes);
  adam_step(model.generator, grads, model.generator_opt);
  return loss;
}

TrainResult train_gan(const Dataset& dataset, const GanConfig& config,
                      const EpochHook& hook) {
  validate_config(config);
  if (dataset.rows() == 0) throw std::invalid_argument("cannot train on an empty dataset");
  if (config.batch_size > dataset.rows())
    throw std::invalid_argument("batch_size exceeds dataset size");
  const Matrix data = dataset.with_label_column();
  if (data.minCoeff() < 0.0 || data.maxCoeff() > 1.0)
    throw std::invalid_argument("GAN input must be scaled to [0,1]");

  Rng rng = make_rng(config.seed);
  TrainResult result{build_gan(config, static_cast<int>(data.cols()), rng), {}};
  GanModel& model = result.model;
  TrainingLog& log = result.log;
  model.column_names = dataset.feature_names;
  model.column_names.push_back(dataset.label_name);

  const int n = static_cast<int>(data.rows());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double real_sum = 0.0, fake_sum = 0.0, gen_sum = 0.0;
    int batches = 0;
    try {
      for (int start = 0; start < n; start += config.batch_size) {
        const int count = std::min(config.batch_size, n - start);
        Matrix batch(count, data.cols());
        for (int i = 0; i < count; ++i) batch.row(i) = data.row(order[start + i]);
        auto [real_loss, fake_loss] = train_discriminator_step(model, batch, rng);
        const double gen_loss = train_generator_step(model, rng);
        if (!std::isfinite(real_loss + fake_loss + gen_loss))
          throw DivergenceError("non-finite loss");
        real_sum += real_loss;
        fake_sum += fake_loss;
        gen_sum += gen_loss;
        ++batches;
      }
    } catch (const DivergenceError&) {
      log.diverged = true;
      return result;
    }
    log.real_loss.push_back(real_sum / batches);
    log.fake_loss.push_back(fake_sum / batches);
    log.generator_loss.push_back(gen_sum / batches);
    log.epochs_completed = epoch + 1;
    if (hook) hook(epoch, model);
  }
  return result;
}

Dataset synthesize(const GanModel& model, int n_rows, Rng& rng) {
  if (n_rows <= 0) throw std::invalid_argument("n_rows must be positive");
  if (model.generator.layers.empty()) throw std::invalid_argument("model is not built");

  Matrix latents = sample_latent_batch(model.config, n_rows, rng);
  Matrix out = infer(model.generator, latents);

  const int d = model.data_dim - 1;
  Matrix rows(n_rows, model.data_dim);
  rows.leftCols(d) = out.leftCols(d);
  for (int i = 0; i < n_rows; ++i) {
    rows(i, d) = out(i, d) >= 0.5 ? 1.0 : 0.0;  // ties round up
  }

  std::vector<std::string> names = model.column_names;
  std::string label_name = "label";
  if (!names.empty()) {
    label_name = names.back();
    names.pop_back();
  }
  return dataset_from_matrix(rows, std::move(names), std::move(label_name));
}

void save_gan(const GanModel& model, const std::string& path) {
  json j{{"format", "tabsynth-gan-v1"},
         {"config",
          {{"hidden_sizes", model.config.hidden_sizes},
           {"latent_dim", model.config.latent_dim},
           {"batch_size", model.config.batch_size},
           {"learning_rate", model.config.learning_rate},
           {"dropout_probability", model.config.dropout_probability},
           {"leaky_slope", model.config.leaky_slope},
           {"epochs", model.config.epochs},
           {"seed", model.config.seed}}},
         {"data_dim", model.data_dim},
         {"column_names", model.column_names},
         {"generator", network_to_json(model.generator)},
         {"discriminator", network_to_json(model.discriminator)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

GanModel load_gan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j = json::parse(in);
  if (j.value("format", "") != "tabsynth-gan-v1")
    throw std::runtime_error(path + " is not a tabsynth GAN model file");

  GanModel model;
  const json& cj = j.at("config");
  model.config.hidden_sizes = cj.at("hidden_sizes").get<std::vector<int>>();
  model.config.latent_dim = cj.at("latent_dim").get<int>();
  model.config.batch_size = cj.at("batch_size").get<int>();
  model.config.learning_rate = cj.at("learning_rate").get<double>();
  model.config.dropout_probability = cj.at("dropout_probability").get<double>();
  model.config.leaky_slope = cj.at("leaky_slope").get<double>();
  model.config.epochs = cj.at("epochs").get<int>();
  model.config.seed = cj.at("seed").get<std::uint64_t>();
  model.data_dim = j.at("data_dim").get<int>();
  model.column_names = j.at("column_names").get<std::vector<std::string>>();
  model.generator = network_from_json(j.at("generator"));
  model.discriminator = network_from_json(j.at("discriminator"));
  model.generator_opt = make_adam_state(model.generator, model.config.learning_rate);
  model.discriminator_opt = make_adam_state(model.discriminator, model.config.learning_rate);
  return model;
}

}  // namespace tabsynth
