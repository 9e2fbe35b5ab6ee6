#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tabsynth/dataset.hpp"
#include "tabsynth/nn.hpp"
#include "tabsynth/rng.hpp"

namespace tabsynth {

struct GanConfig {
  std::vector<int> hidden_sizes;  // e.g. {256, 512}
  int latent_dim = 100;
  int batch_size = 5;
  double learning_rate = 2e-4;
  double dropout_probability = 0.3;
  double leaky_slope = 0.2;
  int epochs = 1500;
  std::uint64_t seed = 0;

  /// Display name of the architecture, e.g. "256/512".
  std::string name() const;
};

struct TrainingLog {
  std::vector<double> generator_loss;  // per-epoch means
  std::vector<double> real_loss;
  std::vector<double> fake_loss;
  bool diverged = false;
  int epochs_completed = 0;
};

/// Generator maps latent noise to data rows (hidden sizes ascending),
/// discriminator maps data rows to a real/fake probability (descending).
/// Both optimizer states live with the model so the per-step ops can be
/// called directly.
struct GanModel {
  MlpNetwork generator;
  MlpNetwork discriminator;
  AdamState generator_opt;
  AdamState discriminator_opt;
  GanConfig config;
  int data_dim = 0;                       // features + label column
  std::vector<std::string> column_names;  // feature names, then label name
};

/// Called after each completed epoch; may mutate the model (used for
/// progress reporting and for fault injection in tests).
using EpochHook = std::function<void(int epoch, GanModel& model)>;

GanModel build_gan(const GanConfig& config, int data_dim, Rng& rng);
GanModel build_gan(const GanConfig& config, int data_dim);  // rng from config.seed

/// One latent vector of i.i.d. standard normal draws.
Vector sample_latent(const GanConfig& config, Rng& rng);
Matrix sample_latent_batch(const GanConfig& config, int n, Rng& rng);

/// Two discriminator updates: toward 1 on `real_batch`, then toward 0 on a
/// freshly generated fake batch of the same size. Generator untouched.
/// Returns (real_loss, fake_loss).
std::pair<double, double> train_discriminator_step(GanModel& model,
                                                   const Matrix& real_batch, Rng& rng);

/// One generator update toward discriminator output 1 on a fresh fake batch;
/// gradients flow through the discriminator but are not applied to it.
double train_generator_step(GanModel& model, Rng& rng);

struct TrainResult {
  GanModel model;
  TrainingLog log;
};

/// Full adversarial training: per epoch, iterate the shuffled dataset in
/// batches, one discriminator step then one generator step per batch.
/// A non-finite loss aborts the run with log.diverged set and the log
/// filled up to the last completed epoch.
TrainResult train_gan(const Dataset& dataset, const GanConfig& config,
                      const EpochHook& hook = {});

/// n_rows of generator inference (dropout off). Feature columns stay
/// continuous in [0,1]; the label column is rounded, ties to 1.
Dataset synthesize(const GanModel& model, int n_rows, Rng& rng);

/// JSON round-trip of config, dimensions, activations and parameters.
/// Weights survive save/load bit-exactly.
void save_gan(const GanModel& model, const std::string& path);
GanModel load_gan(const std::string& path);

}  // namespace tabsynth
