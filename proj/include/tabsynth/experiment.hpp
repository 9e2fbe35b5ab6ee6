#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tabsynth/dataset.hpp"
#include "tabsynth/gan.hpp"
#include "tabsynth/metrics.hpp"

namespace tabsynth {

struct ExperimentSpec {
  std::string dataset_path;
  std::string label_column = "label";
  std::map<std::string, int> label_mapping;          // empty: numeric labels
  std::vector<std::vector<int>> architectures;       // hidden-size lists
  int repetitions = 20;
  int epochs = 1500;
  std::uint64_t base_seed = 0;
  std::string output_dir = ".";
  int majority_cap = 0;   // >0: subsample the majority class before the pipeline
  int threads = 0;        // 0: hardware concurrency
  int max_retries = 5;    // reseeds per repetition after divergence
};

/// base_seed + 10000 * architecture_index + repetition_index. Injective for
/// repetitions < 10000.
std::uint64_t seed_plan(std::uint64_t base_seed, int architecture_index,
                        int repetition_index);

/// Trains with config.seed; on divergence retries with config.seed +
/// k * 1e6 for k = 1..max_retries. `discarded` counts abandoned runs.
struct TrainedRun {
  GanModel model;
  TrainingLog log;
  int discarded = 0;
  bool success = false;
};
TrainedRun train_with_retries(const Dataset& data, GanConfig config,
                              int max_retries, const EpochHook& hook = {});

/// One table row: aggregated classification metrics plus the label
/// proportion and nearest-neighbor distance columns of the paper's tables.
struct ArchReport {
  std::string name;
  AggregateStats classification;
  double label0_mean = 0.0, label0_std = 0.0;
  double label1_mean = 0.0, label1_std = 0.0;
  double nn_mean = 0.0, nn_std = 0.0;
  int discarded = 0;
  bool all_diverged = false;
};

struct Experiment1Result {
  ArchReport baseline;               // tree trained on the original train subset
  std::vector<ArchReport> per_arch;  // one row per GAN architecture
  std::vector<std::string> written_files;
};

/// Train GAN on the full train subset (labels included), synthesize a
/// train-sized dataset, train a tree on it, evaluate on the original test
/// subset; repeated per architecture, aggregated, written as CSV tables and
/// a plain-text report.
Experiment1Result run_experiment1(const ExperimentSpec& spec, const EpochHook& hook = {});

struct MethodReport {
  std::string name;
  AggregateStats imbalanced_test;
  AggregateStats balanced_test;
  int discarded = 0;
  bool all_diverged = false;
};

struct Experiment2Result {
  std::vector<MethodReport> rows;
  std::vector<std::string> written_files;
  int minority_label = 1;
};

/// Balance the train subset per method (GAN trained on minority rows only,
/// SMOTE, ADASYN, or none), train a tree on the balanced data and evaluate
/// on both the original imbalanced test subset and an undersampled balanced
/// one. `methods` is a subset of {"none","smote","adasyn","gan"}.
Experiment2Result run_experiment2(const ExperimentSpec& spec,
                                  const std::vector<std::string>& methods,
                                  const EpochHook& hook = {});

}  // namespace tabsynth
