#pragma once

#include <array>
#include <utility>
#include <vector>

#include "tabsynth/dataset.hpp"

namespace tabsynth {

/// Confusion counts and derived rates; positive class is label 1. When
/// tp+fp (or tp+fn) is zero the rate is reported as 0 with the matching
/// *_defined flag cleared, so experiment loops survive degenerate
/// predictors.
struct ClassificationReport {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  bool precision_defined = true;
  bool recall_defined = true;
  std::array<double, 2> label_proportion{0.0, 0.0};  // % of truth labels 0/1
};

ClassificationReport classification_metrics(const std::vector<int>& predictions,
                                            const std::vector<int>& truth);

/// (% label 0, % label 1), summing to 100.
std::array<double, 2> label_proportion(const Dataset& dataset);

/// For each synthetic row, the Euclidean distance to its nearest original
/// row — label column included — reduced to (mean, sample stddev).
std::pair<double, double> mean_nn_distance(const Dataset& synthetic,
                                           const Dataset& original);

/// Per-metric mean and sample standard deviation over n repetitions.
struct AggregateStats {
  int n = 0;
  bool single_sample = false;  // stddev reported as 0 by convention
  double accuracy_mean = 0.0, accuracy_std = 0.0;
  double precision_mean = 0.0, precision_std = 0.0;
  double recall_mean = 0.0, recall_std = 0.0;
};

AggregateStats aggregate(const std::vector<ClassificationReport>& reports);

/// Sample mean and standard deviation (n-1 convention; 0 when n < 2).
std::pair<double, double> mean_and_stddev(const std::vector<double>& values);

}  // namespace tabsynth
