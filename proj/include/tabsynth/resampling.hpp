#pragma once

#include <cstdint>
#include <vector>

#include "tabsynth/dataset.hpp"
#include "tabsynth/rng.hpp"

namespace tabsynth {

struct ResampleRequest {
  Dataset dataset;
  int minority_label = 1;
  int k_neighbors = 5;
  int target_count = 0;  // minority size after oversampling
  std::uint64_t seed = 0;
};

/// Indices of the k nearest rows to `query_index` by Euclidean distance,
/// excluding the query row itself; ties broken by lower index.
std::vector<int> knn_same_class(const Matrix& points, int query_index, int k);

/// Classic SMOTE: each synthetic point is p + u (q - p) for a random
/// minority point p, one of its k minority neighbors q and u uniform in
/// [0,1]. Original rows are returned unchanged with the synthetic minority
/// rows appended.
Dataset smote(const ResampleRequest& request);

/// SMOTE followed by an i.i.d. uniform perturbation in ±bias_scale per
/// coordinate, clamped to [0,1]. bias_scale = 0 degenerates to smote().
Dataset adasyn(const ResampleRequest& request, double bias_scale = 0.01);

/// Keeps every minority row and a uniform random majority subset of equal
/// size; the result is shuffled.
Dataset undersample_majority(const Dataset& dataset, std::uint64_t seed);

}  // namespace tabsynth
