#include "tabsynth/resampling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tabsynth {

namespace {

void validate_request(const ResampleRequest& r, int minority_count) {
  if (r.minority_label != 0 && r.minority_label != 1)
    throw std::invalid_argument("minority_label must be 0 or 1");
  if (minority_count < 2)
    throw std::invalid_argument("minority class needs at least 2 samples");
  if (r.k_neighbors < 1) throw std::invalid_argument("k_neighbors must be at least 1");
  if (r.k_neighbors >= minority_count)
    throw std::invalid_argument("k_neighbors must be smaller than the minority count");
  if (r.target_count < minority_count)
    throw std::invalid_argument("target_count below current minority count");
}

// Neighbor lists for every row at once; O(m^2) distances, fine at the
// minority-class sizes this is used for.
std::vector<std::vector<int>> knn_all(const Matrix& points, int k) {
  const int m = static_cast<int>(points.rows());
  std::vector<std::vector<int>> out(m);
  std::vector<std::pair<double, int>> dist(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      dist[j] = {(points.row(i) - points.row(j)).squaredNorm(), j};
    }
    dist[i].first = std::numeric_limits<double>::infinity();  // exclude self
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    out[i].reserve(k);
    for (int j = 0; j < k; ++j) out[i].push_back(dist[j].second);
  }
  return out;
}

Dataset oversample(const ResampleRequest& request, bool add_bias, double bias_scale) {
  const Dataset minority = filter_by_label(request.dataset, request.minority_label);
  validate_request(request, minority.rows());

  const int n_new = request.target_count - minority.rows();
  Dataset out = request.dataset;
  if (n_new == 0) return out;

  const auto neighbors = knn_all(minority.features, request.k_neighbors);
  Rng rng = make_rng(request.seed);
  std::uniform_int_distribution<int> pick_point(0, minority.rows() - 1);
  std::uniform_int_distribution<int> pick_neighbor(0, request.k_neighbors - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int d = out.cols();
  Matrix synthetic(n_new, d);
  for (int s = 0; s < n_new; ++s) {
    const int p = pick_point(rng);
    const int q = neighbors[p][pick_neighbor(rng)];
    const double u = unit(rng);
    synthetic.row(s) =
        minority.features.row(p) + u * (minority.features.row(q) - minority.features.row(p));
    if (add_bias) {
      for (int j = 0; j < d; ++j) {
        const double bias = (unit(rng) * 2.0 - 1.0) * bias_scale;
        synthetic(s, j) = std::clamp(synthetic(s, j) + bias, 0.0, 1.0);
      }
    }
  }

  Matrix merged(out.rows() + n_new, d);
  merged.topRows(out.rows()) = out.features;
  merged.bottomRows(n_new) = synthetic;
  out.features = std::move(merged);
  out.labels.insert(out.labels.end(), n_new, request.minority_label);
  return out;
}

}  // namespace

std::vector<int> knn_same_class(const Matrix& points, int query_index, int k) {
  const int m = static_cast<int>(points.rows());
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k >= m) throw std::invalid_argument("k must be smaller than the row count");
  if (query_index < 0 || query_index >= m)
    throw std::invalid_argument("query index out of range");

  std::vector<std::pair<double, int>> dist;
  dist.reserve(m - 1);
  for (int j = 0; j < m; ++j) {
    if (j == query_index) continue;
    dist.emplace_back((points.row(query_index) - points.row(j)).squaredNorm(), j);
  }
  // pair ordering breaks distance ties by lower index
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  std::vector<int> out(k);
  for (int j = 0; j < k; ++j) out[j] = dist[j].second;
  return out;
}

Dataset smote(const ResampleRequest& request) { return oversample(request, false, 0.0); }

Dataset adasyn(const ResampleRequest& request, double bias_scale) {
  if (bias_scale < 0.0) throw std::invalid_argument("bias_scale must be non-negative");
  return oversample(request, true, bias_scale);
}

Dataset undersample_majority(const Dataset& dataset, std::uint64_t seed) {
  long ones = 0;
  for (int v : dataset.labels) ones += v;
  const long zeros = static_cast<long>(dataset.labels.size()) - ones;
  if (ones == 0 || zeros == 0)
    throw std::invalid_argument("undersampling needs both classes present");

  const int minority = ones < zeros ? 1 : 0;  // ties: keep 1 as minority
  const int majority = 1 - minority;
  std::vector<int> minority_idx, majority_idx;
  for (int i = 0; i < dataset.rows(); ++i) {
    (dataset.labels[i] == minority ? minority_idx : majority_idx).push_back(i);
  }

  Rng rng = make_rng(seed);
  std::vector<int> kept;
  kept.reserve(minority_idx.size());
  std::sample(majority_idx.begin(), majority_idx.end(), std::back_inserter(kept),
              minority_idx.size(), rng);

  std::vector<int> all = minority_idx;
  all.insert(all.end(), kept.begin(), kept.end());
  std::shuffle(all.begin(), all.end(), rng);
  (void)majority;
  return dataset.select_rows(all);
}

}  // namespace tabsynth
