#include "tabsynth/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace tabsynth {

namespace {

struct SplitChoice {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();
};

struct Builder {
  const Matrix& features;
  const std::vector<int>& labels;
  const TreeConfig& config;
  // scratch, reused across nodes
  std::vector<int> sorted;

  std::unique_ptr<TreeNode> grow(std::vector<int>& idx, int depth) {
    auto node = std::make_unique<TreeNode>();
    long c1 = 0;
    for (int i : idx) c1 += labels[i];
    const long c0 = static_cast<long>(idx.size()) - c1;
    node->class_counts = {c0, c1};
    node->predicted_label = c1 > c0 ? 1 : 0;  // ties -> 0

    const bool pure = c0 == 0 || c1 == 0;
    const bool too_small = static_cast<int>(idx.size()) < config.min_samples_split;
    const bool at_depth = config.max_depth && depth >= *config.max_depth;
    if (pure || too_small || at_depth) return node;

    SplitChoice best = best_split(idx);
    if (!best.found) return node;  // all features constant on this node

    node->feature_index = best.feature;
    node->threshold = best.threshold;
    std::vector<int> left_idx, right_idx;
    left_idx.reserve(idx.size());
    right_idx.reserve(idx.size());
    for (int i : idx) {
      (features(i, best.feature) < best.threshold ? left_idx : right_idx).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();
    node->left = grow(left_idx, depth + 1);
    node->right = grow(right_idx, depth + 1);
    return node;
  }

  SplitChoice best_split(const std::vector<int>& idx) {
    SplitChoice best;
    const long n = static_cast<long>(idx.size());
    long total1 = 0;
    for (int i : idx) total1 += labels[i];

    for (int f = 0; f < features.cols(); ++f) {
      sorted = idx;
      std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
        return features(a, f) < features(b, f);
      });
      long left1 = 0;
      for (long pos = 1; pos < n; ++pos) {
        left1 += labels[sorted[pos - 1]];
        const double lo = features(sorted[pos - 1], f);
        const double hi = features(sorted[pos], f);
        if (!(hi > lo)) continue;
        const double threshold = lo + (hi - lo) / 2.0;
        if (!(threshold > lo)) continue;  // adjacent doubles: midpoint may not separate
        const long left0 = pos - left1;
        const long right1 = total1 - left1;
        const long right0 = (n - pos) - right1;
        const double weighted =
            (static_cast<double>(pos) * gini(left0, left1) +
             static_cast<double>(n - pos) * gini(right0, right1)) /
            static_cast<double>(n);
        // strict improvement keeps the (lower feature, lower threshold) winner
        if (weighted < best.impurity) {
          best.found = true;
          best.feature = f;
          best.threshold = threshold;
          best.impurity = weighted;
        }
      }
    }
    return best;
  }
};

void export_node(const TreeNode& node, const std::vector<std::string>& names,
                 int depth, std::ostringstream& out) {
  const std::string indent(static_cast<size_t>(depth) * 2, ' ');
  if (node.is_leaf()) {
    out << indent << "leaf: label=" << node.predicted_label << " counts=["
        << node.class_counts[0] << "," << node.class_counts[1] << "]\n";
    return;
  }
  const std::string name = node.feature_index < static_cast<int>(names.size())
                               ? names[node.feature_index]
                               : "f" + std::to_string(node.feature_index);
  out << indent << name << " < " << node.threshold << "\n";
  export_node(*node.left, names, depth + 1, out);
  out << indent << name << " >= " << node.threshold << "\n";
  export_node(*node.right, names, depth + 1, out);
}

}  // namespace

double gini(long count0, long count1) {
  if (count0 < 0 || count1 < 0) throw std::invalid_argument("negative class count");
  const long n = count0 + count1;
  if (n == 0) throw std::invalid_argument("gini of an empty node");
  const double p0 = static_cast<double>(count0) / static_cast<double>(n);
  const double p1 = static_cast<double>(count1) / static_cast<double>(n);
  return 1.0 - p0 * p0 - p1 * p1;
}

std::unique_ptr<TreeNode> fit_tree(const Dataset& dataset, const TreeConfig& config) {
  if (dataset.rows() == 0) throw std::invalid_argument("cannot fit a tree on an empty dataset");
  if (config.min_samples_split < 2)
    throw std::invalid_argument("min_samples_split must be at least 2");
  for (int v : dataset.labels) {
    if (v != 0 && v != 1) throw std::invalid_argument("labels must be binary");
  }
  Builder builder{dataset.features, dataset.labels, config, {}};
  std::vector<int> idx(dataset.rows());
  std::iota(idx.begin(), idx.end(), 0);
  return builder.grow(idx, 0);
}

int predict(const TreeNode& tree, const Eigen::Ref<const Eigen::RowVectorXd>& features) {
  const TreeNode* node = &tree;
  while (!node->is_leaf()) {
    if (node->feature_index >= features.size())
      throw std::invalid_argument("feature vector shorter than training data");
    node = features(node->feature_index) < node->threshold ? node->left.get()
                                                           : node->right.get();
  }
  return node->predicted_label;
}

std::vector<int> predict(const TreeNode& tree, const Matrix& features) {
  std::vector<int> out;
  out.reserve(features.rows());
  for (Eigen::Index i = 0; i < features.rows(); ++i) out.push_back(predict(tree, features.row(i)));
  return out;
}

std::string export_text(const TreeNode& tree, const std::vector<std::string>& feature_names) {
  std::ostringstream out;
  export_node(tree, feature_names, 0, out);
  return out.str();
}

}  // namespace tabsynth
