#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tabsynth/dataset.hpp"

namespace tabsynth {

struct TreeConfig {
  std::optional<int> max_depth;  // unlimited when unset
  int min_samples_split = 2;
  std::uint64_t seed = 0;  // reserved; splits are fully deterministic
};

/// CART node. Internal nodes route value < threshold to the left child;
/// leaves predict the majority label of their class counts (ties -> 0).
struct TreeNode {
  int feature_index = -1;
  double threshold = 0.0;
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;
  std::array<long, 2> class_counts{0, 0};
  int predicted_label = 0;

  bool is_leaf() const { return left == nullptr; }
};

/// 1 - p0^2 - p1^2 for the two class counts.
double gini(long count0, long count1);

/// Greedy growth minimizing weighted Gini impurity over candidate thresholds
/// (midpoints between consecutive distinct sorted values). Impurity ties are
/// broken by lower feature index, then lower threshold; growth stops on pure
/// nodes, the depth limit or min_samples_split.
std::unique_ptr<TreeNode> fit_tree(const Dataset& dataset, const TreeConfig& config = {});

int predict(const TreeNode& tree, const Eigen::Ref<const Eigen::RowVectorXd>& features);
std::vector<int> predict(const TreeNode& tree, const Matrix& features);

/// Indented text rendering for inspection.
std::string export_text(const TreeNode& tree,
                        const std::vector<std::string>& feature_names = {});

}  // namespace tabsynth
