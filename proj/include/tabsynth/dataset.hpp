#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tabsynth {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ColumnScale {
  double min = 0.0;
  double max = 0.0;
};

/// Numeric feature matrix plus a binary label column. After minmax_scale()
/// every feature value lies in [0,1] and `scaling` records the per-column
/// (min, max) of the original data.
struct Dataset {
  std::vector<std::string> feature_names;
  std::string label_name = "label";
  Matrix features;           // n x d
  std::vector<int> labels;   // n entries, each 0 or 1
  std::vector<ColumnScale> scaling;  // d entries once scaled, else empty

  int rows() const { return static_cast<int>(features.rows()); }
  int cols() const { return static_cast<int>(features.cols()); }
  bool is_scaled() const { return !scaling.empty(); }

  /// Features with the label appended as the last column (what the GAN and
  /// the nearest-neighbor distance operate on).
  Matrix with_label_column() const;

  /// Row subset in the given index order.
  Dataset select_rows(const std::vector<int>& indices) const;
};

struct SplitPair {
  Dataset train;  // first ceil(fraction * n) rows
  Dataset test;   // remainder, original order preserved
};

/// Builds a Dataset from a matrix whose last column holds binary labels.
Dataset dataset_from_matrix(const Matrix& rows_with_label,
                            std::vector<std::string> feature_names = {},
                            std::string label_name = "label");

/// Parses a comma-separated file with a header row. Lines starting with '#'
/// are skipped. When `label_mapping` is given, the label column may be
/// textual and is translated through it; otherwise it must parse as 0 or 1.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::optional<std::map<std::string, int>>& label_mapping = std::nullopt);

/// Writes the dataset (features + label column) as CSV. A non-empty
/// `provenance` is emitted first as a '#'-prefixed comment line. Values are
/// printed with shortest round-trip precision.
void save_csv(const Dataset& dataset, const std::string& path,
              const std::string& provenance = "");

/// Per-column (x - min) / (max - min); constant columns map to 0.
Dataset minmax_scale(const Dataset& dataset);

/// First ceil(fraction * n) rows become train, the rest test. No shuffling.
SplitPair split_sequential(const Dataset& dataset, double train_fraction = 0.7);

/// Rows carrying the given label, order preserved.
Dataset filter_by_label(const Dataset& dataset, int label);

}  // namespace tabsynth
