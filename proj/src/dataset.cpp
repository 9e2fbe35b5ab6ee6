#include "tabsynth/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace tabsynth {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void validate_binary_labels(const std::vector<int>& labels) {
  for (int v : labels) {
    if (v != 0 && v != 1) throw std::invalid_argument("labels must be 0 or 1");
  }
}

}  // namespace

Matrix Dataset::with_label_column() const {
  Matrix m(rows(), cols() + 1);
  m.leftCols(cols()) = features;
  for (int i = 0; i < rows(); ++i) m(i, cols()) = static_cast<double>(labels[i]);
  return m;
}

Dataset Dataset::select_rows(const std::vector<int>& indices) const {
  Dataset out;
  out.feature_names = feature_names;
  out.label_name = label_name;
  out.scaling = scaling;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
  out.labels.reserve(indices.size());
  for (size_t i = 0; i < indices.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(indices[i]);
    out.labels.push_back(labels[indices[i]]);
  }
  return out;
}

Dataset dataset_from_matrix(const Matrix& rows_with_label,
                            std::vector<std::string> feature_names,
                            std::string label_name) {
  if (rows_with_label.cols() < 2)
    throw std::invalid_argument("matrix needs at least one feature column plus labels");
  Dataset out;
  const int d = static_cast<int>(rows_with_label.cols()) - 1;
  out.features = rows_with_label.leftCols(d);
  out.labels.reserve(rows_with_label.rows());
  for (Eigen::Index i = 0; i < rows_with_label.rows(); ++i) {
    double v = rows_with_label(i, d);
    int label = static_cast<int>(std::lround(v));
    if (std::abs(v - label) > 1e-12 || (label != 0 && label != 1))
      throw std::invalid_argument("label column must hold binary 0/1 values");
    out.labels.push_back(label);
  }
  if (feature_names.empty()) {
    for (int j = 0; j < d; ++j) feature_names.push_back("f" + std::to_string(j));
  }
  if (static_cast<int>(feature_names.size()) != d)
    throw std::invalid_argument("feature name count does not match columns");
  out.feature_names = std::move(feature_names);
  out.label_name = std::move(label_name);
  return out;
}

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::optional<std::map<std::string, int>>& label_mapping) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::string line;
  long line_no = 0;
  // header (skipping comment lines)
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '#') continue;
    header = split_line(line);
    for (auto& h : header) h = trim(h);
    break;
  }
  if (header.empty()) throw std::runtime_error(path + ": missing header row");

  int label_idx = -1;
  for (size_t j = 0; j < header.size(); ++j) {
    if (header[j] == label_column) label_idx = static_cast<int>(j);
  }
  if (label_idx < 0)
    throw std::runtime_error(path + ": label column '" + label_column + "' not found");

  Dataset out;
  for (size_t j = 0; j < header.size(); ++j) {
    if (static_cast<int>(j) != label_idx) out.feature_names.push_back(header[j]);
  }
  out.label_name = label_column;

  std::vector<double> values;  // row-major feature buffer
  const int d = static_cast<int>(header.size()) - 1;
  long n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_line(line);
    if (cells.size() != header.size())
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(header.size()) + " cells, got " +
                               std::to_string(cells.size()));
    int fj = 0;
    for (size_t j = 0; j < cells.size(); ++j) {
      std::string cell = trim(cells[j]);
      if (static_cast<int>(j) == label_idx) {
        int label;
        if (label_mapping) {
          auto it = label_mapping->find(cell);
          if (it == label_mapping->end())
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": unmappable label '" + cell + "'");
          label = it->second;
        } else {
          double v;
          if (!parse_double(cell, v) || (v != 0.0 && v != 1.0))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": label '" + cell + "' is not 0 or 1");
          label = static_cast<int>(v);
        }
        if (label != 0 && label != 1)
          throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                   ": label must map to 0 or 1");
        out.labels.push_back(label);
      } else {
        double v;
        if (!parse_double(cell, v))
          throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                   ": non-numeric value '" + cell + "' in column '" +
                                   header[j] + "'");
        values.push_back(v);
        ++fj;
      }
    }
    (void)fj;
    ++n;
  }
  out.features = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                          Eigen::RowMajor>>(values.data(), n, d);
  return out;
}

void save_csv(const Dataset& dataset, const std::string& path,
              const std::string& provenance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (!provenance.empty()) out << "# " << provenance << "\n";
  for (size_t j = 0; j < dataset.feature_names.size(); ++j) {
    out << dataset.feature_names[j] << ",";
  }
  out << dataset.label_name << "\n";
  for (int i = 0; i < dataset.rows(); ++i) {
    for (int j = 0; j < dataset.cols(); ++j) {
      out << format_double(dataset.features(i, j)) << ",";
    }
    out << dataset.labels[i] << "\n";
  }
}

Dataset minmax_scale(const Dataset& dataset) {
  if (dataset.rows() < 1) throw std::invalid_argument("cannot scale an empty dataset");
  Dataset out = dataset;
  out.scaling.resize(dataset.cols());
  for (int j = 0; j < dataset.cols(); ++j) {
    const double mn = dataset.features.col(j).minCoeff();
    const double mx = dataset.features.col(j).maxCoeff();
    out.scaling[j] = {mn, mx};
    if (mx > mn) {
      out.features.col(j) = (dataset.features.col(j).array() - mn) / (mx - mn);
    } else {
      out.features.col(j).setZero();
    }
  }
  return out;
}

SplitPair split_sequential(const Dataset& dataset, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train_fraction must lie in (0,1)");
  if (dataset.rows() < 2)
    throw std::invalid_argument("need at least two rows to split");
  const int n = dataset.rows();
  const int n_train = static_cast<int>(std::ceil(train_fraction * n));
  std::vector<int> idx_train(n_train), idx_test(n - n_train);
  for (int i = 0; i < n_train; ++i) idx_train[i] = i;
  for (int i = n_train; i < n; ++i) idx_test[i - n_train] = i;
  return {dataset.select_rows(idx_train), dataset.select_rows(idx_test)};
}

Dataset filter_by_label(const Dataset& dataset, int label) {
  validate_binary_labels(dataset.labels);
  std::vector<int> idx;
  for (int i = 0; i < dataset.rows(); ++i) {
    if (dataset.labels[i] == label) idx.push_back(i);
  }
  return dataset.select_rows(idx);
}

}  // namespace tabsynth
