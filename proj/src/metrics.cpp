#include "tabsynth/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace tabsynth {

ClassificationReport classification_metrics(const std::vector<int>& predictions,
                                            const std::vector<int>& truth) {
  if (predictions.size() != truth.size())
    throw std::invalid_argument("prediction/truth length mismatch");
  if (predictions.empty()) throw std::invalid_argument("empty prediction vector");

  ClassificationReport r;
  for (size_t i = 0; i < predictions.size(); ++i) {
    const int p = predictions[i], t = truth[i];
    if ((p != 0 && p != 1) || (t != 0 && t != 1))
      throw std::invalid_argument("labels must be binary");
    if (p == 1 && t == 1) ++r.tp;
    else if (p == 1 && t == 0) ++r.fp;
    else if (p == 0 && t == 0) ++r.tn;
    else ++r.fn;
  }
  const double n = static_cast<double>(predictions.size());
  r.accuracy = static_cast<double>(r.tp + r.tn) / n;
  if (r.tp + r.fp > 0) {
    r.precision = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp);
  } else {
    r.precision = 0.0;
    r.precision_defined = false;
  }
  if (r.tp + r.fn > 0) {
    r.recall = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
  } else {
    r.recall = 0.0;
    r.recall_defined = false;
  }
  const double pos = static_cast<double>(r.tp + r.fn);
  r.label_proportion = {100.0 * (n - pos) / n, 100.0 * pos / n};
  return r;
}

std::array<double, 2> label_proportion(const Dataset& dataset) {
  if (dataset.rows() == 0) throw std::invalid_argument("empty dataset");
  double ones = 0;
  for (int v : dataset.labels) ones += v;
  const double n = static_cast<double>(dataset.rows());
  return {100.0 * (n - ones) / n, 100.0 * ones / n};
}

std::pair<double, double> mean_nn_distance(const Dataset& synthetic,
                                           const Dataset& original) {
  if (original.rows() == 0) throw std::invalid_argument("empty original dataset");
  if (synthetic.cols() != original.cols())
    throw std::invalid_argument("column count mismatch");

  const Matrix s = synthetic.with_label_column();
  const Matrix o = original.with_label_column();
  std::vector<double> dists(s.rows());
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < o.rows(); ++j) {
      const double d2 = (s.row(i) - o.row(j)).squaredNorm();
      if (d2 < best) best = d2;
    }
    dists[static_cast<size_t>(i)] = std::sqrt(best);
  }
  return mean_and_stddev(dists);
}

std::pair<double, double> mean_and_stddev(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("empty value list");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

AggregateStats aggregate(const std::vector<ClassificationReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("cannot aggregate zero reports");
  std::vector<double> acc, prec, rec;
  for (const auto& r : reports) {
    acc.push_back(r.accuracy);
    prec.push_back(r.precision);
    rec.push_back(r.recall);
  }
  AggregateStats s;
  s.n = static_cast<int>(reports.size());
  s.single_sample = s.n == 1;
  std::tie(s.accuracy_mean, s.accuracy_std) = mean_and_stddev(acc);
  std::tie(s.precision_mean, s.precision_std) = mean_and_stddev(prec);
  std::tie(s.recall_mean, s.recall_std) = mean_and_stddev(rec);
  return s;
}

}  // namespace tabsynth
