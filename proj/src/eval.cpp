#include "landuse/eval.hpp"

#include <algorithm>
#include <stdexcept>

namespace landuse {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)), counts_(classes_.size(), std::vector<long>(classes_.size(), 0)) {}

std::size_t ConfusionMatrix::index_of(const std::string& label) const {
  auto it = std::find(classes_.begin(), classes_.end(), label);
  if (it == classes_.end()) throw std::invalid_argument("label '" + label + "' is not a declared class");
  return static_cast<std::size_t>(it - classes_.begin());
}

void ConfusionMatrix::add(const std::string& truth, const std::string& predicted) {
  const std::size_t t = index_of(truth);
  const std::size_t p = index_of(predicted);
  ++counts_[t][p];
  ++total_;
}

ConfusionMatrix confusion(std::span<const std::pair<std::string, std::string>> pairs, std::vector<std::string> classes) {
  ConfusionMatrix cm(std::move(classes));
  for (const auto& [truth, predicted] : pairs) cm.add(truth, predicted);
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm, const MetricsOptions& options) {
  if (cm.total() == 0) throw std::invalid_argument("metrics need at least one evaluated pair");
  const std::size_t n = cm.classes().size();
  const auto nonclassified = to_string(ParentClass::NonClassified);

  MetricsReport report;
  report.total = cm.total();
  long trace = 0;
  double weight_total = 0.0;
  std::size_t averaged = 0;
  for (std::size_t i = 0; i < n; ++i) {
    long tp = cm.count(i, i);
    long fp = 0;
    long fn = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      fp += cm.count(k, i);
      fn += cm.count(i, k);
    }
    trace += tp;

    ClassMetrics m;
    m.name = cm.classes()[i];
    m.support = tp + fn;
    m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    report.per_class.push_back(m);

    if (m.name == nonclassified && !options.include_nonclassified) continue;
    const double w = options.weighted ? static_cast<double>(m.support) : 1.0;
    report.macro_precision += w * m.precision;
    report.macro_recall += w * m.recall;
    report.macro_f1 += w * m.f1;
    weight_total += w;
    ++averaged;
  }
  if (averaged > 0 && weight_total > 0.0) {
    report.macro_precision /= weight_total;
    report.macro_recall /= weight_total;
    report.macro_f1 /= weight_total;
  }
  report.accuracy = static_cast<double>(trace) / static_cast<double>(cm.total());
  return report;
}

std::vector<std::string> parent_class_names() {
  std::vector<std::string> names;
  for (auto p : kAllParents) names.emplace_back(to_string(p));
  return names;
}

std::vector<std::string> sub_class_names() {
  std::vector<std::string> names;
  for (auto s : kAllSubClasses) names.emplace_back(to_string(s));
  names.emplace_back(to_string(ParentClass::NonClassified));
  return names;
}

}  // namespace landuse
