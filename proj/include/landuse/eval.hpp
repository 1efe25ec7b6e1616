#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "landuse/core.hpp"

namespace landuse {

/// Rows are truth, columns are predictions, over a class list fixed up front.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<std::string> classes);

  /// Throws std::invalid_argument for a label outside the class list.
  void add(const std::string& truth, const std::string& predicted);

  const std::vector<std::string>& classes() const { return classes_; }
  long count(std::size_t truth, std::size_t predicted) const { return counts_[truth][predicted]; }
  long total() const { return total_; }
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<std::string> classes_;
  std::vector<std::vector<long>> counts_;
  long total_ = 0;
};

ConfusionMatrix confusion(std::span<const std::pair<std::string, std::string>> pairs, std::vector<std::string> classes);

struct ClassMetrics {
  std::string name;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long support = 0;
};

struct MetricsOptions {
  /// Average the NonClassified column in with the real classes.
  bool include_nonclassified = false;
  /// Support-weighted instead of plain means.
  bool weighted = false;
};

struct MetricsReport {
  std::vector<ClassMetrics> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  long total = 0;
};

/// Per-class precision/recall/F1 (0 on a zero denominator), their mean and
/// accuracy = trace / total. Throws std::invalid_argument when total is 0.
MetricsReport metrics(const ConfusionMatrix& cm, const MetricsOptions& options = {});

std::vector<std::string> parent_class_names();
std::vector<std::string> sub_class_names();

}  // namespace landuse
