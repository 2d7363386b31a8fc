#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "that/criteria.hpp"
#include "that/schema.hpp"

namespace that {

/// Weighted single-pass Gaussian estimator (Welford update) plus range.
struct GaussianStats {
  double weight = 0;
  double mean = 0;
  double m2 = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double value, double w);
  double variance() const { return weight > 0 ? m2 / weight : 0.0; }
  double stddev() const;
  /// Estimated probability mass at or below x; point mass at the mean when
  /// the variance is degenerate.
  double cdf_below(double x) const;
};

/// Candidate split test: a numeric threshold (value <= threshold goes to the
/// first part) or a nominal multiway expansion (one part per value).
struct SplitTest {
  bool nominal = false;
  double threshold = 0;

  static SplitTest numeric_at(double t) { return SplitTest{false, t}; }
  static SplitTest multiway() { return SplitTest{true, 0}; }
};

struct NumericSplitSuggestion {
  double threshold = 0;
  std::vector<double> left;   // estimated class mass with value <= threshold
  std::vector<double> right;  // remaining class mass
};

struct SplitCandidate {
  int attribute = -1;
  SplitTest test;
  double merit = 0;
  std::vector<std::vector<double>> parts;  // per-part class mass
};

/// Per-leaf sufficient statistics: class counts plus one observer per
/// (attribute, class) pair - Gaussian for numeric attributes, value counts
/// for nominal ones. Memory is constant in the number of instances seen.
class SufficientStats {
 public:
  SufficientStats() = default;
  explicit SufficientStats(const Schema& schema);

  void add(const Instance& inst, double weight);

  std::size_t n_classes() const { return class_counts_.size(); }
  std::size_t n_attributes() const { return attrs_.size(); }
  const std::vector<double>& class_counts() const { return class_counts_; }
  void seed_class_counts(std::vector<double> counts);  // split-child initialization
  double total_weight() const { return total_; }

  bool pure() const;       // at most one class carries mass
  int majority() const;    // ties break to the lowest label index; empty -> 0
  std::vector<double> distribution() const;  // empty -> uniform

  const GaussianStats& gaussian(std::size_t attr, std::size_t cls) const;
  /// Per-value class-count matrix [value][class] of a nominal attribute.
  std::vector<std::vector<double>> nominal_partition(std::size_t attr) const;

  /// k equal-width interior thresholds over the observed range with
  /// Gaussian-estimated per-side class masses. Empty when no class has
  /// weight >= 2 or the observed range is degenerate.
  std::vector<NumericSplitSuggestion> suggest_numeric_splits(std::size_t attr, int k) const;

  /// Best candidate for one attribute under the criterion, if any.
  std::optional<SplitCandidate> best_candidate(std::size_t attr, SplitCriterion criterion,
                                               int numeric_candidates) const;

 private:
  struct AttrInfo {
    bool numeric = true;
    int n_values = 0;
  };

  void check_attr(std::size_t attr) const;

  std::vector<AttrInfo> attrs_;
  std::vector<double> class_counts_;
  std::vector<std::vector<GaussianStats>> gauss_;      // [attr][class]
  std::vector<std::vector<std::vector<double>>> nom_;  // [attr][class][value]
  double total_ = 0;
};

/// Impurity decrease of applying `test` on `attribute` given the observed
/// statistics. Throws on an unknown attribute index.
double split_merit(const SufficientStats& stats, int attribute, const SplitTest& test,
                   SplitCriterion criterion);

}  // namespace that
