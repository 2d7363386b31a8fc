#include "that/criteria.hpp"

#include <cmath>
#include <stdexcept>

namespace that {
namespace {

void check_probabilities(std::span<const double> p) {
  double sum = 0;
  for (double v : p) {
    if (v < 0) throw std::invalid_argument("impurity: negative probability");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("impurity: probabilities must sum to 1");
}

double impurity_of_counts(std::span<const double> counts, double total, SplitCriterion criterion) {
  if (total <= 0) return 0.0;
  if (criterion == SplitCriterion::kGini) {
    double sq = 0;
    for (double c : counts) {
      const double p = c / total;
      sq += p * p;
    }
    return 1.0 - sq;
  }
  double h = 0;
  for (double c : counts) {
    if (c <= 0) continue;
    const double p = c / total;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double entropy(std::span<const double> probabilities) {
  check_probabilities(probabilities);
  double h = 0;
  for (double p : probabilities) {
    if (p <= 0) continue;
    h -= p * std::log2(p);
  }
  return h;
}

double gini(std::span<const double> probabilities) {
  check_probabilities(probabilities);
  double sq = 0;
  for (double p : probabilities) sq += p * p;
  return 1.0 - sq;
}

double impurity(SplitCriterion criterion, std::span<const double> probabilities) {
  return criterion == SplitCriterion::kGini ? gini(probabilities) : entropy(probabilities);
}

double criterion_range(SplitCriterion criterion, std::size_t n_classes) {
  if (n_classes < 2) throw std::invalid_argument("criterion_range: need at least two classes");
  if (criterion == SplitCriterion::kGini) return 1.0;
  return std::log2(static_cast<double>(n_classes));
}

double hoeffding_bound(double range, double delta, double n) {
  if (!(range > 0)) throw std::invalid_argument("hoeffding_bound: range must be positive");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("hoeffding_bound: delta must lie in (0, 1)");
  if (!(n > 0)) throw std::invalid_argument("hoeffding_bound: n must be positive");
  return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * n));
}

double merit_of_partition(const std::vector<double>& parent_counts,
                          const std::vector<std::vector<double>>& part_counts,
                          SplitCriterion criterion) {
  double parent_total = 0;
  for (double c : parent_counts) parent_total += c;
  if (parent_total <= 0) return 0.0;

  double split_total = 0;
  for (const auto& part : part_counts)
    for (double c : part) split_total += c;
  if (split_total <= 0) return 0.0;

  const double before = impurity_of_counts(parent_counts, parent_total, criterion);
  double after = 0;
  for (const auto& part : part_counts) {
    double part_total = 0;
    for (double c : part) part_total += c;
    if (part_total <= 0) continue;
    after += (part_total / split_total) * impurity_of_counts(part, part_total, criterion);
  }
  const double merit = before - after;
  return merit > 0 ? merit : 0.0;
}

}  // namespace that
