#pragma once

#include <span>
#include <vector>

namespace that {

enum class SplitCriterion { kInfoGain, kGini };

/// Shannon entropy in bits of a probability vector (0*log2(0) = 0).
/// Probabilities must be non-negative and sum to 1 within 1e-9.
double entropy(std::span<const double> probabilities);

/// Gini impurity 1 - sum(p^2), same preconditions as entropy.
double gini(std::span<const double> probabilities);

double impurity(SplitCriterion criterion, std::span<const double> probabilities);

/// Value range of a criterion over `n_classes` classes: log2(n_classes) for
/// information gain, 1 for Gini.
double criterion_range(SplitCriterion criterion, std::size_t n_classes);

/// epsilon = sqrt( R^2 * ln(1/delta) / (2n) ); delta must lie in (0, 1).
double hoeffding_bound(double range, double delta, double n);

/// Impurity decrease of splitting `parent_counts` into `part_counts`,
/// weighted by part mass; empty parts contribute zero; clamped at 0.
double merit_of_partition(const std::vector<double>& parent_counts,
                          const std::vector<std::vector<double>>& part_counts,
                          SplitCriterion criterion);

}  // namespace that
