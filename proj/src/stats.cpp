#include "that/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace that {

void GaussianStats::add(double value, double w) {
  if (!(w > 0)) throw std::invalid_argument("GaussianStats: weight must be positive");
  weight += w;
  const double delta = value - mean;
  mean += (w / weight) * delta;
  m2 += w * delta * (value - mean);
  if (value < min) min = value;
  if (value > max) max = value;
}

double GaussianStats::stddev() const {
  const double v = variance();
  return v > 0 ? std::sqrt(v) : 0.0;
}

double GaussianStats::cdf_below(double x) const {
  if (weight <= 0) return 0.0;
  const double sd = stddev();
  if (sd <= 0) return mean <= x ? 1.0 : 0.0;
  const double z = (x - mean) / sd;
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

SufficientStats::SufficientStats(const Schema& schema) {
  const std::size_t n_cls = schema.n_classes();
  class_counts_.assign(n_cls, 0.0);
  attrs_.resize(schema.n_attributes());
  gauss_.resize(schema.n_attributes());
  nom_.resize(schema.n_attributes());
  for (std::size_t a = 0; a < schema.n_attributes(); ++a) {
    const AttributeSpec& spec = schema.attribute(a);
    if (spec.kind == AttributeKind::kNumeric) {
      attrs_[a] = AttrInfo{true, 0};
      gauss_[a].assign(n_cls, GaussianStats{});
    } else {
      attrs_[a] = AttrInfo{false, static_cast<int>(spec.values.size())};
      nom_[a].assign(n_cls, std::vector<double>(spec.values.size(), 0.0));
    }
  }
}

void SufficientStats::check_attr(std::size_t attr) const {
  if (attr >= attrs_.size()) throw std::out_of_range("sufficient stats: unknown attribute index");
}

void SufficientStats::add(const Instance& inst, double weight) {
  if (inst.values.size() != attrs_.size())
    throw std::invalid_argument("sufficient stats: instance arity mismatch");
  if (inst.label < 0 || static_cast<std::size_t>(inst.label) >= class_counts_.size())
    throw std::invalid_argument("sufficient stats: label out of range");
  class_counts_[inst.label] += weight;
  total_ += weight;
  for (std::size_t a = 0; a < attrs_.size(); ++a) {
    if (attrs_[a].numeric) {
      gauss_[a][inst.label].add(inst.values[a], weight);
    } else {
      const auto v = static_cast<long long>(inst.values[a]);
      if (v < 0 || v >= attrs_[a].n_values)
        throw std::invalid_argument("sufficient stats: nominal value index out of range");
      nom_[a][inst.label][static_cast<std::size_t>(v)] += weight;
    }
  }
}

void SufficientStats::seed_class_counts(std::vector<double> counts) {
  if (counts.size() != class_counts_.size())
    throw std::invalid_argument("sufficient stats: seed count arity mismatch");
  total_ = 0;
  for (double c : counts) total_ += c;
  class_counts_ = std::move(counts);
}

bool SufficientStats::pure() const {
  int populated = 0;
  for (double c : class_counts_)
    if (c > 0) ++populated;
  return populated <= 1;
}

int SufficientStats::majority() const {
  int best = 0;
  double best_count = -1;
  for (std::size_t c = 0; c < class_counts_.size(); ++c) {
    if (class_counts_[c] > best_count) {
      best_count = class_counts_[c];
      best = static_cast<int>(c);
    }
  }
  return best;
}

std::vector<double> SufficientStats::distribution() const {
  std::vector<double> dist(class_counts_.size(), 0.0);
  if (dist.empty()) return dist;
  if (total_ <= 0) {
    const double u = 1.0 / static_cast<double>(dist.size());
    for (double& d : dist) d = u;
    return dist;
  }
  for (std::size_t c = 0; c < dist.size(); ++c) dist[c] = class_counts_[c] / total_;
  return dist;
}

const GaussianStats& SufficientStats::gaussian(std::size_t attr, std::size_t cls) const {
  check_attr(attr);
  if (!attrs_[attr].numeric) throw std::invalid_argument("sufficient stats: attribute is nominal");
  return gauss_[attr].at(cls);
}

std::vector<std::vector<double>> SufficientStats::nominal_partition(std::size_t attr) const {
  check_attr(attr);
  if (attrs_[attr].numeric) throw std::invalid_argument("sufficient stats: attribute is numeric");
  const std::size_t n_values = static_cast<std::size_t>(attrs_[attr].n_values);
  std::vector<std::vector<double>> parts(n_values, std::vector<double>(class_counts_.size(), 0.0));
  for (std::size_t c = 0; c < class_counts_.size(); ++c)
    for (std::size_t v = 0; v < n_values; ++v) parts[v][c] = nom_[attr][c][v];
  return parts;
}

std::vector<NumericSplitSuggestion> SufficientStats::suggest_numeric_splits(std::size_t attr,
                                                                            int k) const {
  check_attr(attr);
  if (attrs_[attr].numeric == false)
    throw std::invalid_argument("sufficient stats: attribute is nominal");
  if (k < 1) throw std::invalid_argument("suggest_numeric_splits: k must be >= 1");

  bool enough = false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const GaussianStats& g : gauss_[attr]) {
    if (g.weight <= 0) continue;
    if (g.weight >= 2) enough = true;
    if (g.min < lo) lo = g.min;
    if (g.max > hi) hi = g.max;
  }
  if (!enough || !(hi > lo)) return {};

  std::vector<NumericSplitSuggestion> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) {
    NumericSplitSuggestion s;
    s.threshold = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(k + 1);
    s.left.resize(class_counts_.size(), 0.0);
    s.right.resize(class_counts_.size(), 0.0);
    for (std::size_t c = 0; c < class_counts_.size(); ++c) {
      const GaussianStats& g = gauss_[attr][c];
      const double left = g.weight * g.cdf_below(s.threshold);
      s.left[c] = left;
      s.right[c] = g.weight - left;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<SplitCandidate> SufficientStats::best_candidate(std::size_t attr,
                                                              SplitCriterion criterion,
                                                              int numeric_candidates) const {
  check_attr(attr);
  if (attrs_[attr].numeric) {
    auto suggestions = suggest_numeric_splits(attr, numeric_candidates);
    std::optional<SplitCandidate> best;
    for (const auto& s : suggestions) {
      std::vector<std::vector<double>> parts{s.left, s.right};
      const double merit = merit_of_partition(class_counts_, parts, criterion);
      if (!best || merit > best->merit) {
        SplitCandidate c;
        c.attribute = static_cast<int>(attr);
        c.test = SplitTest::numeric_at(s.threshold);
        c.merit = merit;
        c.parts = std::move(parts);
        best = std::move(c);
      }
    }
    return best;
  }

  auto parts = nominal_partition(attr);
  int populated = 0;
  for (const auto& part : parts) {
    double mass = 0;
    for (double c : part) mass += c;
    if (mass > 0) ++populated;
  }
  if (populated < 2) return std::nullopt;
  SplitCandidate c;
  c.attribute = static_cast<int>(attr);
  c.test = SplitTest::multiway();
  c.merit = merit_of_partition(class_counts_, parts, criterion);
  c.parts = std::move(parts);
  return c;
}

double split_merit(const SufficientStats& stats, int attribute, const SplitTest& test,
                   SplitCriterion criterion) {
  if (attribute < 0 || static_cast<std::size_t>(attribute) >= stats.n_attributes())
    throw std::out_of_range("split_merit: unknown attribute index");
  const auto attr = static_cast<std::size_t>(attribute);
  if (test.nominal) {
    return merit_of_partition(stats.class_counts(), stats.nominal_partition(attr), criterion);
  }
  std::vector<double> left(stats.n_classes(), 0.0);
  std::vector<double> right(stats.n_classes(), 0.0);
  for (std::size_t c = 0; c < stats.n_classes(); ++c) {
    const GaussianStats& g = stats.gaussian(attr, c);
    const double l = g.weight * g.cdf_below(test.threshold);
    left[c] = l;
    right[c] = g.weight - l;
  }
  return merit_of_partition(stats.class_counts(), {left, right}, criterion);
}

}  // namespace that
