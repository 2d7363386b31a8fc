#include "that/hoeffding_tree.hpp"

#include <algorithm>
#include <stdexcept>

#include "that/text.hpp"

namespace that {
namespace {

constexpr double kDeltaFloor = 1e-9;

double clamp_delta(double d) {
  return std::min(std::max(d, kDeltaFloor), 1.0 - kDeltaFloor);
}

}  // namespace

HtConfig HtConfig::clamped() const {
  HtConfig c = *this;
  c.delta = clamp_delta(c.delta);
  c.adwin_delta = clamp_delta(c.adwin_delta);
  if (!(c.tau > 0)) throw std::invalid_argument("HtConfig: tau must be positive");
  if (!(c.grace_period >= 1)) throw std::invalid_argument("HtConfig: grace_period must be >= 1");
  if (c.numeric_candidates < 1)
    throw std::invalid_argument("HtConfig: numeric_candidates must be >= 1");
  if (c.max_depth < 0) throw std::invalid_argument("HtConfig: max_depth must be >= 0");
  if (c.adwin_max_buckets < 1)
    throw std::invalid_argument("HtConfig: adwin_max_buckets must be >= 1");
  return c;
}

HoeffdingTree::HoeffdingTree(Schema schema, HtConfig config)
    : schema_(std::move(schema)), config_(config.clamped()) {
  if (schema_.n_classes() < 2) throw std::invalid_argument("HoeffdingTree: need >= 2 classes");
  root_ = make_leaf(0);
}

HoeffdingTree::HoeffdingTree(const HoeffdingTree& other)
    : schema_(other.schema_),
      config_(other.config_),
      root_(other.root_->clone()),
      splits_(other.splits_),
      resets_(other.resets_),
      cuts_(other.cuts_),
      weight_seen_(other.weight_seen_) {}

HoeffdingTree& HoeffdingTree::operator=(const HoeffdingTree& other) {
  if (this == &other) return *this;
  schema_ = other.schema_;
  config_ = other.config_;
  root_ = other.root_->clone();
  splits_ = other.splits_;
  resets_ = other.resets_;
  cuts_ = other.cuts_;
  weight_seen_ = other.weight_seen_;
  return *this;
}

std::unique_ptr<HoeffdingTree::Node> HoeffdingTree::Node::clone() const {
  auto copy = std::make_unique<Node>();
  copy->leaf = leaf;
  copy->stats = stats;
  copy->split_attribute = split_attribute;
  copy->nominal_split = nominal_split;
  copy->threshold = threshold;
  copy->monitor = monitor;
  copy->depth = depth;
  copy->weight_at_last_check = weight_at_last_check;
  copy->observed_weight = observed_weight;
  copy->fallback_label = fallback_label;
  copy->children.reserve(children.size());
  for (const auto& child : children) copy->children.push_back(child->clone());
  return copy;
}

std::unique_ptr<HoeffdingTree::Node> HoeffdingTree::make_leaf(int depth) const {
  auto node = std::make_unique<Node>();
  node->stats = SufficientStats(schema_);
  node->monitor = make_monitor();
  node->depth = depth;
  return node;
}

Adwin HoeffdingTree::make_monitor() const {
  return config_.adwin_naive ? Adwin::naive(config_.adwin_delta)
                             : Adwin::bucketed(config_.adwin_delta, config_.adwin_max_buckets);
}

HoeffdingTree::Node* HoeffdingTree::route_child(const Node& node, const Instance& inst) const {
  const auto attr = static_cast<std::size_t>(node.split_attribute);
  if (node.nominal_split) {
    const auto v = static_cast<long long>(inst.values[attr]);
    if (v < 0 || static_cast<std::size_t>(v) >= node.children.size())
      throw std::invalid_argument("HoeffdingTree: nominal value out of range while routing");
    return node.children[static_cast<std::size_t>(v)].get();
  }
  return inst.values[attr] <= node.threshold ? node.children[0].get() : node.children[1].get();
}

const HoeffdingTree::Node* HoeffdingTree::route_to_leaf(const Instance& inst) const {
  const Node* node = root_.get();
  while (!node->leaf) node = route_child(*node, inst);
  return node;
}

Prediction HoeffdingTree::predict(const Instance& inst) const {
  if (inst.values.size() != schema_.n_attributes())
    throw std::invalid_argument("HoeffdingTree: instance arity mismatch");
  const Node* leaf = route_to_leaf(inst);
  if (leaf->stats.total_weight() <= 0) {
    std::vector<double> dist(schema_.n_classes(), 0.0);
    dist[static_cast<std::size_t>(leaf->fallback_label)] = 1.0;
    return Prediction{leaf->fallback_label, std::move(dist)};
  }
  return Prediction{leaf->stats.majority(), leaf->stats.distribution()};
}

void HoeffdingTree::reset_to_leaf(Node* node) {
  node->leaf = true;
  node->stats = SufficientStats(schema_);
  node->split_attribute = -1;
  node->nominal_split = false;
  node->threshold = 0;
  node->children.clear();
  node->monitor = make_monitor();
  node->weight_at_last_check = 0;
  node->observed_weight = 0;
  node->fallback_label = 0;
  ++resets_;
}

void HoeffdingTree::train(const Instance& inst) {
  if (inst.values.size() != schema_.n_attributes())
    throw std::invalid_argument("HoeffdingTree: instance arity mismatch");
  if (inst.label < 0 || static_cast<std::size_t>(inst.label) >= schema_.n_classes())
    throw std::invalid_argument("HoeffdingTree: label out of range");
  weight_seen_ += inst.weight;

  std::vector<Node*> path;
  Node* node = root_.get();
  path.push_back(node);
  while (!node->leaf) {
    node = route_child(*node, inst);
    path.push_back(node);
  }

  const int predicted =
      node->stats.total_weight() > 0 ? node->stats.majority() : node->fallback_label;
  const double err = predicted != inst.label ? 1.0 : 0.0;
  Node* train_leaf = node;
  bool leaf_cut = false;
  bool leaf_degraded = false;
  if (config_.drift_adaptive) {
    for (Node* p : path) {
      // A cut alone only means the window found two regimes; dropping stale
      // data after an improvement is healthy. Rebuild only when the error the
      // monitor now estimates got worse.
      const double before = p->monitor.estimate();
      if (p->monitor.add(err).change) {
        ++cuts_;
        const bool worse = p->monitor.estimate() > before;
        if (p->leaf) {
          // Leaf handling is deferred below: a boundary that moved into the
          // leaf's range is repaired by a split, which the reset would wipe
          // the evidence for, so the split attempt goes first.
          leaf_cut = true;
          leaf_degraded = worse;
        } else if (worse) {
          reset_to_leaf(p);
          train_leaf = p;
          break;
        }
      }
    }
  }

  train_leaf->stats.add(inst, inst.weight);
  train_leaf->observed_weight += inst.weight;
  // A cut at the leaf means its error regime shifted; the usual split cadence
  // would sit on stale routing for up to a grace period, so re-check now.
  maybe_split(train_leaf, leaf_cut);
  if (leaf_degraded && train_leaf->leaf) reset_to_leaf(train_leaf);
}

void HoeffdingTree::maybe_split(Node* leaf, bool ignore_grace) {
  if (config_.max_depth > 0 && leaf->depth >= config_.max_depth) return;
  if (!ignore_grace &&
      leaf->observed_weight - leaf->weight_at_last_check < config_.grace_period)
    return;
  leaf->weight_at_last_check = leaf->observed_weight;
  if (leaf->stats.pure()) return;

  std::optional<SplitCandidate> best;
  double second_merit = 0;  // merit of declining to split
  for (std::size_t a = 0; a < schema_.n_attributes(); ++a) {
    auto cand = leaf->stats.best_candidate(a, config_.criterion, config_.numeric_candidates);
    if (!cand) continue;
    if (!best || cand->merit > best->merit) {
      if (best) second_merit = std::max(second_merit, best->merit);
      best = std::move(cand);
    } else {
      second_merit = std::max(second_merit, cand->merit);
    }
  }
  if (!best || !(best->merit > 0)) return;

  const double range = criterion_range(config_.criterion, schema_.n_classes());
  const double eps = hoeffding_bound(range, config_.delta, leaf->observed_weight);
  if (best->merit - second_merit > eps || eps < config_.tau) do_split(leaf, *best);
}

void HoeffdingTree::do_split(Node* leaf, const SplitCandidate& candidate) {
  leaf->leaf = false;
  leaf->split_attribute = candidate.attribute;
  leaf->nominal_split = candidate.test.nominal;
  leaf->threshold = candidate.test.threshold;
  leaf->stats = SufficientStats(schema_);
  leaf->children.clear();
  leaf->children.reserve(candidate.parts.size());
  for (const auto& part : candidate.parts) {
    auto child = make_leaf(leaf->depth + 1);
    std::size_t best = 0;
    for (std::size_t c = 1; c < part.size(); ++c)
      if (part[c] > part[best]) best = c;
    child->fallback_label = static_cast<int>(best);
    leaf->children.push_back(std::move(child));
  }
  ++splits_;
}

void HoeffdingTree::graft(const Instance& inst, int attribute) {
  if (inst.values.size() != schema_.n_attributes())
    throw std::invalid_argument("graft: instance arity mismatch");
  if (attribute < 0 || static_cast<std::size_t>(attribute) >= schema_.n_attributes())
    throw std::invalid_argument("graft: attribute index out of range");
  if (inst.label < 0 || static_cast<std::size_t>(inst.label) >= schema_.n_classes())
    throw std::invalid_argument("graft: label out of range");

  Node* node = root_.get();
  while (!node->leaf) node = route_child(*node, inst);
  const int d = node->depth;

  auto former = std::make_unique<Node>();
  *former = std::move(*node);  // the displaced leaf keeps stats, monitor, prediction
  former->depth = d + 1;

  auto fresh = make_leaf(d + 1);
  std::vector<double> seed(schema_.n_classes(), 0.0);
  seed[inst.label] = 1.0;
  fresh->stats.seed_class_counts(seed);
  fresh->fallback_label = inst.label;

  node->leaf = false;
  node->depth = d;
  node->stats = SufficientStats(schema_);
  node->monitor = make_monitor();
  node->weight_at_last_check = 0;
  node->observed_weight = 0;
  node->split_attribute = attribute;
  node->children.clear();

  const AttributeSpec& spec = schema_.attribute(attribute);
  if (spec.kind == AttributeKind::kNumeric) {
    node->nominal_split = false;
    node->threshold = inst.values[attribute];
    // value <= threshold holds for the grafting instance, so its side is first
    node->children.push_back(std::move(fresh));
    node->children.push_back(std::move(former));
  } else {
    if (spec.values.size() < 2)
      throw std::invalid_argument("graft: nominal attribute needs >= 2 values");
    node->nominal_split = true;
    node->threshold = 0;
    const auto v = static_cast<std::size_t>(inst.values[attribute]);
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      if (i == v) {
        node->children.push_back(std::move(fresh));
      } else {
        auto copy = former->clone();
        copy->depth = node->depth + 1;
        node->children.push_back(std::move(copy));
      }
    }
  }
}

namespace {

template <typename NodeT, typename Fn>
void visit_nodes(const NodeT& node, Fn&& fn) {
  fn(node);
  for (const auto& child : node.children) visit_nodes(*child, fn);
}

}  // namespace

std::size_t HoeffdingTree::node_count() const {
  std::size_t n = 0;
  visit_nodes(*root_, [&](const Node&) { ++n; });
  return n;
}

std::size_t HoeffdingTree::leaf_count() const {
  std::size_t n = 0;
  visit_nodes(*root_, [&](const Node& node) { n += node.leaf ? 1 : 0; });
  return n;
}

int HoeffdingTree::depth() const {
  int d = 0;
  visit_nodes(*root_, [&](const Node& node) { d = std::max(d, node.depth); });
  return d;
}

std::vector<bool> HoeffdingTree::attributes_in_use() const {
  std::vector<bool> used(schema_.n_attributes(), false);
  visit_nodes(*root_, [&](const Node& node) {
    if (!node.leaf) used[static_cast<std::size_t>(node.split_attribute)] = true;
  });
  return used;
}

void HoeffdingTree::dump(const Node& node, bool include_counters, std::string* out) const {
  out->append(static_cast<std::size_t>(node.depth) * 2, ' ');
  if (node.leaf) {
    out->append("leaf");
    if (include_counters) {
      out->append(" counts=[");
      const auto& counts = node.stats.class_counts();
      for (std::size_t c = 0; c < counts.size(); ++c) {
        if (c) out->push_back(',');
        out->append(format_double(counts[c]));
      }
      out->append("] adwin=");
      out->append(std::to_string(node.monitor.width()));
    }
    out->push_back('\n');
    return;
  }
  out->append("split ");
  out->append(schema_.attribute(static_cast<std::size_t>(node.split_attribute)).name);
  if (!node.nominal_split) {
    out->append(" <= ");
    out->append(format_double(node.threshold));
  }
  if (include_counters) {
    out->append(" adwin=");
    out->append(std::to_string(node.monitor.width()));
  }
  out->push_back('\n');
  for (const auto& child : node.children) dump(*child, include_counters, out);
}

std::string HoeffdingTree::to_text(bool include_counters) const {
  std::string out;
  dump(*root_, include_counters, &out);
  return out;
}

}  // namespace that
