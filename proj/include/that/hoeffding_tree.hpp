#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "that/adwin.hpp"
#include "that/classifier.hpp"
#include "that/criteria.hpp"
#include "that/stats.hpp"

namespace that {

struct HtConfig {
  double delta = 0.2;       // split confidence; clamped into [1e-9, 1 - 1e-9]
  double tau = 0.05;        // tie-break threshold
  double grace_period = 200;  // weight mass between split attempts at a leaf
  SplitCriterion criterion = SplitCriterion::kGini;
  int numeric_candidates = 10;  // thresholds evaluated per numeric attribute
  int max_depth = 0;            // 0 = unbounded

  double adwin_delta = 0.002;  // per-node drift monitor confidence, clamped the same way
  int adwin_max_buckets = 5;
  bool adwin_naive = false;    // exact monitor variant, for cross-checks
  bool drift_adaptive = true;  // false: monitors stay idle and subtrees are never reset

  HtConfig clamped() const;
};

/// Incremental decision tree with per-node drift monitors.
///
/// Training sorts each instance to a leaf, updates the leaf's sufficient
/// statistics, and every `grace_period` of accumulated weight evaluates the
/// best and runner-up split merits; the leaf splits when their gap beats the
/// Hoeffding bound, or the bound has shrunk below `tau`, provided splitting
/// beats not splitting. Every node on the routing path also feeds its 0/1
/// misclassification monitor; when a monitor reports change the node's
/// subtree is replaced by a fresh empty leaf.
class HoeffdingTree final : public Classifier {
 public:
  HoeffdingTree(Schema schema, HtConfig config);

  HoeffdingTree(const HoeffdingTree& other);
  HoeffdingTree& operator=(const HoeffdingTree& other);
  HoeffdingTree(HoeffdingTree&&) noexcept = default;
  HoeffdingTree& operator=(HoeffdingTree&&) noexcept = default;

  Prediction predict(const Instance& inst) const override;
  void train(const Instance& inst) override;

  /// Replaces the leaf the instance reaches with an internal node testing
  /// `attribute`: the instance's branch leads to a fresh leaf holding one
  /// count of the instance's class, the other branch(es) retain the former
  /// leaf's prediction. Used by the transfer stage.
  void graft(const Instance& inst, int attribute);

  const Schema& schema() const { return schema_; }
  const HtConfig& config() const { return config_; }

  std::size_t node_count() const;
  std::size_t leaf_count() const;
  int depth() const;
  std::uint64_t splits_performed() const { return splits_; }
  std::uint64_t drift_resets() const { return resets_; }
  /// Monitor cuts seen during training, including benign (improving) ones
  /// that shrink a window without forcing a rebuild.
  std::uint64_t monitor_cuts() const { return cuts_; }
  double weight_seen() const { return weight_seen_; }

  /// True at index i when attribute i appears in some internal-node test.
  std::vector<bool> attributes_in_use() const;

  /// One node per line, two-space indentation per depth level. Leaves show
  /// class counts, internal nodes their test; every node shows its monitor
  /// window length. `include_counters = false` drops counts and monitor
  /// widths, leaving only the structure.
  std::string to_text(bool include_counters = true) const;

 private:
  struct Node {
    bool leaf = true;
    SufficientStats stats;
    int split_attribute = -1;
    bool nominal_split = false;
    double threshold = 0;
    std::vector<std::unique_ptr<Node>> children;
    Adwin monitor;
    int depth = 0;
    double weight_at_last_check = 0;
    double observed_weight = 0;  // trained mass, excluding any seeded counts
    // What an empty leaf predicts until its own counts arrive; split children
    // inherit their branch's majority so a split never degrades prediction.
    int fallback_label = 0;

    std::unique_ptr<Node> clone() const;
  };

  std::unique_ptr<Node> make_leaf(int depth) const;
  Adwin make_monitor() const;
  Node* route_child(const Node& node, const Instance& inst) const;
  const Node* route_to_leaf(const Instance& inst) const;
  void reset_to_leaf(Node* node);
  void maybe_split(Node* leaf, bool ignore_grace = false);
  void do_split(Node* leaf, const SplitCandidate& candidate);
  void dump(const Node& node, bool include_counters, std::string* out) const;

  Schema schema_;
  HtConfig config_;
  std::unique_ptr<Node> root_;
  std::uint64_t splits_ = 0;
  std::uint64_t resets_ = 0;
  std::uint64_t cuts_ = 0;
  double weight_seen_ = 0;
};

}  // namespace that
