#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "that/evaluation.hpp"
#include "that/hoeffding_tree.hpp"
#include "that/stream.hpp"

namespace that {

/// Attributes, in schema order, that no internal node of the tree tests yet.
std::vector<int> build_attribute_queue(const HoeffdingTree& tree);

struct TransferConfig {
  /// Replay the whole stream once per queued attribute, grafting on every
  /// misprediction and never updating counters. Off by default: the single
  /// pass dequeues one attribute per graft and keeps ordinary adaptive
  /// training for every instance that does not graft.
  bool literal_replay = false;
};

struct TransferStats {
  std::uint64_t instances = 0;      // instance presentations (replays count each pass)
  std::uint64_t misclassified = 0;  // wrong predictions at presentation time
  std::uint64_t grafts_made = 0;
  std::uint64_t unrepaired = 0;  // wrong predictions seen after the queue ran dry
};

/// Adapts a deep copy of a source tree to a new stream segment. Each trained
/// instance is classified first; a wrong answer consumes the next queued
/// attribute and grafts a test on it at the leaf that answered, while every
/// other instance receives ordinary adaptive training.
class TransferSession final : public Classifier {
 public:
  explicit TransferSession(const HoeffdingTree& source);

  Prediction predict(const Instance& inst) const override { return target_.predict(inst); }
  void train(const Instance& inst) override;

  const HoeffdingTree& target() const { return target_; }
  HoeffdingTree& target() { return target_; }
  const TransferStats& stats() const { return stats_; }
  std::size_t queue_remaining() const { return queue_.size(); }

 private:
  HoeffdingTree target_;
  std::deque<int> queue_;
  TransferStats stats_;
};

struct TransferResult {
  HoeffdingTree target;
  TransferStats stats;
};

/// One-shot adaptation of a copy of `source` over `stream`; the source tree
/// itself is never touched.
TransferResult transfer_train(const HoeffdingTree& source, StreamSource& stream,
                              const TransferConfig& config = {});

struct ChainSegment {
  EvalResult eval;
  TransferStats stats;  // all zero for the first segment (no transfer stage)
};

struct ChainResult {
  HoeffdingTree tree;  // state after the last segment
  std::vector<ChainSegment> segments;
};

/// Trains a fresh tree on the first segment, then adapts it across each later
/// segment through a TransferSession, evaluating every segment prequentially.
ChainResult transfer_chain(std::span<StreamSource* const> segments, const HtConfig& config,
                           std::size_t window_size = 500, const EvalOptions& options = {});

}  // namespace that
