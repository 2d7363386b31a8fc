#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "that/classifier.hpp"
#include "that/stream.hpp"

namespace that {

/// Binary confusion tallies; the positive class is label 0.
struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  void add(int predicted, int actual);
  void remove(int predicted, int actual);  // drop a previously added outcome
  std::uint64_t total() const { return tp + tn + fp + fn; }
};

/// (tp + tn) / total. Throws when no outcomes were recorded.
double accuracy(const ConfusionCounts& c);

/// Agreement beyond chance: (accuracy - random_accuracy) / (1 - random_accuracy)
/// with random_accuracy = ((tn+fp)(tn+fn) + (fn+tp)(fp+tp)) / total^2.
/// Missing (not zero) when random_accuracy is degenerate at 1.
std::optional<double> kappa(const ConfusionCounts& c);

struct EvalRecord {
  std::uint64_t instance = 0;  // 1-based position in the stream
  int predicted = 0;
  int actual = 0;
  double win_acc = 0;
  std::optional<double> win_kappa;
  double cum_ms_per_inst = 0;
};

struct EvalSummary {
  std::uint64_t instances = 0;
  std::uint64_t correct = 0;        // exact-match predictions over the whole run
  double overall_accuracy = 0;      // correct / instances
  double mean_window_accuracy = 0;  // mean of per-record windowed accuracy
  double final_window_accuracy = 0;
  std::optional<double> final_window_kappa;
  double total_ms = 0;  // predict+train time only
};

struct EvalResult {
  std::vector<EvalRecord> records;
  EvalSummary summary;
};

struct EvalOptions {
  bool timing = true;  // when false every cum_ms_per_inst is written as zero
};

/// Test-then-train over the whole stream: each instance is predicted, scored
/// into a sliding window of the most recent `window_size` outcomes, then used
/// for training. One record per instance; only predict+train time is measured.
EvalResult prequential_eval(Classifier& model, StreamSource& stream, std::size_t window_size = 500,
                            const EvalOptions& options = {});

/// Test-then-train with cumulative scoring (an unbounded window).
EvalResult interleaved_eval(Classifier& model, StreamSource& stream,
                            const EvalOptions& options = {});

/// Alternates training on `train_chunk` instances (unscored) with scoring
/// `test_chunk` instances (untrained). Records carry global stream positions;
/// the scoring window slides over test outcomes only.
EvalResult holdout_eval(Classifier& model, StreamSource& stream, std::size_t train_chunk,
                        std::size_t test_chunk, std::size_t window_size = 500,
                        const EvalOptions& options = {});

double mean_windowed_accuracy(std::span<const EvalRecord> records);

/// CSV with header `instance,predicted,actual,win_acc,win_kappa,cum_ms_per_inst`;
/// metrics use six decimals, a missing kappa is an empty field.
void write_eval_records(std::ostream& out, std::span<const EvalRecord> records);
void write_eval_records_file(const std::string& path, std::span<const EvalRecord> records);
std::vector<EvalRecord> read_eval_records(std::istream& in);
std::vector<EvalRecord> read_eval_records_file(const std::string& path);

}  // namespace that
