#pragma once

#include <cstdint>
#include <vector>

#include "that/classifier.hpp"
#include "that/hoeffding_tree.hpp"
#include "that/rng.hpp"

namespace that {

struct OzaBagConfig {
  int ensemble_size = 5;
  double lambda = 1.0;  // Poisson rate of the per-member instance weight
  std::uint64_t seed = 0;
  bool parallel = false;  // train members across threads; results are identical either way
  /// Test knob: when >= 0 every member uses this weight instead of drawing
  /// one, leaving the member RNGs untouched (0 = instance skipped, 1 = plain
  /// tree behavior).
  double weight_override = -1;
  // Members are full adaptive trees so the ensemble and the single tree differ
  // only in bagging, keeping comparisons between them about the ensemble.
  HtConfig tree;
};

/// Online bagging over independently seeded trees: each member trains on each
/// instance with a Poisson-drawn weight from its own RNG substream, and
/// prediction is an unweighted majority vote (ties to the lowest label index).
class OzaBagEnsemble final : public Classifier {
 public:
  OzaBagEnsemble(Schema schema, OzaBagConfig config);

  Prediction predict(const Instance& inst) const override;
  void train(const Instance& inst) override;

  const Schema& schema() const { return schema_; }
  const OzaBagConfig& config() const { return config_; }
  int n_members() const { return static_cast<int>(members_.size()); }
  const HoeffdingTree& member(int i) const { return members_.at(static_cast<std::size_t>(i)); }
  HoeffdingTree& member(int i) { return members_.at(static_cast<std::size_t>(i)); }

 private:
  Schema schema_;
  OzaBagConfig config_;
  std::vector<HoeffdingTree> members_;
  std::vector<Rng> rngs_;
};

}  // namespace that
