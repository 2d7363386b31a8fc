#pragma once

#include <vector>

#include "that/schema.hpp"

namespace that {

struct Prediction {
  int label = 0;
  std::vector<double> distribution;
};

/// Incremental stream learner: predict, then learn, one instance at a time.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual Prediction predict(const Instance& inst) const = 0;
  virtual void train(const Instance& inst) = 0;
};

}  // namespace that
