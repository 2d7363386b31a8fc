#include "that/ozabag.hpp"

#include <algorithm>
#include <stdexcept>

namespace that {

OzaBagEnsemble::OzaBagEnsemble(Schema schema, OzaBagConfig config)
    : schema_(std::move(schema)), config_(config) {
  if (config_.ensemble_size < 1)
    throw std::invalid_argument("OzaBagEnsemble: ensemble_size must be >= 1");
  if (!(config_.lambda > 0)) throw std::invalid_argument("OzaBagEnsemble: lambda must be positive");
  members_.reserve(static_cast<std::size_t>(config_.ensemble_size));
  rngs_.reserve(static_cast<std::size_t>(config_.ensemble_size));
  for (int i = 0; i < config_.ensemble_size; ++i) {
    members_.emplace_back(schema_, config_.tree);
    rngs_.emplace_back(Rng::substream_seed(config_.seed, static_cast<std::uint64_t>(i)));
  }
}

void OzaBagEnsemble::train(const Instance& inst) {
  if (inst.values.size() != schema_.n_attributes())
    throw std::invalid_argument("OzaBagEnsemble: instance arity mismatch");
  const int k = n_members();
  std::vector<double> weights(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    weights[static_cast<std::size_t>(i)] =
        config_.weight_override >= 0
            ? config_.weight_override
            : static_cast<double>(rngs_[static_cast<std::size_t>(i)].poisson(config_.lambda));
  }
#pragma omp parallel for schedule(static) if (config_.parallel)
  for (int i = 0; i < k; ++i) {
    const double w = weights[static_cast<std::size_t>(i)];
    if (w <= 0) continue;
    Instance weighted = inst;
    weighted.weight = inst.weight * w;
    members_[static_cast<std::size_t>(i)].train(weighted);
  }
}

Prediction OzaBagEnsemble::predict(const Instance& inst) const {
  if (inst.values.size() != schema_.n_attributes())
    throw std::invalid_argument("OzaBagEnsemble: instance arity mismatch");
  std::vector<double> votes(schema_.n_classes(), 0.0);
  for (const auto& member : members_) votes[static_cast<std::size_t>(member.predict(inst).label)] += 1.0;
  int best = 0;
  for (std::size_t c = 1; c < votes.size(); ++c)
    if (votes[c] > votes[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  const double k = static_cast<double>(n_members());
  for (double& v : votes) v /= k;
  return Prediction{best, std::move(votes)};
}

}  // namespace that
