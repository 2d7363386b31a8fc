#include "that/transfer.hpp"

#include <stdexcept>
#include <utility>

namespace that {

std::vector<int> build_attribute_queue(const HoeffdingTree& tree) {
  const std::vector<bool> used = tree.attributes_in_use();
  std::vector<int> queue;
  for (std::size_t a = 0; a < used.size(); ++a)
    if (!used[a]) queue.push_back(static_cast<int>(a));
  return queue;
}

TransferSession::TransferSession(const HoeffdingTree& source) : target_(source) {
  for (int a : build_attribute_queue(target_)) queue_.push_back(a);
}

void TransferSession::train(const Instance& inst) {
  ++stats_.instances;
  const Prediction pred = target_.predict(inst);
  if (pred.label != inst.label) {
    ++stats_.misclassified;
    if (!queue_.empty()) {
      target_.graft(inst, queue_.front());
      queue_.pop_front();
      ++stats_.grafts_made;
      return;  // the graft already placed this instance's class count
    }
    ++stats_.unrepaired;
  }
  target_.train(inst);
}

TransferResult transfer_train(const HoeffdingTree& source, StreamSource& stream,
                              const TransferConfig& config) {
  if (!(stream.schema() == source.schema()))
    throw std::invalid_argument("transfer_train: stream schema differs from the source tree's");
  if (!config.literal_replay) {
    TransferSession session(source);
    while (auto inst = stream.next()) session.train(*inst);
    return TransferResult{session.target(), session.stats()};
  }

  TransferResult result{source, TransferStats{}};
  std::vector<Instance> replay;
  while (auto inst = stream.next()) replay.push_back(std::move(*inst));
  for (int attribute : build_attribute_queue(result.target)) {
    for (const Instance& inst : replay) {
      ++result.stats.instances;
      if (result.target.predict(inst).label != inst.label) {
        ++result.stats.misclassified;
        result.target.graft(inst, attribute);
        ++result.stats.grafts_made;
      }
    }
  }
  return result;
}

ChainResult transfer_chain(std::span<StreamSource* const> segments, const HtConfig& config,
                           std::size_t window_size, const EvalOptions& options) {
  if (segments.empty()) throw std::invalid_argument("transfer_chain: no segments");
  for (StreamSource* s : segments) {
    if (s == nullptr) throw std::invalid_argument("transfer_chain: null segment");
    if (!(s->schema() == segments[0]->schema()))
      throw std::invalid_argument("transfer_chain: segments disagree on schema");
  }

  ChainResult result{HoeffdingTree(segments[0]->schema(), config), {}};
  result.segments.reserve(segments.size());

  ChainSegment first;
  first.eval = prequential_eval(result.tree, *segments[0], window_size, options);
  result.segments.push_back(std::move(first));

  for (std::size_t i = 1; i < segments.size(); ++i) {
    TransferSession session(result.tree);
    ChainSegment seg;
    seg.eval = prequential_eval(session, *segments[i], window_size, options);
    seg.stats = session.stats();
    result.tree = std::move(session.target());
    result.segments.push_back(std::move(seg));
  }
  return result;
}

}  // namespace that
