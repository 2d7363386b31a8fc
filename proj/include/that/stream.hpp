#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "that/schema.hpp"

namespace that {

/// Single-pass source of labeled instances. Yielded instances are
/// returned by value and never mutated by the source afterwards.
class StreamSource {
 public:
  virtual ~StreamSource() = default;
  virtual const Schema& schema() const = 0;
  virtual std::optional<Instance> next() = 0;
};

/// In-memory stream, replayable via reset().
class VectorStream final : public StreamSource {
 public:
  VectorStream(Schema schema, std::vector<Instance> instances)
      : schema_(std::move(schema)), instances_(std::move(instances)) {}

  const Schema& schema() const override { return schema_; }

  std::optional<Instance> next() override {
    if (pos_ >= instances_.size()) return std::nullopt;
    return instances_[pos_++];
  }

  void reset() { pos_ = 0; }
  std::size_t size() const { return instances_.size(); }
  const std::vector<Instance>& instances() const { return instances_; }

 private:
  Schema schema_;
  std::vector<Instance> instances_;
  std::size_t pos_ = 0;
};

/// Drains a stream into memory.
std::vector<Instance> drain(StreamSource& source);

}  // namespace that
