#pragma once

#include <istream>
#include <memory>
#include <span>
#include <string>

#include "that/stream.hpp"

namespace that {

// Dialect: comma separated, '.' decimal point, '\n' line endings, no quoting,
// UTF-8. Header row is the attribute names followed by a final "class" column.
// Numeric cells are written with 17 significant digits so a write/parse round
// trip reproduces the doubles bit-exactly.

/// Streaming reader; holds O(1) state, rows are decoded on demand.
/// The header is consumed and validated on construction.
class CsvStream final : public StreamSource {
 public:
  /// Borrows `in`, which must outlive the stream.
  CsvStream(std::istream& in, Schema schema);

  /// Opens and owns a file. Throws std::runtime_error when unreadable.
  static std::unique_ptr<CsvStream> open(const std::string& path, Schema schema);

  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override;

 private:
  CsvStream(std::unique_ptr<std::istream> owned, Schema schema);
  void read_header();

  std::unique_ptr<std::istream> owned_;
  std::istream* in_ = nullptr;
  Schema schema_;
  std::uint64_t line_ = 0;  // 1-based physical line of the last row read
};

/// Wraps an already-open text stream as an instance source.
std::unique_ptr<StreamSource> parse_csv_stream(std::istream& in, const Schema& schema);

void write_csv_header(const Schema& schema, std::ostream& out);
void write_csv_row(const Instance& inst, const Schema& schema, std::ostream& out);
void write_csv_stream(std::span<const Instance> instances, const Schema& schema, std::ostream& out);

}  // namespace that
