#include "that/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "that/text.hpp"

namespace that {
namespace {

std::string expected_header(const Schema& schema) {
  std::string h;
  for (const auto& a : schema.attributes()) {
    h += a.name;
    h += ',';
  }
  h += "class";
  return h;
}

void split_fields(const std::string& row, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t start = 0;
  while (true) {
    std::size_t comma = row.find(',', start);
    if (comma == std::string::npos) {
      out.emplace_back(row.data() + start, row.size() - start);
      return;
    }
    out.emplace_back(row.data() + start, comma - start);
    start = comma + 1;
  }
}

[[noreturn]] void fail(std::uint64_t line, const std::string& what) {
  throw std::runtime_error("csv line " + std::to_string(line) + ": " + what);
}

}  // namespace

CsvStream::CsvStream(std::istream& in, Schema schema) : in_(&in), schema_(std::move(schema)) {
  read_header();
}

CsvStream::CsvStream(std::unique_ptr<std::istream> owned, Schema schema)
    : owned_(std::move(owned)), in_(owned_.get()), schema_(std::move(schema)) {
  read_header();
}

std::unique_ptr<CsvStream> CsvStream::open(const std::string& path, Schema schema) {
  auto file = std::make_unique<std::ifstream>(path);
  if (!*file) throw std::runtime_error("cannot open '" + path + "'");
  return std::unique_ptr<CsvStream>(new CsvStream(std::move(file), std::move(schema)));
}

void CsvStream::read_header() {
  std::string header;
  if (!std::getline(*in_, header)) fail(1, "missing header row");
  ++line_;
  const std::string want = expected_header(schema_);
  if (header != want) fail(1, "header mismatch: expected '" + want + "', got '" + header + "'");
}

std::optional<Instance> CsvStream::next() {
  std::string row;
  if (!std::getline(*in_, row)) return std::nullopt;
  ++line_;
  if (row.empty() && in_->peek() == std::char_traits<char>::eof()) return std::nullopt;

  std::vector<std::string_view> fields;
  split_fields(row, fields);
  const std::size_t want = schema_.n_attributes() + 1;
  if (fields.size() != want)
    fail(line_, "expected " + std::to_string(want) + " fields, got " + std::to_string(fields.size()));

  Instance inst;
  inst.values.resize(schema_.n_attributes());
  for (std::size_t i = 0; i < schema_.n_attributes(); ++i) {
    const AttributeSpec& attr = schema_.attribute(i);
    if (attr.kind == AttributeKind::kNumeric) {
      try {
        inst.values[i] = parse_double(fields[i]);
      } catch (const std::invalid_argument&) {
        fail(line_, "attribute '" + attr.name + "': not a number: '" + std::string(fields[i]) + "'");
      }
    } else {
      int idx = schema_.nominal_value_index(i, std::string(fields[i]));
      if (idx < 0)
        fail(line_, "attribute '" + attr.name + "': unknown value '" + std::string(fields[i]) + "'");
      inst.values[i] = static_cast<double>(idx);
    }
  }
  int label = schema_.label_index(std::string(fields.back()));
  if (label < 0) fail(line_, "unknown class label '" + std::string(fields.back()) + "'");
  inst.label = label;
  return inst;
}

std::unique_ptr<StreamSource> parse_csv_stream(std::istream& in, const Schema& schema) {
  return std::make_unique<CsvStream>(in, schema);
}

void write_csv_header(const Schema& schema, std::ostream& out) {
  out << expected_header(schema) << '\n';
}

void write_csv_row(const Instance& inst, const Schema& schema, std::ostream& out) {
  if (inst.values.size() != schema.n_attributes())
    throw std::invalid_argument("write_csv_row: instance arity does not match schema");
  for (std::size_t i = 0; i < inst.values.size(); ++i) {
    const AttributeSpec& attr = schema.attribute(i);
    if (attr.kind == AttributeKind::kNumeric) {
      out << format_double(inst.values[i]);
    } else {
      auto v = static_cast<std::size_t>(inst.values[i]);
      if (v >= attr.values.size())
        throw std::invalid_argument("write_csv_row: nominal index out of range for '" + attr.name + "'");
      out << attr.values[v];
    }
    out << ',';
  }
  const auto& labels = schema.class_labels();
  if (inst.label < 0 || static_cast<std::size_t>(inst.label) >= labels.size())
    throw std::invalid_argument("write_csv_row: label index out of range");
  out << labels[inst.label] << '\n';
}

void write_csv_stream(std::span<const Instance> instances, const Schema& schema, std::ostream& out) {
  write_csv_header(schema, out);
  for (const Instance& inst : instances) write_csv_row(inst, schema, out);
}

std::vector<Instance> drain(StreamSource& source) {
  std::vector<Instance> out;
  while (auto inst = source.next()) out.push_back(std::move(*inst));
  return out;
}

}  // namespace that
