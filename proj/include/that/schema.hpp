#pragma once

#include <string>
#include <vector>

namespace that {

enum class AttributeKind { kNumeric, kNominal };

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::kNumeric;
  std::vector<std::string> values;  // nominal only

  static AttributeSpec numeric(std::string name);
  static AttributeSpec nominal(std::string name, std::vector<std::string> values);

  bool operator==(const AttributeSpec&) const = default;
};

/// Dataset layout: attribute columns in order, class column last.
class Schema {
 public:
  Schema() = default;
  Schema(std::vector<AttributeSpec> attributes, std::vector<std::string> class_labels);

  std::size_t n_attributes() const { return attributes_.size(); }
  std::size_t n_classes() const { return class_labels_.size(); }
  const AttributeSpec& attribute(std::size_t i) const;
  const std::vector<AttributeSpec>& attributes() const { return attributes_; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }

  /// -1 when absent.
  int attribute_index(const std::string& name) const;
  int label_index(const std::string& label) const;
  int nominal_value_index(std::size_t attr, const std::string& value) const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<AttributeSpec> attributes_;
  std::vector<std::string> class_labels_;
};

/// One labeled example. Nominal attribute cells hold the value index.
struct Instance {
  std::vector<double> values;
  int label = 0;
  double weight = 1.0;

  bool operator==(const Instance&) const = default;
};

}  // namespace that
