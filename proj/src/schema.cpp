#include "that/schema.hpp"

#include <stdexcept>
#include <unordered_set>

namespace that {

AttributeSpec AttributeSpec::numeric(std::string name) {
  return AttributeSpec{std::move(name), AttributeKind::kNumeric, {}};
}

AttributeSpec AttributeSpec::nominal(std::string name, std::vector<std::string> values) {
  return AttributeSpec{std::move(name), AttributeKind::kNominal, std::move(values)};
}

Schema::Schema(std::vector<AttributeSpec> attributes, std::vector<std::string> class_labels)
    : attributes_(std::move(attributes)), class_labels_(std::move(class_labels)) {
  if (attributes_.empty()) throw std::invalid_argument("schema: attribute list is empty");
  if (class_labels_.size() < 2) throw std::invalid_argument("schema: need at least two class labels");
  std::unordered_set<std::string> seen;
  for (const auto& a : attributes_) {
    if (a.name.empty()) throw std::invalid_argument("schema: empty attribute name");
    if (!seen.insert(a.name).second)
      throw std::invalid_argument("schema: duplicate attribute name '" + a.name + "'");
    if (a.kind == AttributeKind::kNominal && a.values.empty())
      throw std::invalid_argument("schema: nominal attribute '" + a.name + "' has no values");
  }
  seen.clear();
  for (const auto& l : class_labels_) {
    if (l.empty() || !seen.insert(l).second)
      throw std::invalid_argument("schema: empty or duplicate class label");
  }
}

const AttributeSpec& Schema::attribute(std::size_t i) const {
  if (i >= attributes_.size()) throw std::out_of_range("schema: attribute index out of range");
  return attributes_[i];
}

int Schema::attribute_index(const std::string& name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    if (attributes_[i].name == name) return static_cast<int>(i);
  return -1;
}

int Schema::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < class_labels_.size(); ++i)
    if (class_labels_[i] == label) return static_cast<int>(i);
  return -1;
}

int Schema::nominal_value_index(std::size_t attr, const std::string& value) const {
  const AttributeSpec& a = attribute(attr);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] == value) return static_cast<int>(i);
  return -1;
}

}  // namespace that
