#include "bilanz/ontology.hpp"

#include <algorithm>

#include "bilanz/errors.hpp"

namespace bilanz {

void OntologyTree::add_class(OntClass cls) {
  if (cls.id.empty()) throw OntologyError("class id must be non-empty");
  if (classes_.count(cls.id)) throw OntologyError("duplicate class id '" + cls.id + "'");
  if (cls.parent) {
    if (*cls.parent == cls.id) throw OntologyError("class '" + cls.id + "' cannot parent itself");
    if (!classes_.count(*cls.parent))
      throw OntologyError("class '" + cls.id + "' names unknown parent '" + *cls.parent + "'");
  } else {
    if (!root_.empty())
      throw OntologyError("second root '" + cls.id + "' (root is '" + root_ + "')");
    root_ = cls.id;
  }
  for (const std::string& other : cls.disjoint_with) {
    if (other == cls.id) throw OntologyError("class '" + cls.id + "' cannot be disjoint with itself");
    if (!classes_.count(other))
      throw OntologyError("class '" + cls.id + "' disjoint with unknown class '" + other + "'");
    classes_[other].disjoint_with.insert(cls.id);  // keep the relation symmetric
  }
  classes_.emplace(cls.id, std::move(cls));
}

void OntologyTree::add_disjoint(const std::string& a, const std::string& b) {
  if (a == b) throw OntologyError("disjointness is irreflexive ('" + a + "')");
  if (!classes_.count(a) || !classes_.count(b))
    throw OntologyError("disjoint pair names unknown class ('" + a + "', '" + b + "')");
  classes_[a].disjoint_with.insert(b);
  classes_[b].disjoint_with.insert(a);
}

void OntologyTree::add_slot(Slot slot) {
  if (slot.name.empty()) throw OntologyError("slot name must be non-empty");
  if (!classes_.count(slot.domain))
    throw OntologyError("slot '" + slot.name + "' names unknown domain '" + slot.domain + "'");
  for (const Slot& existing : slots_)
    if (existing.name == slot.name && existing.domain == slot.domain)
      throw OntologyError("duplicate slot '" + slot.name + "' on '" + slot.domain + "'");
  slots_.push_back(std::move(slot));
}

void OntologyTree::check_slot_value(const Instance& instance, const std::string& slot_name,
                                    const SlotValue* value) const {
  const Slot* slot = find_slot(slot_name, instance.of_class);
  if (!slot)
    throw OntologyError("instance '" + instance.id + "' uses unknown slot '" + slot_name + "'");

  if (value) {
    bool numeric = std::holds_alternative<double>(*value);
    if (slot->range == SlotRange::Numeric && !numeric)
      throw OntologyError("slot '" + slot_name + "' on '" + instance.id + "' expects a number");
    if (slot->range != SlotRange::Numeric && numeric)
      throw OntologyError("slot '" + slot_name + "' on '" + instance.id + "' expects text");
    if (slot->range == SlotRange::ClassRef && !classes_.count(std::get<std::string>(*value)))
      throw OntologyError("slot '" + slot_name + "' on '" + instance.id +
                          "' references unknown class '" + std::get<std::string>(*value) + "'");
  }

  for (const Facet& facet : slot->facets) {
    switch (facet.kind) {
      case FacetKind::Required:
        if (!value)
          throw OntologyError("required slot '" + slot_name + "' absent on instance '" +
                              instance.id + "'");
        break;
      case FacetKind::NonNegative:
        if (value && std::holds_alternative<double>(*value) && std::get<double>(*value) < 0.0)
          throw OntologyError("slot '" + slot_name + "' on '" + instance.id +
                              "' must be non-negative");
        break;
      case FacetKind::MaxCardinality:
        if (value && facet.limit < 1)
          throw OntologyError("slot '" + slot_name + "' on '" + instance.id +
                              "' exceeds max cardinality " + std::to_string(facet.limit));
        break;
    }
  }
}

void OntologyTree::add_instance(Instance instance) {
  if (instance.id.empty()) throw OntologyError("instance id must be non-empty");
  if (instances_.count(instance.id))
    throw OntologyError("duplicate instance id '" + instance.id + "'");
  if (!classes_.count(instance.of_class))
    throw OntologyError("instance '" + instance.id + "' of unknown class '" + instance.of_class +
                        "'");

  // Provided values must match a visible slot; visible slots with a Required
  // facet must be provided.
  for (const auto& [name, value] : instance.slot_values)
    check_slot_value(instance, name, &value);
  for (const Slot& slot : slots_) {
    if (!is_descendant_of(instance.of_class, slot.domain)) continue;
    if (instance.slot_values.count(slot.name)) continue;
    check_slot_value(instance, slot.name, nullptr);
  }

  instances_.emplace(instance.id, std::move(instance));
}

bool OntologyTree::has_class(const std::string& id) const { return classes_.count(id) != 0; }

const OntClass& OntologyTree::cls(const std::string& id) const {
  auto it = classes_.find(id);
  if (it == classes_.end()) throw OntologyError("unknown class '" + id + "'");
  return it->second;
}

const std::string& OntologyTree::root() const {
  if (root_.empty()) throw OntologyError("tree has no root");
  return root_;
}

std::vector<const Slot*> OntologyTree::slots_of(const std::string& class_id) const {
  std::vector<const Slot*> out;
  for (const Slot& slot : slots_)
    if (slot.domain == class_id) out.push_back(&slot);
  return out;
}

const Slot* OntologyTree::find_slot(const std::string& name, const std::string& class_id) const {
  // Walk up from class_id; the nearest domain wins.
  const std::string* current = &class_id;
  while (true) {
    auto it = classes_.find(*current);
    if (it == classes_.end()) return nullptr;
    for (const Slot& slot : slots_)
      if (slot.name == name && slot.domain == *current) return &slot;
    if (!it->second.parent) return nullptr;
    current = &*it->second.parent;
  }
}

bool OntologyTree::is_descendant_of(const std::string& id, const std::string& ancestor) const {
  const std::string* current = &id;
  while (true) {
    if (*current == ancestor) return true;
    auto it = classes_.find(*current);
    if (it == classes_.end() || !it->second.parent) return false;
    current = &*it->second.parent;
  }
}

std::vector<const Instance*> query_subtree(const OntologyTree& tree, const std::string& class_id) {
  if (!tree.has_class(class_id)) throw OntologyError("unknown class '" + class_id + "'");
  std::vector<const Instance*> out;
  for (const auto& [id, instance] : tree.instances())
    if (tree.is_descendant_of(instance.of_class, class_id)) out.push_back(&instance);
  return out;  // map iteration keeps instance ids sorted
}

}  // namespace bilanz
