#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace bilanz {

struct OntClass {
  std::string id;
  std::optional<std::string> comment;
  std::optional<std::string> parent;  // subClassOf; empty only for the root
  std::set<std::string> disjoint_with;
};

enum class SlotRange { Numeric, Text, ClassRef };

enum class FacetKind { Required, NonNegative, MaxCardinality };

/// Constraint on a slot. `limit` is used by MaxCardinality only; a slot value
/// is scalar, so the observed cardinality is 0 or 1.
struct Facet {
  FacetKind kind = FacetKind::Required;
  int limit = 0;

  friend bool operator==(const Facet&, const Facet&) = default;
};

struct Slot {
  std::string name;
  std::string domain;  // class the slot is attached to; applies to descendants
  SlotRange range = SlotRange::Text;
  std::vector<Facet> facets;
};

using SlotValue = std::variant<double, std::string>;

struct Instance {
  std::string id;
  std::string of_class;
  std::map<std::string, SlotValue> slot_values;
};

/// Single-rooted class tree with slots and instances. Mutating operations
/// validate invariants (unique ids, existing parents, facet satisfaction) and
/// throw OntologyError; once built the tree is only read.
class OntologyTree {
 public:
  /// Parentless classes are accepted only while no root exists; a second
  /// parentless class is rejected, which keeps the tree single-rooted and
  /// parent chains acyclic by construction.
  void add_class(OntClass cls);
  /// Marks a and b disjoint (symmetric, irreflexive).
  void add_disjoint(const std::string& a, const std::string& b);
  void add_slot(Slot slot);
  /// Validates slot values against ranges and facets before inserting.
  void add_instance(Instance instance);

  bool has_class(const std::string& id) const;
  const OntClass& cls(const std::string& id) const;
  const std::string& root() const;

  /// Classes keyed by id; iteration order is lexicographic.
  const std::map<std::string, OntClass>& classes() const { return classes_; }
  const std::vector<Slot>& slots() const { return slots_; }
  const std::map<std::string, Instance>& instances() const { return instances_; }

  /// Slots whose domain is exactly `class_id`.
  std::vector<const Slot*> slots_of(const std::string& class_id) const;
  /// Slot visible from `class_id` (domain is the class or an ancestor);
  /// nearest domain wins. Null when no such slot exists.
  const Slot* find_slot(const std::string& name, const std::string& class_id) const;

  /// True when `id` equals `ancestor` or reaches it via parent links.
  bool is_descendant_of(const std::string& id, const std::string& ancestor) const;

 private:
  void check_slot_value(const Instance& instance, const std::string& slot_name,
                        const SlotValue* value) const;

  std::map<std::string, OntClass> classes_;
  std::vector<Slot> slots_;
  std::map<std::string, Instance> instances_;
  std::string root_;
};

/// All instances whose class is `class_id` or a descendant of it, ordered by
/// instance id. This is the data-selection step feeding mining.
/// Throws OntologyError when `class_id` is unknown.
std::vector<const Instance*> query_subtree(const OntologyTree& tree, const std::string& class_id);

}  // namespace bilanz
