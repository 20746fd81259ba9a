#include "bilanz/financial_ontology.hpp"

#include <cctype>
#include <map>

#include "bilanz/errors.hpp"

namespace bilanz {

namespace {

const char* parent_for(Category category) {
  switch (category) {
    case Category::CurrentAsset: return onto::kCurrentAssets;
    case Category::LongTermAsset: return onto::kFixedAssets;
    case Category::CurrentLiability: return onto::kCurrentLiabilities;
    case Category::LongTermLiability: return onto::kLongTermLiabilities;
    case Category::Equity: return onto::kOwnersEquity;
    case Category::Supplemental: return nullptr;  // not a balance-sheet concept
  }
  return nullptr;
}

void add_skeleton(OntologyTree& tree) {
  auto cls = [&](const char* id, const char* parent, const char* comment) {
    OntClass c;
    c.id = id;
    if (parent) c.parent = parent;
    c.comment = comment;
    tree.add_class(std::move(c));
  };
  cls(onto::kRoot, nullptr,
      "Snapshot of a firm's assets, liabilities and owners' equity at a point in time.");
  cls(onto::kAssets, onto::kRoot, "Anything the business owns that has monetary value.");
  cls(onto::kCurrentAssets, onto::kAssets,
      "Assets that can be converted into cash within one calendar year.");
  cls(onto::kFixedAssets, onto::kAssets,
      "Long-term assets such as land, buildings, machinery and vehicles.");
  cls(onto::kLiabilities, onto::kRoot,
      "Claims of creditors against the assets of the business.");
  cls(onto::kCurrentLiabilities, onto::kLiabilities, "Obligations payable within one year.");
  cls(onto::kLongTermLiabilities, onto::kLiabilities,
      "Debts and obligations due more than one year out.");
  cls(onto::kOwnersEquity, onto::kRoot,
      "Initial investment in the business plus retained earnings.");

  tree.add_disjoint(onto::kAssets, onto::kLiabilities);
  tree.add_disjoint(onto::kCurrentAssets, onto::kFixedAssets);
  tree.add_disjoint(onto::kCurrentLiabilities, onto::kLongTermLiabilities);

  tree.add_slot({"amount", onto::kRoot, SlotRange::Numeric, {}});
  tree.add_slot({"statement", onto::kRoot, SlotRange::Text, {}});
  tree.add_slot({"validation", onto::kRoot, SlotRange::Text, {}});
}

struct RatioDef {
  const char* class_id;
  const char* numerator;
  const char* denominator;
  const char* comment;
};

constexpr RatioDef kRatioDefs[] = {
    {"X1_WorkingCapitalToTotalAssets", "WorkingCapital", "TotalAssets",
     "Working capital over total assets."},
    {"X2_RetainedEarningsToTotalAssets", "RetainedEarnings", "TotalAssets",
     "Retained earnings over total assets."},
    {"X3_EbitToTotalAssets", "EBIT", "TotalAssets",
     "Earnings before interest and taxes over total assets."},
    {"X4_MarketValueEquityToTotalLiabilities", "MarketValueEquity", "TotalLiabilities",
     "Market value of equity over book value of total liabilities."},
    {"X5_SalesToTotalAssets", "Sales", "TotalAssets", "Sales over total assets."},
};

void add_ratio_classes(OntologyTree& tree) {
  OntClass ratios;
  ratios.id = onto::kFinancialRatios;
  ratios.parent = onto::kRoot;
  ratios.comment = "Financial ratios; each ratio names its two accounting items.";
  tree.add_class(std::move(ratios));

  for (const RatioDef& def : kRatioDefs) {
    OntClass cls;
    cls.id = def.class_id;
    cls.parent = onto::kFinancialRatios;
    cls.comment = def.comment;
    tree.add_class(std::move(cls));

    tree.add_slot({"numerator", def.class_id, SlotRange::Text, {{FacetKind::Required}}});
    tree.add_slot({"denominator", def.class_id, SlotRange::Text, {{FacetKind::Required}}});

    Instance definition;
    definition.id = std::string(def.class_id) + "_definition";
    definition.of_class = def.class_id;
    definition.slot_values["numerator"] = std::string(def.numerator);
    definition.slot_values["denominator"] = std::string(def.denominator);
    tree.add_instance(std::move(definition));
  }
}

}  // namespace

std::string class_id_from_name(const std::string& name) {
  std::string id;
  bool word_start = true;
  for (char c : name) {
    unsigned char u = static_cast<unsigned char>(c);
    if (!std::isalnum(u)) {
      word_start = true;
      continue;
    }
    id += word_start ? static_cast<char>(std::toupper(u)) : c;
    word_start = false;
  }
  if (!id.empty() && std::isdigit(static_cast<unsigned char>(id.front()))) id.insert(id.begin(), '_');
  return id;
}

std::string statement_tag(const std::string& firm_id, const Period& period) {
  return firm_id + "|" + period.str();
}

OntologyTree build_financial_ontology(const std::vector<OntologyInput>& corpus) {
  OntologyTree tree;
  add_skeleton(tree);

  bool any_content = false;
  for (const OntologyInput& input : corpus)
    if (input.statement && !input.statement->empty()) any_content = true;
  if (!any_content) return tree;  // skeleton-only tree

  add_ratio_classes(tree);

  std::map<std::string, std::string> id_to_name;  // collision-checked name mapping
  for (const OntologyInput& input : corpus) {
    if (!input.statement) continue;
    const FinancialStatement& stmt = *input.statement;

    std::string annotation;
    if (input.validation && !input.validation->all_passed()) {
      for (const std::string& name : input.validation->failed_names()) {
        if (!annotation.empty()) annotation += ",";
        annotation += name;
      }
    }

    std::string firm_part = class_id_from_name(stmt.firm_id());
    if (firm_part.empty()) firm_part = "Firm";
    std::string period_part = stmt.period().str();
    for (char& c : period_part)
      if (c == '-') c = '_';

    for (const LineItem& item : stmt.items()) {
      const char* parent = parent_for(item.category);
      if (!parent) continue;

      std::string class_id = class_id_from_name(item.name);
      if (class_id.empty())
        throw OntologyError("item name '" + item.name + "' yields an empty class id");
      auto [it, inserted] = id_to_name.emplace(class_id, item.name);
      if (!inserted && it->second != item.name)
        throw OntologyError("item names '" + it->second + "' and '" + item.name +
                            "' collide on class id '" + class_id + "'");
      if (!tree.has_class(class_id)) {
        OntClass cls;
        cls.id = class_id;
        cls.parent = parent;
        tree.add_class(std::move(cls));
      } else if (*tree.cls(class_id).parent != parent) {
        throw OntologyError("item '" + item.name + "' recurs under a different category (class '" +
                            class_id + "' is parented under " + *tree.cls(class_id).parent + ")");
      }

      Instance instance;
      instance.id = class_id + "_" + firm_part + "_" + period_part;
      instance.of_class = class_id;
      instance.slot_values["amount"] = item.amount.units();
      instance.slot_values["statement"] = statement_tag(stmt.firm_id(), stmt.period());
      if (!annotation.empty()) instance.slot_values["validation"] = annotation;
      tree.add_instance(std::move(instance));
    }
  }
  return tree;
}

OntologyTree build_financial_ontology(const FinancialStatement& stmt,
                                      const ValidationReport* validation) {
  return build_financial_ontology(std::vector<OntologyInput>{{&stmt, validation}});
}

}  // namespace bilanz
