// Seeded random input generators for property tests.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bilanz/mining.hpp"
#include "bilanz/ontology.hpp"
#include "bilanz/statement.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t bound) { return rng() % bound; }

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
}

// --- statements ----------------------------------------------------------------

inline bilanz::FinancialStatement random_statement(Rng& rng) {
  using namespace bilanz;
  // Names exercise CSV quoting; none normalize to a reserved total row.
  const char* name_pool[] = {
      "Cash",           "Land, improved",   "Notes \"B\" series", "Prepaid rent",
      "Vendor credit",  "Common stock",     "Office gear",        "Warehouse",
      "Deferred taxes", "Retirement plan",  "Customer deposits",  "Mortgage",
  };
  const Category categories[] = {Category::CurrentAsset, Category::LongTermAsset,
                                 Category::CurrentLiability, Category::LongTermLiability,
                                 Category::Equity, Category::Supplemental};

  std::vector<LineItem> items;
  std::size_t n = pick(rng, 9);
  for (std::size_t i = 0; i < n; ++i) {
    LineItem item;
    item.name = std::string(name_pool[pick(rng, std::size(name_pool))]) + " #" + std::to_string(i);
    item.category = categories[pick(rng, std::size(categories))];
    item.amount = Money::from_cents(static_cast<std::int64_t>(rng() % 2000000001) - 1000000000);
    if (pick(rng, 3) == 0) item.metadata["prior_mo"] = std::to_string(pick(rng, 100)) + "%";
    if (pick(rng, 4) == 0) item.metadata["note"] = "flagged, see \"memo\"";
    items.push_back(std::move(item));
  }

  SupplementalFigures supp;
  if (pick(rng, 2)) supp.sales = Money::from_units(static_cast<std::int64_t>(pick(rng, 100000)));
  if (pick(rng, 2)) supp.ebit = Money::from_cents(static_cast<std::int64_t>(pick(rng, 500000)) - 250000);
  if (pick(rng, 2)) supp.retained_earnings = Money::from_units(static_cast<std::int64_t>(pick(rng, 50000)));
  if (pick(rng, 3) == 0) supp.market_value_equity = Money::from_units(static_cast<std::int64_t>(pick(rng, 90000)));

  DeclaredTotals declared;
  if (pick(rng, 2)) declared.total_assets = Money::from_units(static_cast<std::int64_t>(pick(rng, 1000000)));
  if (pick(rng, 3) == 0) declared.total_current_assets = Money::from_units(static_cast<std::int64_t>(pick(rng, 400000)));
  if (pick(rng, 3) == 0) declared.total_liabilities = Money::from_units(static_cast<std::int64_t>(pick(rng, 300000)));
  if (pick(rng, 3) == 0) declared.equity = Money::from_units(static_cast<std::int64_t>(pick(rng, 200000)));

  Period period{2000 + static_cast<int>(pick(rng, 26)), 1 + static_cast<int>(pick(rng, 12))};
  return FinancialStatement("firm" + std::to_string(pick(rng, 1000)), period, std::move(items),
                            supp, declared);
}

// --- ontology trees -------------------------------------------------------------

inline bilanz::OntologyTree random_tree(Rng& rng) {
  bilanz::OntologyTree tree;
  std::size_t n = 1 + pick(rng, 12);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    bilanz::OntClass cls;
    cls.id = (i == 0 ? "Asset" : "Node" + std::to_string(i));  // "Asset" exercises the snippet shape
    if (i > 0) cls.parent = ids[pick(rng, i)];
    if (pick(rng, 2)) {
      const char* comments[] = {
          "valuable items that is",
          "text with <angle> brackets & ampersands",
          "quotes \"inside\" and 'apostrophes'",
          "  leading and trailing spaces  ",
          "line one\nline two",
      };
      cls.comment = comments[pick(rng, std::size(comments))];
    }
    ids.push_back(cls.id);
    tree.add_class(std::move(cls));
  }
  std::size_t pairs = pick(rng, 3);
  for (std::size_t p = 0; p < pairs; ++p) {
    std::size_t a = pick(rng, n), b = pick(rng, n);
    if (a != b) tree.add_disjoint(ids[a], ids[b]);
  }
  return tree;
}

// --- transactions ----------------------------------------------------------------

/// Random corpus over <= max_items distinct items and <= max_tx transactions.
inline bilanz::TransactionSet random_transactions(Rng& rng, std::size_t max_items = 8,
                                                  std::size_t max_tx = 20) {
  std::vector<bilanz::Item> universe;
  std::size_t item_count = 1 + pick(rng, max_items);
  for (std::size_t i = 0; i < item_count; ++i)
    universe.push_back({"F" + std::to_string(i / 3), "L" + std::to_string(i)});

  bilanz::TransactionSet tx;
  std::size_t tx_count = 1 + pick(rng, max_tx);
  for (std::size_t t = 0; t < tx_count; ++t) {
    bilanz::Transaction transaction;
    transaction.key = {"firm" + std::to_string(t), {2020, 1}};
    for (const bilanz::Item& item : universe)
      if (pick(rng, 2)) transaction.items.push_back(item);
    tx.transactions.push_back(std::move(transaction));  // universe is sorted already
  }
  return tx;
}

}  // namespace gen
