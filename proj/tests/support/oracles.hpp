// Independent reference implementations the real code is checked against.
// Everything here is deliberately brute force and shares no code with the
// library paths under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bilanz/mining.hpp"
#include "bilanz/ontology.hpp"

namespace oracles {

// --- frequent itemsets by subset enumeration ---------------------------------

inline std::size_t count_support(const bilanz::TransactionSet& tx,
                                 const std::vector<bilanz::Item>& items) {
  std::size_t count = 0;
  for (const bilanz::Transaction& t : tx.transactions) {
    bool contained = true;
    for (const bilanz::Item& item : items)
      if (!std::count(t.items.begin(), t.items.end(), item)) {
        contained = false;
        break;
      }
    if (contained) ++count;
  }
  return count;
}

/// Every itemset over the observed items with support >= min_support,
/// sorted by (size, items).
inline std::vector<bilanz::ItemSet> brute_force_frequent(const bilanz::TransactionSet& tx,
                                                         std::size_t min_support) {
  std::set<bilanz::Item> universe;
  for (const bilanz::Transaction& t : tx.transactions) universe.insert(t.items.begin(), t.items.end());
  std::vector<bilanz::Item> items(universe.begin(), universe.end());
  if (items.size() > 20) throw std::logic_error("brute force oracle limited to 20 items");

  std::vector<bilanz::ItemSet> out;
  for (std::uint32_t mask = 1; mask < (1u << items.size()); ++mask) {
    std::vector<bilanz::Item> subset;
    for (std::size_t bit = 0; bit < items.size(); ++bit)
      if (mask & (1u << bit)) subset.push_back(items[bit]);
    std::size_t support = count_support(tx, subset);
    if (support >= min_support) out.push_back({subset, support});
  }
  std::sort(out.begin(), out.end(), [](const bilanz::ItemSet& a, const bilanz::ItemSet& b) {
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return a.items < b.items;
  });
  return out;
}

/// Candidate oracle: all k-subsets of the items seen in l_prev whose every
/// (k-1)-subset is itself in l_prev.
inline std::vector<std::vector<bilanz::Item>> brute_force_candidates(
    const std::vector<bilanz::ItemSet>& l_prev, std::size_t k) {
  std::set<bilanz::Item> universe;
  std::set<std::vector<bilanz::Item>> frequent;
  for (const bilanz::ItemSet& set : l_prev) {
    universe.insert(set.items.begin(), set.items.end());
    frequent.insert(set.items);
  }
  std::vector<bilanz::Item> items(universe.begin(), universe.end());
  if (items.size() > 20) throw std::logic_error("candidate oracle limited to 20 items");

  std::vector<std::vector<bilanz::Item>> out;
  for (std::uint32_t mask = 1; mask < (1u << items.size()); ++mask) {
    std::vector<bilanz::Item> subset;
    for (std::size_t bit = 0; bit < items.size(); ++bit)
      if (mask & (1u << bit)) subset.push_back(items[bit]);
    if (subset.size() != k) continue;
    bool all_frequent = true;
    for (std::size_t drop = 0; drop < subset.size() && all_frequent; ++drop) {
      std::vector<bilanz::Item> sub;
      for (std::size_t i = 0; i < subset.size(); ++i)
        if (i != drop) sub.push_back(subset[i]);
      all_frequent = frequent.count(sub) != 0;
    }
    if (all_frequent) out.push_back(subset);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- clustering ---------------------------------------------------------------

/// Partition as a canonical set of sorted member-index lists, for comparing
/// assignments regardless of label permutation.
inline std::set<std::vector<std::size_t>> canonical_partition(const std::vector<int>& assignment) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < assignment.size(); ++i) groups[assignment[i]].push_back(i);
  std::set<std::vector<std::size_t>> out;
  for (auto& [label, members] : groups) out.insert(members);
  return out;
}

inline double partition_wss(const std::vector<std::vector<double>>& points,
                            const std::vector<int>& assignment, int k) {
  std::size_t dims = points.front().size();
  std::vector<std::vector<double>> sums(k, std::vector<double>(dims, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < dims; ++j) sums[assignment[i]][j] += points[i][j];
    ++counts[assignment[i]];
  }
  double wss = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < dims; ++j) {
      double centroid = sums[assignment[i]][j] / static_cast<double>(counts[assignment[i]]);
      double diff = points[i][j] - centroid;
      wss += diff * diff;
    }
  }
  return wss;
}

/// Exhaustive minimum within-cluster-sum-of-squares partition (k^n search).
inline std::vector<int> optimal_partition(const std::vector<std::vector<double>>& points, int k) {
  std::size_t n = points.size();
  if (std::pow(static_cast<double>(k), static_cast<double>(n)) > 2e6)
    throw std::logic_error("partition oracle limited to small fixtures");
  std::vector<int> assignment(n, 0), best;
  double best_wss = std::numeric_limits<double>::infinity();
  while (true) {
    bool uses_all = true;
    std::vector<bool> used(k, false);
    for (int a : assignment) used[a] = true;
    for (int j = 0; j < k; ++j) uses_all = uses_all && used[j];
    if (uses_all) {
      double wss = partition_wss(points, assignment, k);
      if (wss < best_wss) {
        best_wss = wss;
        best = assignment;
      }
    }
    std::size_t pos = 0;
    while (pos < n && assignment[pos] == k - 1) assignment[pos++] = 0;
    if (pos == n) break;
    ++assignment[pos];
  }
  return best;
}

// --- ontology structural equality ---------------------------------------------

/// Classes only (ids, comments, parents, disjointness) -- the part of a tree
/// the OWL subset carries.
inline bool same_class_structure(const bilanz::OntologyTree& a, const bilanz::OntologyTree& b,
                                 std::string* why = nullptr) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (a.classes().size() != b.classes().size()) return fail("class counts differ");
  for (const auto& [id, cls_a] : a.classes()) {
    if (!b.has_class(id)) return fail("missing class " + id);
    const bilanz::OntClass& cls_b = b.cls(id);
    if (cls_a.comment != cls_b.comment) return fail("comment differs on " + id);
    if (cls_a.parent != cls_b.parent) return fail("parent differs on " + id);
    if (cls_a.disjoint_with != cls_b.disjoint_with) return fail("disjointness differs on " + id);
  }
  return true;
}

}  // namespace oracles
