#include "bilanz/mining.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bilanz/errors.hpp"

namespace bilanz {

MinSupport MinSupport::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw ParseError("empty min-support");
  bool digits_only = std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  try {
    if (digits_only) return MinSupport::count(std::stoull(t));
    std::size_t consumed = 0;
    double f = std::stod(t, &consumed);
    if (consumed != t.size()) throw std::invalid_argument(t);
    return MinSupport::fraction(f);
  } catch (const std::exception&) {
    throw ParseError("invalid min-support '" + text + "'");
  }
}

std::size_t MinSupport::resolve(std::size_t tx_count) const {
  double resolved = is_fraction ? std::ceil(value * static_cast<double>(tx_count)) : value;
  if (resolved < 1.0) return 1;
  return static_cast<std::size_t>(resolved);
}

void MiningConfig::check() const {
  if (!(min_support.value > 0.0)) throw ConfigError("min-support must be positive");
  if (min_support.is_fraction && min_support.value > 1.0)
    throw ConfigError("fractional min-support must be <= 1");
  if (!(min_confidence > 0.0) || min_confidence > 1.0)
    throw ConfigError("min-confidence must be in (0, 1]");
  if (bins < 2) throw ConfigError("bins must be >= 2");
  if (k_clusters < 1) throw ConfigError("k must be >= 1");
}

// --- discretization ----------------------------------------------------------

namespace {

std::vector<std::string> bin_labels(std::size_t count) {
  switch (count) {
    case 1: return {"ALL"};
    case 2: return {"LOW", "HIGH"};
    case 3: return {"LOW", "MED", "HIGH"};
    case 4: return {"LOW", "MEDLOW", "MEDHIGH", "HIGH"};
    case 5: return {"LOW", "MEDLOW", "MED", "MEDHIGH", "HIGH"};
    default: {
      std::vector<std::string> labels;
      for (std::size_t i = 1; i <= count; ++i) labels.push_back("Q" + std::to_string(i));
      return labels;
    }
  }
}

/// Equal-frequency bin edges: upper bound of each bin but the last, taken at
/// the ceil(i*n/bins) order statistic. Duplicate edges and edges equal to the
/// maximum collapse away (they would leave a bin empty).
std::vector<double> quantile_edges(std::vector<double> values, int bins) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::vector<double> edges;
  for (int i = 1; i < bins; ++i) {
    std::size_t idx = (static_cast<std::size_t>(i) * n + bins - 1) / bins;  // ceil(i*n/bins)
    double edge = values[idx - 1];
    if (edge == values.back()) continue;
    if (edges.empty() || edge > edges.back()) edges.push_back(edge);
  }
  return edges;
}

/// Boundary values land in the lower bin: first bin whose upper edge >= x.
std::size_t bin_index(const std::vector<double>& edges, double x) {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (x <= edges[i]) return i;
  return edges.size();
}

std::string zone_level(Zone zone) {
  switch (zone) {
    case Zone::Distress: return "DISTRESS";
    case Zone::Gray: return "GRAY";
    case Zone::Safe: return "SAFE";
  }
  return "?";
}

}  // namespace

DiscretizeResult discretize(const std::vector<FirmFeatures>& firms, int bins) {
  if (bins < 2) throw ConfigError("bins must be >= 2");

  DiscretizeResult result;
  if (firms.empty()) return result;

  result.transactions.transactions.reserve(firms.size());
  for (const FirmFeatures& firm : firms)
    result.transactions.transactions.push_back({firm.key, {}});

  // Continuous features in a fixed order: the five ratios, then extras by name.
  struct Column {
    std::string name;
    std::vector<double> values;           // one per contributing firm
    std::vector<std::size_t> firm_index;  // which firm each value came from
  };
  std::vector<Column> columns;
  auto ratio_column = [&](const std::string& name, double RatioVector::*member) {
    Column col{name, {}, {}};
    for (std::size_t i = 0; i < firms.size(); ++i) {
      col.values.push_back(firms[i].ratios.*member);
      col.firm_index.push_back(i);
    }
    columns.push_back(std::move(col));
  };
  ratio_column("X1", &RatioVector::x1);
  ratio_column("X2", &RatioVector::x2);
  ratio_column("X3", &RatioVector::x3);
  ratio_column("X4", &RatioVector::x4);
  ratio_column("X5", &RatioVector::x5);

  std::map<std::string, Column> extras;
  for (std::size_t i = 0; i < firms.size(); ++i) {
    for (const auto& [name, value] : firms[i].extra) {
      Column& col = extras[name];
      col.name = name;
      col.values.push_back(value);
      col.firm_index.push_back(i);
    }
  }
  for (auto& [name, col] : extras) columns.push_back(std::move(col));

  for (const Column& col : columns) {
    std::vector<double> edges = quantile_edges(col.values, bins);
    std::vector<std::string> labels = bin_labels(edges.size() + 1);
    if (static_cast<int>(labels.size()) < bins)
      result.warnings.push_back("feature " + col.name + " collapsed to " +
                                std::to_string(labels.size()) + " bin(s) (" +
                                std::to_string(bins) + " requested)");
    result.bin_edges[col.name] = edges;
    for (std::size_t v = 0; v < col.values.size(); ++v) {
      std::size_t firm = col.firm_index[v];
      result.transactions.transactions[firm].items.push_back(
          {col.name, labels[bin_index(edges, col.values[v])]});
    }
  }

  for (std::size_t i = 0; i < firms.size(); ++i) {
    auto& items = result.transactions.transactions[i].items;
    items.push_back({"Z_ZONE", zone_level(firms[i].score.zone)});
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
  }
  return result;
}

// --- apriori -----------------------------------------------------------------

std::vector<ItemSet> apriori_gen(const std::vector<ItemSet>& l_prev, std::size_t k) {
  if (k < 2) throw std::invalid_argument("apriori_gen: k must be >= 2");
  for (const ItemSet& set : l_prev) {
    if (set.items.size() != k - 1)
      throw std::invalid_argument("apriori_gen: input itemsets must all have size k-1");
    for (std::size_t i = 1; i < set.items.size(); ++i)
      if (!(set.items[i - 1] < set.items[i]))
        throw std::invalid_argument("apriori_gen: itemsets must be strictly sorted");
  }

  std::vector<std::vector<Item>> prev;
  prev.reserve(l_prev.size());
  for (const ItemSet& set : l_prev) prev.push_back(set.items);
  std::sort(prev.begin(), prev.end());
  prev.erase(std::unique(prev.begin(), prev.end()), prev.end());

  auto is_frequent = [&](const std::vector<Item>& items) {
    return std::binary_search(prev.begin(), prev.end(), items);
  };

  std::vector<ItemSet> candidates;
  for (std::size_t i = 0; i < prev.size(); ++i) {
    for (std::size_t j = i + 1; j < prev.size(); ++j) {
      // Join: first k-2 items must agree; sorted input puts the two distinct
      // last items in order.
      if (!std::equal(prev[i].begin(), prev[i].end() - 1, prev[j].begin())) break;
      std::vector<Item> joined = prev[i];
      joined.push_back(prev[j].back());

      // Prune: every (k-1)-subset must itself be frequent.
      bool keep = true;
      for (std::size_t drop = 0; drop + 2 < joined.size() && keep; ++drop) {
        std::vector<Item> subset;
        subset.reserve(k - 1);
        for (std::size_t m = 0; m < joined.size(); ++m)
          if (m != drop) subset.push_back(joined[m]);
        keep = is_frequent(subset);
      }
      if (keep) candidates.push_back({std::move(joined), 0});
    }
  }
  // Join of sorted, distinct inputs cannot duplicate, and emits in order.
  return candidates;
}

std::vector<ItemSet> apriori(const TransactionSet& tx, std::size_t min_support) {
  if (min_support < 1) throw ConfigError("min-support must be >= 1");
  std::vector<ItemSet> answer;
  if (tx.transactions.empty()) return answer;

  for (const Transaction& t : tx.transactions)
    for (std::size_t i = 1; i < t.items.size(); ++i)
      if (!(t.items[i - 1] < t.items[i]))
        throw std::invalid_argument("apriori: transaction items must be strictly sorted");

  std::map<Item, std::size_t> counts;
  for (const Transaction& t : tx.transactions)
    for (const Item& item : t.items) ++counts[item];
  std::vector<ItemSet> level;
  for (const auto& [item, count] : counts)
    if (count >= min_support) level.push_back({{item}, count});

  answer = level;
  for (std::size_t k = 2; !level.empty(); ++k) {
    std::vector<ItemSet> candidates = apriori_gen(level, k);
    if (candidates.empty()) break;
    for (const Transaction& t : tx.transactions)
      for (ItemSet& candidate : candidates)
        if (std::includes(t.items.begin(), t.items.end(), candidate.items.begin(),
                          candidate.items.end()))
          ++candidate.support_count;
    level.clear();
    for (ItemSet& candidate : candidates)
      if (candidate.support_count >= min_support) level.push_back(std::move(candidate));
    answer.insert(answer.end(), level.begin(), level.end());
  }
  return answer;  // per-level blocks are sorted, so the whole list is (size, items)-sorted
}

// --- rule generation ---------------------------------------------------------

std::vector<AssociationRule> generate_rules(const std::vector<ItemSet>& frequent,
                                            double min_confidence, std::size_t tx_count) {
  if (tx_count < 1) throw ConfigError("rule generation needs at least one transaction");

  std::map<std::vector<Item>, std::size_t> support;
  for (const ItemSet& set : frequent) support[set.items] = set.support_count;

  std::vector<AssociationRule> rules;
  for (const ItemSet& set : frequent) {
    const std::size_t size = set.items.size();
    if (size < 2) continue;
    // Every non-empty proper subset is a candidate antecedent.
    for (std::uint64_t mask = 1; mask + 1 < (1ull << size); ++mask) {
      AssociationRule rule;
      for (std::size_t bit = 0; bit < size; ++bit) {
        if (mask & (1ull << bit)) rule.antecedent.push_back(set.items[bit]);
        else rule.consequent.push_back(set.items[bit]);
      }
      auto it = support.find(rule.antecedent);
      if (it == support.end() || it->second == 0)
        throw Error("internal consistency: antecedent of a frequent itemset is not frequent");
      rule.confidence = static_cast<double>(set.support_count) / static_cast<double>(it->second);
      if (rule.confidence < min_confidence) continue;
      rule.support_count = set.support_count;
      rule.support = static_cast<double>(set.support_count) / static_cast<double>(tx_count);
      rules.push_back(std::move(rule));
    }
  }

  std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.support_count != b.support_count) return a.support_count > b.support_count;
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return rules;
}

// --- two-step mining ---------------------------------------------------------

MiningResult mine(const std::vector<FirmFeatures>& firms, const MiningConfig& config) {
  config.check();
  if (firms.empty()) throw ConfigError("empty corpus: nothing to mine");

  std::vector<std::pair<FirmPeriodKey, std::vector<double>>> points;
  points.reserve(firms.size());
  for (const FirmFeatures& firm : firms)
    points.push_back({firm.key,
                      {firm.ratios.x1, firm.ratios.x2, firm.ratios.x3, firm.ratios.x4,
                       firm.ratios.x5}});

  MiningResult result;
  result.clusters = cluster(points, config.k_clusters, config.seed);
  result.discretization = discretize(firms, config.bins);

  const TransactionSet& tx = result.discretization.transactions;
  auto mine_scope = [&](std::string scope, TransactionSet scoped) {
    ScopeRules out;
    out.scope = std::move(scope);
    out.tx_count = scoped.size();
    if (out.tx_count > 0) {
      out.frequent = apriori(scoped, config.min_support.resolve(out.tx_count));
      out.rules = generate_rules(out.frequent, config.min_confidence, out.tx_count);
    }
    return out;
  };

  result.global = mine_scope("global", tx);
  for (int c = 0; c < config.k_clusters; ++c) {
    TransactionSet scoped;
    for (const Transaction& t : tx.transactions)
      if (result.clusters.assignments.at(t.key) == c) scoped.transactions.push_back(t);
    result.per_cluster.push_back(mine_scope("cluster:" + std::to_string(c), std::move(scoped)));
  }
  return result;
}

}  // namespace bilanz
