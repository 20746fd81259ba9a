#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bilanz/scoring.hpp"
#include "bilanz/statement.hpp"

namespace bilanz {

/// A discretized financial condition, e.g. ("X1", "LOW") or
/// ("Z_ZONE", "DISTRESS"). The default lexicographic order on
/// (feature, level) is the global item order apriori_gen relies on.
struct Item {
  std::string feature;
  std::string level;

  std::string str() const { return feature + "=" + level; }
  friend auto operator<=>(const Item&, const Item&) = default;
};

/// Strictly sorted, duplicate-free set of items with its transaction count.
struct ItemSet {
  std::vector<Item> items;
  std::size_t support_count = 0;

  friend bool operator==(const ItemSet& a, const ItemSet& b) {
    return a.items == b.items && a.support_count == b.support_count;
  }
};

struct FirmPeriodKey {
  std::string firm_id;
  Period period;

  std::string str() const { return firm_id + "|" + period.str(); }
  friend auto operator<=>(const FirmPeriodKey&, const FirmPeriodKey&) = default;
};

struct Transaction {
  FirmPeriodKey key;
  std::vector<Item> items;  // sorted, duplicate-free
};

struct TransactionSet {
  std::vector<Transaction> transactions;

  std::size_t size() const { return transactions.size(); }
};

struct AssociationRule {
  std::vector<Item> antecedent;
  std::vector<Item> consequent;
  std::size_t support_count = 0;  // transactions containing antecedent+consequent
  double support = 0.0;           // support_count / |transactions|
  double confidence = 0.0;        // support(A+C) / support(A)
};

/// Minimum support given either as an absolute transaction count or as a
/// fraction of the mined scope; fractions resolve per scope via ceiling.
struct MinSupport {
  double value = 2.0;
  bool is_fraction = false;

  static MinSupport count(std::size_t n) { return {static_cast<double>(n), false}; }
  static MinSupport fraction(double f) { return {f, true}; }
  /// "0.4" -> fraction, "3" -> count. Throws ParseError otherwise.
  static MinSupport parse(const std::string& text);

  std::size_t resolve(std::size_t tx_count) const;
};

struct MiningConfig {
  MinSupport min_support = MinSupport::count(2);
  double min_confidence = 0.6;
  int bins = 3;
  int k_clusters = 1;
  std::uint64_t seed = 0;

  void check() const;  // throws ConfigError on invalid thresholds
};

struct Standardization {
  std::vector<double> mean;
  std::vector<double> stddev;  // 0 marks a constant feature, passed through unscaled

  std::vector<double> apply(const std::vector<double>& raw) const;
};

struct ClusterModel {
  std::vector<std::vector<double>> centroids;  // standardized feature space
  std::map<FirmPeriodKey, int> assignments;
  Standardization standardization;
};

/// Per-iteration objective values, for tests that watch convergence.
struct ClusterTrace {
  std::vector<double> objective;  // within-cluster sum of squares after each update
  int iterations = 0;
};

/// Deterministic k-means: features standardized to zero mean / unit variance
/// (constant features pass through unscaled), centroids initialized by
/// farthest-point seeding from `seed`, assign/update iterated until
/// assignments stabilize or 100 iterations. Ties go to the lowest index.
/// Throws ConfigError when the input is empty or k is out of range.
ClusterModel cluster(const std::vector<std::pair<FirmPeriodKey, std::vector<double>>>& points,
                     int k, std::uint64_t seed, ClusterTrace* trace = nullptr);

/// Nearest centroid for a raw (unstandardized) feature vector; lets a
/// pre-trained model place a new firm-period.
int assign_cluster(const ClusterModel& model, const std::vector<double>& raw_features);

/// One scored firm-period heading into discretization. `extra` holds optional
/// named growth features binned alongside the ratios.
struct FirmFeatures {
  FirmPeriodKey key;
  RatioVector ratios;
  ZScoreResult score;
  std::map<std::string, double> extra;
};

struct DiscretizeResult {
  TransactionSet transactions;
  std::map<std::string, std::vector<double>> bin_edges;  // feature -> upper edges
  std::vector<std::string> warnings;                     // collapsed features
};

/// Equal-frequency binning of X1..X5 (and extras) into `bins` quantile bins
/// labeled LOW/../HIGH, boundary values assigned to the lower bin; the zone
/// becomes a categorical Z_ZONE item. A feature with fewer distinct values
/// than bins collapses to fewer bins with a warning.
DiscretizeResult discretize(const std::vector<FirmFeatures>& firms, int bins);

/// Level-wise frequent itemset mining. Returns exactly the itemsets with
/// support_count >= min_support, sorted by (size, items). min_support >= 1.
std::vector<ItemSet> apriori(const TransactionSet& tx, std::size_t min_support);

/// Candidate generation: joins (k-1)-itemsets agreeing on their first k-2
/// items, then prunes candidates with an infrequent (k-1)-subset. Input must
/// be uniformly sized k-1 and sorted; output is sorted and duplicate-free
/// with counts zeroed.
std::vector<ItemSet> apriori_gen(const std::vector<ItemSet>& l_prev, std::size_t k);

/// Emits A -> F\A for every frequent F (|F| >= 2) and non-empty proper subset
/// A when support(F)/support(A) >= min_confidence. Sorted by confidence desc,
/// support desc, then items. `frequent` must be subset-closed.
std::vector<AssociationRule> generate_rules(const std::vector<ItemSet>& frequent,
                                            double min_confidence, std::size_t tx_count);

struct ScopeRules {
  std::string scope;  // "global" or "cluster:<i>"
  std::size_t tx_count = 0;
  std::vector<ItemSet> frequent;
  std::vector<AssociationRule> rules;
};

struct MiningResult {
  ClusterModel clusters;
  DiscretizeResult discretization;
  ScopeRules global;
  std::vector<ScopeRules> per_cluster;
};

/// Two-step discovery: k-means over standardized ratio vectors, then apriori
/// plus rule generation over the discretized corpus, globally and per cluster
/// (same thresholds, fractional support re-resolved per scope).
MiningResult mine(const std::vector<FirmFeatures>& firms, const MiningConfig& config);

}  // namespace bilanz
