#pragma once

#include <string>
#include <vector>

#include "bilanz/ontology.hpp"
#include "bilanz/statement.hpp"

namespace bilanz {

/// Statement plus the validation outcome to carry into the tree. A null
/// report means "not validated"; failed checks become instance annotations.
struct OntologyInput {
  const FinancialStatement* statement = nullptr;
  const ValidationReport* validation = nullptr;
};

/// Fixed skeleton ids.
namespace onto {
inline constexpr const char* kRoot = "BalanceSheet";
inline constexpr const char* kAssets = "Assets";
inline constexpr const char* kCurrentAssets = "CurrentAssets";
inline constexpr const char* kFixedAssets = "FixedAssets";
inline constexpr const char* kLiabilities = "Liabilities";
inline constexpr const char* kCurrentLiabilities = "CurrentLiabilities";
inline constexpr const char* kLongTermLiabilities = "LongTermLiabilities";
inline constexpr const char* kOwnersEquity = "OwnersEquity";
inline constexpr const char* kFinancialRatios = "FinancialRatios";
}  // namespace onto

/// Derives a class id from a line-item name: split on non-alphanumerics,
/// capitalize each word, prefix '_' when the result would start with a digit
/// ("Cash in Banks" -> "CashInBanks", "2004 Honda Civic" -> "_2004HondaCivic").
std::string class_id_from_name(const std::string& name);

/// Builds the financial domain ontology for a corpus of statements:
/// the fixed class skeleton, one class per distinct line-item name parented
/// under its category class, one instance per item and firm-period carrying a
/// numeric `amount` slot, and one class per Altman ratio with Required
/// numerator/denominator slots plus a definition instance naming the two
/// accounting items. Empty input yields the skeleton only.
///
/// Distinct item names that map to the same class id, and distinct
/// firm-periods that map to the same instance id, are construction errors.
OntologyTree build_financial_ontology(const std::vector<OntologyInput>& corpus);
OntologyTree build_financial_ontology(const FinancialStatement& stmt,
                                      const ValidationReport* validation = nullptr);

/// Firm/period provenance stored on item instances (slot "statement",
/// value "<firm_id>|<YYYY-MM>").
std::string statement_tag(const std::string& firm_id, const Period& period);

}  // namespace bilanz
