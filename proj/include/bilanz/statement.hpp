#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bilanz/money.hpp"

namespace bilanz {

/// Balance-sheet section a line item belongs to. Supplemental covers
/// income-statement / market figures that a balance sheet cannot supply.
enum class Category {
  CurrentAsset,
  LongTermAsset,
  CurrentLiability,
  LongTermLiability,
  Equity,
  Supplemental,
};

std::string_view to_string(Category c);
std::optional<Category> category_from_string(std::string_view s);

/// Calendar year-month. {0, 0} is the "unspecified" sentinel, printed "0000-00".
struct Period {
  int year = 0;
  int month = 0;

  std::string str() const;
  static Period parse(std::string_view text);  // "YYYY-MM"
  bool is_set() const { return year != 0 || month != 0; }

  friend auto operator<=>(const Period&, const Period&) = default;
};

struct LineItem {
  std::string name;
  Category category = Category::CurrentAsset;
  Money amount;
  /// Extra CSV columns (e.g. Table-style percentage columns). Carried
  /// verbatim, ignored by every computation.
  std::map<std::string, std::string> metadata;

  friend bool operator==(const LineItem&, const LineItem&) = default;
};

/// Totals either summed from component items or copied from declared total
/// rows. total_assets = current + long-term; total_liabilities likewise.
struct Totals {
  Money total_current_assets;
  Money total_long_term_assets;
  Money total_assets;
  Money total_current_liabilities;
  Money total_long_term_liabilities;
  Money total_liabilities;
  Money equity;

  friend bool operator==(const Totals&, const Totals&) = default;
};

/// Totals asserted by the source document itself (rows named "Total ...",
/// "Overall Total"). Kept separate from derived sums so validation can
/// compare the two.
struct DeclaredTotals {
  std::optional<Money> total_current_assets;
  std::optional<Money> total_long_term_assets;
  std::optional<Money> total_assets;
  std::optional<Money> total_current_liabilities;
  std::optional<Money> total_long_term_liabilities;
  std::optional<Money> total_liabilities;
  std::optional<Money> equity;

  bool any() const;
  friend bool operator==(const DeclaredTotals&, const DeclaredTotals&) = default;
};

/// Income-statement and market figures needed by the Z-score. Absent means
/// "not supplied", which is distinct from zero.
struct SupplementalFigures {
  std::optional<Money> sales;
  std::optional<Money> ebit;
  std::optional<Money> retained_earnings;
  std::optional<Money> market_value_equity;

  bool any() const;
  friend bool operator==(const SupplementalFigures&, const SupplementalFigures&) = default;
};

/// One firm-period balance sheet. Immutable after construction; construction
/// rejects duplicate (name, category) pairs and empty names.
class FinancialStatement {
 public:
  FinancialStatement() = default;
  FinancialStatement(std::string firm_id, Period period, std::vector<LineItem> items,
                     SupplementalFigures supplemental = {}, DeclaredTotals declared = {});

  const std::string& firm_id() const { return firm_id_; }
  const Period& period() const { return period_; }
  const std::vector<LineItem>& items() const { return items_; }
  const SupplementalFigures& supplemental() const { return supplemental_; }
  const DeclaredTotals& declared() const { return declared_; }

  /// Sums over component items only.
  const Totals& derived_totals() const { return derived_; }
  /// Declared value where the document stated one, derived sum otherwise.
  /// This is what scoring consumes.
  Totals totals() const;

  bool empty() const { return items_.empty() && !supplemental_.any() && !declared_.any(); }

  friend bool operator==(const FinancialStatement&, const FinancialStatement&) = default;

 private:
  std::string firm_id_;
  Period period_;
  std::vector<LineItem> items_;
  SupplementalFigures supplemental_;
  DeclaredTotals declared_;
  Totals derived_;
};

enum class StatementFormat { Csv, Json };

/// Parses one statement from `in`. For CSV, firm/period fall back to the
/// given defaults unless `# firm_id:` / `# period:` comment lines override
/// them; JSON carries both inline. Throws ParseError (with line numbers for
/// CSV/XML-style sources) on malformed input, unknown categories, duplicates.
FinancialStatement parse_statement(std::istream& in, StatementFormat format,
                                   const std::string& default_firm_id = "",
                                   Period default_period = {});

void write_statement(const FinancialStatement& stmt, std::ostream& out, StatementFormat format);
std::string to_csv(const FinancialStatement& stmt);
std::string to_json(const FinancialStatement& stmt);

/// Current assets minus current liabilities (effective totals).
Money working_capital(const FinancialStatement& stmt);

struct ValidationCheck {
  std::string name;
  double expected = 0.0;  // recomputed value, currency units
  double actual = 0.0;    // value the statement asserts
  double relative_error = 0.0;
  bool passed = true;
};

struct ValidationReport {
  std::string firm_id;
  Period period;
  std::vector<ValidationCheck> checks;

  bool all_passed() const;
  std::vector<std::string> failed_names() const;
};

/// Consistency checks: per-category component sums vs declared totals (when
/// both sides exist), the asset and liability splits, and the balance
/// identity Assets = Liabilities + Equity. Inconsistencies are reported, not
/// thrown. relative_error = |expected - actual| / max(|expected|, 1).
ValidationReport validate(const FinancialStatement& stmt, double tolerance = 1e-3);

}  // namespace bilanz
