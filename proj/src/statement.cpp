#include "bilanz/statement.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "bilanz/errors.hpp"

namespace bilanz {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::CurrentAsset: return "CurrentAsset";
    case Category::LongTermAsset: return "LongTermAsset";
    case Category::CurrentLiability: return "CurrentLiability";
    case Category::LongTermLiability: return "LongTermLiability";
    case Category::Equity: return "Equity";
    case Category::Supplemental: return "Supplemental";
  }
  return "?";
}

std::optional<Category> category_from_string(std::string_view s) {
  if (s == "CurrentAsset") return Category::CurrentAsset;
  if (s == "LongTermAsset") return Category::LongTermAsset;
  if (s == "CurrentLiability") return Category::CurrentLiability;
  if (s == "LongTermLiability") return Category::LongTermLiability;
  if (s == "Equity") return Category::Equity;
  if (s == "Supplemental") return Category::Supplemental;
  return std::nullopt;
}

std::string Period::str() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

Period Period::parse(std::string_view text) {
  auto bad = [&] { throw ParseError("invalid period '" + std::string(text) + "', expected YYYY-MM"); };
  if (text.size() != 7 || text[4] != '-') bad();
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u})
    if (text[i] < '0' || text[i] > '9') bad();
  Period p;
  p.year = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
  p.month = (text[5] - '0') * 10 + (text[6] - '0');
  if (p.year == 0 && p.month == 0) return p;  // "0000-00" = unspecified
  if (p.month < 1 || p.month > 12) bad();
  return p;
}

bool DeclaredTotals::any() const {
  return total_current_assets || total_long_term_assets || total_assets ||
         total_current_liabilities || total_long_term_liabilities || total_liabilities || equity;
}

bool SupplementalFigures::any() const {
  return sales || ebit || retained_earnings || market_value_equity;
}

FinancialStatement::FinancialStatement(std::string firm_id, Period period,
                                       std::vector<LineItem> items, SupplementalFigures supplemental,
                                       DeclaredTotals declared)
    : firm_id_(std::move(firm_id)),
      period_(period),
      items_(std::move(items)),
      supplemental_(supplemental),
      declared_(declared) {
  std::set<std::pair<std::string, Category>> seen;
  for (const LineItem& item : items_) {
    if (item.name.empty()) throw ParseError("line item with empty name");
    if (!seen.emplace(item.name, item.category).second)
      throw ParseError("duplicate line item '" + item.name + "' in category " +
                       std::string(to_string(item.category)));
    switch (item.category) {
      case Category::CurrentAsset: derived_.total_current_assets += item.amount; break;
      case Category::LongTermAsset: derived_.total_long_term_assets += item.amount; break;
      case Category::CurrentLiability: derived_.total_current_liabilities += item.amount; break;
      case Category::LongTermLiability: derived_.total_long_term_liabilities += item.amount; break;
      case Category::Equity: derived_.equity += item.amount; break;
      case Category::Supplemental: break;  // not a balance-sheet component
    }
  }
  derived_.total_assets = derived_.total_current_assets + derived_.total_long_term_assets;
  derived_.total_liabilities =
      derived_.total_current_liabilities + derived_.total_long_term_liabilities;
}

Totals FinancialStatement::totals() const {
  Totals t;
  t.total_current_assets = declared_.total_current_assets.value_or(derived_.total_current_assets);
  t.total_long_term_assets =
      declared_.total_long_term_assets.value_or(derived_.total_long_term_assets);
  t.total_current_liabilities =
      declared_.total_current_liabilities.value_or(derived_.total_current_liabilities);
  t.total_long_term_liabilities =
      declared_.total_long_term_liabilities.value_or(derived_.total_long_term_liabilities);
  t.total_assets =
      declared_.total_assets.value_or(t.total_current_assets + t.total_long_term_assets);
  t.total_liabilities = declared_.total_liabilities.value_or(t.total_current_liabilities +
                                                             t.total_long_term_liabilities);
  t.equity = declared_.equity.value_or(derived_.equity);
  return t;
}

Money working_capital(const FinancialStatement& stmt) {
  Totals t = stmt.totals();
  return t.total_current_assets - t.total_current_liabilities;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

std::vector<std::string> ValidationReport::failed_names() const {
  std::vector<std::string> names;
  for (const ValidationCheck& c : checks)
    if (!c.passed) names.push_back(c.name);
  return names;
}

namespace {

ValidationCheck make_check(std::string name, Money expected, Money actual, double tolerance) {
  ValidationCheck c;
  c.name = std::move(name);
  c.expected = expected.units();
  c.actual = actual.units();
  double diff = std::abs(static_cast<double>(expected.cents() - actual.cents())) / 100.0;
  c.relative_error = diff / std::max(std::abs(c.expected), 1.0);
  c.passed = c.relative_error <= tolerance;
  return c;
}

}  // namespace

ValidationReport validate(const FinancialStatement& stmt, double tolerance) {
  if (!(tolerance >= 0.0)) throw ConfigError("validation tolerance must be >= 0");

  ValidationReport report;
  report.firm_id = stmt.firm_id();
  report.period = stmt.period();

  const DeclaredTotals& declared = stmt.declared();
  const Totals& derived = stmt.derived_totals();
  Totals eff = stmt.totals();

  // Component sums vs declared totals, where the document declared one and
  // component rows exist to recompute it from.
  struct ComponentCheck {
    const char* name;
    const std::optional<Money>& declared_value;
    Money derived_value;
    Category category;
  };
  const ComponentCheck component_checks[] = {
      {"current_assets_components", declared.total_current_assets, derived.total_current_assets,
       Category::CurrentAsset},
      {"long_term_assets_components", declared.total_long_term_assets,
       derived.total_long_term_assets, Category::LongTermAsset},
      {"current_liabilities_components", declared.total_current_liabilities,
       derived.total_current_liabilities, Category::CurrentLiability},
      {"long_term_liabilities_components", declared.total_long_term_liabilities,
       derived.total_long_term_liabilities, Category::LongTermLiability},
      {"equity_components", declared.equity, derived.equity, Category::Equity},
  };
  for (const auto& cc : component_checks) {
    if (!cc.declared_value) continue;
    bool has_components = std::any_of(stmt.items().begin(), stmt.items().end(),
                                      [&](const LineItem& i) { return i.category == cc.category; });
    if (!has_components) continue;
    report.checks.push_back(make_check(cc.name, cc.derived_value, *cc.declared_value, tolerance));
  }

  report.checks.push_back(make_check(
      "total_assets", eff.total_current_assets + eff.total_long_term_assets, eff.total_assets,
      tolerance));
  report.checks.push_back(make_check(
      "total_liabilities", eff.total_current_liabilities + eff.total_long_term_liabilities,
      eff.total_liabilities, tolerance));
  // Assets = Liabilities + Equity, checked as the equity residual.
  report.checks.push_back(make_check("balance_identity", eff.total_assets - eff.total_liabilities,
                                     eff.equity, tolerance));
  return report;
}

}  // namespace bilanz
