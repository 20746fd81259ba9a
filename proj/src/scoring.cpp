#include "bilanz/scoring.hpp"

#include <cmath>

#include "bilanz/errors.hpp"

namespace bilanz {

std::string_view to_string(Zone z) {
  switch (z) {
    case Zone::Distress: return "Distress";
    case Zone::Gray: return "Gray";
    case Zone::Safe: return "Safe";
  }
  return "?";
}

RatioComputation compute_ratios(const FinancialStatement& stmt, const RatioOptions& opts) {
  Totals totals = stmt.totals();
  if (totals.total_assets.cents() <= 0)
    throw RatioError(RatioError::Reason::DivisionDomain, "x1",
                     "total assets must be positive to form x1..x5 (firm '" + stmt.firm_id() + "')");
  if (totals.total_liabilities.cents() <= 0)
    throw RatioError(RatioError::Reason::DivisionDomain, "x4",
                     "total liabilities must be positive to form x4 (firm '" + stmt.firm_id() + "')");

  const SupplementalFigures& supp = stmt.supplemental();
  auto require = [&](const std::optional<Money>& value, const char* field) -> Money {
    if (!value)
      throw RatioError(RatioError::Reason::MissingInput, field,
                       std::string("missing supplemental figure '") + field + "' (firm '" +
                           stmt.firm_id() + "')");
    return *value;
  };

  double total_assets = totals.total_assets.units();
  double total_liabilities = totals.total_liabilities.units();

  RatioComputation result;
  result.ratios.x1 = working_capital(stmt).units() / total_assets;
  result.ratios.x2 = require(supp.retained_earnings, "retained_earnings").units() / total_assets;
  result.ratios.x3 = require(supp.ebit, "ebit").units() / total_assets;

  if (supp.market_value_equity) {
    result.ratios.x4 = supp.market_value_equity->units() / total_liabilities;
  } else if (opts.book_equity_fallback) {
    Money book_equity = totals.total_assets - totals.total_liabilities;
    result.ratios.x4 = book_equity.units() / total_liabilities;
    result.x4_proxy = true;
  } else {
    require(supp.market_value_equity, "market_value_equity");
  }

  result.ratios.x5 = require(supp.sales, "sales").units() / total_assets;
  return result;
}

ZScoreResult z_score(const RatioVector& r) {
  for (double x : {r.x1, r.x2, r.x3, r.x4, r.x5})
    if (!std::isfinite(x)) throw Error("z_score: non-finite ratio");

  // Published coefficients take X1..X4 as percentages and X5 as a multiple.
  double z = 0.012 * (100.0 * r.x1) + 0.014 * (100.0 * r.x2) + 0.033 * (100.0 * r.x3) +
             0.006 * (100.0 * r.x4) + 0.999 * r.x5;

  ZScoreResult result;
  result.z = z;
  result.zone = classify(z);
  result.bankrupt_95_flag = z < kBankrupt95Cutoff;
  return result;
}

Zone classify(double z) {
  if (!std::isfinite(z)) throw Error("classify: non-finite z");
  if (z <= kDistressMax) return Zone::Distress;
  if (z >= kSafeMin) return Zone::Safe;
  return Zone::Gray;
}

}  // namespace bilanz
