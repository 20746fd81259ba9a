#pragma once

#include <string_view>

#include "bilanz/statement.hpp"

namespace bilanz {

/// The five Altman discriminant ratios, stored as plain fractions
/// (working capital / total assets = 0.1 is stored as 0.1, not 10%).
struct RatioVector {
  double x1 = 0.0;  // working capital / total assets
  double x2 = 0.0;  // retained earnings / total assets
  double x3 = 0.0;  // EBIT / total assets
  double x4 = 0.0;  // market value of equity / book value of total liabilities
  double x5 = 0.0;  // sales / total assets

  friend bool operator==(const RatioVector&, const RatioVector&) = default;
};

enum class Zone { Distress, Gray, Safe };

std::string_view to_string(Zone z);

/// Zone boundaries: z <= 1.81 distress, z >= 2.99 safe, gray between.
/// The 2.675 cutoff drives the separate 95%-bankruptcy flag.
inline constexpr double kDistressMax = 1.81;
inline constexpr double kSafeMin = 2.99;
inline constexpr double kBankrupt95Cutoff = 2.675;

struct ZScoreResult {
  double z = 0.0;
  Zone zone = Zone::Distress;
  bool bankrupt_95_flag = true;  // z < 2.675
};

struct RatioOptions {
  /// Substitute book equity (total assets - total liabilities) when market
  /// value of equity is absent. Never silent: the result is marked x4_proxy.
  bool book_equity_fallback = false;
};

struct RatioComputation {
  RatioVector ratios;
  bool x4_proxy = false;
};

/// Computes X1..X5 from effective totals and supplemental figures.
/// Throws RatioError: DivisionDomain naming "x1" when total assets <= 0,
/// DivisionDomain naming "x4" when total liabilities <= 0, MissingInput
/// naming the absent supplemental field otherwise.
RatioComputation compute_ratios(const FinancialStatement& stmt, const RatioOptions& opts = {});

/// Z = 0.012(100 X1) + 0.014(100 X2) + 0.033(100 X3) + 0.006(100 X4) + 0.999 X5.
/// X1..X4 enter the published coefficients as percentages, X5 as a raw
/// multiple; the ratios are stored as fractions, so the x100 happens here.
/// Algebraically identical to 1.2 X1 + 1.4 X2 + 3.3 X3 + 0.6 X4 + 0.999 X5.
/// Throws Error on non-finite input.
ZScoreResult z_score(const RatioVector& r);

/// Distress if z <= 1.81, Safe if z >= 2.99, Gray otherwise.
/// Throws Error on non-finite z.
Zone classify(double z);

}  // namespace bilanz
