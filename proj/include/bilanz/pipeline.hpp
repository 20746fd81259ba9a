#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bilanz/mining.hpp"
#include "bilanz/scoring.hpp"
#include "bilanz/statement.hpp"

namespace bilanz {

enum class ReportFormat { Json, Csv };

struct PipelineConfig {
  std::vector<std::filesystem::path> inputs;
  /// Absent: detect by extension (.csv / .json).
  std::optional<StatementFormat> input_format;
  double tolerance = 1e-3;
  MiningConfig mining;
  bool x4_book_equity_fallback = false;
  /// Restrict mining to firm-periods with instances under this ontology class.
  std::optional<std::string> scope_class;
  std::filesystem::path out_dir;
  std::set<ReportFormat> report_formats = {ReportFormat::Json};
  bool owl_per_firm = false;  // default: one merged ontology.owl per corpus
  int top_rules = 3;

  void check() const;  // throws ConfigError
};

/// One firm-period in the bankruptcy report. Firms that fail a stage keep
/// their entry with the failure recorded in `annotations`; nothing is
/// dropped silently.
struct FirmReportEntry {
  std::string firm_id;
  Period period;
  std::optional<ValidationReport> validation;
  std::optional<RatioVector> ratios;
  bool x4_proxy = false;
  std::optional<ZScoreResult> score;
  std::optional<int> cluster;
  std::vector<AssociationRule> top_rules;  // global rules this firm satisfies
  std::vector<std::string> annotations;
};

struct BankruptcyReport {
  std::vector<FirmReportEntry> firms;
  std::map<std::string, std::size_t> zone_counts;  // "Distress"/"Gray"/"Safe"
  std::optional<MiningResult> mining;              // absent when nothing scored
  std::vector<std::string> warnings;

  bool all_scored() const;
  /// 0 = all firms scored, 1 = partial failures. (2 = pipeline error, which
  /// surfaces as a thrown exception instead of a report.)
  int exit_code() const { return all_scored() ? 0 : 1; }
};

struct PipelineOutput {
  BankruptcyReport report;
  /// Ontology export(s): filename -> document. One "ontology.owl" per corpus
  /// or one file per firm-period, per config.
  std::map<std::string, std::string> owl_documents;
};

/// Statements in, intelligence out: parse -> validate -> ontology (+ OWL
/// export) -> ratios -> Z-score -> mine -> report. Firms failing a stage are
/// annotated and excluded from mining only. Throws ConfigError when the
/// config is unusable or no input yields a statement.
PipelineOutput run(const PipelineConfig& config);

/// Writes report.json / report.csv, rules.jsonl, transactions.csv and the
/// OWL document(s) into config.out_dir. Byte-deterministic for identical
/// inputs. Returns the paths written.
std::vector<std::filesystem::path> emit_report(const PipelineOutput& output,
                                               const PipelineConfig& config);

/// JSON document for the report (what report.json contains).
std::string report_to_json(const BankruptcyReport& report);
/// Flat per-firm CSV with the same firm-level fields as the JSON document.
std::string report_to_csv(const BankruptcyReport& report);
/// JSON-lines rule export: one {scope, antecedent, consequent, support,
/// confidence, support_count} object per line.
std::string rules_to_jsonl(const BankruptcyReport& report);
/// Transactions audit export: firm_id,period,items.
std::string transactions_to_csv(const BankruptcyReport& report);

}  // namespace bilanz
