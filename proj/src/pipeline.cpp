#include "bilanz/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bilanz/errors.hpp"
#include "bilanz/financial_ontology.hpp"
#include "bilanz/owl.hpp"

namespace bilanz {

namespace {

using nlohmann::json;

StatementFormat format_for(const std::filesystem::path& path,
                           std::optional<StatementFormat> configured) {
  if (configured) return *configured;
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv") return StatementFormat::Csv;
  if (ext == ".json") return StatementFormat::Json;
  throw ConfigError("cannot infer statement format from '" + path.string() +
                    "'; pass an explicit format");
}

std::string sanitize_filename(const std::string& name) {
  std::string out;
  for (char c : name) {
    unsigned char u = static_cast<unsigned char>(c);
    out += (std::isalnum(u) || c == '-' || c == '_' || c == '.') ? c : '_';
  }
  return out.empty() ? std::string("firm") : out;
}

json ratio_json(const RatioVector& r) {
  return json{{"x1", r.x1}, {"x2", r.x2}, {"x3", r.x3}, {"x4", r.x4}, {"x5", r.x5}};
}

json items_json(const std::vector<Item>& items) {
  json arr = json::array();
  for (const Item& item : items) arr.push_back(item.str());
  return arr;
}

json rule_json(const AssociationRule& rule) {
  return json{{"antecedent", items_json(rule.antecedent)},
              {"consequent", items_json(rule.consequent)},
              {"support", rule.support},
              {"confidence", rule.confidence},
              {"support_count", rule.support_count}};
}

json scope_rules_json(const ScopeRules& scope) {
  json rules = json::array();
  for (const AssociationRule& rule : scope.rules) rules.push_back(rule_json(rule));
  return json{{"scope", scope.scope}, {"tx_count", scope.tx_count}, {"rules", rules}};
}

std::string rule_text(const AssociationRule& rule) {
  std::string out;
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i)
    out += (i ? "&" : "") + rule.antecedent[i].str();
  out += "=>";
  for (std::size_t i = 0; i < rule.consequent.size(); ++i)
    out += (i ? "&" : "") + rule.consequent[i].str();
  return out;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string double_str(double v) { return json(v).dump(); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

void PipelineConfig::check() const {
  if (inputs.empty()) throw ConfigError("at least one input path is required");
  if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
  if (top_rules < 0) throw ConfigError("top-rules must be >= 0");
  if (report_formats.empty()) throw ConfigError("at least one report format is required");
  mining.check();
}

bool BankruptcyReport::all_scored() const {
  return std::all_of(firms.begin(), firms.end(),
                     [](const FirmReportEntry& f) { return f.score.has_value(); });
}

PipelineOutput run(const PipelineConfig& config) {
  config.check();

  struct ParsedFirm {
    FinancialStatement stmt;
    ValidationReport validation;
  };
  std::vector<ParsedFirm> parsed;
  std::vector<FirmReportEntry> failed_parses;

  for (const std::filesystem::path& path : config.inputs) {
    std::string fallback_firm = sanitize_filename(path.stem().string());
    try {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw IoError("cannot open '" + path.string() + "'");
      FinancialStatement stmt =
          parse_statement(in, format_for(path, config.input_format), fallback_firm);
      ValidationReport validation = validate(stmt, config.tolerance);
      parsed.push_back({std::move(stmt), std::move(validation)});
    } catch (const Error& e) {
      FirmReportEntry entry;
      entry.firm_id = fallback_firm;
      entry.annotations.push_back(std::string("parse error: ") + e.what());
      failed_parses.push_back(std::move(entry));
    }
  }
  if (parsed.empty()) throw ConfigError("no parseable statements among the inputs");

  // Duplicate firm-periods would double-count everywhere downstream.
  {
    std::set<std::pair<std::string, Period>> seen;
    for (const ParsedFirm& firm : parsed)
      if (!seen.emplace(firm.stmt.firm_id(), firm.stmt.period()).second)
        throw ConfigError("duplicate firm-period " + firm.stmt.firm_id() + "|" +
                          firm.stmt.period().str() + " in the inputs");
  }

  PipelineOutput output;

  // Domain ontology, exported as a side artifact.
  std::vector<OntologyInput> onto_inputs;
  onto_inputs.reserve(parsed.size());
  for (const ParsedFirm& firm : parsed) onto_inputs.push_back({&firm.stmt, &firm.validation});
  OntologyTree merged = build_financial_ontology(onto_inputs);
  if (config.owl_per_firm) {
    for (const ParsedFirm& firm : parsed) {
      OntologyTree tree = build_financial_ontology(firm.stmt, &firm.validation);
      std::string name = sanitize_filename(firm.stmt.firm_id()) + "_" +
                         firm.stmt.period().str() + ".owl";
      output.owl_documents[name] = export_owl(tree);
    }
  } else {
    output.owl_documents["ontology.owl"] = export_owl(merged);
  }

  BankruptcyReport& report = output.report;
  report.firms.reserve(parsed.size() + failed_parses.size());

  std::vector<FirmFeatures> scored;
  RatioOptions ratio_opts{.book_equity_fallback = config.x4_book_equity_fallback};
  for (const ParsedFirm& firm : parsed) {
    FirmReportEntry entry;
    entry.firm_id = firm.stmt.firm_id();
    entry.period = firm.stmt.period();
    entry.validation = firm.validation;
    for (const std::string& name : firm.validation.failed_names())
      entry.annotations.push_back("validation failed: " + name);
    try {
      RatioComputation computation = compute_ratios(firm.stmt, ratio_opts);
      entry.ratios = computation.ratios;
      entry.x4_proxy = computation.x4_proxy;
      entry.score = z_score(computation.ratios);
      scored.push_back({{entry.firm_id, entry.period}, computation.ratios, *entry.score, {}});
    } catch (const RatioError& e) {
      entry.annotations.push_back(e.reason() == RatioError::Reason::MissingInput
                                      ? "missing input: " + e.field()
                                      : "division domain: " + e.field());
      entry.annotations.back() += " (" + std::string(e.what()) + ")";
    }
    report.firms.push_back(std::move(entry));
  }
  for (FirmReportEntry& entry : failed_parses) report.firms.push_back(std::move(entry));

  report.zone_counts = {{"Distress", 0}, {"Gray", 0}, {"Safe", 0}};
  for (const FirmReportEntry& entry : report.firms)
    if (entry.score) ++report.zone_counts[std::string(to_string(entry.score->zone))];

  // Optional ontology-scoped mining: keep firm-periods with an instance in
  // the requested subtree.
  std::vector<FirmFeatures> mined = scored;
  if (config.scope_class) {
    std::set<std::string> tags;
    for (const Instance* instance : query_subtree(merged, *config.scope_class)) {
      auto it = instance->slot_values.find("statement");
      if (it != instance->slot_values.end()) tags.insert(std::get<std::string>(it->second));
    }
    std::erase_if(mined, [&](const FirmFeatures& f) {
      return !tags.count(statement_tag(f.key.firm_id, f.key.period));
    });
    report.warnings.push_back("mining scoped to ontology class " + *config.scope_class + ": " +
                              std::to_string(mined.size()) + " of " +
                              std::to_string(scored.size()) + " scored firm-periods retained");
  }

  if (mined.empty()) {
    report.warnings.push_back("mining skipped: no scored firm-periods");
  } else {
    report.mining = mine(mined, config.mining);
    for (const std::string& warning : report.mining->discretization.warnings)
      report.warnings.push_back(warning);

    std::map<FirmPeriodKey, const Transaction*> tx_by_key;
    for (const Transaction& t : report.mining->discretization.transactions.transactions)
      tx_by_key[t.key] = &t;
    for (FirmReportEntry& entry : report.firms) {
      if (!entry.score) continue;
      FirmPeriodKey key{entry.firm_id, entry.period};
      auto cluster_it = report.mining->clusters.assignments.find(key);
      if (cluster_it != report.mining->clusters.assignments.end())
        entry.cluster = cluster_it->second;
      auto tx_it = tx_by_key.find(key);
      if (tx_it == tx_by_key.end()) continue;
      const std::vector<Item>& items = tx_it->second->items;
      for (const AssociationRule& rule : report.mining->global.rules) {
        if (static_cast<int>(entry.top_rules.size()) >= config.top_rules) break;
        if (std::includes(items.begin(), items.end(), rule.antecedent.begin(),
                          rule.antecedent.end()))
          entry.top_rules.push_back(rule);
      }
    }
  }
  return output;
}

std::string report_to_json(const BankruptcyReport& report) {
  json doc;
  json firms = json::array();
  for (const FirmReportEntry& entry : report.firms) {
    json firm;
    firm["firm_id"] = entry.firm_id;
    firm["period"] = entry.period.str();
    firm["ratios"] = entry.ratios ? ratio_json(*entry.ratios) : json();
    firm["z"] = entry.score ? json(entry.score->z) : json();
    firm["zone"] = entry.score ? json(std::string(to_string(entry.score->zone))) : json();
    firm["bankrupt_95_flag"] = entry.score ? json(entry.score->bankrupt_95_flag) : json();
    firm["x4_proxy"] = entry.x4_proxy;
    firm["cluster"] = entry.cluster ? json(*entry.cluster) : json();
    if (entry.validation) {
      json checks = json::array();
      for (const ValidationCheck& check : entry.validation->checks)
        checks.push_back(json{{"check_name", check.name},
                              {"expected", check.expected},
                              {"actual", check.actual},
                              {"relative_error", check.relative_error},
                              {"passed", check.passed}});
      firm["validation"] = json{{"passed", entry.validation->all_passed()}, {"checks", checks}};
    } else {
      firm["validation"] = json();
    }
    json top = json::array();
    for (const AssociationRule& rule : entry.top_rules) top.push_back(rule_json(rule));
    firm["top_rules"] = top;
    firm["annotations"] = entry.annotations;
    firms.push_back(firm);
  }
  doc["firms"] = firms;
  doc["zone_counts"] = report.zone_counts;

  json rules;
  rules["global"] = report.mining ? scope_rules_json(report.mining->global)
                                  : json{{"scope", "global"}, {"tx_count", 0}, {"rules", json::array()}};
  json clusters = json::array();
  if (report.mining)
    for (const ScopeRules& scope : report.mining->per_cluster)
      clusters.push_back(scope_rules_json(scope));
  rules["clusters"] = clusters;
  doc["rules"] = rules;

  doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const BankruptcyReport& report) {
  std::ostringstream out;
  out << "firm_id,period,x1,x2,x3,x4,x5,z,zone,bankrupt_95_flag,x4_proxy,cluster,"
         "validation_passed,annotations,top_rules\n";
  for (const FirmReportEntry& entry : report.firms) {
    out << csv_quote(entry.firm_id) << ',' << entry.period.str() << ',';
    if (entry.ratios) {
      out << double_str(entry.ratios->x1) << ',' << double_str(entry.ratios->x2) << ','
          << double_str(entry.ratios->x3) << ',' << double_str(entry.ratios->x4) << ','
          << double_str(entry.ratios->x5) << ',';
    } else {
      out << ",,,,,";
    }
    if (entry.score)
      out << double_str(entry.score->z) << ',' << to_string(entry.score->zone) << ','
          << (entry.score->bankrupt_95_flag ? "true" : "false") << ',';
    else
      out << ",,,";
    out << (entry.x4_proxy ? "true" : "false") << ',';
    if (entry.cluster) out << *entry.cluster;
    out << ',';
    if (entry.validation) out << (entry.validation->all_passed() ? "true" : "false");
    out << ',';
    std::string annotations;
    for (std::size_t i = 0; i < entry.annotations.size(); ++i)
      annotations += (i ? "; " : "") + entry.annotations[i];
    out << csv_quote(annotations) << ',';
    std::string rules;
    for (std::size_t i = 0; i < entry.top_rules.size(); ++i)
      rules += (i ? "; " : "") + rule_text(entry.top_rules[i]);
    out << csv_quote(rules) << "\n";
  }
  return out.str();
}

std::string rules_to_jsonl(const BankruptcyReport& report) {
  std::ostringstream out;
  auto emit_scope = [&](const ScopeRules& scope) {
    for (const AssociationRule& rule : scope.rules) {
      json line = rule_json(rule);
      line["scope"] = scope.scope;
      out << line.dump() << "\n";
    }
  };
  if (report.mining) {
    emit_scope(report.mining->global);
    for (const ScopeRules& scope : report.mining->per_cluster) emit_scope(scope);
  }
  return out.str();
}

std::string transactions_to_csv(const BankruptcyReport& report) {
  std::ostringstream out;
  out << "firm_id,period,items\n";
  if (report.mining) {
    for (const Transaction& t : report.mining->discretization.transactions.transactions) {
      std::string items;
      for (std::size_t i = 0; i < t.items.size(); ++i) items += (i ? ";" : "") + t.items[i].str();
      out << csv_quote(t.key.firm_id) << ',' << t.key.period.str() << ',' << csv_quote(items)
          << "\n";
    }
  }
  return out.str();
}

std::vector<std::filesystem::path> emit_report(const PipelineOutput& output,
                                               const PipelineConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + config.out_dir.string() + "'");

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    std::filesystem::path path = config.out_dir / name;
    write_file(path, content);
    written.push_back(path);
  };

  if (config.report_formats.count(ReportFormat::Json))
    emit("report.json", report_to_json(output.report));
  if (config.report_formats.count(ReportFormat::Csv))
    emit("report.csv", report_to_csv(output.report));
  emit("rules.jsonl", rules_to_jsonl(output.report));
  emit("transactions.csv", transactions_to_csv(output.report));
  for (const auto& [name, document] : output.owl_documents) emit(name, document);
  return written;
}

}  // namespace bilanz
