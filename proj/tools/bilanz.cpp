#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bilanz/errors.hpp"
#include "bilanz/pipeline.hpp"

namespace {

using nlohmann::json;

struct RunArgs {
  std::string config_path;
  std::vector<std::string> inputs;
  std::string format;
  std::string min_support = "2";
  double min_confidence = 0.6;
  int bins = 3;
  int k = 1;
  std::uint64_t seed = 42;
  double tolerance = 1e-3;
  bool x4_fallback = false;
  std::string scope;
  std::string out_dir;
  std::string report = "json";
  bool owl_per_firm = false;
  int top_rules = 3;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      if (!current.empty()) out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

/// Config file mirrors the flags; values apply only where the flag was not
/// passed explicitly (flags win, then the file, then built-in defaults).
void apply_config_file(const CLI::App& run, RunArgs& args) {
  std::ifstream in(args.config_path);
  if (!in) throw bilanz::ConfigError("cannot open config file '" + args.config_path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw bilanz::ConfigError(std::string("config file: ") + e.what());
  }
  if (!doc.is_object()) throw bilanz::ConfigError("config file must hold a JSON object");

  auto unset = [&](const char* flag) { return run.get_option(flag)->count() == 0; };

  if (doc.contains("input") && unset("--input")) {
    if (doc["input"].is_string()) args.inputs.push_back(doc["input"].get<std::string>());
    else args.inputs = doc["input"].get<std::vector<std::string>>();
  }
  if (doc.contains("format") && unset("--format")) args.format = doc["format"].get<std::string>();
  if (doc.contains("min_support") && unset("--min-support"))
    args.min_support = doc["min_support"].is_string() ? doc["min_support"].get<std::string>()
                                                      : doc["min_support"].dump();
  if (doc.contains("min_confidence") && unset("--min-confidence"))
    args.min_confidence = doc["min_confidence"].get<double>();
  if (doc.contains("bins") && unset("--bins")) args.bins = doc["bins"].get<int>();
  if (doc.contains("k") && unset("--k")) args.k = doc["k"].get<int>();
  if (doc.contains("seed") && unset("--seed")) args.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("tolerance") && unset("--tolerance"))
    args.tolerance = doc["tolerance"].get<double>();
  if (doc.contains("x4_fallback") && unset("--x4-fallback"))
    args.x4_fallback = doc["x4_fallback"].get<bool>();
  if (doc.contains("scope") && unset("--scope")) args.scope = doc["scope"].get<std::string>();
  if (doc.contains("out") && unset("--out")) args.out_dir = doc["out"].get<std::string>();
  if (doc.contains("report") && unset("--report"))
    args.report = doc["report"].is_array()
                      ? [&] {
                          std::string joined;
                          for (const auto& r : doc["report"])
                            joined += (joined.empty() ? "" : ",") + r.get<std::string>();
                          return joined;
                        }()
                      : doc["report"].get<std::string>();
  if (doc.contains("owl_per_firm") && unset("--owl-per-firm"))
    args.owl_per_firm = doc["owl_per_firm"].get<bool>();
  if (doc.contains("top_rules") && unset("--top-rules"))
    args.top_rules = doc["top_rules"].get<int>();
}

bilanz::PipelineConfig build_config(const RunArgs& args) {
  bilanz::PipelineConfig config;
  for (const std::string& input : args.inputs) config.inputs.emplace_back(input);
  if (args.format == "csv") config.input_format = bilanz::StatementFormat::Csv;
  else if (args.format == "json") config.input_format = bilanz::StatementFormat::Json;
  else if (!args.format.empty())
    throw bilanz::ConfigError("unknown format '" + args.format + "' (csv or json)");
  config.tolerance = args.tolerance;
  config.mining.min_support = bilanz::MinSupport::parse(args.min_support);
  config.mining.min_confidence = args.min_confidence;
  config.mining.bins = args.bins;
  config.mining.k_clusters = args.k;
  config.mining.seed = args.seed;
  config.x4_book_equity_fallback = args.x4_fallback;
  if (!args.scope.empty()) config.scope_class = args.scope;
  if (args.out_dir.empty()) throw bilanz::ConfigError("--out <dir> is required");
  config.out_dir = args.out_dir;
  config.report_formats.clear();
  for (const std::string& format : split_list(args.report)) {
    if (format == "json") config.report_formats.insert(bilanz::ReportFormat::Json);
    else if (format == "csv") config.report_formats.insert(bilanz::ReportFormat::Csv);
    else throw bilanz::ConfigError("unknown report format '" + format + "' (json or csv)");
  }
  config.owl_per_firm = args.owl_per_firm;
  config.top_rules = args.top_rules;
  return config;
}

int run_pipeline(const RunArgs& args) {
  bilanz::PipelineConfig config = build_config(args);
  bilanz::PipelineOutput output = bilanz::run(config);
  std::vector<std::filesystem::path> written = bilanz::emit_report(output, config);

  const bilanz::BankruptcyReport& report = output.report;
  for (const bilanz::FirmReportEntry& firm : report.firms) {
    std::cout << firm.firm_id << " " << firm.period.str() << ": ";
    if (firm.score) {
      std::cout << "z=" << firm.score->z << " zone=" << bilanz::to_string(firm.score->zone)
                << (firm.score->bankrupt_95_flag ? " bankrupt95" : "")
                << (firm.x4_proxy ? " (x4 proxy)" : "");
    } else {
      std::cout << "not scored";
    }
    for (const std::string& note : firm.annotations) std::cout << " [" << note << "]";
    std::cout << "\n";
  }
  std::cout << "zones:";
  for (const auto& [zone, count] : report.zone_counts) std::cout << " " << zone << "=" << count;
  std::cout << "\n";
  for (const std::string& warning : report.warnings) std::cout << "warning: " << warning << "\n";
  for (const std::filesystem::path& path : written) std::cout << "wrote " << path.string() << "\n";
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bilanz - bankruptcy intelligence from financial statements"};
  app.set_version_flag("--version", "bilanz 0.1.0");
  app.require_subcommand(1);

  RunArgs args;
  CLI::App* run = app.add_subcommand(
      "run", "Parse statements, build the domain ontology, score and mine, write reports");
  run->add_option("--config", args.config_path, "JSON config file mirroring all flags");
  run->add_option("--input", args.inputs, "Statement file (repeatable)");
  run->add_option("--format", args.format, "Force input format: csv or json (default: by extension)");
  run->add_option("--min-support", args.min_support,
                  "Minimum support: fraction (0.4) or absolute count (3)");
  run->add_option("--min-confidence", args.min_confidence, "Minimum rule confidence (0,1]");
  run->add_option("--bins", args.bins, "Quantile bins per ratio feature (>= 2)");
  run->add_option("--k", args.k, "Number of k-means clusters");
  run->add_option("--seed", args.seed, "Clustering seed")->envname("BILANZ_SEED");
  run->add_option("--tolerance", args.tolerance, "Relative tolerance for statement validation");
  run->add_flag("--x4-fallback", args.x4_fallback,
                "Use book equity when market value of equity is absent (marked x4_proxy)");
  run->add_option("--scope", args.scope, "Mine only firm-periods under this ontology class");
  run->add_option("--out", args.out_dir, "Output directory");
  run->add_option("--report", args.report, "Report formats, comma separated: json,csv");
  run->add_flag("--owl-per-firm", args.owl_per_firm,
                "Write one OWL file per firm-period instead of a merged ontology.owl");
  run->add_option("--top-rules", args.top_rules, "Rules listed per firm in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (!args.config_path.empty()) apply_config_file(*run, args);
    return run_pipeline(args);
  } catch (const bilanz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
