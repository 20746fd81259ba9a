#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bilanz/errors.hpp"
#include "bilanz/statement.hpp"

namespace bilanz {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Lowercase alphanumerics only: "Total Long-term Assets" -> "totallongtermassets".
std::string normalize_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) out += static_cast<char>(std::tolower(u));
  }
  return out;
}

struct TotalSlot {
  const char* canonical_name;
  Category canonical_category;
  std::optional<Money> DeclaredTotals::*slot;
};

// Declared-total rows are recognized by normalized name; the category cell on
// such rows is accepted but not consulted (grand totals span categories).
constexpr TotalSlot kTotalSlots[] = {
    {"Total Current Assets", Category::CurrentAsset, &DeclaredTotals::total_current_assets},
    {"Total Long-term Assets", Category::LongTermAsset, &DeclaredTotals::total_long_term_assets},
    {"Total Assets", Category::LongTermAsset, &DeclaredTotals::total_assets},
    {"Total Current Liabilities", Category::CurrentLiability,
     &DeclaredTotals::total_current_liabilities},
    {"Total Long-term Liabilities", Category::LongTermLiability,
     &DeclaredTotals::total_long_term_liabilities},
    {"Total Liabilities", Category::LongTermLiability, &DeclaredTotals::total_liabilities},
    {"Overall Total", Category::Equity, &DeclaredTotals::equity},
};

std::optional<Money> DeclaredTotals::*total_slot_for(const std::string& normalized) {
  for (const TotalSlot& slot : kTotalSlots)
    if (normalized == normalize_name(slot.canonical_name)) return slot.slot;
  if (normalized == "totalequity" || normalized == "totalownersequity")
    return &DeclaredTotals::equity;
  return nullptr;
}

struct SupplementalSlot {
  const char* canonical_name;
  std::optional<Money> SupplementalFigures::*slot;
};

constexpr SupplementalSlot kSupplementalSlots[] = {
    {"Sales", &SupplementalFigures::sales},
    {"EBIT", &SupplementalFigures::ebit},
    {"Retained Earnings", &SupplementalFigures::retained_earnings},
    {"Market Value Equity", &SupplementalFigures::market_value_equity},
};

std::optional<Money> SupplementalFigures::*supplemental_slot_for(const std::string& normalized) {
  for (const SupplementalSlot& slot : kSupplementalSlots)
    if (normalized == normalize_name(slot.canonical_name)) return slot.slot;
  if (normalized == "earningsbeforeinterestandtaxes") return &SupplementalFigures::ebit;
  if (normalized == "marketvalueofequity") return &SupplementalFigures::market_value_equity;
  return nullptr;
}

/// Accumulates classified rows: declared totals and recognized supplemental
/// figures are folded into their slots, everything else stays a line item.
struct RowSink {
  std::vector<LineItem> items;
  DeclaredTotals declared;
  SupplementalFigures supplemental;

  void add(LineItem item, std::size_t line_no) {
    std::string normalized = normalize_name(item.name);
    if (auto slot = total_slot_for(normalized)) {
      if (declared.*slot)
        throw ParseError("duplicate declared total '" + item.name + "'", line_no);
      declared.*slot = item.amount;
      return;
    }
    if (item.category == Category::Supplemental) {
      if (auto slot = supplemental_slot_for(normalized)) {
        if (supplemental.*slot)
          throw ParseError("duplicate supplemental figure '" + item.name + "'", line_no);
        supplemental.*slot = item.amount;
        return;
      }
    }
    items.push_back(std::move(item));
  }
};

// --- CSV -------------------------------------------------------------------

struct CsvField {
  std::string text;
  bool quoted = false;
};

std::vector<CsvField> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<CsvField> fields;
  CsvField current;
  bool in_quotes = false;
  bool closed_quote = false;  // set once a quoted field ends; only spaces may follow
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.text += '"';
          ++i;
        } else {
          in_quotes = false;
          closed_quote = true;
        }
      } else {
        current.text += c;
      }
      continue;
    }
    if (c == ',') {
      if (!current.quoted) current.text = trim(current.text);
      fields.push_back(std::move(current));
      current = {};
      closed_quote = false;
    } else if (c == '"' && !current.quoted && trim(current.text).empty()) {
      current = {.text = "", .quoted = true};
      in_quotes = true;
    } else if (closed_quote) {
      if (!std::isspace(static_cast<unsigned char>(c)))
        throw ParseError("unexpected character after closing quote", line_no);
    } else {
      current.text += c;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field", line_no);
  if (!current.quoted) current.text = trim(current.text);
  fields.push_back(std::move(current));
  return fields;
}

Money parse_amount(const std::string& text, std::size_t line_no) {
  try {
    return Money::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no);
  }
}

FinancialStatement parse_csv(std::istream& in, const std::string& default_firm_id,
                             Period default_period) {
  std::string firm_id = default_firm_id;
  Period period = default_period;
  RowSink sink;

  std::vector<std::string> header;  // lowercased column names
  std::vector<std::string> metadata_keys;  // original spelling of extra columns

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string stripped = trim(raw);
    if (stripped.empty()) continue;

    if (stripped.front() == '#') {
      // "# firm_id: acme" / "# period: 2010-02" metadata comments.
      std::string body = trim(stripped.substr(1));
      std::size_t colon = body.find(':');
      if (colon == std::string::npos) continue;
      std::string key = normalize_name(body.substr(0, colon));
      std::string value = trim(body.substr(colon + 1));
      if (key == "firm" || key == "firmid") firm_id = value;
      else if (key == "period") period = Period::parse(value);
      continue;
    }

    std::vector<CsvField> fields = split_csv_line(raw, line_no);
    if (header.empty()) {
      if (fields.size() < 3 || normalize_name(fields[0].text) != "name" ||
          normalize_name(fields[1].text) != "category" || normalize_name(fields[2].text) != "amount")
        throw ParseError("expected header 'name,category,amount[,...]'", line_no);
      for (const CsvField& f : fields) header.push_back(normalize_name(f.text));
      for (std::size_t i = 3; i < fields.size(); ++i) metadata_keys.push_back(fields[i].text);
      continue;
    }

    if (fields.size() < 3 || fields.size() > header.size())
      throw ParseError("expected 3.." + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);

    LineItem item;
    item.name = fields[0].text;
    if (item.name.empty()) throw ParseError("empty line-item name", line_no);
    auto category = category_from_string(fields[1].text);
    if (!category) throw ParseError("unknown category '" + fields[1].text + "'", line_no);
    item.category = *category;
    item.amount = parse_amount(fields[2].text, line_no);
    for (std::size_t i = 3; i < fields.size(); ++i)
      if (!fields[i].text.empty()) item.metadata[metadata_keys[i - 3]] = fields[i].text;

    sink.add(std::move(item), line_no);
  }
  if (header.empty()) throw ParseError("empty document: no header row");

  return FinancialStatement(firm_id, period, std::move(sink.items), sink.supplemental,
                            sink.declared);
}

std::string csv_quote(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\n") != std::string::npos ||
                      (!field.empty() && (std::isspace(static_cast<unsigned char>(field.front())) ||
                                          std::isspace(static_cast<unsigned char>(field.back()))));
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(const FinancialStatement& stmt, std::ostream& out) {
  out << "# firm_id: " << stmt.firm_id() << "\n";
  out << "# period: " << stmt.period().str() << "\n";

  std::vector<std::string> metadata_keys;
  for (const LineItem& item : stmt.items())
    for (const auto& [key, value] : item.metadata)
      if (std::find(metadata_keys.begin(), metadata_keys.end(), key) == metadata_keys.end())
        metadata_keys.push_back(key);
  std::sort(metadata_keys.begin(), metadata_keys.end());

  out << "name,category,amount";
  for (const std::string& key : metadata_keys) out << ',' << csv_quote(key);
  out << "\n";

  auto emit = [&](const std::string& name, Category category, Money amount,
                  const std::map<std::string, std::string>* metadata) {
    out << csv_quote(name) << ',' << to_string(category) << ',' << amount.str();
    for (const std::string& key : metadata_keys) {
      out << ',';
      if (metadata) {
        auto it = metadata->find(key);
        if (it != metadata->end()) out << csv_quote(it->second);
      }
    }
    out << "\n";
  };

  for (const LineItem& item : stmt.items())
    emit(item.name, item.category, item.amount, &item.metadata);

  const SupplementalFigures& supp = stmt.supplemental();
  for (const SupplementalSlot& slot : kSupplementalSlots)
    if (supp.*slot.slot) emit(slot.canonical_name, Category::Supplemental, *(supp.*slot.slot), nullptr);

  const DeclaredTotals& declared = stmt.declared();
  for (const TotalSlot& slot : kTotalSlots)
    if (declared.*slot.slot)
      emit(slot.canonical_name, slot.canonical_category, *(declared.*slot.slot), nullptr);
}

// --- JSON ------------------------------------------------------------------

Money money_from_json(const json& value, const std::string& where) {
  if (value.is_string()) return Money::parse(value.get<std::string>());
  if (value.is_number_integer()) {
    std::int64_t units = value.get<std::int64_t>();
    if (units > INT64_MAX / 100 || units < INT64_MIN / 100)
      throw ParseError(where + ": amount out of range");
    return Money::from_units(units);
  }
  if (value.is_number_float()) {
    double d = value.get<double>();
    if (!std::isfinite(d) || std::abs(d) > 9.0e12)
      throw ParseError(where + ": amount out of range");
    return Money::from_cents(std::llround(d * 100.0));
  }
  throw ParseError(where + ": amount must be a number");
}

json money_to_json(Money amount) {
  if (amount.cents() % 100 == 0) return json(amount.cents() / 100);
  return json(static_cast<double>(amount.cents()) / 100.0);
}

FinancialStatement parse_json_statement(std::istream& in, const std::string& default_firm_id,
                                        Period default_period) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("statement document must be a JSON object");

  std::string firm_id = default_firm_id;
  if (doc.contains("firm_id")) {
    if (!doc["firm_id"].is_string()) throw ParseError("firm_id must be a string");
    firm_id = doc["firm_id"].get<std::string>();
  }
  Period period = default_period;
  if (doc.contains("period")) {
    if (!doc["period"].is_string()) throw ParseError("period must be a string");
    period = Period::parse(doc["period"].get<std::string>());
  }

  RowSink sink;
  if (doc.contains("items")) {
    if (!doc["items"].is_array()) throw ParseError("items must be an array");
    for (const json& row : doc["items"]) {
      if (!row.is_object() || !row.contains("name") || !row.contains("category") ||
          !row.contains("amount"))
        throw ParseError("each item needs name, category, amount");
      LineItem item;
      if (!row["name"].is_string()) throw ParseError("item name must be a string");
      item.name = row["name"].get<std::string>();
      if (item.name.empty()) throw ParseError("empty line-item name");
      if (!row["category"].is_string()) throw ParseError("item category must be a string");
      std::string category_label = row["category"].get<std::string>();
      auto category = category_from_string(category_label);
      if (!category) throw ParseError("unknown category '" + category_label + "'");
      item.category = *category;
      item.amount = money_from_json(row["amount"], "item '" + item.name + "'");
      if (row.contains("metadata")) {
        if (!row["metadata"].is_object()) throw ParseError("item metadata must be an object");
        for (const auto& [key, value] : row["metadata"].items()) {
          if (!value.is_string()) throw ParseError("metadata values must be strings");
          item.metadata[key] = value.get<std::string>();
        }
      }
      sink.add(std::move(item), 0);
    }
  }

  if (doc.contains("supplemental")) {
    const json& supp = doc["supplemental"];
    if (!supp.is_object()) throw ParseError("supplemental must be an object");
    struct Field {
      const char* key;
      std::optional<Money> SupplementalFigures::*slot;
    };
    const Field fields[] = {
        {"sales", &SupplementalFigures::sales},
        {"ebit", &SupplementalFigures::ebit},
        {"retained_earnings", &SupplementalFigures::retained_earnings},
        {"market_value_equity", &SupplementalFigures::market_value_equity},
    };
    for (const Field& field : fields) {
      if (!supp.contains(field.key) || supp[field.key].is_null()) continue;
      if (sink.supplemental.*field.slot)
        throw ParseError(std::string("duplicate supplemental figure '") + field.key + "'");
      sink.supplemental.*field.slot = money_from_json(supp[field.key], field.key);
    }
  }

  return FinancialStatement(firm_id, period, std::move(sink.items), sink.supplemental,
                            sink.declared);
}

void write_json(const FinancialStatement& stmt, std::ostream& out) {
  json doc;
  doc["firm_id"] = stmt.firm_id();
  doc["period"] = stmt.period().str();

  json items = json::array();
  auto emit = [&](const std::string& name, Category category, Money amount,
                  const std::map<std::string, std::string>* metadata) {
    json row;
    row["name"] = name;
    row["category"] = to_string(category);
    row["amount"] = money_to_json(amount);
    if (metadata && !metadata->empty()) {
      json meta;
      for (const auto& [key, value] : *metadata) meta[key] = value;
      row["metadata"] = meta;
    }
    items.push_back(row);
  };
  for (const LineItem& item : stmt.items())
    emit(item.name, item.category, item.amount, &item.metadata);
  const DeclaredTotals& declared = stmt.declared();
  for (const TotalSlot& slot : kTotalSlots)
    if (declared.*slot.slot)
      emit(slot.canonical_name, slot.canonical_category, *(declared.*slot.slot), nullptr);
  doc["items"] = items;

  json supp = json::object();
  const SupplementalFigures& figures = stmt.supplemental();
  if (figures.sales) supp["sales"] = money_to_json(*figures.sales);
  if (figures.ebit) supp["ebit"] = money_to_json(*figures.ebit);
  if (figures.retained_earnings) supp["retained_earnings"] = money_to_json(*figures.retained_earnings);
  if (figures.market_value_equity)
    supp["market_value_equity"] = money_to_json(*figures.market_value_equity);
  doc["supplemental"] = supp;

  out << doc.dump(2) << "\n";
}

}  // namespace

FinancialStatement parse_statement(std::istream& in, StatementFormat format,
                                   const std::string& default_firm_id, Period default_period) {
  switch (format) {
    case StatementFormat::Csv: return parse_csv(in, default_firm_id, default_period);
    case StatementFormat::Json: return parse_json_statement(in, default_firm_id, default_period);
  }
  throw ParseError("unknown statement format");
}

void write_statement(const FinancialStatement& stmt, std::ostream& out, StatementFormat format) {
  switch (format) {
    case StatementFormat::Csv: write_csv(stmt, out); return;
    case StatementFormat::Json: write_json(stmt, out); return;
  }
  throw ParseError("unknown statement format");
}

std::string to_csv(const FinancialStatement& stmt) {
  std::ostringstream out;
  write_statement(stmt, out, StatementFormat::Csv);
  return out.str();
}

std::string to_json(const FinancialStatement& stmt) {
  std::ostringstream out;
  write_statement(stmt, out, StatementFormat::Json);
  return out.str();
}

}  // namespace bilanz
