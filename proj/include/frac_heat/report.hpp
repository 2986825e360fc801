#pragma once

// Versioned, deterministic result documents. A record is keyed by
// (command, alpha, lambda, p, q, t); every numeric value carries the tag of
// the method that produced it.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"

#include "frac_heat/errors.hpp"

namespace frac_heat {

inline constexpr const char* kReportSchema = "frac-heat-report/1";

enum class ReportFormat { json, csv };

inline ReportFormat parse_report_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw DomainError("unknown format '" + s + "' (expected json or csv)");
}

struct TaggedValue {
  std::string name;
  double value = 0.0;
  std::string method;
};

struct Record {
  static constexpr double unset = std::numeric_limits<double>::quiet_NaN();

  std::string command;
  double alpha = unset, lambda = unset, p = unset, q = unset, t = unset;
  std::vector<TaggedValue> values;
  nlohmann::ordered_json info = nlohmann::ordered_json::object();  // non-numeric context
  bool reliable = true;

  Record& add(std::string name, double value, std::string method) {
    values.push_back({std::move(name), value, std::move(method)});
    return *this;
  }
};

namespace detail {

// NaN sorts after every number.
inline int compare_key(double a, double b) {
  const bool na = std::isnan(a), nb = std::isnan(b);
  if (na || nb) return na == nb ? 0 : (na ? 1 : -1);
  return a < b ? -1 : (a > b ? 1 : 0);
}

inline nlohmann::ordered_json number_or_text(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline double number_from_json(const nlohmann::ordered_json& j) {
  if (j.is_null()) return Record::unset;
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw DomainError("report: expected a number, got " + j.dump());
}

inline std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Stable sort by (command, alpha, lambda, p, q, t); NaN keys last.
inline void sort_records(std::vector<Record>& records) {
  std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    if (a.command != b.command) return a.command < b.command;
    for (auto [x, y] : {std::pair{a.alpha, b.alpha}, {a.lambda, b.lambda}, {a.p, b.p}, {a.q, b.q}, {a.t, b.t}}) {
      const int c = detail::compare_key(x, y);
      if (c != 0) return c < 0;
    }
    return false;
  });
}

inline nlohmann::ordered_json record_to_json(const Record& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  for (auto [k, v] : {std::pair{"alpha", r.alpha}, {"lambda", r.lambda}, {"p", r.p}, {"q", r.q}, {"t", r.t}})
    j[k] = std::isnan(v) ? nlohmann::ordered_json(nullptr) : detail::number_or_text(v);
  nlohmann::ordered_json vals = nlohmann::ordered_json::array();
  for (const auto& v : r.values)
    vals.push_back({{"name", v.name}, {"value", detail::number_or_text(v.value)}, {"method", v.method}});
  j["values"] = vals;
  j["info"] = r.info;
  j["reliable"] = r.reliable;
  return j;
}

inline Record record_from_json(const nlohmann::ordered_json& j) {
  Record r;
  try {
    r.command = j.at("command").get<std::string>();
    r.alpha = detail::number_from_json(j.at("alpha"));
    r.lambda = detail::number_from_json(j.at("lambda"));
    r.p = detail::number_from_json(j.at("p"));
    r.q = detail::number_from_json(j.at("q"));
    r.t = detail::number_from_json(j.at("t"));
    for (const auto& v : j.at("values"))
      r.add(v.at("name").get<std::string>(), detail::number_from_json(v.at("value")), v.at("method").get<std::string>());
    r.info = j.value("info", nlohmann::ordered_json::object());
    r.reliable = j.value("reliable", true);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("report record: ") + e.what());
  }
  return r;
}

inline std::vector<Record> parse_report(const std::string& text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("report: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != kReportSchema)
    throw DomainError(std::string("report: missing or unsupported schema (expected ") + kReportSchema + ")");
  std::vector<Record> out;
  for (const auto& r : doc.at("records")) out.push_back(record_from_json(r));
  return out;
}

/// Sorted document. JSON: {"schema", "records"}. CSV: one row per value with
/// columns command,alpha,lambda,p,q,t,name,value,method,reliable,info
/// (info is the record context as compact JSON).
inline std::string emit_report(std::vector<Record> records, ReportFormat format) {
  if (records.empty()) throw DomainError("emit_report: empty result set");
  sort_records(records);
  if (format == ReportFormat::json) {
    nlohmann::ordered_json doc;
    doc["schema"] = kReportSchema;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) doc["records"].push_back(record_to_json(r));
    return doc.dump(2) + "\n";
  }
  std::string out = "command,alpha,lambda,p,q,t,name,value,method,reliable,info\n";
  for (const auto& r : records) {
    const std::string key = detail::csv_field(r.command) + "," + detail::csv_number(r.alpha) + "," +
                            detail::csv_number(r.lambda) + "," + detail::csv_number(r.p) + "," +
                            detail::csv_number(r.q) + "," + detail::csv_number(r.t) + ",";
    const std::string info = r.info.empty() ? "" : detail::csv_field(r.info.dump());
    for (const auto& v : r.values)
      out += key + detail::csv_field(v.name) + "," + detail::csv_number(v.value) + "," + detail::csv_field(v.method) +
             "," + (r.reliable ? "1" : "0") + "," + info + "\n";
  }
  return out;
}

}  // namespace frac_heat
