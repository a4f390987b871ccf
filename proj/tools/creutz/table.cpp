#include "table.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#ifndef CREUTZ_VERSION
#define CREUTZ_VERSION "unknown"
#endif

namespace creutz::cli {

namespace {

void check_plain(const std::string& s) {
  if (s.find_first_of(",\n\r\"") != std::string::npos) {
    throw std::invalid_argument("text cell '" + s + "' needs quoting");
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

nlohmann::ordered_json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return serialized_real(v);
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double serialized_real(double x) { return parse_real(format_real(x)); }

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          check_plain(v);
          return v;
        }
      },
      c);
}

double parse_real(const std::string& text) {
  if (text == "true") return 1.0;
  if (text == "false") return 0.0;
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size()) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

void write_csv(const Table& table, std::ostream& out, const std::optional<std::string>& timestamp) {
  out << "# creutz " << CREUTZ_VERSION << '\n';
  out << "# command = " << table.command << '\n';
  if (timestamp) out << "# timestamp = " << *timestamp << '\n';
  for (const auto& [key, value] : table.inputs) {
    out << "# input." << key << " = " << format_cell(value) << '\n';
  }
  for (const auto& [key, value] : table.summary) {
    out << "# summary." << key << " = " << format_cell(value) << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    check_plain(table.columns[i]);
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::logic_error("row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out,
                const std::optional<std::string>& timestamp) {
  nlohmann::ordered_json doc;
  doc["creutz_version"] = CREUTZ_VERSION;
  doc["command"] = table.command;
  if (timestamp) doc["timestamp"] = *timestamp;
  auto& inputs = doc["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.inputs) inputs[key] = to_json(value);
  auto& summary = doc["summary"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.summary) summary[key] = to_json(value);
  doc["columns"] = table.columns;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = to_json(row[i]);
    rows.push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

std::vector<double> CsvFile::column(const std::string& name) const {
  std::size_t idx = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) idx = i;
  }
  if (idx == columns.size()) throw std::invalid_argument("no column '" + name + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(parse_real(r.at(idx)));
  return out;
}

CsvFile read_csv(std::istream& in) {
  CsvFile f;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.substr(line.find_first_not_of("# "));
      if (body.rfind("creutz ", 0) == 0) {
        f.version = body.substr(7);
        continue;
      }
      const auto eq = body.find(" = ");
      if (eq == std::string::npos) continue;
      const std::string key = body.substr(0, eq), value = body.substr(eq + 3);
      if (key == "command")
        f.command = value;
      else if (key == "timestamp")
        f.timestamp = value;
      else if (key.rfind("input.", 0) == 0)
        f.inputs[key.substr(6)] = value;
      else if (key.rfind("summary.", 0) == 0)
        f.summary[key.substr(8)] = value;
      continue;
    }
    if (!header) {
      f.columns = split(line);
      header = true;
    } else {
      auto cells = split(line);
      if (cells.size() != f.columns.size()) {
        throw std::invalid_argument("row width does not match the header: " + line);
      }
      f.rows.push_back(std::move(cells));
    }
  }
  return f;
}

}  // namespace creutz::cli
