#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace creutz::cli {

using Cell = std::variant<double, long long, bool, std::string>;
using Field = std::pair<std::string, Cell>;

/// One command's output: echoed inputs, scalar results and a data table.
struct Table {
  std::string command;
  std::vector<Field> inputs;
  std::vector<Field> summary;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Reals with 15 significant digits; inf/-inf/nan spelled out.
std::string format_real(double x);
std::string format_cell(const Cell& c);

/// The value a reader recovers from format_real(x).
double serialized_real(double x);

void write_csv(const Table& table, std::ostream& out,
               const std::optional<std::string>& timestamp = std::nullopt);
void write_json(const Table& table, std::ostream& out,
                const std::optional<std::string>& timestamp = std::nullopt);

/// Text-level view of a CSV file as written by write_csv().
struct CsvFile {
  std::string version;
  std::string command;
  std::optional<std::string> timestamp;
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> summary;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Column values parsed as reals ("inf", "nan", "true" and "false" too).
  std::vector<double> column(const std::string& name) const;
};

CsvFile read_csv(std::istream& in);

/// Parses a number as written by format_real(); throws std::invalid_argument.
double parse_real(const std::string& text);

}  // namespace creutz::cli
