#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace cli {

/// A positive real carried by its natural logarithm.
struct LogNumber {
  double log = 0.0;
};

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, LogNumber>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { Csv, Json };

/// Decimal text for exp(log), in scientific notation when out of double range.
std::string format_from_log(double log);

std::string csv_cell(const Cell& cell);
nlohmann::ordered_json json_cell(const Cell& cell);

/// Header, rows, then one "# key: value" line per footer entry.
void write_csv(std::ostream& os, const Table& table,
               const std::vector<std::pair<std::string, std::string>>& footer = {});

nlohmann::ordered_json rows_json(const Table& table);

}  // namespace cli
