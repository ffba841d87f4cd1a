#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace cli {

namespace {

constexpr double kMaxLog = 700.0;

std::string g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_from_log(double log) {
  if (std::abs(log) <= kMaxLog) return g17(std::exp(log));
  if (!std::isfinite(log)) return log > 0 ? "inf" : "0";
  const double e10 = log / std::numbers::ln10;
  double exponent = std::floor(e10);
  double mantissa = std::pow(10.0, e10 - exponent);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", mantissa);
  if (buf[0] == '1' && buf[1] == '0') {
    mantissa /= 10.0;
    exponent += 1.0;
    std::snprintf(buf, sizeof buf, "%.12f", mantissa);
  }
  return std::string(buf) + "e" + (exponent >= 0 ? "+" : "") + std::to_string(static_cast<long long>(exponent));
}

std::string csv_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return g17(v); }
    std::string operator()(const std::string& v) const { return quote_csv(v); }
    std::string operator()(LogNumber v) const { return format_from_log(v.log); }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return g17(v);
      return v;
    }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    nlohmann::ordered_json operator()(LogNumber v) const {
      if (std::abs(v.log) > kMaxLog) return format_from_log(v.log);
      return std::exp(v.log);
    }
  };
  return std::visit(Visitor{}, cell);
}

void write_csv(std::ostream& os, const Table& table,
               const std::vector<std::pair<std::string, std::string>>& footer) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << quote_csv(table.columns[i]);
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  for (const auto& [key, value] : footer) os << "# " << key << ": " << value << '\n';
}

nlohmann::ordered_json rows_json(const Table& table) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

}  // namespace cli
