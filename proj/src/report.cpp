#include "mcnoma/report.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace mcnoma {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string cell_to_string(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) {
    return *s;
  }
  if (const auto* d = std::get_if<double>(&cell)) {
    return format_double(*d);
  }
  return std::to_string(std::get<std::int64_t>(cell));
}

}  // namespace

Table sweep_table(const SweepResult& result) {
  Table t;
  t.schema = kSweepSchema;
  t.columns = {"schema", "x", "method", "mean_watts", "mean_dbm", "std_error", "realizations"};
  const auto add_row = [&](std::size_t i, const char* method, const PointStats& stats) {
    if (!stats.present) {
      return;  // absent cells are omitted, not extrapolated
    }
    t.rows.push_back({std::string(kSweepSchema), result.x_values[i], std::string(method),
                      stats.mean_watts, watts_to_dbm(stats.mean_watts), stats.std_error_watts,
                      static_cast<std::int64_t>(stats.realizations)});
  };
  for (std::size_t i = 0; i < result.x_values.size(); ++i) {
    add_row(i, "proposed", result.proposed[i]);
    add_row(i, "exhaustive", result.exhaustive[i]);
    add_row(i, "random", result.random_baseline[i]);
    add_row(i, "oma", result.oma[i]);
  }
  return t;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("row width does not match the column count");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << cell_to_string(row[c]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("row width does not match the column count");
    }
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const auto* s = std::get_if<std::string>(&row[c])) {
        obj[table.columns[c]] = *s;
      } else if (const auto* d = std::get_if<double>(&row[c])) {
        obj[table.columns[c]] = *d;
      } else {
        obj[table.columns[c]] = std::get<std::int64_t>(row[c]);
      }
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, TableFormat format) {
  if (format == TableFormat::kCsv) {
    write_csv(out, table);
  } else {
    write_json(out, table);
  }
}

}  // namespace mcnoma
