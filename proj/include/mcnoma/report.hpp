#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "mcnoma/experiments.hpp"

namespace mcnoma {

using Cell = std::variant<std::string, double, std::int64_t>;

// Flat machine-readable table. Every row carries the schema tag as its first
// field, so the CSV and JSON writers emit identical values.
struct Table {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline constexpr const char* kSweepSchema = "mcnoma.sweep.v1";
inline constexpr const char* kVerifySchema = "mcnoma.verify.v1";
inline constexpr const char* kScheduleSchema = "mcnoma.schedule.v1";

Table sweep_table(const SweepResult& result);

// Comma separated, '.' decimal point, one header row. Doubles carry 17
// significant digits so values round-trip exactly.
void write_csv(std::ostream& out, const Table& table);

// Array of row objects keyed by the column names, in column order.
void write_json(std::ostream& out, const Table& table);

enum class TableFormat { kCsv, kJson };

void write_table(std::ostream& out, const Table& table, TableFormat format);

}  // namespace mcnoma
