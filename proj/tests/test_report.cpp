#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcnoma/report.hpp"

using namespace mcnoma;

namespace {

SweepResult sample_result() {
  SweepResult r;
  r.x_name = "cell_size_m";
  r.x_values = {100.0, 200.0};
  r.seed = 5;
  const auto stats = [](double mean, double se, bool present) {
    PointStats s;
    s.mean_watts = mean;
    s.std_error_watts = se;
    s.realizations = 12;
    s.present = present;
    return s;
  };
  r.proposed = {stats(1.25e-7, 3e-9, true), stats(4.5e-7, 9e-9, true)};
  r.random_baseline = {stats(2.5e-7, 5e-9, true), stats(8.1e-7, 2e-8, true)};
  r.exhaustive = {stats(1.2e-7, 3e-9, true), stats(0, 0, false)};  // second point absent
  r.oma = {stats(3.3e-7, 6e-9, true), stats(9.9e-7, 1e-8, true)};
  return r;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) {
    out.push_back(field);
  }
  return out;
}

}  // namespace

TEST_CASE("sweep table layout") {
  const Table t = sweep_table(sample_result());
  CHECK(t.schema == std::string(kSweepSchema));
  CHECK(t.columns == std::vector<std::string>{"schema", "x", "method", "mean_watts", "mean_dbm",
                                              "std_error", "realizations"});
  // 4 methods at x=100, 3 at x=200 (exhaustive absent there)
  CHECK(t.rows.size() == 7);
  for (const auto& row : t.rows) {
    CHECK(std::get<std::string>(row[0]) == std::string(kSweepSchema));
    const double watts = std::get<double>(row[3]);
    CHECK(std::get<double>(row[4]) == doctest::Approx(watts_to_dbm(watts)).epsilon(1e-12));
  }
}

TEST_CASE("csv and json writers emit identical values") {
  const Table t = sweep_table(sample_result());

  std::ostringstream csv_out;
  write_csv(csv_out, t);
  std::ostringstream json_out;
  write_table(json_out, t, TableFormat::kJson);

  // parse the CSV back
  std::istringstream csv_in(csv_out.str());
  std::string line;
  REQUIRE(std::getline(csv_in, line));
  const auto header = split(line, ',');
  CHECK(header == t.columns);
  std::vector<std::vector<std::string>> csv_rows;
  while (std::getline(csv_in, line)) {
    csv_rows.push_back(split(line, ','));
  }
  REQUIRE(csv_rows.size() == t.rows.size());

  // parse the JSON back
  const auto parsed = nlohmann::json::parse(json_out.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == t.rows.size());

  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& object = parsed[i];
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const Cell& cell = t.rows[i][c];
      const std::string& csv_field = csv_rows[i][c];
      const auto& json_field = object.at(t.columns[c]);
      if (const auto* s = std::get_if<std::string>(&cell)) {
        CHECK(csv_field == *s);
        CHECK(json_field.get<std::string>() == *s);
      } else if (const auto* d = std::get_if<double>(&cell)) {
        CHECK(std::strtod(csv_field.c_str(), nullptr) == *d);  // 17 digits round-trip
        CHECK(json_field.get<double>() == *d);
      } else {
        CHECK(std::stoll(csv_field) == std::get<std::int64_t>(cell));
        CHECK(json_field.get<std::int64_t>() == std::get<std::int64_t>(cell));
      }
    }
  }
}

TEST_CASE("ragged rows are rejected") {
  Table t;
  t.schema = "x";
  t.columns = {"a", "b"};
  t.rows.push_back({std::string("only one")});
  std::ostringstream out;
  CHECK_THROWS_AS(write_csv(out, t), std::invalid_argument);
  CHECK_THROWS_AS(write_json(out, t), std::invalid_argument);
}
