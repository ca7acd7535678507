#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace mskit::cli {

enum class Format { table, csv, json };

struct OutputEnvelope {
  Format format = Format::table;
  int precision = 12;                      // significant digits
  std::optional<std::string> destination;  // stdout when empty
};

/// Shortest text with at most `digits` significant digits; locale independent.
std::string format_number(double value, int digits);

/// value rounded to `digits` significant digits, for JSON emission.
double round_to_digits(double value, int digits);

using Cell = std::variant<double, long, std::string, bool>;

struct Table {
  std::vector<std::string> title;  // table format only
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string render_csv(const Table& table, int digits);
std::string render_table(const Table& table, int digits);
/// Array of row objects keyed by column name.
nlohmann::ordered_json rows_to_json(const Table& table, int digits);
nlohmann::ordered_json number(double value, int digits);

std::string dump_json(const nlohmann::ordered_json& doc);

/// Writes text to the destination in the envelope (or stdout).
void emit(const OutputEnvelope& env, const std::string& text);

}  // namespace mskit::cli
