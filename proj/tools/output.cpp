#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace mskit::cli {

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

double round_to_digits(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
  const std::string text = format_number(value, digits);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

namespace {

std::string cell_text(const Cell& cell, int digits) {
  return std::visit(
      [digits](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v, digits);
        } else if constexpr (std::is_same_v<T, long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

std::string render_csv(const Table& table, int digits) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_text(row[i], digits);
    }
    out += '\n';
  }
  return out;
}

std::string render_table(const Table& table, int digits) {
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(table.columns.size(), 0);
  for (std::size_t i = 0; i < table.columns.size(); ++i) width[i] = table.columns[i].size();
  for (const auto& row : table.rows) {
    auto& line = text.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell_text(row[i], digits));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  std::string out;
  for (const auto& t : table.title) out += t + '\n';
  auto put_line = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += "  ";
      line += std::string(width[i] - cells[i].size(), ' ') + cells[i];
    }
    out += line + '\n';
  };
  put_line(table.columns);
  for (const auto& line : text) put_line(line);
  return out;
}

nlohmann::ordered_json number(double value, int digits) {
  if (!std::isfinite(value)) return nullptr;
  return round_to_digits(value, digits);
}

nlohmann::ordered_json rows_to_json(const Table& table, int digits) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              obj[table.columns[i]] = number(v, digits);
            } else {
              obj[table.columns[i]] = v;
            }
          },
          row[i]);
    }
    doc.push_back(std::move(obj));
  }
  return doc;
}

std::string dump_json(const nlohmann::ordered_json& doc) { return doc.dump(2) + '\n'; }

void emit(const OutputEnvelope& env, const std::string& text) {
  if (!env.destination) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(*env.destination, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file " + *env.destination);
  file << text;
}

}  // namespace mskit::cli
