#include "core/results.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "core/error.hpp"
#include "json.hpp"

namespace entcorr {

namespace {

bool parse_double(const std::string& field, double& out) {
  if (field.empty()) return false;
  char* end = nullptr;
  out = std::strtod(field.c_str(), &end);
  return end == field.c_str() + field.size();
}

// The double nearest the 12-digit rendering; emitting this value in any
// format reproduces the same digits.
double clip_to_precision(double value) {
  return std::strtod(format_result_value(value).c_str(), nullptr);
}

void check_text_piece(const std::string& piece, const char* what) {
  require(!piece.empty() &&
              piece.find_first_of(",\"\n\r") == std::string::npos,
          ErrorCode::invalid_argument, what, " '", piece,
          "' must be nonempty and free of commas, quotes, and line breaks");
}

void validate_for_emit(const ResultTable& table) {
  require(!table.columns.empty(), ErrorCode::invalid_argument,
          "table has no columns");
  require(!table.rows.empty(), ErrorCode::invalid_argument,
          "refusing to render an empty table");
  for (const std::string& name : table.columns)
    check_text_piece(name, "column name");
  if (!table.tag_name.empty()) {
    check_text_piece(table.tag_name, "tag column name");
    require(table.tags.size() == table.rows.size(),
            ErrorCode::invalid_argument,
            "tag column is missing entries: ", table.tags.size(), " tags for ",
            table.rows.size(), " rows");
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    require(table.rows[r].size() == table.columns.size(),
            ErrorCode::invalid_argument, "row ", r + 1, " has ",
            table.rows[r].size(), " values for ", table.columns.size(),
            " columns");
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      require(std::isfinite(table.rows[r][c]), ErrorCode::invalid_argument,
              "row ", r + 1, " column ", table.columns[c],
              " is not finite; refusing to render");
    if (!table.tag_name.empty()) check_text_piece(table.tags[r], "tag");
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

void ResultTable::add_row(std::vector<double> values, std::string tag) {
  require(values.size() == columns.size(), ErrorCode::invalid_argument,
          "row has ", values.size(), " values for ", columns.size(),
          " columns");
  if (tag_name.empty())
    require(tag.empty(), ErrorCode::invalid_argument,
            "table has no tag column but a tag was supplied");
  else
    require(!tag.empty(), ErrorCode::invalid_argument,
            "table has a tag column '", tag_name, "' but no tag was supplied");
  rows.push_back(std::move(values));
  if (!tag_name.empty()) tags.push_back(std::move(tag));
}

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == name) return c;
  fail(ErrorCode::invalid_argument, "unknown column '", name, "'");
}

std::string format_result_value(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string to_csv(const ResultTable& table) {
  validate_for_emit(table);
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  if (!table.tag_name.empty()) {
    out += ',';
    out += table.tag_name;
  }
  out += '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out += ',';
      out += format_result_value(table.rows[r][c]);
    }
    if (!table.tag_name.empty()) {
      out += ',';
      out += table.tags[r];
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ResultTable& table) {
  validate_for_emit(table);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      row[table.columns[c]] = clip_to_precision(table.rows[r][c]);
    if (!table.tag_name.empty()) row[table.tag_name] = table.tags[r];
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

ResultTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::parse,
          "table text is empty");
  const std::vector<std::string> names = split_csv_line(line);
  require(!names.empty(), ErrorCode::parse, "header line has no columns");

  std::vector<std::vector<std::string>> cells;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> row = split_csv_line(line);
    require(row.size() == names.size(), ErrorCode::parse, "line ", line_no,
            ": expected ", names.size(), " fields, got ", row.size());
    cells.push_back(std::move(row));
  }
  require(!cells.empty(), ErrorCode::parse, "table has a header but no rows");

  // A column whose cells are not all numeric is the tag column; only one
  // such column is allowed.
  std::vector<bool> numeric(names.size(), true);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < names.size(); ++c) {
      double ignored;
      if (!parse_double(row[c], ignored)) numeric[c] = false;
    }

  ResultTable table;
  std::size_t tag_column = names.size();
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (numeric[c]) {
      table.columns.push_back(names[c]);
      continue;
    }
    if (tag_column != names.size())
      fail(ErrorCode::parse, "columns '", names[tag_column], "' and '",
           names[c],
           "' are both non-numeric; at most one tag column is supported");
    tag_column = c;
    table.tag_name = names[c];
  }
  require(!table.columns.empty(), ErrorCode::parse,
          "table has no numeric columns");

  for (const auto& row : cells) {
    std::vector<double> values;
    values.reserve(table.columns.size());
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (c == tag_column) continue;
      double v = 0.0;
      parse_double(row[c], v);
      values.push_back(v);
    }
    table.rows.push_back(std::move(values));
    if (tag_column != names.size()) table.tags.push_back(row[tag_column]);
  }
  return table;
}

ResultTable parse_json(const std::string& text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, "invalid JSON: ", e.what());
  }
  require(doc.is_array() && !doc.empty(), ErrorCode::parse,
          "expected a nonempty JSON array of row objects");

  ResultTable table;
  const auto& first = doc.front();
  require(first.is_object() && !first.empty(), ErrorCode::parse,
          "rows must be nonempty JSON objects");
  for (auto it = first.begin(); it != first.end(); ++it) {
    if (it.value().is_string()) {
      require(table.tag_name.empty(), ErrorCode::parse, "fields '",
              table.tag_name, "' and '", it.key(),
              "' are both strings; at most one tag field is supported");
      table.tag_name = it.key();
    } else {
      require(it.value().is_number(), ErrorCode::parse, "field '", it.key(),
              "' is neither a number nor a string");
      table.columns.push_back(it.key());
    }
  }
  require(!table.columns.empty(), ErrorCode::parse,
          "table has no numeric fields");

  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& row = doc[r];
    require(row.is_object() && row.size() == first.size(), ErrorCode::parse,
            "row ", r + 1, " does not match the first row's fields");
    std::vector<double> values;
    values.reserve(table.columns.size());
    for (const std::string& name : table.columns) {
      require(row.contains(name) && row[name].is_number(), ErrorCode::parse,
              "row ", r + 1, " is missing numeric field '", name, "'");
      values.push_back(row[name].get<double>());
    }
    table.rows.push_back(std::move(values));
    if (!table.tag_name.empty()) {
      require(row.contains(table.tag_name) && row[table.tag_name].is_string(),
              ErrorCode::parse, "row ", r + 1, " is missing tag field '",
              table.tag_name, "'");
      table.tags.push_back(row[table.tag_name].get<std::string>());
    }
  }
  return table;
}

}  // namespace entcorr
