#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace entcorr {

// A small numeric table with named columns and an optional trailing string
// column (the "tag"), used for scan and sweep outputs. Values are plain
// doubles; rendering clips them to 12 significant digits, which is above
// round-trip loss and below numerical noise for these quantities.
struct ResultTable {
  std::vector<std::string> columns;       // numeric column names, in order
  std::string tag_name;                   // empty when there is no tag column
  std::vector<std::vector<double>> rows;  // each row matches columns.size()
  std::vector<std::string> tags;          // one per row when tag_name is set

  std::size_t row_count() const { return rows.size(); }

  // Appends one row; the tag is required exactly when tag_name is set.
  void add_row(std::vector<double> values, std::string tag = "");

  // Column position by name; throws invalid_argument for unknown names.
  std::size_t column_index(const std::string& name) const;

  double value(std::size_t row, const std::string& name) const {
    return rows.at(row).at(column_index(name));
  }
};

// Comma-separated text: one header line with the column names (tag last),
// then one line per row with numbers at 12 significant digits. Tags must be
// free of commas, quotes, and line breaks. Non-finite values are refused
// with an error naming the row and column, as is an empty table.
std::string to_csv(const ResultTable& table);

// The same content as a JSON array of one object per row, fields in column
// order, numbers rounded to 12 significant digits. Same refusal rules.
std::string to_json(const ResultTable& table);

// Inverse transforms. A single non-numeric column is taken as the tag
// column; more than one is an error. Both accept exactly what the emitters
// produce and raise parse errors (with line context for CSV) otherwise.
ResultTable parse_csv(const std::string& text);
ResultTable parse_json(const std::string& text);

// The fixed 12-significant-digit rendering used in both formats.
std::string format_result_value(double value);

}  // namespace entcorr
