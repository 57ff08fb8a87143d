#include "noisebench/csv.hpp"

#include <utility>

#include "noisebench/text.hpp"

namespace noisebench {

namespace {

// One record split into raw fields. Quoted fields may contain delimiters,
// quotes (doubled) and newlines.
struct RowScan {
  std::vector<std::string> fields;
  std::size_t start_line = 0;
};

}  // namespace

RawTable parse_csv(std::string_view bytes, const CsvOptions& options) {
  if (bytes.find('\0') != std::string_view::npos) {
    throw EncodingError("input contains NUL bytes");
  }
  std::string decoded;
  if (!is_valid_utf8(bytes)) {
    decoded = latin1_to_utf8(bytes);
    bytes = decoded;
  }
  // Strip a UTF-8 BOM if present.
  if (bytes.substr(0, 3) == "\xef\xbb\xbf") bytes.remove_prefix(3);

  std::vector<RowScan> rows;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;
  std::size_t line = 1;
  std::size_t row_start_line = 1;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    if (row_has_content || !fields.empty() || !field.empty()) {
      end_field();
      rows.push_back({std::move(fields), row_start_line});
      fields.clear();
    }
    row_has_content = false;
    row_start_line = line;
  };

  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const char c = bytes[i];
    if (in_quotes) {
      if (c == options.quote) {
        if (i + 1 < bytes.size() && bytes[i + 1] == options.quote) {
          field.push_back(options.quote);
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == options.quote && field.empty()) {
      in_quotes = true;
      row_has_content = true;
    } else if (c == options.delimiter) {
      end_field();
      row_has_content = true;
    } else if (c == '\n') {
      end_row();
      ++line;
      row_start_line = line;
    } else if (c == '\r') {
      // swallow; `\r\n` handled by the `\n` branch
    } else {
      field.push_back(c);
      row_has_content = true;
    }
  }
  if (in_quotes) {
    throw MalformedRow(row_start_line, "unterminated quoted field");
  }
  end_row();

  if (rows.empty()) throw EmptyInput();

  RawTable table;
  std::size_t first_data = 0;
  table.n_cols = rows[0].fields.size();
  if (options.header) {
    for (auto& name : rows[0].fields) table.column_names.push_back(name);
    first_data = 1;
  } else {
    for (std::size_t c = 0; c < table.n_cols; ++c) {
      table.column_names.push_back("c" + std::to_string(c));
    }
  }
  table.n_rows = rows.size() - first_data;
  table.cells.reserve(table.n_rows * table.n_cols);
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    if (rows[r].fields.size() != table.n_cols) {
      throw MalformedRow(rows[r].start_line,
                         "expected " + std::to_string(table.n_cols) + " fields, got " +
                             std::to_string(rows[r].fields.size()));
    }
    for (auto& f : rows[r].fields) {
      if (f.empty()) {
        table.cells.emplace_back(std::nullopt);
      } else {
        table.cells.emplace_back(std::move(f));
      }
    }
  }
  return table;
}

std::string serialize_csv(const RawTable& table, const CsvOptions& options) {
  std::string out;
  auto write_field = [&](const std::string& value) {
    const bool needs_quote = value.find(options.delimiter) != std::string::npos ||
                             value.find(options.quote) != std::string::npos ||
                             value.find('\n') != std::string::npos ||
                             value.find('\r') != std::string::npos;
    if (!needs_quote) {
      out += value;
      return;
    }
    out.push_back(options.quote);
    for (char c : value) {
      if (c == options.quote) out.push_back(options.quote);
      out.push_back(c);
    }
    out.push_back(options.quote);
  };

  if (options.header) {
    for (std::size_t c = 0; c < table.column_names.size(); ++c) {
      if (c) out.push_back(options.delimiter);
      write_field(table.column_names[c]);
    }
    out.push_back('\n');
  }
  for (std::size_t r = 0; r < table.n_rows; ++r) {
    for (std::size_t c = 0; c < table.n_cols; ++c) {
      if (c) out.push_back(options.delimiter);
      if (const auto& cell = table.cell(r, c)) write_field(*cell);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace noisebench
