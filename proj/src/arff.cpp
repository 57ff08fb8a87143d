#include "noisebench/arff.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "noisebench/text.hpp"

namespace noisebench {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool istarts_with(std::string_view line, std::string_view keyword) {
  return line.size() >= keyword.size() && to_lower(line.substr(0, keyword.size())) == keyword;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') ||
                        (s.front() == '"' && s.back() == '"'))) {
    return std::string(s.substr(1, s.size() - 2));
  }
  return std::string(s);
}

// Splits a data row or nominal set on commas, honoring simple quoting.
std::vector<std::string> split_values(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  char quote = 0;
  for (char c : s) {
    if (quote != 0) {
      if (c == quote) {
        quote = 0;
      } else {
        cur.push_back(c);
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == ',') {
      out.push_back(std::string(trim(cur)));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::string(trim(cur)));
  return out;
}

bool parses_as_double(std::string_view s) {
  double v;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

ArffResult parse_arff(std::string_view bytes) {
  if (bytes.find('\0') != std::string_view::npos) {
    throw EncodingError("input contains NUL bytes");
  }
  std::string decoded;
  if (!is_valid_utf8(bytes)) {
    decoded = latin1_to_utf8(bytes);
    bytes = decoded;
  }

  ArffResult result;
  bool in_data = false;
  bool saw_data_marker = false;
  std::size_t line_no = 0;
  std::vector<std::unordered_set<std::string>> nominal_lookup;

  std::size_t pos = 0;
  while (pos <= bytes.size()) {
    const std::size_t eol = bytes.find('\n', pos);
    std::string_view raw_line = bytes.substr(pos, eol == std::string_view::npos ? bytes.size() - pos
                                                                                : eol - pos);
    pos = eol == std::string_view::npos ? bytes.size() + 1 : eol + 1;
    ++line_no;
    if (!raw_line.empty() && raw_line.back() == '\r') raw_line.remove_suffix(1);
    const std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '%') continue;

    if (!in_data) {
      if (istarts_with(line, "@relation")) {
        result.relation = unquote(line.substr(9));
      } else if (istarts_with(line, "@attribute")) {
        std::string_view rest = trim(line.substr(10));
        // Attribute name: quoted or up to first whitespace.
        std::string name;
        if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
          const char q = rest.front();
          const auto close = rest.find(q, 1);
          if (close == std::string_view::npos) {
            throw MalformedRow(line_no, "unterminated attribute name quote");
          }
          name = std::string(rest.substr(1, close - 1));
          rest = trim(rest.substr(close + 1));
        } else {
          const auto ws = rest.find_first_of(" \t");
          if (ws == std::string_view::npos) {
            throw MalformedRow(line_no, "attribute declaration without a type");
          }
          name = std::string(rest.substr(0, ws));
          rest = trim(rest.substr(ws));
        }
        result.table.column_names.push_back(name);
        if (!rest.empty() && rest.front() == '{') {
          if (rest.back() != '}') {
            throw MalformedRow(line_no, "unterminated nominal set");
          }
          auto values = split_values(rest.substr(1, rest.size() - 2));
          for (auto& v : values) v = unquote(v);
          result.kinds.push_back(ColumnKind::Categorical);
          nominal_lookup.emplace_back(values.begin(), values.end());
          result.nominal_values.push_back(std::move(values));
        } else {
          const std::string type = to_lower(trim(rest));
          if (type == "numeric" || type == "real" || type == "integer") {
            result.kinds.push_back(ColumnKind::Numeric);
            result.nominal_values.emplace_back();
            nominal_lookup.emplace_back();
          } else {
            throw UnknownAttributeType(line_no, std::string(trim(rest)));
          }
        }
      } else if (istarts_with(line, "@data")) {
        in_data = true;
        saw_data_marker = true;
        result.table.n_cols = result.table.column_names.size();
      }
      continue;
    }

    auto values = split_values(line);
    if (values.size() != result.table.n_cols) {
      throw MalformedRow(line_no, "expected " + std::to_string(result.table.n_cols) +
                                      " values, got " + std::to_string(values.size()));
    }
    for (std::size_t c = 0; c < values.size(); ++c) {
      const std::string& v = values[c];
      if (v == "?") {
        result.table.cells.emplace_back(std::nullopt);
        continue;
      }
      if (result.kinds[c] == ColumnKind::Categorical) {
        if (nominal_lookup[c].find(v) == nominal_lookup[c].end()) {
          throw ValueNotInNominalSet(line_no, v);
        }
      } else if (!parses_as_double(v)) {
        throw MalformedRow(line_no, "non-numeric value '" + v + "' in numeric attribute");
      }
      result.table.cells.emplace_back(v);
    }
    ++result.table.n_rows;
  }

  if (!saw_data_marker) throw MissingDataSection();
  return result;
}

}  // namespace noisebench
