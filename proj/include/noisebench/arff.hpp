#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "noisebench/csv.hpp"
#include "noisebench/table.hpp"

namespace noisebench {

class MissingDataSection : public Error {
 public:
  MissingDataSection() : Error("ARFF input has no @data section") {}
};

class UnknownAttributeType : public Error {
 public:
  UnknownAttributeType(std::size_t line, const std::string& type)
      : Error("unknown attribute type '" + type + "' at line " + std::to_string(line)),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValueNotInNominalSet : public Error {
 public:
  ValueNotInNominalSet(std::size_t line, const std::string& value)
      : Error("value '" + value + "' at line " + std::to_string(line) +
              " is not in the declared nominal set"),
        line_(line),
        value_(value) {}
  std::size_t line() const { return line_; }
  const std::string& value() const { return value_; }

 private:
  std::size_t line_;
  std::string value_;
};

struct ArffResult {
  std::string relation;
  RawTable table;
  std::vector<ColumnKind> kinds;
  // Declared value sets, aligned with columns; empty for numeric columns.
  std::vector<std::vector<std::string>> nominal_values;
};

// ARFF reader: @relation, @attribute declarations, @data rows. numeric /
// real / integer attributes map to Numeric, {a,b,...} sets to Categorical.
// '?' cells are missing, '%' starts a comment line.
ArffResult parse_arff(std::string_view bytes);

}  // namespace noisebench
