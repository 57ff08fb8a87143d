#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "noisebench/errors.hpp"
#include "noisebench/table.hpp"

namespace noisebench {

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
  char quote = '"';
};

class MalformedRow : public Error {
 public:
  MalformedRow(std::size_t line, const std::string& detail)
      : Error("malformed row at line " + std::to_string(line) + ": " + detail),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EncodingError : public Error {
 public:
  explicit EncodingError(const std::string& detail) : Error("encoding error: " + detail) {}
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("empty input") {}
};

// RFC-style CSV. Input must be UTF-8; on invalid UTF-8 the stream is decoded
// as Latin-1. Empty cells become missing values. Every row must have the
// same arity as the first.
RawTable parse_csv(std::string_view bytes, const CsvOptions& options = {});

// Inverse of parse_csv for complete tables; missing cells serialize as empty.
std::string serialize_csv(const RawTable& table, const CsvOptions& options = {});

}  // namespace noisebench
