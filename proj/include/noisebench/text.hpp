#pragma once

#include <string>
#include <string_view>

namespace noisebench {

// True if the byte sequence is well-formed UTF-8.
bool is_valid_utf8(std::string_view bytes);

// Reinterprets each byte as a Latin-1 code point and re-encodes as UTF-8.
std::string latin1_to_utf8(std::string_view bytes);

// Canonical cleaning applied to every column name and categorical value:
// Unicode NFC normalization, trim, internal whitespace collapsed to single
// spaces, control characters removed.
std::string clean_string(std::string_view s);

}  // namespace noisebench
