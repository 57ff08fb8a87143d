#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace noisebench {

// Deterministic synthetic datasets bundled with the tool so benchmarks run
// without network access. Each generator produces byte-stable CSV, shaped
// like a well-known public benchmark dataset (row count, feature count and
// class balance).
bool is_builtin_url(std::string_view url);

// For a "builtin:<name>" url, the generator name.
std::string builtin_name(std::string_view url);

std::vector<std::string> builtin_names();

// CSV bytes for the named generator; throws on unknown names.
std::string builtin_csv(std::string_view name);

}  // namespace noisebench
