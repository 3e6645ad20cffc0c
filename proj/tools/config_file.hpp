#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vine::cli {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Flat `key = value` lines; blank lines and `#` comments are ignored.
// Throws std::runtime_error with the line number on malformed input.
KeyValues read_config_file(const std::string &path);
KeyValues parse_config(const std::string &text);

// Rewrites a command line so that config entries act as defaults: the
// entries are inserted as `--key=value` right after the subcommand name and
// `--config <path>` is removed. Later occurrences win when parsed.
std::vector<std::string> splice_config(const std::vector<std::string> &argv);

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string &bytes);
// Hash of the sorted `key=value` lines, as 16 hex digits.
std::string config_hash(KeyValues entries);

} // namespace vine::cli
