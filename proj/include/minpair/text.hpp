#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace minpair {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);
std::vector<std::string> split_ws(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

/// Benchmark tokenization: lowercase, split on whitespace, and detach a run
/// of sentence-final punctuation from the last token as one extra token.
/// Tokens that are already punctuation (Zorro style) are left alone.
std::vector<std::string> tokenize(std::string_view raw);

/// True when the token contains no letters or digits ("." "?" "," ...).
bool is_punct_token(std::string_view token);

/// Whole-file helpers. Throw IoError when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Shortest round-trippable decimal rendering of a double.
std::string format_double(double v);
std::string format_fixed(double v, int decimals);

/// Strict numeric parse of a whole field; throws SchemaError with `what`.
double parse_double(std::string_view field, const std::string& what);
long long parse_int(std::string_view field, const std::string& what);

}  // namespace minpair
