#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace minpair {

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 of a single file's contents.
std::string hash_file(const std::filesystem::path& path);

/// Content hash of a dataset. For a directory, every regular file is hashed
/// in sorted relative-path order together with its relative path, so the
/// result pins both contents and layout.
std::string hash_dataset(const std::filesystem::path& path);

}  // namespace minpair
