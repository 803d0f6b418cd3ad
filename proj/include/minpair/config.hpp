#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace minpair {

inline constexpr const char* kToolVersion = "0.1.0";

/// Versioned key = value run configuration. Every key has a default;
/// unknown keys and ill-typed values are ConfigErrors. Serialization is
/// canonical (sorted keys), so equal configs hash equally.
class RunConfig {
 public:
  static constexpr int kVersion = 1;

  RunConfig();  // all defaults

  /// Parses config text: '#' comments, blank lines, "key = value" lines and
  /// a mandatory "version = 1" line.
  static RunConfig parse(std::string_view text, const std::string& origin = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);  // validates
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  const std::map<std::string, std::string>& values() const noexcept { return values_; }
  static const std::vector<std::string>& known_keys();

  std::string serialize() const;
  std::string hash() const;  // sha256 of serialize()

 private:
  std::map<std::string, std::string> values_;
};

/// Provenance record written next to every output.
struct Manifest {
  std::string subcommand;
  RunConfig config;
  std::vector<std::pair<std::string, std::string>> arguments;  // flag -> value, as given
  std::vector<std::pair<std::string, std::string>> inputs;     // path -> sha256
  std::vector<std::pair<std::string, std::string>> outputs;    // path -> sha256
  std::vector<std::pair<std::string, std::string>> facts;      // derived values worth recording

  void add_input(const std::filesystem::path& p);   // hashes file or directory
  void add_output(const std::filesystem::path& p);  // hashes file
  std::string to_json() const;
  void write(const std::filesystem::path& path) const;
};

}  // namespace minpair
