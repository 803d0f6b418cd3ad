#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace minpair {

// Collects non-fatal warnings raised while loading or evaluating. Callers
// decide whether to print them; the CLI echoes them to stderr.
class Diagnostics {
 public:
  void warn(std::string message) { warnings_.push_back(std::move(message)); }

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }
  bool empty() const noexcept { return warnings_.empty(); }
  void clear() { warnings_.clear(); }

  void print(std::ostream& os) const {
    for (const auto& w : warnings_) os << "warning: " << w << '\n';
  }

 private:
  std::vector<std::string> warnings_;
};

}  // namespace minpair
