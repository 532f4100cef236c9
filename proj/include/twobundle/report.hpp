#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace twobundle {

struct Violation {
  std::string rule;
  std::string witness;
};

// Keeps the first `kept` witnesses but counts every violation.
struct ValidationReport {
  static constexpr std::size_t kept = 256;

  std::vector<Violation> violations;
  std::size_t total = 0;

  bool ok() const { return total == 0; }
  void add(std::string rule, std::string witness);
  bool contains(std::string_view rule) const;
  std::size_t count(std::string_view rule) const;
  void merge(const ValidationReport& other);
};

}  // namespace twobundle
