#include "twobundle/error.hpp"
#include "twobundle/report.hpp"

#include <algorithm>

namespace twobundle {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::malformed_table: return "MalformedTable";
    case Errc::not_invertible: return "NotInvertible";
    case Errc::boundary_mismatch: return "BoundaryMismatch";
    case Errc::no_solution: return "NoSolution";
    case Errc::not_associative: return "NotAssociative";
    case Errc::dimension_out_of_range: return "DimensionOutOfRange";
    case Errc::size_limit: return "SizeLimit";
    case Errc::not_groupoid: return "NotGroupoid";
    case Errc::index_mismatch: return "IndexMismatch";
    case Errc::not_subcomplex: return "NotSubcomplex";
    case Errc::mismatch_on_a: return "MismatchOnA";
    case Errc::order_conflict: return "OrderConflict";
    case Errc::not_chain_map: return "NotChainMap";
    case Errc::coherence_failure: return "CoherenceFailure";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

void ValidationReport::add(std::string rule, std::string witness) {
  ++total;
  if (violations.size() < kept) violations.push_back({std::move(rule), std::move(witness)});
}

bool ValidationReport::contains(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

std::size_t ValidationReport::count(std::string_view rule) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; }));
}

void ValidationReport::merge(const ValidationReport& other) {
  for (const auto& v : other.violations) {
    if (violations.size() < kept) violations.push_back(v);
  }
  total += other.total;
}

}  // namespace twobundle
