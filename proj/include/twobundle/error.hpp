#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twobundle {

enum class Errc {
  malformed_table,
  not_invertible,
  boundary_mismatch,
  no_solution,
  not_associative,
  dimension_out_of_range,
  size_limit,
  not_groupoid,
  index_mismatch,
  not_subcomplex,
  mismatch_on_a,
  order_conflict,
  not_chain_map,
  coherence_failure,
  parse_error,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace twobundle
