#pragma once

#include <string>
#include <string_view>

#include "twobundle/bundle.hpp"
#include "twobundle/complex.hpp"
#include "twobundle/error.hpp"
#include "twobundle/simplicial.hpp"
#include "twobundle/two_category.hpp"

namespace twobundle {

// Errc::parse_error with a 1-based position; line 0 when the file could not be read.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

// .2cat: JSON with keys name, objects, one_cells, two_cells, identity_one, identity_two, hcomp1, vcomp,
// lwhisker, rwhisker and an optional coherence {alpha, lambda, rho}; a missing coherence section means strict.
TwoCategory parse_two_category(std::string_view text);
std::string dump_two_category(const TwoCategory& c);

// .cplx: {"vertices": [labels in order], "simplices": [[labels], ...]}; faces are added on load.
CombinatorialBase parse_complex(std::string_view text);
std::string dump_complex(const CombinatorialBase& k);

// .bundle: "structure" and "base" are paths (relative to `base_dir`) or inline objects; tables
// V [[a, obj]], E [[a, b, cell]], phi [[a, b, c, cell]] by vertex label. Missing entries stay absent.
Bundle parse_bundle(std::string_view text, const std::string& base_dir = ".");
// References are written as given; an empty reference inlines the data.
std::string dump_bundle(const Bundle& b, const std::string& structure_ref = "", const std::string& base_ref = "");

// .sset: {"max_dim", "sizes", "faces", "degeneracies"} as in FinSimplicialSet::Tables.
FinSimplicialSet parse_sset(std::string_view text);
std::string dump_sset(const FinSimplicialSet& x);

// ParseError (line 0) when the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
std::string directory_of(const std::string& path);

TwoCategory load_two_category(const std::string& path);
CombinatorialBase load_complex(const std::string& path);
Bundle load_bundle(const std::string& path);

}  // namespace twobundle
