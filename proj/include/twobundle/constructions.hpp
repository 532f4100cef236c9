#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twobundle/linalg.hpp"
#include "twobundle/two_category.hpp"

namespace twobundle {

struct FiniteMonoid {
  std::string name;
  std::size_t order = 0;
  std::vector<std::uint32_t> table;  // table[a * order + b] = a*b
  std::uint32_t unit = 0;
  std::vector<std::string> labels;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * order + b]; }
};

FiniteMonoid trivial_group();
FiniteMonoid cyclic_group(std::size_t n);
FiniteMonoid symmetric_group(std::size_t n);
// {1, a} with a*a = a.
FiniteMonoid idempotent_monoid();
// Elements listed in lexicographic order of their entries; labels hold the matrices.
FiniteMonoid general_linear_group(std::size_t n, std::uint32_t p);
std::vector<FpMatrix> general_linear_elements(std::size_t n, std::uint32_t p);
FiniteMonoid product_monoid(const FiniteMonoid& g, const FiniteMonoid& h);

// NotAssociative when the table is not associative or the unit is not two-sided.
void check_monoid(const FiniteMonoid& m);

struct FiniteCategory {
  std::string name;
  std::size_t objects = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> morphisms;  // (source, target)
  std::vector<std::uint32_t> identities;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> composition;  // (g, f) -> g o f
};

FiniteCategory one_object_category(const FiniteMonoid& m);
// The poset 0 < 1 < ... < n as a category.
FiniteCategory ordinal_category(std::size_t n);
void check_category(const FiniteCategory& c);

// One object, 1-cells the elements, identity 2-cells only.
TwoCategory delooping(const FiniteMonoid& m);
// Cells of the category plus identity 2-cells.
TwoCategory locally_discrete(const FiniteCategory& c);
// One object, one 1-cell e = e*e, 2-cells e => e labelled by Z/n (2-cell id = label).
TwoCategory cyclic_gerbe(std::size_t n);
// Skeletal 2-group: 1-cells Z/m, 2-cells (a, s) with s in Z/k and id a*k + s.
// Twisted: associator labelled by a * carry(b, c), a 3-cocycle when k divides m.
TwoCategory two_group(std::size_t m, std::size_t k, bool twisted);

}  // namespace twobundle
