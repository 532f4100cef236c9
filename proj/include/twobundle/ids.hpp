#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>

namespace twobundle {

template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}

  auto operator<=>(const Id&) const = default;
};

using ObjectId = Id<struct ObjectTag>;
using OneCellId = Id<struct OneCellTag>;
using TwoCellId = Id<struct TwoCellTag>;

inline constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

}  // namespace twobundle

template <class Tag>
struct std::hash<twobundle::Id<Tag>> {
  std::size_t operator()(twobundle::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
