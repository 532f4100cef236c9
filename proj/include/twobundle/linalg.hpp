#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace twobundle {

// Dense matrix over F_p, p prime and < 256.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols);

  static FpMatrix zero(std::uint32_t p, std::size_t rows, std::size_t cols) { return FpMatrix(p, rows, cols); }
  static FpMatrix identity(std::uint32_t p, std::size_t n);
  static FpMatrix from_rows(std::uint32_t p, const std::vector<std::vector<long>>& rows);
  // Block matrix; every block in a row shares its row count, every block in a column its column count.
  static FpMatrix blocks(const std::vector<std::vector<FpMatrix>>& grid);
  // Calls fn on every rows x cols matrix, in lexicographic order of entries.
  static void for_each(std::uint32_t p, std::size_t rows, std::size_t cols, const std::function<void(const FpMatrix&)>& fn);

  std::uint32_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long value);

  FpMatrix operator+(const FpMatrix& o) const;
  FpMatrix operator-(const FpMatrix& o) const;
  FpMatrix operator-() const;
  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix transpose() const;
  FpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  bool is_zero() const;
  std::size_t rank() const;
  std::optional<FpMatrix> inverse() const;
  // Columns spanning {x : A x = 0}.
  FpMatrix kernel() const;

  bool operator==(const FpMatrix& o) const = default;
  auto operator<=>(const FpMatrix& o) const = default;

  std::string to_string() const;
  std::vector<std::vector<long>> to_rows() const;
  std::size_t hash() const;

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);
bool is_prime(std::uint32_t p);

}  // namespace twobundle

template <>
struct std::hash<twobundle::FpMatrix> {
  std::size_t operator()(const twobundle::FpMatrix& m) const noexcept { return m.hash(); }
};
