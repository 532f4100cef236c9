#include "twobundle/linalg.hpp"

#include <sstream>

#include "twobundle/error.hpp"

namespace twobundle {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  a %= p;
  for (std::uint32_t x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  fail(Errc::not_invertible, std::to_string(a) + " has no inverse mod " + std::to_string(p));
}

FpMatrix::FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (!is_prime(p) || p > 251) fail(Errc::malformed_table, "matrix modulus must be a prime below 256");
}

FpMatrix FpMatrix::identity(std::uint32_t p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(std::uint32_t p, const std::vector<std::vector<long>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(p, rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) fail(Errc::malformed_table, "ragged matrix rows");
    for (std::size_t c = 0; c < nc; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

FpMatrix FpMatrix::blocks(const std::vector<std::vector<FpMatrix>>& grid) {
  if (grid.empty() || grid.front().empty()) fail(Errc::malformed_table, "empty block grid");
  std::uint32_t p = grid.front().front().prime();
  std::size_t total_rows = 0, total_cols = 0;
  for (const auto& row : grid) total_rows += row.front().rows();
  for (const auto& b : grid.front()) total_cols += b.cols();
  FpMatrix m(p, total_rows, total_cols);
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].size() != grid.front().size()) fail(Errc::malformed_table, "ragged block grid");
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < grid[i].size(); ++j) {
      const auto& b = grid[i][j];
      if (b.rows() != grid[i].front().rows() || b.cols() != grid.front()[j].cols() || b.prime() != p)
        fail(Errc::malformed_table, "block shape mismatch");
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m.data_[(r0 + r) * total_cols + c0 + c] = static_cast<std::uint8_t>(b(r, c));
      c0 += b.cols();
    }
    r0 += grid[i].front().rows();
  }
  return m;
}

void FpMatrix::for_each(std::uint32_t p, std::size_t rows, std::size_t cols, const std::function<void(const FpMatrix&)>& fn) {
  FpMatrix m(p, rows, cols);
  const std::size_t n = rows * cols;
  while (true) {
    fn(m);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++m.data_[i] < p) break;
      m.data_[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

void FpMatrix::set(std::size_t r, std::size_t c, long value) {
  long v = value % static_cast<long>(p_);
  if (v < 0) v += p_;
  data_[r * cols_ + c] = static_cast<std::uint8_t>(v);
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
  if (o.rows_ != rows_ || o.cols_ != cols_ || o.p_ != p_) fail(Errc::boundary_mismatch, "matrix sum shape mismatch");
  FpMatrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = static_cast<std::uint8_t>((data_[i] + o.data_[i]) % p_);
  return m;
}

FpMatrix FpMatrix::operator-() const {
  FpMatrix m = *this;
  for (auto& v : m.data_) v = static_cast<std::uint8_t>((p_ - v) % p_);
  return m;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const { return *this + (-o); }

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  if (cols_ != o.rows_ || o.p_ != p_) fail(Errc::boundary_mismatch, "matrix product shape mismatch");
  FpMatrix m(p_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      std::uint32_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc += data_[i * cols_ + k] * o.data_[k * o.cols_ + j];
      m.data_[i * o.cols_ + j] = static_cast<std::uint8_t>(acc % p_);
    }
  return m;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix m(p_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.data_[j * rows_ + i] = data_[i * cols_ + j];
  return m;
}

FpMatrix FpMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(Errc::boundary_mismatch, "block out of range");
  FpMatrix m(p_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
  return m;
}

bool FpMatrix::is_zero() const {
  for (auto v : data_) {
    if (v != 0) return false;
  }
  return true;
}

namespace {

// Row-reduces in place, returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<std::uint32_t>& a, std::size_t rows, std::size_t cols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a[piv * cols + k], a[r * cols + k]);
    auto inv = mod_inverse(a[r * cols + c], p);
    for (std::size_t k = 0; k < cols; ++k) a[r * cols + k] = a[r * cols + k] * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c] == 0) continue;
      auto f = a[i * cols + c];
      for (std::size_t k = 0; k < cols; ++k) a[i * cols + k] = (a[i * cols + k] + (p - f) * a[r * cols + k]) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t FpMatrix::rank() const {
  std::vector<std::uint32_t> a(data_.begin(), data_.end());
  return row_reduce(a, rows_, cols_, p_).size();
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  std::vector<std::uint32_t> a(n * 2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * 2 * n + j] = data_[i * n + j];
    a[i * 2 * n + n + i] = 1;
  }
  auto pivots = row_reduce(a, n, 2 * n, p_);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
  FpMatrix m(p_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.data_[i * n + j] = static_cast<std::uint8_t>(a[i * 2 * n + n + j]);
  return m;
}

FpMatrix FpMatrix::kernel() const {
  std::vector<std::uint32_t> a(data_.begin(), data_.end());
  auto pivots = row_reduce(a, rows_, cols_, p_);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  FpMatrix k(p_, cols_, free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    k.data_[free_cols[j] * free_cols.size() + j] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      auto v = a[i * cols_ + free_cols[j]];
      k.data_[pivots[i] * free_cols.size() + j] = static_cast<std::uint8_t>((p_ - v) % p_);
    }
  }
  return k;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << int(data_[i * cols_ + j]);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<std::vector<long>> FpMatrix::to_rows() const {
  std::vector<std::vector<long>> out(rows_, std::vector<long>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = data_[i * cols_ + j];
  return out;
}

std::size_t FpMatrix::hash() const {
  std::size_t h = p_ * 1000003u ^ rows_ * 10007u ^ cols_;
  for (auto v : data_) h = h * 131 + v;
  return h;
}

}  // namespace twobundle
