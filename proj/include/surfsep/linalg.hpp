#pragma once

// Exact linear algebra over GF(2), GF(p) and Z. No floating point.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "error.hpp"

namespace surfsep::linalg {

/// Dense GF(2) matrix with rows packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix(int rows, int cols) : rows_(rows), cols_(cols), words_((cols + 63) / 64),
                                  data_(static_cast<std::size_t>(rows) * words_, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const { return (row(r)[c >> 6] >> (c & 63)) & 1u; }
  void set(int r, int c, bool v) {
    auto& w = row(r)[c >> 6];
    std::uint64_t bit = std::uint64_t{1} << (c & 63);
    w = v ? (w | bit) : (w & ~bit);
  }
  void flip(int r, int c) { row(r)[c >> 6] ^= std::uint64_t{1} << (c & 63); }

  /// Gauss-Jordan in place; returns pivot columns in row order.
  std::vector<int> reduce() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int p = r;
      while (p < rows_ && !get(p, c)) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      for (int i = 0; i < rows_; ++i)
        if (i != r && get(i, c)) xor_row(i, r);
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  int rank() const {
    BitMatrix m = *this;
    return static_cast<int>(m.reduce().size());
  }

  /// Basis of {x : M x = 0}.
  std::vector<std::vector<bool>> nullspace() const {
    BitMatrix m = *this;
    auto pivots = m.reduce();
    std::vector<char> is_pivot(cols_, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<bool>> basis;
    for (int f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<bool> x(cols_, false);
      x[f] = true;
      for (std::size_t i = 0; i < pivots.size(); ++i)
        if (m.get(static_cast<int>(i), f)) x[pivots[i]] = true;
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  std::uint64_t* row(int r) { return data_.data() + static_cast<std::size_t>(r) * words_; }
  const std::uint64_t* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * words_; }
  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int w = 0; w < words_; ++w) std::swap(row(a)[w], row(b)[w]);
  }
  void xor_row(int dst, int src) {
    for (int w = 0; w < words_; ++w) row(dst)[w] ^= row(src)[w];
  }

  int rows_, cols_, words_;
  std::vector<std::uint64_t> data_;
};

inline std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw Error(ErrorKind::Internal, "element not invertible mod p");
  return mod(t, p);
}

/// Solves A x = b over GF(p); free variables are set to zero.
inline std::optional<std::vector<std::int64_t>> solve_mod_p(std::vector<std::vector<std::int64_t>> a,
                                                           std::vector<std::int64_t> b, std::int64_t p) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int i = 0; i < rows; ++i) {
    for (auto& x : a[i]) x = mod(x, p);
    b[i] = mod(b[i], p);
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    std::int64_t inv = inverse_mod(a[r][c], p);
    for (auto& x : a[r]) x = x * inv % p;
    b[r] = b[r] * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::int64_t f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] = mod(a[i][j] - f * a[r][j], p);
      b[i] = mod(b[i] - f * b[r], p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<std::int64_t> x(cols, 0);
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

inline int rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (auto& row : a)
    for (auto& x : row) x = mod(x, p);
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::int64_t inv = inverse_mod(a[r][c], p);
    for (int i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      std::int64_t f = a[i][c] * inv % p;
      for (int j = c; j < cols; ++j) a[i][j] = mod(a[i][j] - f * a[r][j], p);
    }
    ++r;
  }
  return r;
}

/// Rank over Q of an integer matrix by fraction-free (Bareiss) elimination.
inline int integer_rank(const std::vector<std::vector<std::int64_t>>& in) {
  using boost::multiprecision::cpp_int;
  int rows = static_cast<int>(in.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(in[0].size());
  std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = in[i][j];
  cpp_int prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Smallest prime strictly greater than n.
inline std::int64_t next_prime_above(std::int64_t n) {
  std::int64_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

}  // namespace surfsep::linalg
