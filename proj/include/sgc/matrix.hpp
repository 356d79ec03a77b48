#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sgc/field.hpp"

namespace sgc {

/// Dense row-major matrix over GF(q). Entries are stored as reduced residues;
/// every mutator keeps them reduced.
class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, FieldModulus q);
  /// Takes ownership of `data` (row-major, length rows*cols); entries are reduced mod q.
  FieldMatrix(std::size_t rows, std::size_t cols, FieldModulus q, std::vector<std::uint64_t> data);

  static FieldMatrix identity(std::size_t n, FieldModulus q);
  static FieldMatrix zeros(std::size_t rows, std::size_t cols, FieldModulus q) {
    return FieldMatrix(rows, cols, q);
  }
  /// Convenience for tests and small literals; values may be negative.
  static FieldMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, FieldModulus q);
  static FieldMatrix random(std::size_t rows, std::size_t cols, FieldModulus q, SeededRng& rng);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldModulus& modulus() const noexcept { return q_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint64_t v) { data_[i * cols_ + j] = q_.reduce(v); }

  std::span<const std::uint64_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<std::uint64_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  const std::vector<std::uint64_t>& data() const noexcept { return data_; }

  FieldMatrix transpose() const;
  /// Rows and columns picked by 0-based index lists, in the order given.
  FieldMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  FieldMatrix select_rows(std::span<const std::size_t> row_idx) const;
  FieldMatrix select_cols(std::span<const std::size_t> col_idx) const;
  /// Contiguous block [r0, r0+nr) x [c0, c0+nc).
  FieldMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  bool is_zero() const noexcept;

  FieldMatrix operator-() const;
  friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  FieldModulus q_;
  std::vector<std::uint64_t> data_;
};

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct Echelon {
  FieldMatrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination; the pivot is the first nonzero entry in column order.
Echelon rref(FieldMatrix a);

std::size_t rank(const FieldMatrix& a);

/// Solves A X = B. Free variables are set to zero, so the result is a
/// deterministic function of (A, B). Throws Unsolvable when rank(A) < rank([A|B])
/// and DimensionMismatch when the row counts differ.
FieldMatrix solve_linear(const FieldMatrix& a, const FieldMatrix& b);
std::optional<FieldMatrix> try_solve_linear(const FieldMatrix& a, const FieldMatrix& b);

/// Throws Singular when A is not full rank, DimensionMismatch when not square.
FieldMatrix invert(const FieldMatrix& a);
std::optional<FieldMatrix> try_invert(const FieldMatrix& a);

/// Basis (as rows) of {x : A x = 0}.
FieldMatrix nullspace(const FieldMatrix& a);

/// Block concatenation. Every block in a grid row must share its row count and
/// every block in a grid column its column count; throws DimensionMismatch otherwise.
FieldMatrix assemble_blocks(const std::vector<std::vector<FieldMatrix>>& layout);
FieldMatrix vstack(const std::vector<FieldMatrix>& parts);
FieldMatrix hstack(const std::vector<FieldMatrix>& parts);

}  // namespace sgc
