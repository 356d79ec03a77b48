#include "sgc/matrix.hpp"

#include <algorithm>
#include <string>

#include "sgc/kernels.hpp"

namespace sgc {

namespace {

void require_same_modulus(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.modulus() == b.modulus())) throw DimensionMismatch("matrices over different moduli");
}

std::string shape(const FieldMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, FieldModulus q)
    : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, FieldModulus q,
                         std::vector<std::uint64_t> data)
    : rows_(rows), cols_(cols), q_(q), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("matrix data length " + std::to_string(data_.size()) +
                            " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (auto& v : data_) v = q_.reduce(v);
}

FieldMatrix FieldMatrix::identity(std::size_t n, FieldModulus q) {
  FieldMatrix m(n, n, q);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % q.value();
  return m;
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, FieldModulus q) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  FieldMatrix m(r, c, q);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged row literal");
    for (std::size_t j = 0; j < c; ++j) m.data_[i * c + j] = q.from_signed(rows[i][j]);
  }
  return m;
}

FieldMatrix FieldMatrix::random(std::size_t rows, std::size_t cols, FieldModulus q, SeededRng& rng) {
  return FieldMatrix(rows, cols, q, sample_uniform(rng, q, rows * cols));
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(cols_, rows_, q_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

FieldMatrix FieldMatrix::select(std::span<const std::size_t> row_idx,
                                std::span<const std::size_t> col_idx) const {
  FieldMatrix out(row_idx.size(), col_idx.size(), q_);
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    const auto src = row(row_idx[i]);
    for (std::size_t j = 0; j < col_idx.size(); ++j) out.data_[i * col_idx.size() + j] = src[col_idx[j]];
  }
  return out;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> row_idx) const {
  FieldMatrix out(row_idx.size(), cols_, q_);
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    const auto src = row(row_idx[i]);
    std::copy(src.begin(), src.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }
  return out;
}

FieldMatrix FieldMatrix::select_cols(std::span<const std::size_t> col_idx) const {
  std::vector<std::size_t> all(rows_);
  for (std::size_t i = 0; i < rows_; ++i) all[i] = i;
  return select(all, col_idx);
}

FieldMatrix FieldMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw DimensionMismatch("block out of range for " + shape(*this));
  }
  FieldMatrix out(nr, nc, q_);
  for (std::size_t i = 0; i < nr; ++i)
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), nc,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i * nc));
  return out;
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t v) { return v == 0; });
}

FieldMatrix FieldMatrix::operator-() const {
  FieldMatrix out = *this;
  for (auto& v : out.data_) v = q_.neg(v);
  return out;
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_modulus(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw DimensionMismatch("cannot add " + shape(a) + " and " + shape(b));
  }
  FieldMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.q_.add(out.data_[i], b.data_[i]);
  return out;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_modulus(a, b);
  if (a.cols_ != b.rows_) throw DimensionMismatch("cannot multiply " + shape(a) + " by " + shape(b));
  FieldMatrix out(a.rows_, b.cols_, a.q_);
  if (b.cols_ == 0) return out;
  const auto& ops = kernels::select(a.q_.value());
  const std::uint64_t q = a.q_.value();
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::uint64_t* dst = out.data_.data() + i * b.cols_;
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t c = a.data_[i * a.cols_ + k];
      if (c != 0) ops.axpy(dst, b.data_.data() + k * b.cols_, b.cols_, c, q);
    }
  }
  return out;
}

Echelon rref(FieldMatrix a) {
  const auto& q = a.modulus();
  const auto& ops = kernels::select(q.value());
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t p = r;
    while (p < rows && a(p, col) == 0) ++p;
    if (p == rows) continue;
    if (p != r) std::swap_ranges(a.row(p).begin(), a.row(p).end(), a.row(r).begin());
    auto pivot_row = a.row(r).subspan(col);
    const std::uint64_t inv = q.inv(pivot_row[0]);
    if (inv != 1) ops.scale(pivot_row.data(), pivot_row.size(), inv, q.value());
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const std::uint64_t f = a(i, col);
      if (f == 0) continue;
      auto target = a.row(i).subspan(col);
      ops.axpy(target.data(), pivot_row.data(), target.size(), q.neg(f), q.value());
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) {
  // Forward elimination only; no normalisation or back-substitution needed.
  FieldMatrix a = m;
  const auto& q = a.modulus();
  const auto& ops = kernels::select(q.value());
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t p = r;
    while (p < rows && a(p, col) == 0) ++p;
    if (p == rows) continue;
    if (p != r) std::swap_ranges(a.row(p).begin(), a.row(p).end(), a.row(r).begin());
    auto pivot_row = a.row(r).subspan(col);
    const std::uint64_t inv = q.inv(pivot_row[0]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint64_t f = a(i, col);
      if (f == 0) continue;
      auto target = a.row(i).subspan(col);
      ops.axpy(target.data(), pivot_row.data(), target.size(), q.neg(q.mul(f, inv)), q.value());
    }
    ++r;
  }
  return r;
}

std::optional<FieldMatrix> try_solve_linear(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_modulus(a, b);
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("solve_linear: A is " + shape(a) + " but B is " + shape(b));
  }
  const std::size_t n = a.cols();
  const Echelon e = rref(hstack({a, b}));
  // A pivot inside the B block means the system is inconsistent.
  if (!e.pivot_cols.empty() && e.pivot_cols.back() >= n) return std::nullopt;
  FieldMatrix x(n, b.cols(), a.modulus());
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
    const auto src = e.reduced.row(i).subspan(n);
    std::copy(src.begin(), src.end(), x.row(e.pivot_cols[i]).begin());
  }
  return x;
}

FieldMatrix solve_linear(const FieldMatrix& a, const FieldMatrix& b) {
  auto x = try_solve_linear(a, b);
  if (!x) throw Unsolvable("linear system is inconsistent");
  return std::move(*x);
}

std::optional<FieldMatrix> try_invert(const FieldMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("invert: matrix is " + shape(a));
  const std::size_t n = a.rows();
  const Echelon e = rref(hstack({a, FieldMatrix::identity(n, a.modulus())}));
  if (e.rank() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1)) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

FieldMatrix invert(const FieldMatrix& a) {
  auto inv = try_invert(a);
  if (!inv) throw Singular("matrix of shape " + shape(a) + " is singular");
  return std::move(*inv);
}

FieldMatrix nullspace(const FieldMatrix& a) {
  const auto& q = a.modulus();
  const Echelon e = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FieldMatrix basis(free_cols.size(), n, q);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis.set(k, f, 1);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) basis.set(k, e.pivot_cols[i], q.neg(e.reduced(i, f)));
  }
  return basis;
}

FieldMatrix assemble_blocks(const std::vector<std::vector<FieldMatrix>>& layout) {
  if (layout.empty() || layout.front().empty()) throw DimensionMismatch("empty block layout");
  const std::size_t grid_cols = layout.front().size();
  const FieldModulus q = layout.front().front().modulus();
  std::vector<std::size_t> col_widths(grid_cols);
  for (std::size_t j = 0; j < grid_cols; ++j) col_widths[j] = layout.front()[j].cols();
  std::size_t total_rows = 0;
  for (const auto& grid_row : layout) {
    if (grid_row.size() != grid_cols) throw DimensionMismatch("ragged block layout");
    const std::size_t h = grid_row.front().rows();
    for (std::size_t j = 0; j < grid_cols; ++j) {
      const auto& blk = grid_row[j];
      require_same_modulus(blk, layout.front().front());
      if (blk.rows() != h) throw DimensionMismatch("blocks in one grid row differ in height");
      if (blk.cols() != col_widths[j]) throw DimensionMismatch("blocks in one grid column differ in width");
    }
    total_rows += h;
  }
  std::size_t total_cols = 0;
  for (auto w : col_widths) total_cols += w;

  FieldMatrix out(total_rows, total_cols, q);
  std::size_t r0 = 0;
  for (const auto& grid_row : layout) {
    std::size_t c0 = 0;
    for (const auto& blk : grid_row) {
      for (std::size_t i = 0; i < blk.rows(); ++i) {
        const auto src = blk.row(i);
        std::copy(src.begin(), src.end(), out.row(r0 + i).begin() + static_cast<std::ptrdiff_t>(c0));
      }
      c0 += blk.cols();
    }
    r0 += grid_row.front().rows();
  }
  return out;
}

FieldMatrix vstack(const std::vector<FieldMatrix>& parts) {
  std::vector<std::vector<FieldMatrix>> layout;
  layout.reserve(parts.size());
  for (const auto& p : parts) layout.push_back({p});
  return assemble_blocks(layout);
}

FieldMatrix hstack(const std::vector<FieldMatrix>& parts) { return assemble_blocks({parts}); }

}  // namespace sgc
