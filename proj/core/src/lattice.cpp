#include "toric/lattice.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

#include "toric/errors.hpp"

namespace toric {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("IntMatrix: ragged initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("IntMatrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rows[r][c]);
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

std::vector<std::int64_t> IntMatrix::to_int64() const {
  std::vector<std::int64_t> out;
  out.reserve(data_.size());
  for (const auto& x : data_) out.push_back(toric::to_int64(x));
  return out;
}

bool IntMatrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error("IntMatrix: dimension mismatch in product");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw Error("IntMatrix: dimension mismatch in matrix-vector product");
  IntVector out(a.rows(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * x[k];
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntVector to_int_vector(std::span<const std::int64_t> v) {
  IntVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

std::int64_t to_int64(const Integer& x) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  if (!x.fits_slong_p()) throw IntegerOverflow("integer " + x.get_str() + " does not fit in int64");
  return x.get_si();
}

std::vector<std::int64_t> to_int64(const IntVector& v) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_int64(x));
  return out;
}

std::size_t SNFResult::rank() const {
  std::size_t r = 0;
  const std::size_t k = std::min(D.rows(), D.cols());
  while (r < k && D(r, r) != 0) ++r;
  return r;
}

namespace {

struct Pivot {
  std::size_t row;
  std::size_t col;
};

// Smallest |entry| in A[t.., t..]; row-major scan keeps the lowest row, then column, on ties.
std::optional<Pivot> find_pivot(const IntMatrix& A, std::size_t t) {
  std::optional<Pivot> best;
  Integer best_abs;
  for (std::size_t r = t; r < A.rows(); ++r)
    for (std::size_t c = t; c < A.cols(); ++c) {
      if (A(r, c) == 0) continue;
      Integer a = abs(A(r, c));
      if (!best || a < best_abs) {
        best = Pivot{r, c};
        best_abs = a;
      }
    }
  return best;
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  IntMatrix D = A;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);

  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      auto pivot = find_pivot(D, t);
      if (!pivot) return {std::move(U), std::move(D), std::move(V)};
      D.swap_rows(t, pivot->row);
      U.swap_rows(t, pivot->row);
      D.swap_cols(t, pivot->col);
      V.swap_cols(t, pivot->col);

      bool dirty = false;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (D(r, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(r, t).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_row_multiple(r, t, -q);
        U.add_row_multiple(r, t, -q);
        if (D(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (D(t, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(t, c).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_col_multiple(c, t, -q);
        V.add_col_multiple(c, t, -q);
        if (D(t, c) != 0) dirty = true;
      }
      if (dirty) continue;

      // Divisibility: fold an offending row into row t and re-pivot.
      std::optional<std::size_t> offending;
      for (std::size_t r = t + 1; r < m && !offending; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (!mpz_divisible_p(D(r, c).get_mpz_t(), D(t, t).get_mpz_t())) {
            offending = r;
            break;
          }
      if (offending) {
        D.add_row_multiple(t, *offending, Integer(1));
        U.add_row_multiple(t, *offending, Integer(1));
        continue;
      }
      break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return {std::move(U), std::move(D), std::move(V)};
}

IntMatrix unimodular_inverse(const IntMatrix& A) {
  if (!A.square()) throw NotUnimodular("unimodular_inverse: matrix is not square");
  SNFResult snf = smith_normal_form(A);
  if (!snf.D.is_identity())
    throw NotUnimodular("unimodular_inverse: |det| != 1 for " + A.to_string());
  // U A V = I  =>  A^{-1} = V U
  return snf.V * snf.U;
}

std::optional<IntVector> lattice_membership(const IntMatrix& A, const IntVector& b) {
  if (b.size() != A.rows()) throw Error("lattice_membership: right-hand side has wrong length");
  SNFResult snf = smith_normal_form(A);
  const IntVector c = snf.U * b;
  const std::size_t r = snf.rank();
  IntVector y(A.cols(), Integer(0));
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), snf.D(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), snf.D(i, i).get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

namespace {

// Fraction-free elimination in place; returns the rank and the sign-corrected
// last pivot (the determinant when A is square and nonsingular).
std::pair<std::size_t, Integer> bareiss(IntMatrix M) {
  const std::size_t rows = M.rows();
  const std::size_t cols = M.cols();
  Integer prev = 1;
  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && M(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != rank) {
      M.swap_rows(p, rank);
      sign = -sign;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = M(rank, c) * M(r, j) - M(r, c) * M(rank, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        M(r, j) = v;
      }
      M(r, c) = 0;
    }
    prev = M(rank, c);
    ++rank;
  }
  return {rank, sign * prev};
}

}  // namespace

Integer determinant(const IntMatrix& A) {
  if (!A.square()) throw Error("determinant: matrix is not square");
  if (A.rows() == 0) return 1;
  auto [r, last] = bareiss(A);
  return r == A.rows() ? last : Integer(0);
}

std::size_t rank(const IntMatrix& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  return bareiss(A).first;
}

bool is_unimodular(const IntMatrix& A) {
  return A.square() && abs(determinant(A)) == 1;
}

}  // namespace toric
