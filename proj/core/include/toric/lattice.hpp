#pragma once

// Exact integer linear algebra over arbitrary-precision integers.
//
// Everything here is a pure function of its inputs. Floating point is never
// used; determinants and ranks go through fraction-free (Bareiss)
// elimination, and the Smith normal form keeps track of both unimodular
// transforms so every result can be re-verified exactly.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toric {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Row-major dense matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;

  /// Entries narrowed to int64; throws IntegerOverflow if any entry does not fit.
  std::vector<std::int64_t> to_int64() const;

  bool is_identity() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector operator*(const IntMatrix& a, const IntVector& x);

IntVector to_int_vector(std::span<const std::int64_t> v);
/// Throws IntegerOverflow if an entry does not fit in int64.
std::vector<std::int64_t> to_int64(const IntVector& v);
std::int64_t to_int64(const Integer& x);

/// U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ... >= 0.
struct SNFResult {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /// Number of nonzero diagonal entries.
  std::size_t rank() const;
};

/// Smith normal form. Pivot rule: smallest nonzero absolute value in the
/// active submatrix, ties broken by lowest row then lowest column, so the
/// transforms are a deterministic function of A.
SNFResult smith_normal_form(const IntMatrix& A);

/// Exact inverse of a matrix with determinant +-1; throws NotUnimodular otherwise.
IntMatrix unimodular_inverse(const IntMatrix& A);

/// Integer solution x of A x = b, if one exists (back-substitution through the SNF).
std::optional<IntVector> lattice_membership(const IntMatrix& A, const IntVector& b);

Integer determinant(const IntMatrix& A);
std::size_t rank(const IntMatrix& A);
bool is_unimodular(const IntMatrix& A);

}  // namespace toric
