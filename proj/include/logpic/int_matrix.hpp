#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "logpic/checked.hpp"

namespace logpic {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transposed() const;
  /// Drops row and column `k` (reduced Laplacian).
  IntMatrix without(std::size_t k) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  bool is_diagonal() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

/// U * M * V == S with U, V unimodular and S diagonal with s_1 | s_2 | ...
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  /// Number of non-zero diagonal entries.
  std::size_t rank() const;
  std::vector<Integer> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Some x with M x = b, if b lies in the column lattice of M.
/// Throws InputError when b.size() != M.rows().
std::optional<IntVector> integer_solve(const IntMatrix& m, const IntVector& b);

/// Torsion invariant factors (> 1) of coker(M), each dividing the next.
std::vector<Integer> cokernel_invariants(const IntMatrix& m);

/// Repeated solves against one matrix. Holds the Smith decomposition so each
/// solve is two matrix-vector products.
/// Throws InputError if the value does not fit in 64 bits.
Chips to_chips(const Integer& x);
IntVector to_integers(const std::vector<Chips>& v);

class LatticeSolver {
 public:
  explicit LatticeSolver(IntMatrix m);

  std::optional<IntVector> solve(const IntVector& b) const;
  /// Columns spanning the integer kernel of M.
  std::vector<IntVector> kernel_basis() const;
  const IntMatrix& matrix() const { return m_; }
  const SmithDecomposition& smith() const { return snf_; }

 private:
  IntMatrix m_;
  SmithDecomposition snf_;
};

}  // namespace logpic
