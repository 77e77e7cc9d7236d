#include "logpic/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "logpic/errors.hpp"

namespace logpic {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::without(std::size_t k) const {
  if (k >= rows_ || k >= cols_) throw InputError("index out of range in IntMatrix::without");
  IntMatrix m(rows_ - 1, cols_ - 1);
  for (std::size_t r = 0, rr = 0; r < rows_; ++r) {
    if (r == k) continue;
    for (std::size_t c = 0, cc = 0; c < cols_; ++c) {
      if (c == k) continue;
      m(rr, cc++) = (*this)(r, c);
    }
    ++rr;
  }
  return m;
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
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    out << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) out << (c ? "," : "") << (*this)(r, c).get_str();
    out << ']';
  }
  out << ']';
  return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix dimension mismatch in product");
  IntMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector dimension mismatch");
  IntVector y(a.rows(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) y[i] += a(i, k) * x[k];
  return y;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t n = std::min(S.rows(), S.cols());
  while (r < n && S(r, r) != 0) ++r;
  return r;
}

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

namespace {

// Moves the entry of least non-zero magnitude in the trailing block (or only in
// row t / column t when `cross_only`) to (t, t). Returns false if all are zero.
bool place_pivot(SmithDecomposition& d, std::size_t t, bool cross_only) {
  IntMatrix& s = d.S;
  std::size_t best_r = s.rows(), best_c = s.cols();
  Integer best;
  auto consider = [&](std::size_t r, std::size_t c) {
    const Integer& v = s(r, c);
    if (v == 0) return;
    if (best_r == s.rows() || abs(v) < best) {
      best = abs(v);
      best_r = r;
      best_c = c;
    }
  };
  if (cross_only) {
    for (std::size_t r = t; r < s.rows(); ++r) consider(r, t);
    for (std::size_t c = t + 1; c < s.cols(); ++c) consider(t, c);
  } else {
    for (std::size_t r = t; r < s.rows(); ++r)
      for (std::size_t c = t; c < s.cols(); ++c) consider(r, c);
  }
  if (best_r == s.rows()) return false;
  s.swap_rows(t, best_r);
  d.U.swap_rows(t, best_r);
  s.swap_cols(t, best_c);
  d.V.swap_cols(t, best_c);
  return true;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithDecomposition d{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  IntMatrix& s = d.S;
  const std::size_t n = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < n; ++t) {
    if (!place_pivot(d, t, false)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < s.rows(); ++r) {
        if (s(r, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(r, t).get_mpz_t(), s(t, t).get_mpz_t());
        if (q != 0) {
          s.add_row_multiple(r, t, -q);
          d.U.add_row_multiple(r, t, -q);
        }
        if (s(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < s.cols(); ++c) {
        if (s(t, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), s(t, c).get_mpz_t(), s(t, t).get_mpz_t());
        if (q != 0) {
          s.add_col_multiple(c, t, -q);
          d.V.add_col_multiple(c, t, -q);
        }
        if (s(t, c) != 0) clean = false;
      }
      if (!clean) {
        place_pivot(d, t, true);
        continue;
      }
      // Divisibility chain: fold an offending row into row t and retry.
      std::size_t bad = s.rows();
      for (std::size_t r = t + 1; r < s.rows() && bad == s.rows(); ++r)
        for (std::size_t c = t + 1; c < s.cols(); ++c)
          if (!mpz_divisible_p(s(r, c).get_mpz_t(), s(t, t).get_mpz_t())) {
            bad = r;
            break;
          }
      if (bad == s.rows()) break;
      s.add_row_multiple(t, bad, 1);
      d.U.add_row_multiple(t, bad, 1);
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      d.U.negate_row(t);
    }
  }
  return d;
}

LatticeSolver::LatticeSolver(IntMatrix m) : m_(std::move(m)), snf_(smith_normal_form(m_)) {}

std::optional<IntVector> LatticeSolver::solve(const IntVector& b) const {
  if (b.size() != m_.rows()) throw InputError("integer_solve: right-hand side has wrong length");
  const IntVector c = snf_.U * b;
  const std::size_t r = snf_.rank();
  IntVector y(m_.cols(), Integer(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), snf_.S(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), snf_.S(i, i).get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf_.V * y;
}

std::vector<IntVector> LatticeSolver::kernel_basis() const {
  std::vector<IntVector> basis;
  for (std::size_t j = snf_.rank(); j < m_.cols(); ++j) {
    IntVector col(m_.cols());
    for (std::size_t i = 0; i < m_.cols(); ++i) col[i] = snf_.V(i, j);
    basis.push_back(std::move(col));
  }
  return basis;
}

std::optional<IntVector> integer_solve(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw InputError("integer_solve: right-hand side has wrong length");
  return LatticeSolver(m).solve(b);
}

std::vector<Integer> cokernel_invariants(const IntMatrix& m) {
  std::vector<Integer> out;
  for (const Integer& d : smith_normal_form(m).diagonal())
    if (d > 1) out.push_back(d);
  return out;
}

Chips to_chips(const Integer& x) {
  if (!x.fits_slong_p()) throw InputError("integer " + x.get_str() + " exceeds the 64-bit chip range");
  return x.get_si();
}

IntVector to_integers(const std::vector<Chips>& v) {
  IntVector out;
  out.reserve(v.size());
  for (Chips c : v) out.emplace_back(static_cast<long>(c));
  return out;
}

}  // namespace logpic
