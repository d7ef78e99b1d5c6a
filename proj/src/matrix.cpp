#include "kirch/matrix.hpp"

#include <algorithm>
#include <bit>
#include <iomanip>
#include <sstream>
#include <string>

#include "kirch/error.hpp"

namespace kirch {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidInput("ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::without(std::span<const std::size_t> drop_rows,
                             std::span<const std::size_t> drop_cols) const {
  auto keep = [](std::size_t n, std::span<const std::size_t> drop) {
    std::vector<bool> dropped(n, false);
    for (std::size_t d : drop) {
      if (d >= n) throw InvalidInput("minor index out of range");
      dropped[d] = true;
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i)
      if (!dropped[i]) kept.push_back(i);
    return kept;
  };
  const auto kr = keep(rows_, drop_rows);
  const auto kc = keep(cols_, drop_cols);
  IntMatrix out(kr.size(), kc.size());
  for (std::size_t r = 0; r < kr.size(); ++r)
    for (std::size_t c = 0; c < kc.size(); ++c) out(r, c) = (*this)(kr[r], kc[c]);
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product dimension mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

namespace {

template <typename Op>
IntMatrix entrywise(const IntMatrix& a, const IntMatrix& b, Op op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("matrix dimension mismatch");
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = op(a(i, j), b(i, j));
  return out;
}

}  // namespace

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  return entrywise(a, b, [](const Integer& x, const Integer& y) { return Integer(x + y); });
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  return entrywise(a, b, [](const Integer& x, const Integer& y) { return Integer(x - y); });
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = -a(i, j);
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  std::size_t width = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      width = std::max(width, m(i, j).str().size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ' ';
      os << std::setw(static_cast<int>(width)) << m(i, j).str();
    }
    os << '\n';
  }
  return os;
}

Integer determinant(const IntMatrix& input) {
  if (!input.is_square()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact division: Sylvester's identity guarantees divisibility.
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Integer permanent(const IntMatrix& m, std::size_t max_order) {
  if (!m.is_square()) throw InvalidInput("permanent of a non-square matrix");
  const std::size_t n = m.rows();
  if (n > max_order)
    throw CapabilityError("permanent of order " + std::to_string(n) +
                          " exceeds the limit of " + std::to_string(max_order));
  if (n == 0) return 1;

  std::vector<Integer> row_sums(n);
  Integer total = 0;
  std::uint64_t subset = 0;
  std::size_t subset_size = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const auto column = static_cast<std::size_t>(std::countr_zero(k));
    const std::uint64_t bit = std::uint64_t{1} << column;
    const bool adding = (subset & bit) == 0;
    subset ^= bit;
    if (adding) {
      ++subset_size;
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += m(i, column);
    } else {
      --subset_size;
      for (std::size_t i = 0; i < n; ++i) row_sums[i] -= m(i, column);
    }
    Integer product = 1;
    for (std::size_t i = 0; i < n && product != 0; ++i) product *= row_sums[i];
    if (subset_size % 2 == 0)
      total += product;
    else
      total -= product;
  }
  return (n % 2 == 0) ? total : Integer(-total);
}

Integer evaluate(const IntMatrix& m, Form form, std::size_t max_order) {
  return form == Form::Determinant ? determinant(m) : permanent(m, max_order);
}

Integer ordered_second_cofactor(const IntMatrix& l, std::size_t u1, std::size_t w1,
                                std::size_t u2, std::size_t w2) {
  if (!l.is_square()) throw InvalidInput("cofactor of a non-square matrix");
  const std::size_t n = l.rows();
  if (u1 >= n || u2 >= n || w1 >= n || w2 >= n)
    throw InvalidInput("cofactor index out of range");
  if (u1 == u2 || w1 == w2) throw InvalidInput("ordered second cofactor index collision");
  const std::size_t u2_in_minor = u2 - (u2 > u1 ? 1 : 0);
  const std::size_t w2_in_minor = w2 - (w2 > w1 ? 1 : 0);
  const std::size_t rows[] = {u1, u2};
  const std::size_t cols[] = {w1, w2};
  const Integer minor = determinant(l.without(rows, cols));
  const int sign = parity_sign(u1 + w1) * parity_sign(u2_in_minor + w2_in_minor);
  return sign * minor;
}

Integer totalminor_coeff2(const IntMatrix& l, std::size_t u1, std::size_t w1,
                          std::size_t u2, std::size_t w2, Form form,
                          std::size_t max_order) {
  if (!l.is_square()) throw InvalidInput("coefficient query on a non-square matrix");
  const std::size_t n = l.rows();
  if (u1 >= n || u2 >= n || w1 >= n || w2 >= n)
    throw InvalidInput("coefficient index out of range");
  if (u1 == u2 || w1 == w2) return 0;

  IntMatrix base = -l;
  auto at = [&](int s, int t) {
    IntMatrix m = base;
    m(u1, w1) += s;
    m(u2, w2) += t;
    return evaluate(m, form, max_order);
  };
  return at(1, 1) - at(1, 0) - at(0, 1) + at(0, 0);
}

Integer tree_number(const IntMatrix& l, std::size_t deleted) {
  if (!l.is_square()) throw InvalidInput("tree number of a non-square matrix");
  if (l.rows() == 0) throw InvalidInput("tree number of an empty matrix");
  if (deleted >= l.rows()) throw InvalidInput("deleted index out of range");
  const std::size_t drop[] = {deleted};
  return determinant(l.without(drop, drop));
}

}  // namespace kirch
