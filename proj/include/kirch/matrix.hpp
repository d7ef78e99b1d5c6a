#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "kirch/integer.hpp"

namespace kirch {

/// Dense row-major matrix of exact integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;

  /// Copy with the listed rows and columns deleted (indices refer to this matrix).
  IntMatrix without(std::span<const std::size_t> drop_rows,
                    std::span<const std::size_t> drop_cols) const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Which polynomial a coefficient query reads: det(X - L) or perm(X - L).
enum class Form { Determinant, Permanent };

inline constexpr std::size_t kDefaultPermanentLimit = 24;

/// Fraction-free (Bareiss) elimination. The 0x0 determinant is 1.
Integer determinant(const IntMatrix& m);

/// Ryser inclusion-exclusion with Gray-code updates. Orders above `max_order`
/// raise CapabilityError.
Integer permanent(const IntMatrix& m, std::size_t max_order = kDefaultPermanentLimit);

Integer evaluate(const IntMatrix& m, Form form,
                 std::size_t max_order = kDefaultPermanentLimit);

/// Value of the (u2,w2)-cofactor inside the (u1,w1)-minor of `l`, using the
/// positional sign of (u1,w1) in `l` and of (u2,w2) in the minor.
/// Requires u1 != u2 and w1 != w2.
Integer ordered_second_cofactor(const IntMatrix& l, std::size_t u1, std::size_t w1,
                                std::size_t u2, std::size_t w2);

/// Coefficient of x_{u1 w1} x_{u2 w2} in det(X - L) (or perm(X - L)) with every
/// other x set to zero. Both forms are affine in each single entry, so the
/// coefficient is f(1,1) - f(1,0) - f(0,1) + f(0,0). Repeated rows or columns
/// give 0 without evaluating anything.
Integer totalminor_coeff2(const IntMatrix& l, std::size_t u1, std::size_t w1,
                          std::size_t u2, std::size_t w2, Form form = Form::Determinant,
                          std::size_t max_order = kDefaultPermanentLimit);

/// Determinant of the principal minor with row/column `deleted` removed.
Integer tree_number(const IntMatrix& l, std::size_t deleted = 0);

}  // namespace kirch
