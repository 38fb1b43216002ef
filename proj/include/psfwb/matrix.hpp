#pragma once

#include <cstddef>
#include <vector>

#include "psfwb/rational.hpp"

namespace psfwb {

/// Dense row-major matrix over Q.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Rational>& entries() const { return data_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalVector row(std::size_t i) const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& c, const RatMatrix& m);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  RatMatrix transpose() const;
  /// Binary exponentiation; square matrices only.
  RatMatrix pow(const BigInt& exponent) const;

  bool is_zero() const;
  bool is_upper_triangular() const;

  /// Reduced row echelon form; `pivots` receives the pivot columns.
  RatMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;

  /// Basis of {x : A x = 0}, one vector per free column, in canonical form.
  std::vector<RationalVector> kernel_basis() const;
  /// Nonzero rows of the reduced echelon form.
  std::vector<RationalVector> row_space_basis() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Row vector times matrix.
RationalVector operator*(const RationalVector& v, const RatMatrix& m);
/// Matrix times column vector.
RationalVector operator*(const RatMatrix& m, const RationalVector& v);
Rational dot(const RationalVector& a, const RationalVector& b);

/// Bijection i -> images[i] on {0, ..., n-1}.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }
  Permutation inverse() const;
  bool is_identity() const;

  /// P with P[sigma(i)][i] = 1, so (P M P^-1)[sigma(i)][sigma(j)] = M[i][j].
  RatMatrix matrix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

}  // namespace psfwb
