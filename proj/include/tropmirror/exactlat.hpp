#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "tropmirror/error.hpp"

namespace tropmirror {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;
  Matrix transpose() const;
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
IntVector to_integer_vector(const std::vector<long>& v);
std::vector<long> to_long_vector(const IntVector& v);

Rational dot(const RatVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RatVector& a, const IntVector& b);

// "3/2", "-4", "7" (exact). Throws Validation on junk.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

// Divide by the gcd of the entries. Zero vector is returned unchanged.
IntVector primitive(const IntVector& v);
// Scale a rational vector to the primitive integer vector on the same ray.
IntVector primitive(const RatVector& v);

// Linear algebra over Q.
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);
// Basis of {x : m x = 0}.
std::vector<RatVector> nullspace(const RatMatrix& m);
Rational determinant(const RatMatrix& m);
Integer determinant(const IntMatrix& m);
// Throws NotFullDimensional when singular.
RatMatrix inverse(const RatMatrix& m);

struct SnfResult {
  IntMatrix U, D, V;
  std::size_t rank = 0;
  std::vector<Integer> diagonal() const;
};

// U * M * V = D with d1 | d2 | ... and d_i >= 0.
SnfResult snf(const IntMatrix& m);

// coker(M : Z^cols -> Z^rows) = Z^free_rank + sum Z/torsion_i, torsion_i >= 2.
struct Cokernel {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  Integer torsion_order() const;
};
Cokernel cokernel(const IntMatrix& m);

// Integral basis of the lattice {x in Z^cols : m x = 0}.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

class SimplicialCone {
 public:
  SimplicialCone(std::vector<IntVector> rays, std::size_t ambient_dim);
  const std::vector<IntVector>& rays() const { return rays_; }
  std::size_t ambient_dim() const { return ambient_; }
  bool full_dimensional() const { return rays_.size() == ambient_; }
  // rays as the rows of a matrix
  IntMatrix ray_matrix() const;

 private:
  std::vector<IntVector> rays_;
  std::size_t ambient_;
};

Integer lattice_index(const SimplicialCone& cone);
// eta_j with <eta_j, u_k> = delta_jk. Throws NotSmooth unless index 1.
std::vector<IntVector> dual_basis(const SimplicialCone& cone);

}  // namespace tropmirror
