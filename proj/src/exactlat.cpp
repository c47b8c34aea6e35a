#include "tropmirror/exactlat.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tropmirror {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::NonSimplicial: return "NonSimplicial";
    case ErrorCode::NonTransverse: return "NonTransverse";
    case ErrorCode::UnknownMonomial: return "UnknownMonomial";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::NotEquivalent: return "NotEquivalent";
    case ErrorCode::DegeneratePolytope: return "DegeneratePolytope";
    case ErrorCode::NotTriangulation: return "NotTriangulation";
    case ErrorCode::OriginMissing: return "OriginMissing";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::DualityFailure: return "DualityFailure";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MismatchedAmbient: return "MismatchedAmbient";
    case ErrorCode::OverlappingBlocks: return "OverlappingBlocks";
    case ErrorCode::UnknownCoordinate: return "UnknownCoordinate";
    case ErrorCode::DualityNotVerified: return "DualityNotVerified";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InconsistentIdentification: return "InconsistentIdentification";
    case ErrorCode::NotStarShaped: return "NotStarShaped";
    case ErrorCode::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorCode::SolveFailure: return "SolveFailure";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::TooSmallT: return "TooSmallT";
    case ErrorCode::IntegrationDrift: return "IntegrationDrift";
    case ErrorCode::CocycleFailure: return "CocycleFailure";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Error";
}

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (auto& r : init) {
    if (r.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(ErrorCode::DimensionMismatch, "row length");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template class Matrix<Integer>;
template class Matrix<Rational>;

namespace {
template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "matrix product");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}
}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return multiply(a, b); }
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return multiply(a, b); }

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r;
  r.reserve(v.size());
  for (auto& x : v) r.emplace_back(x);
  return r;
}

IntVector to_integer_vector(const std::vector<long>& v) {
  IntVector r;
  r.reserve(v.size());
  for (long x : v) r.emplace_back(x);
  return r;
}

std::vector<long> to_long_vector(const IntVector& v) {
  std::vector<long> r;
  r.reserve(v.size());
  for (auto& x : v) {
    if (!x.fits_slong_p()) fail(ErrorCode::Validation, "integer too large");
    r.push_back(x.get_si());
  }
  return r;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVector& a, const IntVector& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto valid_int = [](const std::string& p) {
    std::size_t k = (!p.empty() && (p[0] == '-' || p[0] == '+')) ? 1 : 0;
    if (k >= p.size()) return false;
    for (; k < p.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(p[k]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    fail(ErrorCode::Validation, "not a rational: '" + raw + "'");
  if (num[0] == '+') num = num.substr(1);
  Integer n(num), d(den);
  if (d == 0) fail(ErrorCode::Validation, "zero denominator: '" + raw + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

IntVector primitive(const IntVector& v) {
  Integer g = 0;
  for (auto& x : v) g = gcd(g, x);
  if (g == 0 || g == 1) return v;
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

IntVector primitive(const RatVector& v) {
  Integer l = 1;
  for (auto& x : v) l = lcm(l, Integer(x.get_den()));
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational y = v[i] * l;
    r[i] = y.get_num();
  }
  return primitive(r);
}

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix c = m;
  return rref(c).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::vector<RatVector> nullspace(const RatMatrix& m) {
  RatMatrix c = m;
  auto piv = rref(c);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -c(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "determinant of non-square");
  RatMatrix a = m;
  Rational det = 1;
  std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

RatMatrix inverse(const RatMatrix& m) {
  std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorCode::DimensionMismatch, "inverse of non-square");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) fail(ErrorCode::NotFullDimensional, "singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

void row_op(IntMatrix& a, std::size_t target, std::size_t src, const Integer& f) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(target, j) -= f * a(src, j);
}
void col_op(IntMatrix& a, std::size_t target, std::size_t src, const Integer& f) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, target) -= f * a(i, src);
}

}  // namespace

SnfResult snf(const IntMatrix& m) {
  std::size_t R = m.rows(), C = m.cols();
  IntMatrix D = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C);
  std::size_t t = 0;
  while (t < R && t < C) {
    // pivot: nonzero entry of minimal absolute value in the trailing block
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (D(i, j) != 0 && (pi == R || abs(D(i, j)) < abs(D(pi, pj)))) pi = i, pj = j;
    if (pi == R) break;
    D.swap_rows(t, pi);
    U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    V.swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (D(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        row_op(D, i, t, q);
        row_op(U, i, t, q);
        if (D(i, t) != 0) {
          D.swap_rows(t, i);
          U.swap_rows(t, i);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (D(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        col_op(D, j, t, q);
        col_op(V, j, t, q);
        if (D(t, j) != 0) {
          D.swap_cols(t, j);
          V.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: pivot must divide the trailing block
      for (std::size_t i = t + 1; i < R && clean; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (D(i, j) % D(t, t) != 0) {
            // add row i to row t, then re-clear
            for (std::size_t k = 0; k < C; ++k) D(t, k) += D(i, k);
            for (std::size_t k = 0; k < R; ++k) U(t, k) += U(i, k);
            clean = false;
            break;
          }
    }
    if (D(t, t) < 0) {
      for (std::size_t k = 0; k < C; ++k) D(t, k) = -D(t, k);
      for (std::size_t k = 0; k < R; ++k) U(t, k) = -U(t, k);
    }
    ++t;
  }
  SnfResult res{U, D, V, t};
  return res;
}

Integer Cokernel::torsion_order() const {
  Integer o = 1;
  for (auto& d : torsion) o *= d;
  return o;
}

Cokernel cokernel(const IntMatrix& m) {
  SnfResult s = snf(m);
  Cokernel c;
  c.free_rank = m.rows() - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) != 1) c.torsion.push_back(s.D(i, i));
  return c;
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
  SnfResult s = snf(m);
  std::vector<IntVector> basis;
  for (std::size_t j = s.rank; j < m.cols(); ++j) basis.push_back(s.V.col(j));
  return basis;
}

SimplicialCone::SimplicialCone(std::vector<IntVector> rays, std::size_t ambient_dim)
    : ambient_(ambient_dim) {
  for (auto& r : rays) {
    if (r.size() != ambient_dim) fail(ErrorCode::DimensionMismatch, "ray length");
    bool zero = std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
    if (zero) fail(ErrorCode::NonSimplicial, "zero ray");
    rays_.push_back(primitive(r));
  }
  if (!rays_.empty() && rank(ray_matrix()) != rays_.size())
    fail(ErrorCode::NonSimplicial, "rays are linearly dependent");
}

IntMatrix SimplicialCone::ray_matrix() const {
  IntMatrix m(rays_.size(), ambient_);
  for (std::size_t i = 0; i < rays_.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) m(i, j) = rays_[i][j];
  return m;
}

Integer lattice_index(const SimplicialCone& cone) {
  if (!cone.full_dimensional()) fail(ErrorCode::NotFullDimensional, "rays do not span the ambient space");
  return abs(determinant(cone.ray_matrix()));
}

std::vector<IntVector> dual_basis(const SimplicialCone& cone) {
  Integer idx = lattice_index(cone);
  if (idx != 1) fail(ErrorCode::NotSmooth, "cone index " + idx.get_str());
  // rows of (R^T)^{-1}
  RatMatrix inv = inverse(to_rational(cone.ray_matrix()).transpose());
  std::size_t n = cone.ambient_dim();
  std::vector<IntVector> eta(n, IntVector(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (inv(j, k).get_den() != 1) fail(ErrorCode::Internal, "non-integral dual basis");
      eta[j][k] = inv(j, k).get_num();
    }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (dot(eta[j], cone.rays()[k]) != (j == k ? 1 : 0))
        fail(ErrorCode::Internal, "dual basis pairing is not the identity");
  return eta;
}

}  // namespace tropmirror
