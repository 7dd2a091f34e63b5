#pragma once

#include "spinsurf/scalar.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace spinsurf {

template <class T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (auto& row : init) {
      if (row.size() != cols) throw std::invalid_argument("ragged matrix literal");
      for (auto& x : row) a.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t k = 0; k < x.cols; ++k) {
        if (is_zero(x(i, k))) continue;
        for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
  }
  friend Matrix operator*(const T& s, Matrix x) {
    for (auto& v : x.a) v = s * v;
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
      if (!is_zero(T(x.a[i] - y.a[i]))) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix r(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Matrix adjoint() const {
    Matrix r(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) r(j, i) = conj((*this)(i, j));
    return r;
  }
  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
    return t;
  }
};

// Incremental row echelon form: tells whether a new vector is independent
// of the ones inserted so far.
template <class T>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  bool insert(std::vector<T> v) {
    reduce(v);
    std::size_t piv = 0;
    while (piv < dim_ && is_zero(v[piv])) ++piv;
    if (piv == dim_) return false;
    T inv = T(1) / v[piv];
    for (auto& x : v) x = x * inv;
    for (auto& row : rows_) {
      T f = row.first[piv];
      if (is_zero(f)) continue;
      for (std::size_t j = 0; j < dim_; ++j) row.first[j] -= f * v[j];
    }
    rows_.push_back({std::move(v), piv});
    return true;
  }

  bool contains(std::vector<T> v) const {
    reduce(v);
    for (auto& x : v)
      if (!is_zero(x)) return false;
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(std::vector<T>& v) const {
    if (v.size() != dim_) throw std::invalid_argument("vector length mismatch");
    for (auto& [row, piv] : rows_) {
      T f = v[piv];
      if (is_zero(f)) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * row[j];
    }
  }

  std::size_t dim_;
  std::vector<std::pair<std::vector<T>, std::size_t>> rows_;
};

// Coordinates of v in the span of the given columns, if v lies in it.
// Columns must be linearly independent.
template <class T>
std::optional<std::vector<T>> solve_in_span(const std::vector<std::vector<T>>& columns, const std::vector<T>& v) {
  const std::size_t m = v.size();
  const std::size_t k = columns.size();
  // augmented m x (k+1)
  std::vector<std::vector<T>> A(m, std::vector<T>(k + 1, T(0)));
  for (std::size_t j = 0; j < k; ++j) {
    if (columns[j].size() != m) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < m; ++i) A[i][j] = columns[j][i];
  }
  for (std::size_t i = 0; i < m; ++i) A[i][k] = v[i];

  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < m; ++c) {
    std::size_t best = m;
    double bestmag = 0;
    for (std::size_t i = r; i < m; ++i) {
      if (is_zero(A[i][c])) continue;
      double mag = scalar_traits<T>::magnitude(A[i][c]);
      if (best == m || mag > bestmag) {
        best = i;
        bestmag = mag;
        if constexpr (scalar_traits<T>::exact) break;
      }
    }
    if (best == m) throw std::invalid_argument("columns are linearly dependent");
    std::swap(A[r], A[best]);
    T inv = T(1) / A[r][c];
    for (auto& x : A[r]) x = x * inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || is_zero(A[i][c])) continue;
      T f = A[i][c];
      for (std::size_t j = 0; j <= k; ++j) A[i][j] -= f * A[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (!is_zero(A[i][k])) return std::nullopt;
  std::vector<T> x(k, T(0));
  for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = A[i][k];
  return x;
}

// Signs of the eigenvalues of a symmetric matrix via exact LDL^T with
// symmetric pivoting. Returns (positive, negative) counts.
inline std::pair<int, int> inertia(Matrix<Rational> S) {
  const std::size_t n = S.rows;
  int pos = 0, neg = 0;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && S(i, i).numerator() != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // zero diagonal: find off-diagonal pair and rotate it onto the diagonal
      std::size_t a = n, b = n;
      for (std::size_t i = 0; i < n && a == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[i] && !done[j] && S(i, j).numerator() != 0) {
            a = i;
            b = j;
            break;
          }
      if (a == n) break;
      // e_a += e_b congruence
      for (std::size_t j = 0; j < n; ++j) S(a, j) += S(b, j);
      for (std::size_t i = 0; i < n; ++i) S(i, a) += S(i, b);
      piv = a;
    }
    Rational d = S(piv, piv);
    (d.numerator() > 0 ? pos : neg)++;
    done[piv] = true;
    Matrix<Rational> old = S;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!done[i] && !done[j]) S(i, j) = old(i, j) - old(i, piv) * old(piv, j) / d;
  }
  return {pos, neg};
}

}  // namespace spinsurf
