#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinsurf {

using cplx = std::complex<double>;

// Uniform rectangular chart: node (i, j) sits at z = (x0 + i h) + i (y0 + j h).
struct Grid {
  double x0 = 0, y0 = 0, h = 1;
  std::size_t nx = 0, ny = 0;

  double x(std::size_t i) const { return x0 + double(i) * h; }
  double y(std::size_t j) const { return y0 + double(j) * h; }
  cplx z(std::size_t i, std::size_t j) const { return {x(i), y(j)}; }
  std::size_t size() const { return nx * ny; }

  static Grid centered(std::size_t n, double h) {
    double half = 0.5 * double(n - 1) * h;
    return {-half, -half, h, n, n};
  }
};

inline bool operator==(const Grid& a, const Grid& b) {
  return a.x0 == b.x0 && a.y0 == b.y0 && a.h == b.h && a.nx == b.nx && a.ny == b.ny;
}

template <class T>
struct Field {
  std::size_t nx = 0, ny = 0;
  std::vector<T> v;

  Field() = default;
  Field(std::size_t nx_, std::size_t ny_, T fill = T{}) : nx(nx_), ny(ny_), v(nx_ * ny_, fill) {}
  explicit Field(const Grid& g, T fill = T{}) : Field(g.nx, g.ny, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return v[i * ny + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return v[i * ny + j]; }
};

using CField = Field<cplx>;
using RField = Field<double>;

template <class F>
CField sample(const Grid& g, F&& f) {
  CField out(g);
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j) out(i, j) = f(g.x(i), g.y(j));
  return out;
}

template <class T, class Op>
Field<T> zip(const Field<T>& a, const Field<T>& b, Op op) {
  if (a.nx != b.nx || a.ny != b.ny) throw std::invalid_argument("field shapes differ");
  Field<T> r(a.nx, a.ny);
  for (std::size_t k = 0; k < a.v.size(); ++k) r.v[k] = op(a.v[k], b.v[k]);
  return r;
}

template <class T, class Op>
Field<T> pointwise(const Field<T>& a, Op op) {
  Field<T> r(a.nx, a.ny);
  for (std::size_t k = 0; k < a.v.size(); ++k) r.v[k] = op(a.v[k]);
  return r;
}

inline CField conj(const CField& a) {
  return pointwise(a, [](cplx w) { return std::conj(w); });
}

template <class T>
double max_abs(const Field<T>& a) {
  double m = 0;
  for (auto& w : a.v) m = std::max(m, double(std::abs(w)));
  return m;
}

// Second-order differences; one-sided three-point formulas on the boundary.
template <class T>
Field<T> d_x(const Field<T>& f, double h) {
  if (f.nx < 3) throw std::invalid_argument("need at least 3 nodes along x");
  Field<T> r(f.nx, f.ny);
  const std::size_t n = f.nx;
  for (std::size_t j = 0; j < f.ny; ++j) {
    r(0, j) = (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) / (2 * h);
    r(n - 1, j) = (3.0 * f(n - 1, j) - 4.0 * f(n - 2, j) + f(n - 3, j)) / (2 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) r(i, j) = (f(i + 1, j) - f(i - 1, j)) / (2 * h);
  }
  return r;
}

template <class T>
Field<T> d_y(const Field<T>& f, double h) {
  if (f.ny < 3) throw std::invalid_argument("need at least 3 nodes along y");
  Field<T> r(f.nx, f.ny);
  const std::size_t n = f.ny;
  for (std::size_t i = 0; i < f.nx; ++i) {
    r(i, 0) = (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2 * h);
    r(i, n - 1) = (3.0 * f(i, n - 1) - 4.0 * f(i, n - 2) + f(i, n - 3)) / (2 * h);
    for (std::size_t j = 1; j + 1 < n; ++j) r(i, j) = (f(i, j + 1) - f(i, j - 1)) / (2 * h);
  }
  return r;
}

// standard: d/dz = (d/dx - i d/dy)/2; paper: d/dz = (d/dx + i d/dy)/2
enum class Wirtinger { standard, paper };

inline const char* to_string(Wirtinger w) { return w == Wirtinger::standard ? "standard" : "paper"; }

inline Wirtinger parse_wirtinger(const std::string& s) {
  if (s == "standard") return Wirtinger::standard;
  if (s == "paper") return Wirtinger::paper;
  throw std::invalid_argument("unknown Wirtinger convention '" + s + "'");
}

inline double wirtinger_sign(Wirtinger w) { return w == Wirtinger::standard ? -1.0 : 1.0; }

inline CField d_z(const CField& f, double h, Wirtinger w = Wirtinger::standard) {
  const cplx c(0, wirtinger_sign(w));
  return zip(d_x(f, h), d_y(f, h), [c](cplx a, cplx b) { return 0.5 * (a + c * b); });
}

inline CField d_zbar(const CField& f, double h, Wirtinger w = Wirtinger::standard) {
  const cplx c(0, -wirtinger_sign(w));
  return zip(d_x(f, h), d_y(f, h), [c](cplx a, cplx b) { return 0.5 * (a + c * b); });
}

}  // namespace spinsurf
