#pragma once

#include "spinsurf/ideals.hpp"

#include <array>
#include <string>
#include <vector>

namespace spinsurf {

enum class FieldTag { R, C, H_as_real };

inline const char* to_string(FieldTag f) {
  switch (f) {
    case FieldTag::R: return "R";
    case FieldTag::C: return "C";
    default: return "H-as-real";
  }
}

template <class T>
struct MatrixRep {
  Signature sig;
  std::size_t dim = 0;
  FieldTag field = FieldTag::R;
  std::vector<Matrix<T>> gammas;  // gammas[i] = image of e_{i+1}
  std::vector<Multivector<T>> basis;
};

// Column j of E_i holds the coordinates of e_i f_j in the basis f.
template <class T>
MatrixRep<T> spinor_rep(Signature sig, const std::vector<Multivector<T>>& basis, FieldTag field) {
  std::vector<std::vector<T>> cols;
  for (auto& f : basis) cols.push_back(f.coeffs());
  MatrixRep<T> rep{sig, basis.size(), field, {}, basis};
  for (int i = 1; i <= sig.n(); ++i) {
    auto ei = Multivector<T>::generator(sig, i);
    Matrix<T> E(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = solve_in_span(cols, (ei * basis[j]).coeffs());
      if (!c) throw std::logic_error("ideal basis is not closed under left multiplication by e" + std::to_string(i));
      for (std::size_t r = 0; r < basis.size(); ++r) E(r, j) = (*c)[r];
    }
    rep.gammas.push_back(std::move(E));
  }
  return rep;
}

// Real representation on the ideal; for K = C or H the matrices act on
// the real span, so their size is dim_R of the ideal.
inline MatrixRep<Rational> spinor_rep(const IdealBasis& ib) {
  FieldTag tag = FieldTag::R;
  if (ib.ring == DivisionRing::C) tag = FieldTag::C;
  if (ib.ring == DivisionRing::H || ib.ring == DivisionRing::HH) tag = FieldTag::H_as_real;
  return spinor_rep(ib.idem.element.sig(), ib.basis, tag);
}

template <class T>
bool satisfies_clifford_relations(const MatrixRep<T>& rep) {
  const std::size_t m = rep.dim;
  for (int i = 0; i < rep.sig.n(); ++i)
    for (int j = i; j < rep.sig.n(); ++j) {
      Matrix<T> ac = rep.gammas[i] * rep.gammas[j] + rep.gammas[j] * rep.gammas[i];
      T eta = i == j ? T(2 * rep.sig.metric(i)) : T(0);
      if (!(ac == eta * Matrix<T>::identity(m))) return false;
    }
  return true;
}

// gamma(a) = sum_A a_A E_{i1} ... E_{ik}
template <class T, class U>
Matrix<T> represent(const MatrixRep<T>& rep, const Multivector<U>& a) {
  Matrix<T> out(rep.dim, rep.dim);
  for (Mask A = 0; A < a.size(); ++A) {
    if (is_zero(a[A])) continue;
    Matrix<T> B = Matrix<T>::identity(rep.dim);
    for (int i = 0; i < rep.sig.n(); ++i)
      if (A >> i & 1u) B = B * rep.gammas[i];
    out = out + T(a[A]) * B;
  }
  return out;
}

template <class T>
Matrix<QComplex> to_complex(const Matrix<T>& m) {
  Matrix<QComplex> r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = QComplex(m.a[i]);
  return r;
}
inline Matrix<QComplex> to_complex(const Matrix<QComplex>& m) { return m; }

// Cl(4,0) over C: ideal of (1/2)(1+e1)(1/2)(1+i e23) with basis
// {f, e34 f, e2 f, e2 e34 f}.
inline std::vector<CMultivector> cl40_complex_ideal_basis() {
  Signature s(4, 0);
  CMultivector u = one<QComplex>(s);
  QComplex h(Rational(1, 2));
  CMultivector f = h * (u + CMultivector::blade(s, 0b0001)) * (h * (u + CMultivector::blade(s, 0b0110, QComplex(0, 1))));
  CMultivector e34 = CMultivector::blade(s, 0b1100), e2 = CMultivector::blade(s, 0b0010);
  return {f, e34 * f, e2 * f, e2 * e34 * f};
}

inline MatrixRep<QComplex> cl40_complex_rep() {
  return spinor_rep(Signature(4, 0), cl40_complex_ideal_basis(), FieldTag::C);
}

namespace detail {

inline Matrix<QComplex> cmat(std::initializer_list<std::initializer_list<int>> re,
                             std::initializer_list<std::initializer_list<int>> im = {}) {
  std::size_t n = re.size();
  Matrix<QComplex> m(n, n);
  std::size_t i = 0;
  for (auto& row : re) {
    std::size_t j = 0;
    for (int x : row) m(i, j++).re = Rational(x);
    ++i;
  }
  i = 0;
  for (auto& row : im) {
    std::size_t j = 0;
    for (int x : row) m(i, j++).im = Rational(x);
    ++i;
  }
  return m;
}

}  // namespace detail

// The matrix tables as printed, gammas for e1..e4.
inline std::vector<Matrix<QComplex>> printed_cl31_basis() {
  using detail::cmat;
  return {
      cmat({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}}),
      cmat({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}),
      cmat({{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}}),
      cmat({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}),
  };
}

inline std::vector<Matrix<QComplex>> printed_cl40_basis() {
  using detail::cmat;
  const std::initializer_list<std::initializer_list<int>> zero = {
      {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  return {
      cmat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}),
      cmat({{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}),
      cmat(zero, {{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}),
      cmat(zero, {{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}),
  };
}

inline std::vector<Matrix<QComplex>> printed_cl22_basis() {
  using detail::cmat;
  return {
      cmat({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}),
      cmat({{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}}),
      cmat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}),
      cmat({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}}),
  };
}

struct EntryMismatch {
  int generator;  // 1-based
  std::size_t row, col;
  QComplex computed, printed;
};

inline std::vector<EntryMismatch> compare_entries(const std::vector<Matrix<QComplex>>& computed,
                                                  const std::vector<Matrix<QComplex>>& printed) {
  std::vector<EntryMismatch> out;
  for (std::size_t g = 0; g < printed.size(); ++g)
    for (std::size_t i = 0; i < printed[g].rows; ++i)
      for (std::size_t j = 0; j < printed[g].cols; ++j)
        if (!(computed[g](i, j) == printed[g](i, j)))
          out.push_back({int(g + 1), i, j, computed[g](i, j), printed[g](i, j)});
  return out;
}

// gamma_0..gamma_3 with gamma_0 = diag(I, -I), gamma_k = [[0, -s_k], [s_k, 0]]
struct DiracMatrices {
  std::array<Matrix<QComplex>, 4> gamma;
  std::array<Matrix<QComplex>, 3> sigma;
};

inline DiracMatrices standard_dirac_rep() {
  using detail::cmat;
  DiracMatrices d;
  d.sigma[0] = cmat({{0, 1}, {1, 0}});
  d.sigma[1] = cmat({{0, 0}, {0, 0}}, {{0, -1}, {1, 0}});
  d.sigma[2] = cmat({{1, 0}, {0, -1}});
  auto block = [](const Matrix<QComplex>& a, const Matrix<QComplex>& b, const Matrix<QComplex>& c,
                  const Matrix<QComplex>& e) {
    Matrix<QComplex> m(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        m(i, j) = a(i, j);
        m(i, j + 2) = b(i, j);
        m(i + 2, j) = c(i, j);
        m(i + 2, j + 2) = e(i, j);
      }
    return m;
  };
  Matrix<QComplex> I2 = Matrix<QComplex>::identity(2), Z2(2, 2);
  d.gamma[0] = block(I2, Z2, Z2, QComplex(-1) * I2);
  for (int k = 0; k < 3; ++k) d.gamma[k + 1] = block(Z2, QComplex(-1) * d.sigma[k], d.sigma[k], Z2);
  return d;
}

inline MatrixRep<QComplex> dirac_matrix_rep() {
  auto d = standard_dirac_rep();
  return {Signature(1, 3), 4, FieldTag::C, {d.gamma.begin(), d.gamma.end()}, {}};
}

// Cl e = Cl+ e as real spans
inline bool even_reduction_check(const Idempotent& idem) {
  const QMultivector& e = idem.element;
  const Signature sig = e.sig();
  std::vector<QMultivector> all, even;
  for (Mask m = 0; m < sig.size(); ++m) {
    QMultivector be = QMultivector::blade(sig, m) * e;
    all.push_back(be);
    if (grade(m) % 2 == 0) even.push_back(be);
  }
  return real_span_dimension(even) == real_span_dimension(all);
}

enum class ImmersionCase { S20_M40, S02_M04, S11_M13, S02_M13, S11_M31, S20_M31, S20_M22, S02_M22, S11_M22 };

inline const std::array<ImmersionCase, 9>& all_immersion_cases() {
  static const std::array<ImmersionCase, 9> cases = {
      ImmersionCase::S20_M40, ImmersionCase::S02_M04, ImmersionCase::S11_M13,
      ImmersionCase::S02_M13, ImmersionCase::S11_M31, ImmersionCase::S20_M31,
      ImmersionCase::S20_M22, ImmersionCase::S02_M22, ImmersionCase::S11_M22};
  return cases;
}

inline std::string to_string(ImmersionCase c) {
  switch (c) {
    case ImmersionCase::S20_M40: return "S20-M40";
    case ImmersionCase::S02_M04: return "S02-M04";
    case ImmersionCase::S11_M13: return "S11-M13";
    case ImmersionCase::S02_M13: return "S02-M13";
    case ImmersionCase::S11_M31: return "S11-M31";
    case ImmersionCase::S20_M31: return "S20-M31";
    case ImmersionCase::S20_M22: return "S20-M22";
    case ImmersionCase::S02_M22: return "S02-M22";
    default: return "S11-M22";
  }
}

inline ImmersionCase parse_immersion_case(const std::string& tag) {
  for (auto c : all_immersion_cases())
    if (to_string(c) == tag) return c;
  throw std::invalid_argument("unknown immersion case: " + tag);
}

enum class QuaternionType { quaternion, anti_quaternion, pseudo_quaternion };

inline const char* to_string(QuaternionType t) {
  switch (t) {
    case QuaternionType::quaternion: return "quaternion";
    case QuaternionType::anti_quaternion: return "anti-quaternion";
    default: return "pseudo-quaternion";
  }
}

struct ZetaSquares {
  int z1, z2, z12;
  friend bool operator==(const ZetaSquares&, const ZetaSquares&) = default;
};

inline QuaternionType quaternion_type(ZetaSquares s) {
  if (s.z1 < 0 && s.z2 < 0) return QuaternionType::quaternion;
  if (s.z1 > 0 && s.z2 > 0) return QuaternionType::anti_quaternion;
  return QuaternionType::pseudo_quaternion;
}

struct Decomposition {
  ImmersionCase tag;
  Signature sig;
  Mask zeta1 = 0, zeta2 = 0;
  std::array<Mask, 2> inner{};  // generators of the two-dimensional factor
  Signature inner_sig;
  ZetaSquares squares{};
  QuaternionType type = QuaternionType::quaternion;
  bool eps_is_i = true;  // (zeta1 zeta2)^2 = -1
};

struct ZetaTableRow {
  ImmersionCase tag;
  Signature ambient, surface;
  Mask zeta1, zeta2;
  std::array<Mask, 2> inner;
  ZetaSquares declared;
};

// zeta units and the squares stated for each case; where only the type is
// named the squares are those of the type. Cl(2,2)/S11 uses inner {e1, e3}
// because e4 anticommutes with e123.
inline const std::vector<ZetaTableRow>& zeta_table() {
  static const std::vector<ZetaTableRow> rows = {
      {ImmersionCase::S20_M40, {4, 0}, {2, 0}, 0b0111, 0b1011, {0b0001, 0b0010}, {-1, -1, -1}},
      {ImmersionCase::S02_M04, {0, 4}, {0, 2}, 0b0111, 0b1011, {0b0001, 0b0010}, {1, 1, -1}},
      {ImmersionCase::S11_M13, {1, 3}, {1, 1}, 0b0111, 0b1011, {0b0001, 0b0010}, {-1, -1, -1}},
      {ImmersionCase::S02_M13, {1, 3}, {0, 2}, 0b1101, 0b1110, {0b0100, 0b1000}, {-1, 1, 1}},
      {ImmersionCase::S11_M31, {3, 1}, {1, 1}, 0b1101, 0b1110, {0b0100, 0b1000}, {1, 1, -1}},
      {ImmersionCase::S20_M31, {3, 1}, {2, 0}, 0b1011, 0b0111, {0b0001, 0b0010}, {1, -1, 1}},
      {ImmersionCase::S20_M22, {2, 2}, {2, 0}, 0b0111, 0b1011, {0b0001, 0b0010}, {1, 1, -1}},
      {ImmersionCase::S02_M22, {2, 2}, {0, 2}, 0b1101, 0b1110, {0b0100, 0b1000}, {-1, -1, -1}},
      {ImmersionCase::S11_M22, {2, 2}, {1, 1}, 0b0111, 0b1101, {0b0001, 0b0100}, {1, -1, 1}},
  };
  return rows;
}

inline const ZetaTableRow& zeta_row(ImmersionCase c) {
  for (auto& r : zeta_table())
    if (r.tag == c) return r;
  throw std::invalid_argument("unlisted immersion case");
}

inline int square_sign(const QMultivector& x) {
  QMultivector sq = x * x;
  QMultivector rest = sq;
  rest[0] = Rational(0);
  if (!rest.is_zero() || is_zero(sq[0])) throw std::logic_error("square is not a nonzero scalar");
  return sq[0].numerator() > 0 ? 1 : -1;
}

inline Decomposition find_zeta_units(Signature sig, ImmersionCase c) {
  const ZetaTableRow& row = zeta_row(c);
  if (!(row.ambient == sig)) throw std::invalid_argument(to_string(c) + " lives in Cl" + row.ambient.str() + ", not Cl" + sig.str());
  Decomposition d;
  d.tag = c;
  d.sig = sig;
  d.zeta1 = row.zeta1;
  d.zeta2 = row.zeta2;
  d.inner = row.inner;
  QMultivector z1 = QMultivector::blade(sig, row.zeta1), z2 = QMultivector::blade(sig, row.zeta2);
  for (Mask g : row.inner) {
    QMultivector b = QMultivector::blade(sig, g);
    if (!(b * z1 == z1 * b) || !(b * z2 == z2 * b))
      throw std::logic_error("zeta units of " + to_string(c) + " do not commute with " + blade_name(g));
  }
  int p = 0, q = 0;
  for (Mask g : row.inner) (blade_square(sig, g) > 0 ? p : q)++;
  d.inner_sig = Signature(p, q);
  d.squares = {square_sign(z1), square_sign(z2), square_sign(z1 * z2)};
  d.type = quaternion_type(d.squares);
  d.eps_is_i = d.squares.z12 < 0;
  return d;
}

inline Decomposition find_zeta_units(ImmersionCase c) { return find_zeta_units(zeta_row(c).ambient, c); }

// Blade masks of the inner factor: 1, g1, g2, g1 g2
inline std::array<Mask, 4> inner_blades(const Decomposition& d) {
  return {Mask(0), d.inner[0], d.inner[1], Mask(d.inner[0] ^ d.inner[1])};
}

inline std::array<Mask, 4> zeta_blades(const Decomposition& d) {
  return {Mask(0), d.zeta1, d.zeta2, Mask(d.zeta1 ^ d.zeta2)};
}

// zeta_k as multivectors, with zeta_3 = zeta1 zeta2 carrying its sign
template <class T>
std::array<Multivector<T>, 4> zeta_elements(const Decomposition& d) {
  auto z1 = Multivector<T>::blade(d.sig, d.zeta1), z2 = Multivector<T>::blade(d.sig, d.zeta2);
  return {one<T>(d.sig), z1, z2, z1 * z2};
}

template <class T>
struct QuaternionicCoordinates {
  std::array<Multivector<T>, 4> c;
};

// a = c0 + c1 z1 + c2 z2 + c3 z1 z2 with each c_k supported on the inner blades
template <class T>
QuaternionicCoordinates<T> quaternionic_coordinates(const Multivector<T>& a, const Decomposition& d) {
  if (!(a.sig() == d.sig)) throw std::invalid_argument("signature mismatch");
  auto zs = zeta_elements<Rational>(d);
  QuaternionicCoordinates<T> out{{Multivector<T>(d.sig), Multivector<T>(d.sig), Multivector<T>(d.sig), Multivector<T>(d.sig)}};
  for (int k = 0; k < 4; ++k)
    for (Mask B : inner_blades(d)) {
      QMultivector prod = QMultivector::blade(d.sig, B) * zs[k];
      // exactly one blade with coefficient +-1
      Mask target = 0;
      for (Mask m = 0; m < prod.size(); ++m)
        if (!is_zero(prod[m])) target = m;
      int s = prod[target].numerator() > 0 ? 1 : -1;
      out.c[k][B] = s > 0 ? a[target] : T(-a[target]);
    }
  return out;
}

template <class T>
Multivector<T> reassemble(const QuaternionicCoordinates<T>& qc, const Decomposition& d) {
  auto zs = zeta_elements<T>(d);
  Multivector<T> r(d.sig);
  for (int k = 0; k < 4; ++k) r += qc.c[k] * zs[k];
  return r;
}

// Karoubi split: inner x outer products span the full algebra and the
// two factors commute.
inline bool karoubi_dimension_check(const Decomposition& d) {
  std::vector<QMultivector> products;
  auto zs = zeta_elements<Rational>(d);
  for (Mask B : inner_blades(d)) {
    QMultivector b = QMultivector::blade(d.sig, B);
    for (auto& z : zs) {
      if (!(b * z == z * b)) return false;
      products.push_back(b * z);
    }
  }
  return real_span_dimension(products) == d.sig.size();
}

}  // namespace spinsurf
