#pragma once

#include "spinsurf/representations.hpp"

#include <array>
#include <cmath>
#include <complex>

namespace spinsurf {

struct MotherSpinor {
  CMultivector element;
  CMultivector idem;
};

inline MotherSpinor make_mother_spinor(const CMultivector& element, const CMultivector& idem) {
  if (!(idem * idem == idem)) throw std::invalid_argument("mother spinor: projector is not idempotent");
  if (!(element * idem == element)) throw std::invalid_argument("mother spinor is not in the left ideal");
  return {element, idem};
}

inline MotherSpinor make_mother_spinor(const CMultivector& element, const QMultivector& idem) {
  return make_mother_spinor(element, complexify(idem));
}

// (1 + eps z1 z2)/2 and (1 - eps z1 z2)/2
inline std::pair<CMultivector, CMultivector> restriction_projectors(const Decomposition& d, bool eps_is_i) {
  auto zs = zeta_elements<QComplex>(d);
  CMultivector u = one<QComplex>(d.sig);
  CMultivector ez = eps_is_i ? QComplex(0, 1) * zs[3] : zs[3];
  QComplex h(Rational(1, 2));
  return {h * (u + ez), h * (u - ez)};
}

inline std::pair<CMultivector, CMultivector> restriction_projectors(const Decomposition& d) {
  return restriction_projectors(d, d.eps_is_i);
}

struct RestrictedField {
  CMultivector plus, minus;
  ImmersionCase tag;
  bool eps_is_i;
};

inline RestrictedField project_restriction(const MotherSpinor& psi, const Decomposition& d) {
  if (!(psi.element.sig() == d.sig)) throw std::invalid_argument("spinor and decomposition signatures differ");
  auto [ep, em] = restriction_projectors(d);
  return {ep * psi.element, em * psi.element, d.tag, d.eps_is_i};
}

inline bool projector_algebra_check(const Decomposition& d, bool eps_is_i) {
  auto [ep, em] = restriction_projectors(d, eps_is_i);
  CMultivector u = one<QComplex>(d.sig);
  return ep + em == u && ep * ep == ep && em * em == em && (ep * em).is_zero() && (em * ep).is_zero();
}

inline bool projector_algebra_check(const Decomposition& d) { return projector_algebra_check(d, d.eps_is_i); }

// 2x2 models of the zeta units used for the matrix form of the restriction.
struct ZetaMatrices {
  Matrix<QComplex> zeta1, zeta2;
};

inline ZetaMatrices zeta_matrices(const ZetaSquares& sq) {
  using detail::cmat;
  const auto J = cmat({{0, -1}, {1, 0}}), X = cmat({{0, 1}, {1, 0}});
  if (sq.z1 < 0) return {J, sq.z2 < 0 ? cmat({{0, 0}, {0, 0}}, {{0, 1}, {1, 0}}) : X};
  return {X, sq.z2 < 0 ? J : cmat({{0, 0}, {0, 0}}, {{0, -1}, {1, 0}})};
}

// plus = (1 + eps Z1 Z2)/2 Psi, minus = (1 - eps Z1 Z2)/2 Psi on 2x2 matrices
inline std::pair<Matrix<QComplex>, Matrix<QComplex>> project_matrix_model(const Matrix<QComplex>& psi,
                                                                          const ZetaMatrices& z, bool eps_is_i) {
  Matrix<QComplex> zz = z.zeta1 * z.zeta2;
  if (eps_is_i) zz = QComplex(0, 1) * zz;
  Matrix<QComplex> I = Matrix<QComplex>::identity(2);
  QComplex h(Rational(1, 2));
  return {h * (I + zz) * psi, h * (I - zz) * psi};
}

// Dirac-Hestenes spinors. Coefficients a are ordered 1, s1, s2, s3, s12, s13, s23, s123
// where s_k = e_{k+1} e_1 generate the even subalgebra.
inline constexpr std::array<Mask, 8> dh_blades = {0, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};

inline QMultivector even_generator_product(Signature sig, Mask b) {
  QMultivector r = one<Rational>(sig);
  for (int k = 0; k < 3; ++k)
    if (b >> k & 1u) r = r * QMultivector::generator(sig, k + 2) * QMultivector::generator(sig, 1);
  return r;
}

inline QMultivector even_element(Signature sig, const std::array<Rational, 8>& a) {
  QMultivector r(sig);
  for (std::size_t j = 0; j < 8; ++j) r += a[j] * even_generator_product(sig, dh_blades[j]);
  return r;
}

inline QMultivector gamma0_idempotent(Signature sig) {
  return Rational(1, 2) * (one<Rational>(sig) + QMultivector::generator(sig, 1));
}

// Solves psi = phi (1+e1)/2 for the even element phi.
inline std::array<Rational, 8> even_coordinates(const QMultivector& psi) {
  const Signature sig = psi.sig();
  QMultivector e = gamma0_idempotent(sig);
  if (!(psi * e == psi)) throw std::invalid_argument("spinor is not in the ideal Cl (1+e1)/2");
  std::vector<std::vector<Rational>> cols;
  for (Mask b : dh_blades) cols.push_back((even_generator_product(sig, b) * e).coeffs());
  auto x = solve_in_span(cols, psi.coeffs());
  if (!x) throw std::logic_error("even part does not reach the ideal element");
  std::array<Rational, 8> a;
  for (std::size_t j = 0; j < 8; ++j) a[j] = (*x)[j];
  return a;
}

struct DiracHestenes {
  std::array<Rational, 8> a;
  std::array<QComplex, 4> phi;

  // the printed 2x2 form [[phi1*+phi3*, phi4*+phi2*], [phi4-phi2, phi1-phi3]]
  Matrix<QComplex> matrix() const {
    Matrix<QComplex> m(2, 2);
    m(0, 0) = conj(phi[0]) + conj(phi[2]);
    m(0, 1) = conj(phi[3]) + conj(phi[1]);
    m(1, 0) = phi[3] - phi[1];
    m(1, 1) = phi[0] - phi[2];
    return m;
  }
};

inline DiracHestenes dirac_hestenes_from_coefficients(const std::array<Rational, 8>& a) {
  // a = (a0, a1, a2, a3, a12, a13, a23, a123)
  DiracHestenes d{a, {}};
  d.phi[0] = QComplex(a[0], -a[4]);
  d.phi[1] = QComplex(-a[5], -a[6]);
  d.phi[2] = QComplex(a[3], -a[7]);
  d.phi[3] = QComplex(a[1], a[2]);
  return d;
}

inline DiracHestenes dirac_hestenes_from_mother(const QMultivector& psi) {
  if (!(psi.sig() == Signature(1, 3))) throw std::invalid_argument("Lorentz Dirac-Hestenes spinors live in Cl(1,3)");
  return dirac_hestenes_from_coefficients(even_coordinates(psi));
}

inline QMultivector mother_from_dirac_hestenes(const DiracHestenes& d, Signature sig = Signature(1, 3)) {
  return even_element(sig, d.a) * gamma0_idempotent(sig);
}

using Biquaternion = Complex<DoubleNumber<Rational>>;

// Elliptic case in Cl(4,0): phi1 = a0 - i e a12, phi2 = e a23 + i a2,
// phi3 = e a123 - i a3, phi4 = a1 + i e a13 with e the double unit.
struct EllipticDiracHestenes {
  std::array<Rational, 8> a;
  std::array<Biquaternion, 4> phi;

  Biquaternion plus() const { return phi[0] + phi[2]; }
  Biquaternion minus() const { return phi[3] + phi[1]; }
};

inline EllipticDiracHestenes elliptic_dirac_hestenes_from_coefficients(const std::array<Rational, 8>& a) {
  using D = DoubleNumber<Rational>;
  const Rational z(0);
  EllipticDiracHestenes d{a, {}};
  d.phi[0] = Biquaternion(D(a[0], z), D(z, -a[4]));
  d.phi[1] = Biquaternion(D(z, a[6]), D(a[2], z));
  d.phi[2] = Biquaternion(D(z, a[7]), D(-a[3], z));
  d.phi[3] = Biquaternion(D(a[1], z), D(z, a[5]));
  return d;
}

inline EllipticDiracHestenes elliptic_dirac_hestenes_from_mother(const QMultivector& psi) {
  if (!(psi.sig() == Signature(4, 0))) throw std::invalid_argument("elliptic Dirac-Hestenes spinors live in Cl(4,0)");
  return elliptic_dirac_hestenes_from_coefficients(even_coordinates(psi));
}

// Bilinear covariants in the standard representation.
using CMatrix = Matrix<CDouble>;

inline CMatrix to_cdouble(const Matrix<QComplex>& m) {
  CMatrix r(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = to_cdouble(m.a[i]);
  return r;
}

struct DiracMatricesD {
  std::array<CMatrix, 4> gamma;
  CMatrix gamma5;  // gamma_0123
};

inline const DiracMatricesD& dirac_matrices_d() {
  static const DiracMatricesD d = [] {
    auto q = standard_dirac_rep();
    DiracMatricesD r;
    for (int k = 0; k < 4; ++k) r.gamma[k] = to_cdouble(q.gamma[k]);
    r.gamma5 = r.gamma[0] * r.gamma[1] * r.gamma[2] * r.gamma[3];
    return r;
  }();
  return d;
}

using Spinor4 = std::array<CDouble, 4>;

struct BilinearCovariants {
  double sigma = 0;
  std::array<double, 4> J{};
  std::array<std::array<double, 4>, 4> S{};  // antisymmetric, lower indices
  std::array<double, 4> K{};
  double omega = 0;
  double max_imag = 0;  // largest imaginary part discarded
};

namespace detail {

inline CDouble sandwich(const Spinor4& psi, const CMatrix& M) {
  // psi^+ gamma_0 M psi
  const CMatrix& g0 = dirac_matrices_d().gamma[0];
  CDouble s = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CDouble gm = 0;
      for (std::size_t k = 0; k < 4; ++k) gm += g0(i, k) * M(k, j);
      s += std::conj(psi[i]) * gm * psi[j];
    }
  return s;
}

}  // namespace detail

inline BilinearCovariants bilinear_covariants(const Spinor4& psi) {
  const auto& d = dirac_matrices_d();
  const CDouble I(0, 1);
  BilinearCovariants c;
  auto take = [&](CDouble z) {
    c.max_imag = std::max(c.max_imag, std::abs(z.imag()));
    return z.real();
  };
  c.sigma = take(detail::sandwich(psi, CMatrix::identity(4)));
  for (int m = 0; m < 4; ++m) {
    c.J[m] = take(detail::sandwich(psi, d.gamma[m]));
    c.K[m] = take(detail::sandwich(psi, I * (d.gamma5 * d.gamma[m])));
    for (int n = m + 1; n < 4; ++n) {
      c.S[m][n] = take(detail::sandwich(psi, I * (d.gamma[m] * d.gamma[n])));
      c.S[n][m] = -c.S[m][n];
    }
  }
  c.omega = -take(detail::sandwich(psi, d.gamma5));
  return c;
}

inline constexpr std::array<double, 4> minkowski = {1, -1, -1, -1};

inline double minkowski_dot(const std::array<double, 4>& x, const std::array<double, 4>& y) {
  double s = 0;
  for (int m = 0; m < 4; ++m) s += minkowski[m] * x[m] * y[m];
  return s;
}

struct FierzResiduals {
  double jj, kk, jk;  // relative
};

inline FierzResiduals fierz_residuals(const BilinearCovariants& c) {
  double J2 = minkowski_dot(c.J, c.J), K2 = minkowski_dot(c.K, c.K), JK = minkowski_dot(c.J, c.K);
  double scale = 1 + std::abs(J2);
  double nj = 0, nk = 0;
  for (int m = 0; m < 4; ++m) {
    nj += c.J[m] * c.J[m];
    nk += c.K[m] * c.K[m];
  }
  return {std::abs(J2 - c.sigma * c.sigma - c.omega * c.omega) / scale, std::abs(K2 + J2) / scale,
          std::abs(JK) / (1 + std::sqrt(nj * nk))};
}

// Z = sigma + J^m g_m + i S^{mn} g_mn (m<n) - i g5 K^m g_m + g5 omega
inline CMatrix boomerang(const BilinearCovariants& c) {
  const auto& d = dirac_matrices_d();
  const CDouble I(0, 1);
  CMatrix Z = CDouble(c.sigma) * CMatrix::identity(4);
  for (int m = 0; m < 4; ++m) {
    Z = Z + CDouble(minkowski[m] * c.J[m]) * d.gamma[m];
    Z = Z - (I * minkowski[m] * c.K[m]) * (d.gamma5 * d.gamma[m]);
    for (int n = m + 1; n < 4; ++n) Z = Z + (I * minkowski[m] * minkowski[n] * c.S[m][n]) * (d.gamma[m] * d.gamma[n]);
  }
  return Z + CDouble(c.omega) * d.gamma5;
}

inline CMatrix boomerang(const Spinor4& psi) { return boomerang(bilinear_covariants(psi)); }

// 4 psi psi^+ gamma_0
inline CMatrix boomerang_outer(const Spinor4& psi) {
  CMatrix P(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) P(i, j) = 4.0 * psi[i] * std::conj(psi[j]);
  return P * dirac_matrices_d().gamma[0];
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.a.size(); ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
  return m;
}

inline double max_abs(const CMatrix& a) {
  double m = 0;
  for (auto& x : a.a) m = std::max(m, std::abs(x));
  return m;
}

// F = E + iB; the matrix of F1 e1 + F2 e2 + F3 e12
inline Matrix<CDouble> em_matrix(CDouble F1, CDouble F2, CDouble F3) {
  const CDouble I(0, 1);
  return CMatrix{{F1 + I * F2, I * F3}, {I * F3, F1 - I * F2}};
}

inline CDouble em_invariant(CDouble F1, CDouble F2, CDouble F3) { return F1 * F1 + F2 * F2 + F3 * F3; }

inline bool null_em_check(CDouble F1, CDouble F2, CDouble F3, double tol = 1e-12) {
  double scale = 1 + std::norm(F1) + std::norm(F2) + std::norm(F3);
  return std::abs(em_invariant(F1, F2, F3)) <= tol * scale;
}

}  // namespace spinsurf
