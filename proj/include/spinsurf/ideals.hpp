#pragma once

#include "spinsurf/clifford.hpp"
#include "spinsurf/linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spinsurf {

inline int rh_number(int i) {
  static constexpr int base[8] = {0, 1, 2, 2, 3, 3, 3, 3};
  int r = mod8(i);
  int shift = (i - r) / 8;
  return base[r] + 4 * shift;
}

// number of idempotent factors k = q - r_{q-p}
inline int commuting_count(Signature sig) { return sig.q - rh_number(sig.q - sig.p); }

struct Idempotent {
  QMultivector element;
  std::vector<Mask> factors;
};

inline bool blades_commute(Mask a, Mask b) {
  // e_a e_b = (-1)^(|a||b| - |a&b|) e_b e_a
  return ((grade(a) * grade(b) - grade(a & b)) % 2) == 0;
}

inline int blade_square(Signature sig, Mask a) { return blade_product_sign(sig, a, a); }

// Validates the factor list and builds prod (1+e_a)/2.
inline Idempotent make_idempotent(Signature sig, const std::vector<Mask>& factors) {
  std::vector<Mask> span;  // GF(2) row-reduced masks
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Mask f = factors[i];
    if (f == 0 || f >= sig.size())
      throw std::invalid_argument("idempotent factor " + blade_name(f) + " is not a proper blade");
    if (blade_square(sig, f) != 1)
      throw std::invalid_argument("idempotent factor " + blade_name(f) + " squares to -1");
    for (std::size_t j = 0; j < i; ++j)
      if (!blades_commute(f, factors[j]))
        throw std::invalid_argument("idempotent factors " + blade_name(factors[j]) + " and " + blade_name(f) +
                                    " anticommute");
    Mask red = f;
    for (Mask s : span)
      if ((red ^ s) < red) red ^= s;
    if (red == 0) throw std::invalid_argument("idempotent factor " + blade_name(f) + " is a product of the others");
    span.push_back(red);
    std::sort(span.rbegin(), span.rend());
  }
  QMultivector e = one<Rational>(sig);
  for (Mask f : factors) e = e * (Rational(1, 2) * (one<Rational>(sig) + QMultivector::blade(sig, f)));
  return {e, factors};
}

template <class T>
std::vector<T> real_coords(const Multivector<T>& a) {
  return a.coeffs();
}

template <class T>
std::vector<T> real_coords(const Multivector<Complex<T>>& a) {
  std::vector<T> v;
  v.reserve(2 * a.size());
  for (auto& c : a.coeffs()) v.push_back(c.re);
  for (auto& c : a.coeffs()) v.push_back(c.im);
  return v;
}

template <class T>
struct scalar_real {
  using type = T;
};
template <class T>
struct scalar_real<Complex<T>> {
  using type = T;
};

// Real dimension of span{x_i}.
template <class T>
std::size_t real_span_dimension(const std::vector<Multivector<T>>& xs) {
  if (xs.empty()) return 0;
  using R = typename scalar_real<T>::type;
  EchelonBasis<R> eb(real_coords(xs[0]).size());
  for (auto& x : xs) eb.insert(real_coords(x));
  return eb.rank();
}

// Real dimension of Cl*e; complex coefficients also use i*blade*e.
template <class T>
std::size_t left_ideal_dimension(const Multivector<T>& e) {
  std::vector<Multivector<T>> gens;
  for (Mask m = 0; m < e.size(); ++m) {
    auto b = Multivector<T>::blade(e.sig(), m);
    gens.push_back(b * e);
    if constexpr (!std::is_same_v<T, typename scalar_real<T>::type>) gens.push_back(b * e * imag_unit<typename scalar_real<T>::type>());
  }
  return real_span_dimension(gens);
}

inline Idempotent primitive_idempotent(Signature sig, const std::optional<std::vector<Mask>>& preferred = std::nullopt) {
  const int k = commuting_count(sig);
  if (preferred) {
    if (int(preferred->size()) != k)
      throw std::invalid_argument("expected " + std::to_string(k) + " idempotent factors for " + sig.str() + ", got " +
                                  std::to_string(preferred->size()));
    return make_idempotent(sig, *preferred);
  }
  std::vector<Mask> cand;
  for (Mask m = 1; m < sig.size(); ++m)
    if (blade_square(sig, m) == 1) cand.push_back(m);
  std::stable_sort(cand.begin(), cand.end(), [](Mask a, Mask b) {
    return grade(a) != grade(b) ? grade(a) < grade(b) : a < b;
  });
  std::vector<Mask> chosen;
  std::function<bool(std::size_t)> dfs = [&](std::size_t from) -> bool {
    if (int(chosen.size()) == k) return true;
    for (std::size_t i = from; i < cand.size(); ++i) {
      Mask c = cand[i];
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](Mask d) { return blades_commute(c, d); });
      if (!ok) continue;
      // GF(2) independence of masks
      std::vector<Mask> span;
      for (Mask d : chosen) {
        Mask red = d;
        for (Mask s : span)
          if ((red ^ s) < red) red ^= s;
        span.push_back(red);
        std::sort(span.rbegin(), span.rend());
      }
      Mask red = c;
      for (Mask s : span)
        if ((red ^ s) < red) red ^= s;
      if (red == 0) continue;
      chosen.push_back(c);
      if (dfs(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!dfs(0)) throw std::runtime_error("no commuting idempotent factor set found for " + sig.str());
  return make_idempotent(sig, chosen);
}

enum class DivisionRing { R, C, H, RR, HH, unknown };

inline const char* to_string(DivisionRing d) {
  switch (d) {
    case DivisionRing::R: return "R";
    case DivisionRing::C: return "C";
    case DivisionRing::H: return "H";
    case DivisionRing::RR: return "R⊕R";
    case DivisionRing::HH: return "H⊕H";
    default: return "unknown";
  }
}

// Classifies the real algebra spanned by `basis` (closed under the product)
// by dimension and the inertia of its trace form tr(L_x L_y). H has inertia (1,3), C (1,1), R+R (2,0), H+H (2,6).
inline DivisionRing classify_algebra(const std::vector<QMultivector>& basis) {
  const std::size_t d = basis.size();
  if (d == 0) return DivisionRing::unknown;
  std::vector<std::vector<Rational>> cols;
  for (auto& b : basis) cols.push_back(b.coeffs());
  std::vector<Matrix<Rational>> L;
  for (auto& x : basis) {
    Matrix<Rational> M(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      auto c = solve_in_span(cols, (x * basis[j]).coeffs());
      if (!c) return DivisionRing::unknown;
      for (std::size_t i = 0; i < d; ++i) M(i, j) = (*c)[i];
    }
    L.push_back(M);
  }
  Matrix<Rational> G(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) G(i, j) = (L[i] * L[j]).trace();
  auto [pos, neg] = inertia(G);
  if (d == 1 && pos == 1) return DivisionRing::R;
  if (d == 2 && pos == 1 && neg == 1) return DivisionRing::C;
  if (d == 2 && pos == 2) return DivisionRing::RR;
  if (d == 4 && pos == 1 && neg == 3) return DivisionRing::H;
  if (d == 8 && pos == 2 && neg == 6) return DivisionRing::HH;
  return DivisionRing::unknown;
}

struct IdealBasis {
  Idempotent idem;
  std::vector<Mask> left_blades;  // basis[j] = blade(left_blades[j]) * idem
  std::vector<QMultivector> basis;
  std::vector<Mask> divring_blades;  // divring[j] = idem * blade * idem
  std::vector<QMultivector> divring;
  DivisionRing ring = DivisionRing::unknown;
};

inline bool is_idempotent(const QMultivector& e) { return e * e == e && !e.is_zero(); }

inline IdealBasis minimal_left_ideal(const Idempotent& idem, const std::optional<std::vector<Mask>>& left_blades = std::nullopt) {
  const QMultivector& e = idem.element;
  if (!is_idempotent(e)) throw std::invalid_argument("minimal_left_ideal: element is not idempotent");
  const Signature sig = e.sig();
  IdealBasis ib{idem, {}, {}, {}, {}, DivisionRing::unknown};

  EchelonBasis<Rational> all(sig.size());
  for (Mask m = 0; m < sig.size(); ++m) all.insert((QMultivector::blade(sig, m) * e).coeffs());
  const std::size_t dim = all.rank();

  if (left_blades) {
    EchelonBasis<Rational> eb(sig.size());
    for (Mask m : *left_blades) {
      QMultivector f = QMultivector::blade(sig, m) * e;
      if (!eb.insert(f.coeffs())) throw std::invalid_argument("listed ideal basis is dependent at " + blade_name(m));
      ib.left_blades.push_back(m);
      ib.basis.push_back(f);
    }
    if (eb.rank() != dim) throw std::invalid_argument("listed ideal basis does not span the ideal");
  } else {
    EchelonBasis<Rational> eb(sig.size());
    for (Mask m = 0; m < sig.size(); ++m) {
      QMultivector f = QMultivector::blade(sig, m) * e;
      if (eb.insert(f.coeffs())) {
        ib.left_blades.push_back(m);
        ib.basis.push_back(f);
      }
    }
  }

  // division ring e Cl e = span{e b e}, blades in (grade, mask) order
  EchelonBasis<Rational> dr(sig.size());
  std::vector<Mask> order;
  for (Mask m = 0; m < sig.size(); ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) {
    return grade(a) != grade(b) ? grade(a) < grade(b) : a < b;
  });
  for (Mask m : order) {
    QMultivector ebe = e * QMultivector::blade(sig, m) * e;
    if (dr.insert(ebe.coeffs())) {
      ib.divring_blades.push_back(m);
      ib.divring.push_back(ebe);
    }
  }
  ib.ring = classify_algebra(ib.divring);
  return ib;
}

inline bool is_primitive(const QMultivector& e) {
  if (!is_idempotent(e)) return false;
  const Signature sig = e.sig();
  std::size_t expected = std::size_t(1) << (sig.n() - commuting_count(sig));
  return left_ideal_dimension(e) == expected;
}

// Checks that the listed blades g commute with e and that {g e} spans e Cl e.
inline bool divring_generated_by(const IdealBasis& ib, const std::vector<Mask>& gens) {
  const QMultivector& e = ib.idem.element;
  const Signature sig = e.sig();
  EchelonBasis<Rational> eb(sig.size());
  for (Mask g : gens) {
    QMultivector b = QMultivector::blade(sig, g);
    if (!(b * e == e * b)) return false;
    eb.insert((b * e).coeffs());
  }
  if (eb.rank() != ib.divring.size()) return false;
  for (auto& d : ib.divring)
    if (!eb.contains(d.coeffs())) return false;
  return true;
}

struct IdealTableEntry {
  Signature sig;
  std::vector<Mask> factors;
  std::vector<Mask> generators;
  DivisionRing ring;
};

// The five four-dimensional ideals with their listed division rings.
inline std::vector<IdealTableEntry> four_dim_ideal_table() {
  return {
      {{0, 4}, {0b0111}, {0, 0b0001, 0b0101, 0b0100}, DivisionRing::H},
      {{1, 3}, {0b1001}, {0, 0b0010, 0b0100, 0b0110}, DivisionRing::H},
      {{2, 2}, {0b0101, 0b1010}, {0}, DivisionRing::R},
      {{3, 1}, {0b0001, 0b1010}, {0}, DivisionRing::R},
      {{4, 0}, {0b0001}, {0, 0b0110, 0b1010, 0b1100}, DivisionRing::H},
  };
}

// Listed spin-space bases f_j = b_j e for Cl(3,1) and Cl(2,2).
inline std::optional<std::vector<Mask>> listed_ideal_blades(Signature sig) {
  if (sig == Signature(3, 1)) return std::vector<Mask>{0, 0b0010, 0b0100, 0b0110};
  if (sig == Signature(2, 2)) return std::vector<Mask>{0, 0b0001, 0b0010, 0b0011};
  return std::nullopt;
}

// Pauli case: the complex unit is realized by the central w = e123, so
// (1 + i e12)/2 becomes (1 + w e12)/2 = (1 - e3)/2.
inline QMultivector pauli_idempotent() {
  Signature sig(3, 0);
  QMultivector w = volume_element<Rational>(sig);
  return Rational(1, 2) * (one<Rational>(sig) + w * QMultivector::blade(sig, 0b011));
}

// The same projector in the complexified algebra C (x) Cl(3,0).
inline CMultivector pauli_idempotent_complexified() {
  Signature sig(3, 0);
  CMultivector u = one<QComplex>(sig);
  CMultivector ie12 = CMultivector::blade(sig, 0b011, QComplex(0, 1));
  return QComplex(Rational(1, 2)) * (u + ie12);
}

// Structure of the whole algebra as a string such as "M2(R)" or "H⊕H".
inline std::string algebra_structure(Signature sig) {
  Idempotent e = primitive_idempotent(sig);
  IdealBasis ib = minimal_left_ideal(e);
  std::size_t kd = ib.divring.size();
  std::size_t m = ib.basis.size() / kd;
  std::string k;
  switch (ib.ring) {
    case DivisionRing::R: k = "R"; break;
    case DivisionRing::C: k = "C"; break;
    case DivisionRing::H: k = "H"; break;
    default: k = "?"; break;
  }
  std::string block = m == 1 ? k : "M" + std::to_string(m) + "(" + k + ")";
  bool split = sig.n() % 2 == 1 && classify_odd(sig).tag == OddTag::splits;
  return split ? block + "⊕" + block : block;
}

}  // namespace spinsurf
