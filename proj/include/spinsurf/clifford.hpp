#pragma once

#include "spinsurf/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinsurf {

using Mask = std::uint32_t;

struct Signature {
  int p = 0;
  int q = 0;

  Signature() = default;
  Signature(int p_, int q_) : p(p_), q(q_) {
    if (p < 0 || q < 0) throw std::invalid_argument("signature counts must be non-negative");
    if (p + q < 1 || p + q > 8) throw std::invalid_argument("signature needs 1 <= p+q <= 8");
  }

  int n() const { return p + q; }
  std::size_t size() const { return std::size_t(1) << n(); }
  // generator index i is 0-based here; i < p squares to +1
  int metric(int i) const { return i < p ? 1 : -1; }
  std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

  friend bool operator==(const Signature&, const Signature&) = default;
};

inline int grade(Mask m) { return std::popcount(m); }

// (-1)^(number of transpositions) to bring e_a e_b to canonical order
inline int reorder_sign(Mask a, Mask b) {
  int swaps = 0;
  a >>= 1;
  while (a) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

inline int blade_product_sign(const Signature& sig, Mask a, Mask b) {
  int s = reorder_sign(a, b);
  Mask common = a & b;
  // contracted generators beyond p square to -1
  Mask negative = common >> sig.p;
  if (std::popcount(negative) & 1) s = -s;
  return s;
}

inline std::string blade_name(Mask m) {
  if (m == 0) return "1";
  std::string s = "e";
  for (int i = 0; i < 8; ++i)
    if (m >> i & 1u) s += char('1' + i);
  return s;
}

// "e24" -> mask; digits must be ascending
inline Mask parse_blade(std::string_view name, int n) {
  if (name == "1" || name == "e0") return 0;
  if (name.size() < 2 || name[0] != 'e') throw std::invalid_argument("bad blade name: " + std::string(name));
  Mask m = 0;
  int last = 0;
  for (char c : name.substr(1)) {
    if (c < '1' || c > '9') throw std::invalid_argument("bad blade name: " + std::string(name));
    int d = c - '0';
    if (d <= last) throw std::invalid_argument("blade digits must ascend: " + std::string(name));
    if (d > n) throw std::invalid_argument("blade index exceeds dimension: " + std::string(name));
    m |= Mask(1) << (d - 1);
    last = d;
  }
  return m;
}

template <class T>
class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(Signature sig) : sig_(sig), c_(sig.size(), T(0)) {}

  static Multivector scalar(Signature sig, T v) {
    Multivector r(sig);
    r.c_[0] = std::move(v);
    return r;
  }
  static Multivector blade(Signature sig, Mask m, T v = T(1)) {
    if (m >= sig.size()) throw std::invalid_argument("blade mask out of range");
    Multivector r(sig);
    r.c_[m] = std::move(v);
    return r;
  }
  static Multivector generator(Signature sig, int i) { return blade(sig, Mask(1) << (i - 1)); }

  const Signature& sig() const { return sig_; }
  std::size_t size() const { return c_.size(); }
  const T& operator[](Mask m) const { return c_[m]; }
  T& operator[](Mask m) { return c_[m]; }
  const std::vector<T>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& x) { return spinsurf::is_zero(x); });
  }

  friend Multivector operator+(Multivector a, const Multivector& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend Multivector operator-(Multivector a, const Multivector& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend Multivector operator-(Multivector a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Multivector operator*(const T& s, Multivector a) {
    for (auto& x : a.c_) x = s * x;
    return a;
  }
  friend Multivector operator*(Multivector a, const T& s) {
    for (auto& x : a.c_) x = x * s;
    return a;
  }
  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    check_same(a, b);
    Multivector r(a.sig_);
    const std::size_t N = a.c_.size();
    for (Mask i = 0; i < N; ++i) {
      if (spinsurf::is_zero(a.c_[i])) continue;
      for (Mask j = 0; j < N; ++j) {
        if (spinsurf::is_zero(b.c_[j])) continue;
        T t = a.c_[i] * b.c_[j];
        if (blade_product_sign(a.sig_, i, j) < 0)
          r.c_[i ^ j] -= t;
        else
          r.c_[i ^ j] += t;
      }
    }
    return r;
  }
  Multivector& operator+=(const Multivector& o) { return *this = *this + o; }
  Multivector& operator-=(const Multivector& o) { return *this = *this - o; }
  Multivector& operator*=(const Multivector& o) { return *this = *this * o; }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    if (a.sig_ != b.sig_) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!spinsurf::is_zero(T(a.c_[i] - b.c_[i]))) return false;
    return true;
  }

  Multivector grade_part(int k) const {
    Multivector r(sig_);
    for (Mask m = 0; m < c_.size(); ++m)
      if (grade(m) == k) r.c_[m] = c_[m];
    return r;
  }
  Multivector even_part() const { return filtered([](Mask m) { return grade(m) % 2 == 0; }); }
  Multivector odd_part() const { return filtered([](Mask m) { return grade(m) % 2 == 1; }); }

  // grades 2,3 mod 4 flip
  Multivector reverse() const {
    return signed_by([](Mask m) { return (grade(m) % 4 >= 2) ? -1 : 1; });
  }
  Multivector grade_involution() const {
    return signed_by([](Mask m) { return (grade(m) % 2) ? -1 : 1; });
  }
  Multivector clifford_conjugate() const { return reverse().grade_involution(); }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(c_[0]));
    Multivector<U> r(sig_);
    for (Mask m = 0; m < c_.size(); ++m) r[m] = f(c_[m]);
    return r;
  }

 private:
  static void check_same(const Multivector& a, const Multivector& b) {
    if (a.sig_ != b.sig_) throw std::invalid_argument("signature mismatch");
  }
  template <class P>
  Multivector filtered(P pred) const {
    Multivector r(sig_);
    for (Mask m = 0; m < c_.size(); ++m)
      if (pred(m)) r.c_[m] = c_[m];
    return r;
  }
  template <class S>
  Multivector signed_by(S sign) const {
    Multivector r = *this;
    for (Mask m = 0; m < c_.size(); ++m)
      if (sign(m) < 0) r.c_[m] = -r.c_[m];
    return r;
  }

  Signature sig_;
  std::vector<T> c_;
};

using QMultivector = Multivector<Rational>;
using CMultivector = Multivector<QComplex>;

template <class T>
Multivector<T> geometric_product(const Multivector<T>& a, const Multivector<T>& b) {
  return a * b;
}

template <class T>
Multivector<T> one(Signature sig) {
  return Multivector<T>::scalar(sig, T(1));
}

template <class T>
Multivector<T> volume_element(Signature sig) {
  return Multivector<T>::blade(sig, Mask(sig.size() - 1));
}

// real multivector promoted to complex coefficients
template <class T>
Multivector<Complex<T>> complexify(const Multivector<T>& a) {
  return a.map([](const T& x) { return Complex<T>(x); });
}

inline int volume_element_square(Signature sig) {
  QMultivector w = volume_element<Rational>(sig);
  QMultivector sq = w * w;
  return sq[0].numerator() > 0 ? 1 : -1;
}

inline int mod8(int x) { return ((x % 8) + 8) % 8; }

// mod-8 table as printed: -1 iff p-q = 1,2,5,6
inline int volume_square_table(Signature sig) {
  int r = mod8(sig.p - sig.q);
  return (r == 1 || r == 2 || r == 5 || r == 6) ? -1 : 1;
}

enum class Positivity { positive, negative, not_applicable };

inline const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::positive: return "positive";
    case Positivity::negative: return "negative";
    default: return "not-applicable";
  }
}

inline Positivity positivity_class(Signature sig) {
  if (sig.n() % 2) return Positivity::not_applicable;
  return volume_element_square(sig) > 0 ? Positivity::positive : Positivity::negative;
}

enum class OddTag { complexifies, splits };

struct OddStructure {
  OddTag tag;
  // central idempotents (1+w)/2, (1-w)/2 when split
  std::optional<std::pair<QMultivector, QMultivector>> central;
};

inline OddStructure classify_odd(Signature sig) {
  if (sig.n() % 2 == 0) throw std::invalid_argument("classify_odd needs odd p+q");
  if (volume_element_square(sig) < 0) return {OddTag::complexifies, std::nullopt};
  QMultivector w = volume_element<Rational>(sig);
  QMultivector u = one<Rational>(sig);
  Rational h(1, 2);
  return {OddTag::splits, std::make_pair(h * (u + w), h * (u - w))};
}

template <class T>
std::string format(const Multivector<T>& a) {
  std::string out;
  for (Mask m = 0; m < a.size(); ++m) {
    const T& c = a[m];
    if (is_zero(c)) continue;
    std::string cs = to_string(c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (m == 0)
      out += cs;
    else if (cs == "1")
      out += blade_name(m);
    else
      out += cs + "*" + blade_name(m);
  }
  return out.empty() ? "0" : out;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Multivector<T>& a) {
  return os << format(a) << " in Cl" << a.sig().str();
}

namespace detail {

inline Rational parse_coeff(std::string_view s, Rational*) {
  auto slash = s.find('/');
  auto to_i = [](std::string_view t) {
    if (t.empty()) throw std::invalid_argument("empty number");
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad number: " + std::string(t));
    return std::stoll(std::string(t));
  };
  if (slash == std::string_view::npos) return Rational(to_i(s));
  auto d = to_i(s.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("zero denominator");
  return Rational(to_i(s.substr(0, slash)), d);
}

inline double parse_coeff(std::string_view s, double*) {
  std::size_t pos = 0;
  double v = std::stod(std::string(s), &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + std::string(s));
  return v;
}

}  // namespace detail

// Inverse of format(): terms "c", "c*eI", "eI" joined by + or -
template <class T>
Multivector<T> parse_multivector(Signature sig, std::string_view text) {
  Multivector<T> r(sig);
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty multivector");
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw std::invalid_argument("expected + or - in multivector");
    }
    first = false;
    // a term ends at the next + or - that does not follow 'e' exponent notation
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') {
      ++j;
      if constexpr (std::is_same_v<T, double>) {
        bool exponent = j >= 2 && (s[j - 1] == 'e' || s[j - 1] == 'E') &&
                        (std::isdigit(static_cast<unsigned char>(s[j - 2])) || s[j - 2] == '.');
        if (j < s.size() && (s[j] == '+' || s[j] == '-') && exponent) ++j;
      }
    }
    std::string_view term(s.data() + i, j - i);
    if (term.empty()) throw std::invalid_argument("empty term");
    T coeff(1);
    Mask m = 0;
    auto star = term.find('*');
    if (star != std::string_view::npos) {
      coeff = detail::parse_coeff(term.substr(0, star), static_cast<T*>(nullptr));
      m = parse_blade(term.substr(star + 1), sig.n());
    } else if (term[0] == 'e') {
      m = parse_blade(term, sig.n());
    } else {
      coeff = detail::parse_coeff(term, static_cast<T*>(nullptr));
    }
    r[m] += sign > 0 ? coeff : T(-coeff);
    i = j;
  }
  return r;
}

}  // namespace spinsurf
