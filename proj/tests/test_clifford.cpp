#include "spinsurf/clifford.hpp"
#include "spinsurf/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spinsurf;

namespace {

std::vector<Signature> all_signatures(int max_n) {
  std::vector<Signature> out;
  for (int n = 1; n <= max_n; ++n)
    for (int p = 0; p <= n; ++p) out.emplace_back(p, n - p);
  return out;
}

// Left-regular representation built from generator actions alone:
// e_i e_A = (-1)^{#{j in A : j < i}} (e_i^2 if i in A) e_{A xor i}.
Matrix<Rational> generator_matrix(Signature sig, int i) {
  const std::size_t N = sig.size();
  Matrix<Rational> M(N, N);
  for (Mask A = 0; A < N; ++A) {
    int below = 0;
    for (int j = 0; j < i; ++j)
      if (A >> j & 1u) ++below;
    Rational s = (below % 2) ? -1 : 1;
    if (A >> i & 1u) s *= sig.metric(i);
    M(A ^ (Mask(1) << i), A) = s;
  }
  return M;
}

Matrix<Rational> left_regular(const QMultivector& a) {
  const Signature sig = a.sig();
  const std::size_t N = sig.size();
  std::vector<Matrix<Rational>> g;
  for (int i = 0; i < sig.n(); ++i) g.push_back(generator_matrix(sig, i));
  Matrix<Rational> L(N, N);
  for (Mask A = 0; A < N; ++A) {
    if (a[A].numerator() == 0) continue;
    Matrix<Rational> B = Matrix<Rational>::identity(N);
    for (int i = 0; i < sig.n(); ++i)
      if (A >> i & 1u) B = B * g[i];
    L = L + a[A] * B;
  }
  return L;
}

QMultivector random_mv(Signature sig, std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<Mask> blade(0, Mask(sig.size() - 1));
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
  QMultivector a(sig);
  for (int t = 0; t < terms; ++t) a[blade(rng)] += Rational(num(rng), den(rng));
  return a;
}

QMultivector e(Signature sig, Mask m) { return QMultivector::blade(sig, m); }

}  // namespace

TEST(GeometricProduct, Examples) {
  Signature s20(2, 0);
  EXPECT_EQ(e(s20, 0b01) * e(s20, 0b10), e(s20, 0b11));
  EXPECT_EQ(e(s20, 0b11) * e(s20, 0b11), QMultivector::scalar(s20, -1));
  Signature s13(1, 3);
  EXPECT_EQ(e(s13, 0b1001) * e(s13, 0b1001), QMultivector::scalar(s13, 1));
}

TEST(GeometricProduct, SignatureMismatchRejected) {
  EXPECT_THROW(geometric_product(e({2, 0}, 1), e({1, 1}, 1)), std::invalid_argument);
  EXPECT_THROW(Signature(9, 0), std::invalid_argument);
  EXPECT_THROW(Signature(0, 0), std::invalid_argument);
}

TEST(GeometricProduct, AnticommutationAllSignatures) {
  for (auto sig : all_signatures(8)) {
    for (int i = 1; i <= sig.n(); ++i) {
      auto ei = QMultivector::generator(sig, i);
      EXPECT_EQ(ei * ei, QMultivector::scalar(sig, i <= sig.p ? 1 : -1)) << sig.str() << " e" << i;
      for (int j = i + 1; j <= sig.n(); ++j) {
        auto ej = QMultivector::generator(sig, j);
        EXPECT_TRUE((ei * ej + ej * ei).is_zero()) << sig.str();
      }
    }
  }
}

TEST(GeometricProduct, Associativity) {
  std::mt19937_64 rng(11);
  for (auto sig : all_signatures(6)) {
    for (int t = 0; t < 1000; ++t) {
      auto a = random_mv(sig, rng, 5), b = random_mv(sig, rng, 5), c = random_mv(sig, rng, 5);
      ASSERT_EQ((a * b) * c, a * (b * c)) << sig.str();
    }
  }
}

TEST(GeometricProduct, MatchesLeftRegularOracle) {
  std::mt19937_64 rng(5);
  for (auto sig : all_signatures(5)) {
    for (int t = 0; t < 20; ++t) {
      auto a = random_mv(sig, rng, int(sig.size())), b = random_mv(sig, rng, int(sig.size()));
      Matrix<Rational> bv(sig.size(), 1);
      for (Mask m = 0; m < sig.size(); ++m) bv(m, 0) = b[m];
      Matrix<Rational> prod = left_regular(a) * bv;
      auto ab = a * b;
      for (Mask m = 0; m < sig.size(); ++m) ASSERT_EQ(ab[m], prod(m, 0)) << sig.str();
      // the representation is multiplicative
      ASSERT_EQ(left_regular(a) * left_regular(b), left_regular(ab)) << sig.str();
    }
  }
}

TEST(VolumeElement, Examples) {
  EXPECT_EQ(volume_element_square({1, 3}), -1);
  EXPECT_EQ(volume_element_square({0, 2}), -1);
  // e123 e123 = -e1^2 e2^2 e3^2 = -1 in Cl(3,0)
  EXPECT_EQ(volume_element_square({3, 0}), -1);
}

TEST(VolumeElement, ExplicitProductOfGenerators) {
  for (auto sig : all_signatures(8)) {
    QMultivector w = one<Rational>(sig);
    for (int i = 1; i <= sig.n(); ++i) w = w * QMultivector::generator(sig, i);
    QMultivector sq = w * w;
    EXPECT_EQ(sq[0], Rational(volume_element_square(sig))) << sig.str();
    // closed form in this convention: -1 iff p-q = 2,3,6,7 mod 8
    int r = mod8(sig.p - sig.q);
    int expect = (r == 2 || r == 3 || r == 6 || r == 7) ? -1 : 1;
    EXPECT_EQ(volume_element_square(sig), expect) << sig.str();
  }
}

TEST(VolumeElement, PrintedTableAgreesForEvenDimension) {
  for (auto sig : all_signatures(8)) {
    if (sig.n() % 2 == 0) {
      EXPECT_EQ(volume_element_square(sig), volume_square_table(sig)) << sig.str();
    }
    // odd n: the table matches the swapped labelling
    EXPECT_EQ(volume_square_table(Signature(sig.q, sig.p)) == volume_element_square(sig), true) << sig.str();
  }
}

TEST(Positivity, Examples) {
  EXPECT_EQ(positivity_class({1, 1}), Positivity::positive);
  EXPECT_EQ(positivity_class({2, 0}), Positivity::negative);
  EXPECT_EQ(positivity_class({3, 0}), Positivity::not_applicable);
}

TEST(Involutions, Examples) {
  Signature s(3, 0);
  EXPECT_EQ(e(s, 0b011).reverse(), -e(s, 0b011));
  EXPECT_EQ(e(s, 0b001).grade_involution(), -e(s, 0b001));
  QMultivector a = one<Rational>(s) + e(s, 0b001) + e(s, 0b111);
  EXPECT_EQ(a.reverse(), one<Rational>(s) + e(s, 0b001) - e(s, 0b111));
}

TEST(Involutions, ReversionSignTableBruteForce) {
  // reverse of e_{i1..ik} is the product of the same generators in reverse order
  Signature s(2, 3);
  for (Mask m = 0; m < s.size(); ++m) {
    if (grade(m) > 4) continue;
    QMultivector rev = one<Rational>(s);
    for (int i = s.n(); i >= 1; --i)
      if (m >> (i - 1) & 1u) rev = rev * QMultivector::generator(s, i);
    EXPECT_EQ(e(s, m).reverse(), rev) << blade_name(m);
  }
}

TEST(Involutions, ReversionIsAntiAutomorphism) {
  std::mt19937_64 rng(3);
  for (auto sig : all_signatures(5))
    for (int t = 0; t < 50; ++t) {
      auto a = random_mv(sig, rng, 6), b = random_mv(sig, rng, 6);
      ASSERT_EQ((a * b).reverse(), b.reverse() * a.reverse());
      ASSERT_EQ((a * b).grade_involution(), a.grade_involution() * b.grade_involution());
      ASSERT_EQ((a * b).clifford_conjugate(), b.clifford_conjugate() * a.clifford_conjugate());
    }
}

TEST(ClassifyOdd, Examples) {
  EXPECT_EQ(classify_odd({0, 3}).tag, OddTag::splits);
  EXPECT_EQ(classify_odd({3, 0}).tag, OddTag::complexifies);
  EXPECT_EQ(classify_odd({2, 1}).tag, OddTag::splits);
  EXPECT_THROW(classify_odd({2, 2}), std::invalid_argument);
}

TEST(ClassifyOdd, CentralSplitIdempotents) {
  for (auto sig : all_signatures(7)) {
    if (sig.n() % 2 == 0) continue;
    auto st = classify_odd(sig);
    if (st.tag != OddTag::splits) {
      EXPECT_EQ(volume_element_square(sig), -1);
      continue;
    }
    auto [a, b] = *st.central;
    EXPECT_EQ(a * a, a);
    EXPECT_EQ(b * b, b);
    EXPECT_TRUE((a * b).is_zero());
    EXPECT_EQ(a + b, one<Rational>(sig));
    for (int i = 1; i <= sig.n(); ++i) {
      auto g = QMultivector::generator(sig, i);
      EXPECT_EQ(a * g, g * a) << sig.str();
    }
  }
}

TEST(TextFormat, RoundTrip) {
  Signature s(1, 3);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    auto a = random_mv(s, rng, 6);
    auto text = format(a);
    EXPECT_EQ(parse_multivector<Rational>(s, text), a) << text;
  }
  EXPECT_EQ(format(QMultivector(s)), "0");
  auto b = parse_multivector<Rational>(s, "1/2 - e14 + 3/4*e123");
  EXPECT_EQ(b[0], Rational(1, 2));
  EXPECT_EQ(b[0b1001], Rational(-1));
  EXPECT_EQ(b[0b0111], Rational(3, 4));
  EXPECT_EQ(format(b), "1/2 + 3/4*e123 - e14");
  EXPECT_THROW(parse_multivector<Rational>(s, "e21"), std::invalid_argument);
  EXPECT_THROW(parse_multivector<Rational>(s, "e5"), std::invalid_argument);
  auto d = parse_multivector<double>(s, "1e-05*e1 - 2.5");
  EXPECT_DOUBLE_EQ(d[1], 1e-5);
  EXPECT_DOUBLE_EQ(d[0], -2.5);
}

TEST(DoubleNumbers, Multiplication) {
  DoubleNumber<Rational> x(Rational(1), Rational(2)), y(Rational(3), Rational(-1));
  auto z = x * y;
  EXPECT_EQ(z.a, Rational(1 * 3 + 2 * -1));
  EXPECT_EQ(z.b, Rational(1 * -1 + 2 * 3));
  DoubleNumber<Rational> ee(Rational(0), Rational(1));
  EXPECT_EQ(ee * ee, DoubleNumber<Rational>(Rational(1)));
  EXPECT_THROW(x / DoubleNumber<Rational>(Rational(1), Rational(1)), std::domain_error);
  // multivectors over double numbers
  Signature s(1, 1);
  Multivector<DoubleNumber<Rational>> m = Multivector<DoubleNumber<Rational>>::blade(s, 0b11, ee);
  auto sq = m * m;
  EXPECT_EQ(sq[0], DoubleNumber<Rational>(Rational(1)));  // e^2 * e12^2 = 1 * 1
}
