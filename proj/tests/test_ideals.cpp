#include "spinsurf/ideals.hpp"

#include <gtest/gtest.h>

using namespace spinsurf;

namespace {

QMultivector mv(Signature s, const char* text) { return parse_multivector<Rational>(s, text); }

std::vector<Signature> all_signatures(int max_n) {
  std::vector<Signature> out;
  for (int n = 1; n <= max_n; ++n)
    for (int p = 0; p <= n; ++p) out.emplace_back(p, n - p);
  return out;
}

}  // namespace

TEST(RadonHurwitz, Examples) {
  EXPECT_EQ(rh_number(2), 2);
  EXPECT_EQ(rh_number(-3), -1);
  EXPECT_EQ(rh_number(10), 6);
  const int base[8] = {0, 1, 2, 2, 3, 3, 3, 3};
  for (int i = -24; i <= 24; ++i) {
    EXPECT_EQ(rh_number(i + 8), rh_number(i) + 4) << i;
    if (i >= 0 && i < 8) {
      EXPECT_EQ(rh_number(i), base[i]);
    }
  }
}

TEST(RadonHurwitz, CommutingCount) {
  EXPECT_EQ(commuting_count({3, 0}), 1);
  EXPECT_EQ(commuting_count({0, 2}), 0);
  EXPECT_EQ(commuting_count({2, 2}), 2);
  EXPECT_EQ(commuting_count({1, 3}), 1);
}

TEST(PrimitiveIdempotent, PreferredFactors) {
  Signature s13(1, 3);
  auto e13 = primitive_idempotent(s13, std::vector<Mask>{0b1001});
  EXPECT_EQ(e13.element, mv(s13, "1/2 + 1/2*e14"));

  Signature s22(2, 2);
  auto e22 = primitive_idempotent(s22, std::vector<Mask>{0b0101, 0b1010});
  EXPECT_EQ(e22.element, mv(s22, "1/4 + 1/4*e13 + 1/4*e24 - 1/4*e1234"));

  auto e02 = primitive_idempotent({0, 2});
  EXPECT_EQ(e02.element, one<Rational>({0, 2}));
  EXPECT_TRUE(e02.factors.empty());
}

TEST(PrimitiveIdempotent, RejectsBadFactors) {
  Signature s22(2, 2);
  // e3 squares to -1
  EXPECT_THROW(primitive_idempotent({1, 3}, std::vector<Mask>{0b0100}), std::invalid_argument);
  // e13 and e14 anticommute
  EXPECT_THROW(primitive_idempotent(s22, std::vector<Mask>{0b0101, 0b1001}), std::invalid_argument);
  // e1234 = e13 e24 up to sign
  EXPECT_THROW(make_idempotent(s22, {0b0101, 0b1010, 0b1111}), std::invalid_argument);
  // wrong count
  EXPECT_THROW(primitive_idempotent(s22, std::vector<Mask>{0b0101}), std::invalid_argument);
}

TEST(PrimitiveIdempotent, AllSignaturesUpToSix) {
  for (auto sig : all_signatures(6)) {
    auto idem = primitive_idempotent(sig);
    const int k = commuting_count(sig);
    ASSERT_EQ(int(idem.factors.size()), k) << sig.str();
    EXPECT_EQ(idem.element * idem.element, idem.element) << sig.str();
    std::size_t dim = left_ideal_dimension(idem.element);
    EXPECT_EQ(dim << k, sig.size()) << sig.str();
    EXPECT_TRUE(is_primitive(idem.element)) << sig.str();
  }
}

TEST(PrimitiveIdempotent, SpotChecksSevenAndEight) {
  for (Signature sig : {Signature(7, 0), Signature(3, 4), Signature(0, 8), Signature(4, 4)}) {
    auto idem = primitive_idempotent(sig);
    EXPECT_EQ(idem.element * idem.element, idem.element) << sig.str();
    EXPECT_EQ(left_ideal_dimension(idem.element) << commuting_count(sig), sig.size()) << sig.str();
  }
}

TEST(MinimalLeftIdeal, ListedBasisCl31) {
  Signature s(3, 1);
  auto idem = primitive_idempotent(s, std::vector<Mask>{0b0001, 0b1010});
  auto ib = minimal_left_ideal(idem, listed_ideal_blades(s));
  ASSERT_EQ(ib.basis.size(), 4u);
  EXPECT_EQ(ib.basis[0], mv(s, "1/4 + 1/4*e1 + 1/4*e24 + 1/4*e124"));
  EXPECT_EQ(ib.basis[1], mv(s, "1/4*e2 - 1/4*e12 + 1/4*e4 - 1/4*e14"));
  EXPECT_EQ(ib.basis[2], mv(s, "1/4*e3 - 1/4*e13 - 1/4*e234 + 1/4*e1234"));
  EXPECT_EQ(ib.basis[3], mv(s, "1/4*e23 + 1/4*e123 - 1/4*e34 - 1/4*e134"));
  for (auto& f : ib.basis) EXPECT_EQ(f * idem.element, f);
  EXPECT_EQ(ib.ring, DivisionRing::R);
}

TEST(MinimalLeftIdeal, DivisionRings) {
  auto ib13 = minimal_left_ideal(primitive_idempotent({1, 3}, std::vector<Mask>{0b1001}));
  EXPECT_EQ(ib13.ring, DivisionRing::H);
  EXPECT_TRUE(divring_generated_by(ib13, {0, 0b0010, 0b0100, 0b0110}));
  EXPECT_EQ(ib13.basis.size(), 8u);

  auto ib22 = minimal_left_ideal(primitive_idempotent({2, 2}, std::vector<Mask>{0b0101, 0b1010}));
  EXPECT_EQ(ib22.ring, DivisionRing::R);
  EXPECT_EQ(ib22.divring.size(), 1u);
  EXPECT_EQ(ib22.basis.size(), 4u);
}

TEST(MinimalLeftIdeal, RejectsNonIdempotent) {
  Signature s(2, 0);
  Idempotent bad{one<Rational>(s) + QMultivector::generator(s, 1), {0b01}};
  EXPECT_THROW(minimal_left_ideal(bad), std::invalid_argument);
}

TEST(MinimalLeftIdeal, FourDimensionalTable) {
  for (auto& row : four_dim_ideal_table()) {
    auto ib = minimal_left_ideal(primitive_idempotent(row.sig, row.factors));
    EXPECT_EQ(ib.ring, row.ring) << row.sig.str();
    EXPECT_EQ(ib.divring.size(), row.generators.size()) << row.sig.str();
    EXPECT_TRUE(divring_generated_by(ib, row.generators)) << row.sig.str();
  }
}

TEST(IsPrimitive, Examples) {
  EXPECT_TRUE(is_primitive(mv({4, 0}, "1/2 + 1/2*e1")));
  EXPECT_FALSE(is_primitive(one<Rational>({2, 0})));
  EXPECT_TRUE(is_primitive(mv({1, 1}, "1/2 + 1/2*e12")));
  // not idempotent at all
  EXPECT_FALSE(is_primitive(mv({1, 1}, "1 + e12")));
}

TEST(IsPrimitive, OrthogonalSumsAreLarger) {
  for (auto sig : all_signatures(6)) {
    auto idem = primitive_idempotent(sig);
    if (idem.factors.empty()) continue;
    // drop the last factor: e = e' (1+f)/2 + e' (1-f)/2
    std::vector<Mask> fewer(idem.factors.begin(), idem.factors.end() - 1);
    QMultivector coarse = make_idempotent(sig, fewer).element;
    std::size_t expected = std::size_t(1) << (sig.n() - commuting_count(sig));
    EXPECT_GT(left_ideal_dimension(coarse), expected) << sig.str();
    EXPECT_FALSE(is_primitive(coarse)) << sig.str();
  }
}

TEST(Pauli, ComplexStructure) {
  QMultivector e = pauli_idempotent();
  EXPECT_EQ(e, mv({3, 0}, "1/2 - 1/2*e3"));
  EXPECT_TRUE(is_primitive(e));
  auto ib = minimal_left_ideal(Idempotent{e, {}});
  EXPECT_EQ(ib.basis.size(), 4u);
  EXPECT_EQ(ib.divring.size(), 2u);
  EXPECT_EQ(ib.ring, DivisionRing::C);

  CMultivector ec = pauli_idempotent_complexified();
  EXPECT_EQ(ec * ec, ec);
  // e12 acts as -i on the projector's range
  CMultivector e12 = CMultivector::blade({3, 0}, 0b011);
  EXPECT_EQ(e12 * ec, QComplex(0, -1) * ec);
}

TEST(AlgebraStructure, Names) {
  EXPECT_EQ(algebra_structure({0, 3}), "H⊕H");
  EXPECT_EQ(algebra_structure({3, 0}), "M2(C)");
  EXPECT_EQ(algebra_structure({1, 3}), "M2(H)");
  EXPECT_EQ(algebra_structure({3, 1}), "M4(R)");
  EXPECT_EQ(algebra_structure({0, 2}), "H");
  EXPECT_EQ(algebra_structure({1, 1}), "M2(R)");
  EXPECT_EQ(algebra_structure({2, 1}), "M2(R)⊕M2(R)");
}
