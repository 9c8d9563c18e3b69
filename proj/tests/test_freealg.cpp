#include <gtest/gtest.h>

#include <random>

#include "dext/freealg.hpp"

using namespace dext;

namespace {

const FieldSpec& Q = FieldSpec::rationals();
NcPoly P(const std::string& s, const FieldSpec& f = FieldSpec::rationals()) { return NcPoly::parse(f, s); }

std::vector<Word> words_up_to(int n) {
  std::vector<Word> all = {Word()}, layer = {Word()};
  for (int d = 1; d <= n; ++d) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (int g = 0; g < kNumGenerators; ++g) next.push_back(w * Word::letter(g));
    all.insert(all.end(), next.begin(), next.end());
    layer = next;
  }
  return all;
}

NcPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(0, 3), gen(0, 3), coef(-4, 4), terms(0, 4);
  NcPoly p(Q);
  int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<int> letters(len(rng));
    for (int& l : letters) l = gen(rng);
    p.add_term(Word::from_letters(letters), Q.from_int(coef(rng)));
  }
  return p;
}

}  // namespace

TEST(Freealg, BilinearExpansion) {
  EXPECT_EQ(P("(x1+x2)*(x1-x2)"), P("x1x1 - x1x2 + x2x1 - x2x2"));
  EXPECT_EQ(P("(x1+x2)") * P("(x1-x2)"), P("x1^2 - x1*x2 + x2*x1 - x2^2"));
}

TEST(Freealg, ScaleByZeroIsEmpty) {
  NcPoly p = P("x1*y2 + 3*y1").scaled(Q.zero());
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.size(), 0u);
}

TEST(Freealg, ExpansionWithAlgebraicScalar) {
  const FieldSpec& f = FieldSpec::parse("Q(a^2+a+1)");
  NcPoly lhs = P("y1-y2", f) * P("y1-a*y2", f);
  EXPECT_EQ(lhs, P("y1y1 - a*y1y2 - y2y1 + a*y2y2", f));
}

TEST(Freealg, LeadingTerms) {
  const FieldSpec& f = FieldSpec::parse("Q(a^2+1)");
  auto lt = P("x2x1 - a*x1x2", f).leading_term();
  EXPECT_EQ(lt.first, Word::from_letters({X2, X1}));
  EXPECT_TRUE(lt.second.is_one());
  EXPECT_EQ(P("y2y1 - 2*y1y2 - 3*y1y1").leading_word(), Word::from_letters({Y2, Y1}));
  EXPECT_EQ(P("y1x1 - x1y1").leading_word(), Word::from_letters({Y1, X1}));
}

TEST(Freealg, DegreeAndHomogeneity) {
  EXPECT_EQ(P("x1*x2*y1 + y2").degree(), 3);
  EXPECT_FALSE(P("x1*x2*y1 + y2").is_homogeneous());
  EXPECT_TRUE(P("x1*x2 - y2*y1").is_homogeneous());
  EXPECT_EQ(NcPoly(Q).degree(), -1);
}

TEST(Freealg, ParseErrors) {
  EXPECT_THROW(P("x3"), ParseError);
  EXPECT_THROW(P("x1 +"), ParseError);
  EXPECT_THROW(P("(x1"), ParseError);
  EXPECT_THROW(P("a*x1"), std::exception);
}

TEST(Freealg, PrintParseRoundTrip) {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    NcPoly p = random_poly(rng);
    EXPECT_EQ(P(p.to_string()), p) << p.to_string();
  }
}

TEST(FreealgProperty, MultiplicationAssociativeAndDistributive) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    NcPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a + b) * c, a * c + b * c);
  }
}

TEST(FreealgProperty, OrderIsMultiplicative) {
  std::vector<Word> ws = words_up_to(3);
  for (const Word& u : ws)
    for (const Word& v : ws) {
      if (!(u < v)) continue;
      for (const Word& w : ws) {
        ASSERT_TRUE(w * u < w * v) << u.to_string() << " " << v.to_string() << " " << w.to_string();
        ASSERT_TRUE(u * w < v * w) << u.to_string() << " " << v.to_string() << " " << w.to_string();
      }
    }
}

TEST(FreealgProperty, OrderIsTotalAndDegreeFirst) {
  std::vector<Word> ws = words_up_to(3);
  for (const Word& u : ws)
    for (const Word& v : ws) {
      ASSERT_EQ((u < v) + (v < u) + (u == v), 1);
      if (u.size() < v.size()) {
        ASSERT_TRUE(u < v);
      }
    }
}
