#include <gtest/gtest.h>

#include <random>

#include "dext/catalog.hpp"
#include "dext/ncgb.hpp"

using namespace dext;

namespace {

const FieldSpec& Q = FieldSpec::rationals();
NcPoly P(const std::string& s, const FieldSpec& f = FieldSpec::rationals()) { return NcPoly::parse(f, s); }

Presentation commutative() {
  Presentation p;
  for (auto r : {"x2x1-x1x2", "y2y1-y1y2", "y1x1-x1y1", "y1x2-x2y1", "y2x1-x1y2", "y2x2-x2y2"})
    p.relations.push_back(P(r));
  return p;
}

Presentation family_presentation(char name, int spec = 0) {
  const FamilyRecord& rec = find_family(name);
  return presentation_of(instantiate(rec, rec.specializations[spec]));
}

std::vector<uint64_t> binomials(int n) {
  std::vector<uint64_t> d;
  for (uint64_t k = 0; k <= static_cast<uint64_t>(n); ++k) d.push_back((k + 1) * (k + 2) * (k + 3) / 6);
  return d;
}

}  // namespace

TEST(Ncgb, CommutativeRingHasSixRules) {
  RewriteSystem rs = complete(commutative(), 8);
  EXPECT_EQ(rs.rules().size(), 6u);
  EXPECT_EQ(rs.graded_dims(8), binomials(8));
  EXPECT_EQ(rs.complete_through(), 8);
}

TEST(Ncgb, AlgebraADims) {
  RewriteSystem rs = complete(family_presentation('A'), 4);
  EXPECT_EQ(rs.graded_dims(4), (std::vector<uint64_t>{1, 4, 10, 20, 35}));
}

TEST(Ncgb, JordanPlaneOneRule) {
  Presentation p;
  p.generators = (1u << Y1) | (1u << Y2);
  p.relations = {P("y2y1 - y1y2 - y1y1")};
  RewriteSystem rs = complete(p, 6);
  EXPECT_EQ(rs.rules().size(), 1u);
  EXPECT_EQ(rs.graded_dims(6), (std::vector<uint64_t>{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(rs.pending_beyond_bound(), 0u);
}

TEST(Ncgb, NormalFormsInA) {
  RewriteSystem rs = complete(family_presentation('A'), 4);
  EXPECT_EQ(rs.normal_form(P("y2y1")), P("y1y2 + y1y1"));
  EXPECT_EQ(rs.normal_form(P("x1")), P("x1"));
  EXPECT_TRUE(rs.normal_form(P("y1x2 - x2y1 - x1y2")).is_zero());
}

TEST(Ncgb, QuantumPlaneAlone) {
  Presentation p;
  p.generators = (1u << X1) | (1u << X2);
  p.relations = {P("x2x1 - 3*x1x2")};
  EXPECT_EQ(complete(p, 4).graded_dims(4), (std::vector<uint64_t>{1, 2, 3, 4, 5}));
}

TEST(Ncgb, FreeAlgebra) {
  Presentation p;
  EXPECT_EQ(complete(p, 3).graded_dims(3), (std::vector<uint64_t>{1, 4, 16, 64}));
  EXPECT_EQ(dims_oracle(p, 2), (std::vector<uint64_t>{1, 4, 16}));
}

TEST(Ncgb, OracleOnA) { EXPECT_EQ(dims_oracle(family_presentation('A'), 3), (std::vector<uint64_t>{1, 4, 10, 20})); }

TEST(Ncgb, OracleAllDegreeTwoWords) {
  Presentation p;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) p.relations.push_back(NcPoly::monomial(Word::from_letters({a, b}), Q.one()));
  EXPECT_EQ(dims_oracle(p, 3), (std::vector<uint64_t>{1, 4, 0, 0}));
  EXPECT_EQ(complete(p, 3).graded_dims(3), (std::vector<uint64_t>{1, 4, 0, 0}));
}

TEST(Ncgb, DegreeBoundEnforced) {
  RewriteSystem rs = complete(commutative(), 3);
  EXPECT_THROW(rs.normal_form(P("x1x2y1y2")), DegreeBoundExceeded);
  EXPECT_THROW(rs.graded_dims(4), DegreeBoundExceeded);
  EXPECT_NO_THROW(rs.normal_form(P("x1x2y1")));
}

TEST(Ncgb, RejectsInhomogeneousRelations) {
  Presentation p;
  p.relations = {P("x1x2 - y1")};
  EXPECT_THROW(complete(p, 3), std::invalid_argument);
}

TEST(Ncgb, TruncationRecorded) {
  Presentation p;
  p.relations = {P("x2x1 - x1x1"), P("y1x2 - x2y1 - x1x1")};
  RewriteSystem rs = complete(p, 3);
  EXPECT_EQ(rs.complete_through(), 3);
  EXPECT_NO_THROW(rs.graded_dims(3));
}

TEST(Ncgb, RulesMonicAndInterreduced) {
  for (char name : {'A', 'C', 'S', 'Z'}) {
    RewriteSystem rs = complete(family_presentation(name), 6);
    for (const Rule& r : rs.rules()) {
      for (const auto& [w, c] : r.tail.terms()) {
        ASSERT_TRUE(w < r.lead);
        ASSERT_TRUE(rs.is_normal(w)) << name << " " << r.lead.to_string();
      }
      for (const Rule& o : rs.rules()) {
        if (&o == &r) continue;
        for (int pos = 0; pos + o.lead.size() <= r.lead.size(); ++pos)
          ASSERT_NE(r.lead.subword(pos, o.lead.size()), o.lead) << name;
      }
    }
  }
}

TEST(Ncgb, CompletionIsDeterministic) {
  Presentation p = family_presentation('T');
  EXPECT_EQ(complete(p, 6).serialize(), complete(p, 6).serialize());
}

TEST(NcgbProperty, IdealMembershipSoundness) {
  const int n = 5;
  for (char name : {'A', 'B', 'M', 'R'}) {
    Presentation p = family_presentation(name);
    RewriteSystem rs = complete(p, n);
    std::vector<std::vector<Word>> all = {{Word()}};
    for (int d = 1; d <= n - 2; ++d) {
      std::vector<Word> next;
      for (const Word& w : all.back())
        for (int g = 0; g < 4; ++g) next.push_back(w * Word::letter(g));
      all.push_back(next);
    }
    for (const NcPoly& r : p.relations)
      for (int a = 0; a <= n - 2; ++a)
        for (int b = 0; a + b <= n - 2; ++b)
          for (const Word& u : all[a])
            for (const Word& v : all[b])
              ASSERT_TRUE(rs.normal_form(r.sandwiched(u, v)).is_zero()) << name << " " << r.to_string();
  }
}
