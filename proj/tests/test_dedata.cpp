#include <gtest/gtest.h>

#include <set>

#include "dext/catalog.hpp"
#include "dext/dedata.hpp"

using namespace dext;

namespace {

const FieldSpec& Q = FieldSpec::rationals();
NcPoly P(const std::string& s, const FieldSpec& f = FieldSpec::rationals()) { return NcPoly::parse(f, s); }
Matrix ints(const std::vector<std::vector<long>>& r, const FieldSpec& f = FieldSpec::rationals()) {
  return Matrix::from_ints(f, r);
}
ParamPair pair(long a, long b, const FieldSpec& f = FieldSpec::rationals()) { return {f.from_int(a), f.from_int(b)}; }

DEData fam(char name, const std::vector<std::pair<char, std::string>>& params, const std::string& field = "Q") {
  return instantiate(find_family(name), Specialization{field, params, ""});
}

DEData identity_data(const FieldSpec& f = FieldSpec::rationals()) {
  return make_data(f, pair(1, 0, f), pair(1, 0, f), Matrix::identity(f, 4));
}

std::set<std::string> names(const ConstraintReport& r) { return {r.violated.begin(), r.violated.end()}; }

}  // namespace

TEST(Dedata, SystemCOnB) {
  DEData d = fam('B', {{'h', "1"}, {'p', "a"}}, "Q(a^2+1)");
  EXPECT_TRUE(check_system_c(d).ok()) << check_system_c(d).summary();
}

TEST(Dedata, SystemCOnIdentity) {
  EXPECT_TRUE(check_system_c(identity_data()).ok());
  EXPECT_TRUE(check_r3_trimmed(identity_data()).ok());
}

TEST(Dedata, PerturbedAViolations) {
  DEData d = fam('A', {{'h', "1"}});
  ASSERT_EQ(d.a(2, 1, 2, 2), Q.from_int(-2));
  d.sigma(3, 1) = Q.from_int(-1);
  ConstraintReport c = check_system_c(d);
  EXPECT_FALSE(c.ok());
  // Direct evaluation: C4 and C5 fail in the (i, j) = (2, 1) slot only.
  EXPECT_EQ(names(c), (std::set<std::string>{"C421", "C521"}));
  ConstraintReport r = check_r3_trimmed(d);
  EXPECT_FALSE(r.ok());
  std::set<std::string> comp;
  for (const std::string& v : r.violated)
    if (v.rfind("R3.", 0) == 0) comp.insert(v);
  EXPECT_EQ(comp, (std::set<std::string>{"R3.1(x2)_x1", "R3.2(x2)_x1"}));
}

TEST(Dedata, R3OnS) { EXPECT_TRUE(check_r3_trimmed(fam('S', {{'h', "1"}})).ok()); }

TEST(Dedata, DetSigmaExamples) {
  EXPECT_EQ(det_sigma(fam('A', {{'h', "1"}})), Matrix::identity(Q, 2));
  const FieldSpec& w = FieldSpec::parse("Q(a^2+a+1)");
  DEData c = fam('C', {{'h', "1"}}, "Q(a^2+a+1)");
  Matrix want(w, 2, 2);
  want(0, 0) = w.from_int(-3) * w.alpha();
  want(1, 1) = w.from_int(-3);
  EXPECT_EQ(det_sigma(c), want);
  EXPECT_EQ(det_sigma(fam('N', {{'f', "2"}, {'g', "3"}})), Matrix::identity(Q, 2).scaled(Q.from_int(-5)));
}

TEST(Dedata, MMatrixOfA) {
  EXPECT_EQ(m_matrix(fam('A', {{'h', "1"}})), ints({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, -1, -2, 1}}));
  EXPECT_EQ(m_matrix(identity_data()), Matrix::identity(Q, 4));
}

TEST(Dedata, MMatrixOfT) {
  EXPECT_EQ(m_matrix(fam('T', {{'h', "1"}})), ints({{-1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -1, 1}, {1, -1, 1, 1}}));
}

TEST(Dedata, OreFlagExamples) {
  EXPECT_TRUE(ore_flags(fam('A', {{'h', "1"}})).m12_zero);
  EXPECT_FALSE(ore_flags(fam('S', {{'h', "1"}})).any());
  // Lower-triangular solution with Q = P = (1, 1), parameters f, g, h, m = 1, 2, 3, 5.
  DEData d = make_data(Q, pair(1, 1), pair(1, 1), ints({{1, 0, 0, 0}, {2, 1, 0, 0}, {3, 0, 1, 0}, {5, 3, 2, 1}}));
  EXPECT_TRUE(check_system_c(d).ok()) << check_system_c(d).summary();
  EXPECT_TRUE(ore_flags(d).sigma12_zero);
}

TEST(Dedata, DualOfBIsSelfEquivalent) {
  const FieldSpec& f = FieldSpec::parse("Q(a^2+1)");
  DEData b = fam('B', {{'h', "1"}, {'p', "a"}}, "Q(a^2+1)");
  Matrix swap = ints({{0, 1}, {1, 0}}, f);
  EXPECT_TRUE(verify_equivalence_witness(dual_data(b), b, swap, swap, f.one()));
}

TEST(Dedata, DualFixesCommutativePair) {
  DEData d = dual_data(identity_data());
  EXPECT_EQ(d.P, pair(1, 0));
  EXPECT_EQ(d.Q, pair(1, 0));
}

TEST(Dedata, DualOfTIsU) {
  DEData t = fam('T', {{'h', "1"}}), u = fam('U', {{'h', "1"}});
  EXPECT_TRUE(verify_equivalence_witness(dual_data(t), u, Matrix::identity(Q, 2), Matrix::identity(Q, 2), Q.one()));
  EXPECT_EQ(dual_data(t), u);
}

TEST(Dedata, DualIsInvolutive) {
  for (const FamilyRecord& rec : default_catalog()) {
    DEData d = instantiate(rec, rec.specializations[0]);
    DEData dd = dual_data(dual_data(d));
    EXPECT_EQ(dd, d) << rec.name;
    EXPECT_EQ(synth_relations(dd), synth_relations(d)) << rec.name;
  }
}

TEST(Dedata, TwistPreservesSolutions) {
  DEData s = fam('S', {{'h', "1"}});
  DEData t = apply_twist(s, Q.from_int(5));
  EXPECT_TRUE(check_system_c(t).ok());
  EXPECT_EQ(apply_twist(s, Q.one()), s);
  EXPECT_THROW(apply_twist(s, Q.zero()), std::invalid_argument);
}

TEST(Dedata, TwistOfRScalesDetBy16) {
  DEData r = fam('R', {{'h', "1"}});
  DEData r2 = apply_twist(r, Q.from_int(2));
  EXPECT_TRUE(check_system_c(r2).ok());
  EXPECT_EQ(r2.sigma.det(), r.sigma.det() * Q.from_int(16));
}

TEST(Dedata, IdentityTransform) {
  DEData s = fam('S', {{'h', "1"}});
  EXPECT_EQ(transform_xy(s, Matrix::identity(Q, 2), Matrix::identity(Q, 2)), s);
}

TEST(Dedata, MPrimeFromYChange) {
  const long g = 3, m = 5;
  DEData d = make_data(Q, pair(1, 1), pair(1, 0), sigma_from_m(ints({{1, 0, 0, 0}, {0, 1, 0, 0}, {g, 1, 1, 0}, {m, -g - 1, -2, 1}})));
  ASSERT_TRUE(check_system_c(d).ok());
  DEData t = transform_xy(d, Matrix::identity(Q, 2), ints({{1, 0}, {g, 1}}));
  EXPECT_EQ(m_matrix(t), ints({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {m + g + g * g, -1, -2, 1}}));
  EXPECT_EQ(t.P, pair(1, 1));
}

TEST(Dedata, SecondXChangeUsesMinusHalfG) {
  const long g = 6;
  DEData d = make_data(Q, pair(1, 1), pair(1, 0), ints({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {g, -2, -1, 1}}));
  Matrix b = Matrix::from_rows(Q, {{Q.one(), Q.zero()}, {Q.from_int(-g / 2), Q.one()}});
  DEData t = transform_xy(d, b, Matrix::identity(Q, 2));
  EXPECT_EQ(t.sigma, ints({{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, -2, -1, 1}}));
  EXPECT_EQ(t.Q, pair(1, 0));
}

TEST(Dedata, ZToWPrintedMatrix) {
  // f = 4, s = sqrt f = 2: y -> (s 1; s -1) y on Z turns its M into the
  // displayed matrix; the same matrix is Sigma of the dual after the x-change.
  DEData z = fam('Z', {{'h', "1"}, {'f', "4"}});
  Matrix want = ints({{0, 1, 2, 0}, {1, 0, 0, -2}, {2, 0, 0, 1}, {0, -2, 1, 0}});
  EXPECT_EQ(m_matrix(transform_xy(z, Matrix::identity(Q, 2), ints({{2, 1}, {2, -1}}))), want);
  DEData t = transform_xy(dual_data(z), ints({{2, 1}, {2, -1}}), Matrix::identity(Q, 2));
  EXPECT_EQ(t.sigma, want);
}

TEST(Dedata, TransformRejectsBrokenNormalForm) {
  DEData s = fam('S', {{'h', "1"}});
  EXPECT_THROW(transform_xy(s, ints({{1, 1}, {0, 1}}), Matrix::identity(Q, 2)), TransformError);
  EXPECT_THROW(transform_xy(s, ints({{1, 1}, {1, 1}}), Matrix::identity(Q, 2)), SingularMatrix);
}

TEST(Dedata, WitnessOnEqualData) {
  DEData s = fam('S', {{'h', "2"}});
  EXPECT_TRUE(verify_equivalence_witness(s, s, Matrix::identity(Q, 2), Matrix::identity(Q, 2), Q.one()));
  EXPECT_FALSE(verify_equivalence_witness(s, s, Matrix::identity(Q, 2), Matrix::identity(Q, 2), Q.from_int(2)));
}

TEST(Dedata, SynthRelationsOfA) {
  std::vector<NcPoly> want = {P("x2x1 - x1x2"),       P("y2y1 - y1y2 - y1^2"), P("y1x1 - x1y1"),
                              P("y1x2 - x2y1 - x1y2"), P("y2x1 - x1y2"),        P("y2x2 + 2*x2y1 + x1y2 - x2y2")};
  EXPECT_EQ(synth_relations(fam('A', {{'h', "1"}})), want);
}

TEST(Dedata, SynthRelationsOfIdentity) {
  std::vector<NcPoly> want = {P("x2x1 - x1x2"), P("y2y1 - y1y2"), P("y1x1 - x1y1"),
                              P("y1x2 - x2y1"), P("y2x1 - x1y2"), P("y2x2 - x2y2")};
  EXPECT_EQ(synth_relations(identity_data()), want);
}

TEST(Dedata, SynthRelationsOfZAgainstPrintedList) {
  std::vector<NcPoly> rel = synth_relations(fam('Z', {{'h', "1"}, {'f', "2"}}, "Q(a^2-2)"));
  const FieldSpec& f = FieldSpec::parse("Q(a^2-2)");
  EXPECT_EQ(rel[3], P("y1x2 - x2y1 - x1y2", f));
  EXPECT_EQ(rel[4], P("y2x1 - 2*x2y1 + x1y2", f));
  EXPECT_NE(rel[2], P("y1x1 - x1y2 - x2y2", f));
  EXPECT_EQ(rel[2], P("y1x1 - x1y1 - x2y2", f));
  EXPECT_NE(rel[5], P("y2x2 - 2*x1y2 + x2y2", f));
  EXPECT_EQ(rel[5], P("y2x2 - 2*x1y1 + x2y2", f));
}

TEST(Dedata, DeFileRoundTrip) {
  DEData c = fam('C', {{'h', "3"}}, "Q(a^2+a+1)");
  std::string text = to_de(c);
  EXPECT_EQ(parse_de(text), c);
  EXPECT_EQ(to_de(parse_de(text)), text);
}

TEST(Dedata, DeFileErrors) {
  EXPECT_THROW(parse_de("Q\nQ = (1, 0)\nP = (1, 0)\n1 0 0 0\n"), ParseError);
  EXPECT_THROW(parse_de("Q\nQ = (0, 0)\nP = (1, 0)\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"), ParseError);
  EXPECT_THROW(parse_de("Q\nP = (1, 0)\nQ = (1, 0)\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"), ParseError);
  EXPECT_THROW(parse_de("Q\nQ = (1, 0)\nP = (1, 0)\n1 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"), ParseError);
  EXPECT_THROW(parse_de("Q(a^2+1)\nQ = (1, 0)\nP = (1, 0)\nb 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"), ParseError);
}
