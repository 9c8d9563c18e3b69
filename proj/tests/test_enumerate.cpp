#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dext/catalog.hpp"
#include "dext/enumerate.hpp"
#include "support/naive_scan.hpp"

using namespace dext;

namespace {

DEData over_gf(const Residues& r, int q, std::pair<int, int> P, std::pair<int, int> Qp) {
  const FieldSpec& f = FieldSpec::prime(static_cast<unsigned>(q));
  Matrix m(f, 4, 4);
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = f.from_int(r[i]);
  return make_data(f, {f.from_int(P.first), f.from_int(P.second)}, {f.from_int(Qp.first), f.from_int(Qp.second)}, m);
}

// Reduces an integer-valued rational Sigma mod q.
Residues reduce(const DEData& d, int q) {
  Residues r{};
  for (int i = 0; i < 16; ++i) {
    const Scalar& s = d.sigma(i / 4, i % 4);
    EXPECT_TRUE(s.is_rational());
    EXPECT_EQ(s.c0().get_den(), 1);
    mpz_class v = s.c0().get_num() % q;
    if (v < 0) v += q;
    r[i] = static_cast<uint8_t>(v.get_si());
  }
  return r;
}

Residues identity() {
  Residues r{};
  for (int i = 0; i < 4; ++i) r[i * 5] = 1;
  return r;
}

bool contains(const std::vector<Residues>& sols, const Residues& r) {
  return std::find(sols.begin(), sols.end(), r) != sols.end();
}

const FieldSpec& Q = FieldSpec::rationals();

}  // namespace

TEST(Enumerate, IdentityIsASolution) {
  auto sols = enumerate_csolutions(3, {1, 0}, {1, 0});
  EXPECT_EQ(sols.size(), 7296u);
  EXPECT_TRUE(contains(sols, identity()));
}

TEST(Enumerate, SReducesModThree) {
  DEData s = instantiate(find_family('S'), Q, {{'h', Q.one()}});
  Residues r = reduce(s, 3);
  EXPECT_TRUE(contains(enumerate_csolutions(3, {2, 0}, {2, 0}), r));
}

TEST(Enumerate, AReducesModThree) {
  DEData a = instantiate(find_family('A'), Q, {{'h', Q.one()}});
  Residues r = reduce(a, 3);
  EXPECT_TRUE(check_system_c(over_gf(r, 3, {1, 1}, {1, 0})).ok());
  EXPECT_TRUE(contains(enumerate_csolutions(3, {1, 1}, {1, 0}), r));
}

TEST(Enumerate, EveryOutputSatisfiesSystemC) {
  for (auto [P, Qp] : {std::pair{std::pair{2, 0}, std::pair{2, 0}}, {{1, 1}, {1, 0}}, {{2, 1}, {1, 2}}}) {
    auto sols = enumerate_csolutions(3, P, Qp);
    ASSERT_FALSE(sols.empty());
    for (const Residues& r : sols) {
      ConstraintReport c = check_system_c(over_gf(r, 3, P, Qp));
      ASSERT_TRUE(c.ok()) << residues_to_string(r) << " " << c.summary();
    }
  }
}

TEST(Enumerate, OutputIsLexicographicInVariableOrder) {
  auto sols = enumerate_csolutions(3, {1, 1}, {1, 0}, 4);
  EnumerationSetup s = make_setup(3, {1, 1}, {1, 0});
  auto key = [&](const Residues& r) {
    Residues k{};
    for (int d = 0; d < 16; ++d) k[d] = r[s.order[d]];
    return k;
  };
  for (size_t i = 1; i < sols.size(); ++i) ASSERT_LT(key(sols[i - 1]), key(sols[i])) << i;
}

TEST(Enumerate, MatchesNaiveScan) {
  auto fast = enumerate_csolutions(3, {2, 1}, {1, 2});
  auto slow = dext::testing::naive_scan(3, {2, 1}, {1, 2});
  EXPECT_EQ(fast.size(), 48u);
  std::sort(fast.begin(), fast.end());
  std::sort(slow.begin(), slow.end());
  EXPECT_EQ(fast, slow);
}

TEST(Enumerate, WorkerCountDoesNotChangeOutput) {
  auto one = enumerate_csolutions(3, {1, 1}, {1, 0}, 1);
  for (int w : {2, 3, 8}) EXPECT_EQ(enumerate_csolutions(3, {1, 1}, {1, 0}, w), one) << w;
  EXPECT_EQ(enumerate_csolutions(3, {1, 1}, {1, 0}, 4, 2), one);
}

TEST(Enumerate, RejectsBadInput) {
  EXPECT_THROW(enumerate_csolutions(4, {1, 0}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(enumerate_csolutions(1, {1, 0}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(enumerate_csolutions(3, {3, 0}, {1, 0}), std::invalid_argument);
  EXPECT_THROW(enumerate_csolutions(257, {1, 0}, {1, 0}), std::invalid_argument);
  try {
    make_setup(9, {1, 0}, {1, 0});
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "q must be prime, got 9");
  }
}

TEST(Enumerate, ConstraintBuilderShape) {
  EnumerationSetup s = make_setup(5, {2, 1}, {3, 4});
  EXPECT_EQ(s.constraints.size(), 24u);
  std::vector<int> sorted = s.order;
  std::sort(sorted.begin(), sorted.end());
  for (int v = 0; v < 16; ++v) EXPECT_EQ(sorted[v], v);
  for (const QuadConstraint& c : s.constraints)
    for (const QuadTerm& t : c.terms) {
      EXPECT_GT(t.coeff, 0);
      EXPECT_LT(t.coeff, 5);
    }
}

TEST(Enumerate, DetModMatchesMatrixDeterminant) {
  const FieldSpec& f = FieldSpec::prime(7);
  std::mt19937 rng(7);
  for (int n = 0; n < 200; ++n) {
    Residues r{};
    Matrix m(f, 4, 4);
    for (int i = 0; i < 16; ++i) {
      r[i] = static_cast<uint8_t>(rng() % 7);
      m(i / 4, i % 4) = f.from_int(r[i]);
    }
    EXPECT_EQ(f.from_int(det_mod(r, 7)), m.det());
  }
}

TEST(Enumerate, BucketsAgreeWithExactFlagsAndDet) {
  std::pair<int, int> P{2, 0}, Qp{2, 0};
  auto sols = enumerate_csolutions(3, P, Qp);
  BucketSummary b = bucket_solutions(sols, 3, P, Qp);
  EXPECT_EQ(b.total, sols.size());
  EXPECT_EQ(b.ore + b.non_ore, b.total);
  EXPECT_EQ(sols.size(), 304u);
  EXPECT_EQ(b.non_ore, 80u);
  const FieldSpec& f = FieldSpec::prime(3);
  for (const Residues& r : sols) {
    DEData d = over_gf(r, 3, P, Qp);
    BucketKey k = bucket_of(r, 3, 2, 0);
    OreFlags o = ore_flags(d);
    EXPECT_EQ(k.sigma12_zero, o.sigma12_zero);
    EXPECT_EQ(k.m12_zero, o.m12_zero);
    EXPECT_EQ(k.sigma21_zero, o.sigma21_zero_p11_zero);
    EXPECT_EQ(k.m21_zero, o.m21_zero_q11_zero);
    Matrix D = det_sigma(d);
    EXPECT_EQ(f.from_int(k.detsigma_trace), D(0, 0) + D(1, 1));
    EXPECT_EQ(f.from_int(k.detsigma_det), D.det());
  }
}

TEST(Enumerate, DiagonalSolutionsAreOre) {
  auto sols = enumerate_csolutions(3, {1, 0}, {1, 0});
  BucketSummary b = bucket_solutions(sols, 3, {1, 0}, {1, 0});
  EXPECT_EQ(b.non_ore, 2032u);
  for (const Residues& r : sols) {
    bool diagonal = !r[2] && !r[3] && !r[6] && !r[7] && !r[8] && !r[9] && !r[12] && !r[13];
    if (diagonal) {
      BucketKey k = bucket_of(r, 3, 1, 0);
      EXPECT_TRUE(k.sigma12_zero && k.sigma21_zero);
    }
  }
}

TEST(Enumerate, NonOreBucketAtSkewPair) {
  auto sols = enumerate_csolutions(3, {2, 0}, {2, 0});
  BucketSummary b = bucket_solutions(sols, 3, {2, 0}, {2, 0});
  size_t non_ore_keys = 0;
  for (const auto& [k, n] : b.counts)
    if (!k.sigma12_zero && !k.sigma21_zero && !k.m12_zero && !k.m21_zero) non_ore_keys += n;
  EXPECT_EQ(non_ore_keys, b.non_ore);
  EXPECT_GT(non_ore_keys, 0u);
}

TEST(Enumerate, EmptyStreamHasNoBuckets) {
  BucketSummary b = bucket_solutions({}, 5, {1, 0}, {1, 0});
  EXPECT_EQ(b.total, 0u);
  EXPECT_TRUE(b.counts.empty());
}
