#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dext/catalog.hpp"
#include "dext/diagnostics.hpp"

using namespace dext;

namespace {

DEData random_de(const FieldSpec& f, std::mt19937& rng, double density) {
  unsigned q = f.modulus();
  std::bernoulli_distribution keep(density);
  auto pick = [&] { return f.from_int(static_cast<long>(rng() % q)); };
  auto pick_nonzero = [&] { return f.from_int(1 + static_cast<long>(rng() % (q - 1))); };
  Matrix m(f, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = i == j ? pick_nonzero() : (keep(rng) ? pick() : f.zero());
  return make_data(f, {pick_nonzero(), keep(rng) ? pick() : f.zero()}, {pick_nonzero(), keep(rng) ? pick() : f.zero()}, m);
}

// R3 tags for the composition identities, keyed like the C4..C6 names.
std::set<std::string> composition_part(const ConstraintReport& r, bool system_c) {
  std::set<std::string> out;
  for (const std::string& v : r.violated) {
    if (system_c && v[0] == 'C' && v[1] >= '4') {
      out.insert(std::string(1, static_cast<char>(v[1] - 3)) + v.substr(2));
    } else if (!system_c && v.rfind("R3.", 0) == 0) {
      // R3.k(xs)_xt
      out.insert(std::string(1, v[3]) + v[6] + v[10]);
    }
  }
  return out;
}

std::set<std::string> homomorphism_part(const ConstraintReport& r, bool system_c) {
  std::set<std::string> out;
  for (const std::string& v : r.violated) {
    if (system_c && v[0] == 'C' && v[1] <= '3') out.insert(v.substr(2));
    if (!system_c && v.rfind("hom(", 0) == 0) out.insert(v.substr(v.size() - 2));
  }
  return out;
}

std::vector<NcPoly> relations_of(const DEData& d) { return presentation_of(d).relations; }

int rank_of(const std::vector<NcPoly>& ps, const FieldSpec& f) {
  std::vector<Word> basis = detail::words_of_length(kAllGenerators, 2);
  Matrix m(f, static_cast<int>(ps.size()), static_cast<int>(basis.size()));
  for (size_t i = 0; i < ps.size(); ++i) {
    std::vector<Scalar> c = detail::coordinates(ps[i], basis);
    for (size_t j = 0; j < c.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = c[j];
  }
  return m.rank();
}

// Lower triangular, so the quadratic relation keeps a z2'z1' term and no z2'z2' term.
Matrix random_lower(const FieldSpec& f, std::mt19937& rng) {
  unsigned q = f.modulus();
  Matrix b(f, 2, 2);
  b(0, 0) = f.from_int(1 + static_cast<long>(rng() % (q - 1)));
  b(1, 1) = f.from_int(1 + static_cast<long>(rng() % (q - 1)));
  b(1, 0) = f.from_int(static_cast<long>(rng() % q));
  return b;
}

}  // namespace

TEST(Properties, SystemCAgreesWithCompositionRoute) {
  std::mt19937 rng(11);
  int solutions = 0;
  for (const FieldSpec* f : {&FieldSpec::prime(11), &FieldSpec::prime(3)})
    for (int n = 0; n < 500; ++n) {
      DEData d = random_de(*f, rng, f->modulus() == 3 ? 0.25 : 0.15);
      ConstraintReport c = check_system_c(d), r = check_r3_trimmed(d);
      ASSERT_EQ(c.ok(), r.ok()) << d.sigma.to_string() << " | " << c.summary() << " | " << r.summary();
      EXPECT_EQ(composition_part(c, true), composition_part(r, false)) << c.summary() << " | " << r.summary();
      EXPECT_EQ(homomorphism_part(c, true), homomorphism_part(r, false)) << c.summary() << " | " << r.summary();
      solutions += c.ok();
    }
  EXPECT_GT(solutions, 0);
}

TEST(Properties, TwistPreservesSolutionsAndFlags) {
  std::mt19937 rng(5);
  const auto& cat = default_catalog();
  for (int n = 0; n < 100; ++n) {
    const FamilyRecord& rec = cat[rng() % cat.size()];
    const Specialization& s = rec.specializations[rng() % rec.specializations.size()];
    DEData d = instantiate(rec, s);
    const FieldSpec& f = *d.field;
    Scalar h = f.from_int(1 + static_cast<long>(rng() % 9));
    if (rng() % 2) h = -h;
    DEData t = apply_twist(d, h);
    EXPECT_TRUE(check_system_c(t).ok()) << rec.name;
    EXPECT_EQ(ore_flags(t), ore_flags(d)) << rec.name;
    EXPECT_EQ(det_sigma(t), det_sigma(d).scaled(h * h)) << rec.name;
  }
}

TEST(Properties, NormalFormIsIdempotentAndLinear) {
  std::mt19937 rng(3);
  const FieldSpec& Q = FieldSpec::rationals();
  auto random_poly = [&] {
    NcPoly p(Q);
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> letters(1 + rng() % 4);
      for (int& l : letters) l = static_cast<int>(rng() % 4);
      p.add_term(Word::from_letters(letters), Q.from_int(static_cast<long>(rng() % 7) - 3));
    }
    return p;
  };
  for (const FamilyRecord& rec : default_catalog()) {
    DEData d = instantiate(rec, rec.specializations[0]);
    if (d.field != &Q) continue;
    RewriteSystem rs = complete(presentation_of(d), 4);
    for (int n = 0; n < 200; ++n) {
      NcPoly a = random_poly(), b = random_poly();
      NcPoly na = rs.normal_form(a);
      ASSERT_EQ(rs.normal_form(na), na) << rec.name << " " << a;
      EXPECT_EQ(rs.normal_form(a + b), na + rs.normal_form(b)) << rec.name;
      for (const auto& [w, c] : na.terms()) EXPECT_TRUE(rs.is_normal(w)) << rec.name << " " << w.to_string();
    }
  }
}

TEST(Properties, ChangeOfGeneratorsPreservesRelationSpan) {
  std::mt19937 rng(17);
  const auto& cat = default_catalog();
  const FieldSpec& f = FieldSpec::prime(101);
  int done = 0;
  for (int n = 0; n < 300 && done < 60; ++n) {
    const FamilyRecord& rec = cat[rng() % cat.size()];
    DEData d;
    try {
      auto [sf, v] = resolve(rec.specializations[0]);
      if (sf != &FieldSpec::rationals()) continue;
      ParamValues pv;
      for (const auto& [k, s] : complete_params(rec, *sf, v)) {
        mpz_class num = s.c0().get_num() % 101, den = s.c0().get_den() % 101;
        pv[k] = f.from_int(num.get_si()) * f.from_int(den.get_si()).inv();
      }
      d = instantiate(rec, f, pv);
    } catch (const ConstraintViolation&) {
      continue;
    }
    Matrix bx = random_lower(f, rng), by = random_lower(f, rng);
    DEData t;
    try {
      t = transform_xy(d, bx, by);
    } catch (const TransformError&) {
      continue;
    }
    Matrix bxi = bx.inverse(), byi = by.inverse();
    std::array<NcPoly, kNumGenerators> images{NcPoly(f), NcPoly(f), NcPoly(f), NcPoly(f)};
    for (int s = 0; s < 2; ++s)
      for (int u = 0; u < 2; ++u) {
        images[X1 + s].add_term(Word::letter(X1 + u), bxi(s, u));
        images[Y1 + s].add_term(Word::letter(Y1 + u), byi(s, u));
      }
    std::vector<NcPoly> moved;
    for (const NcPoly& r : relations_of(d)) moved.push_back(substitute(r, images));
    std::vector<NcPoly> both = moved;
    for (const NcPoly& r : relations_of(t)) both.push_back(r);
    EXPECT_EQ(rank_of(moved, f), 6) << rec.name;
    EXPECT_EQ(rank_of(both, f), 6) << rec.name << " bx=" << bx.to_string() << " by=" << by.to_string();
    EXPECT_TRUE(check_system_c(t).ok()) << rec.name;
    ++done;
  }
  EXPECT_GE(done, 30);
}

TEST(Properties, DualIsInvolutiveOnRandomSolutions) {
  auto sols_checked = 0;
  std::mt19937 rng(23);
  const FieldSpec& f = FieldSpec::prime(3);
  for (int n = 0; n < 2000 && sols_checked < 50; ++n) {
    DEData d = random_de(f, rng, 0.2);
    if (!check_system_c(d).ok()) continue;
    DEData dd = dual_data(d);
    EXPECT_TRUE(check_system_c(dd).ok()) << d.sigma.to_string();
    EXPECT_EQ(dual_data(dd), d);
    ++sols_checked;
  }
  EXPECT_GT(sols_checked, 0);
}

TEST(Properties, TToUWitness) {
  const auto& cat = default_catalog();
  const FamilyRecord* holder = find_family('T').witness ? &find_family('T') : &find_family('U');
  ASSERT_TRUE(holder->witness.has_value());
  for (const Specialization& s : duality_specializations(*holder)) {
    WitnessCheck w = check_stored_witness(cat, *holder, s);
    EXPECT_TRUE(w.ok) << describe(s) << " " << w.detail;
  }
}
