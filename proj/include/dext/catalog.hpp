#pragma once

// The 26 families of trimmed double extensions of type (14641) that are
// not iterated Ore extensions, with their parameter constraints, det sigma
// tables, duality data and normal-element claims.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dext/dedata.hpp"
#include "dext/paramexpr.hpp"

namespace dext {

class ConstraintViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ParamConstraint {
  std::string expr;  // polynomial that must vanish (equalities) or not vanish
  std::string text;  // human-readable form used in error messages
};

// z is normal relative to W: z W = W z inside the algebra. When scalar is
// set, z w = scalar * w z for every w in W. Identities are pairs of
// polynomials that must agree in the algebra.
struct NormalClaim {
  std::string description;
  std::string z;
  std::vector<std::string> W;
  std::optional<std::string> scalar;
  std::vector<std::pair<std::string, std::string>> identities;
  std::string condition;  // parameter condition under which the claim is made, e.g. "f=0"
};

struct Specialization {
  std::string field;
  std::vector<std::pair<char, std::string>> params;
  std::string label;
};

// Parametric duality witness: dual_data of the source family, changed by
// Bx, By and twisted by h, equals the partner family at partner_params.
// Entries are rational expressions in the source parameters, the square
// root s of f and the field generator a.
struct WitnessPattern {
  std::array<std::string, 4> bx;
  std::array<std::string, 4> by;
  std::string h;
  std::vector<std::pair<char, std::string>> partner_params;
};

struct FamilyRecord {
  char name = '?';
  std::string symbol;
  std::string params;  // parameter letters in display order
  std::array<std::string, 2> P, Q;
  std::string sigma_scale;
  std::array<std::string, 16> sigma;
  std::string det_scale;
  std::array<std::string, 4> det;
  std::vector<ParamConstraint> equalities;
  std::vector<ParamConstraint> nonzero;
  OreFlags expected_flags;
  char partner = 0;  // dual partner, itself when selfdual, 0 when not recorded
  std::optional<WitnessPattern> witness;
  std::vector<NormalClaim> normals;
  std::vector<Specialization> specializations;
  std::vector<Specialization> variants;
  // Specializations over fields holding the constants the witness needs;
  // empty means the default specializations.
  std::vector<Specialization> duality_specializations;
  std::string note;

  bool selfdual() const { return partner == name; }
  bool uses(char v) const { return params.find(v) != std::string::npos; }
};

using ParamValues = std::map<char, Scalar>;

namespace detail {

inline std::array<const Scalar*, 7> value_table(const ParamValues& v) {
  std::array<const Scalar*, 7> t{};
  for (const auto& [k, s] : v) t[ParamExpr::index(k)] = &s;
  return t;
}

inline Scalar eval(const std::string& e, const FieldSpec& f, const ParamValues& v) {
  return ParamExpr::parse(e).evaluate(f, value_table(v));
}

inline FamilyRecord family(char name, const char* symbol, const char* params, std::array<std::string, 2> P,
                           std::array<std::string, 2> Q, const char* scale, std::array<std::string, 16> sigma,
                           const char* det_scale, std::array<std::string, 4> det) {
  FamilyRecord r;
  r.name = name;
  r.symbol = symbol;
  r.params = params;
  r.P = P;
  r.Q = Q;
  r.sigma_scale = scale;
  r.sigma = sigma;
  r.det_scale = det_scale;
  r.det = det;
  if (r.uses('h')) r.nonzero.push_back({"h", "h ≠ 0"});
  return r;
}

inline OreFlags flags(bool s12, bool s21, bool m12, bool m21) { return OreFlags{s12, s21, m12, m21}; }

inline std::vector<Specialization> h_only() { return {{"Q", {{'h', "1"}}, ""}, {"Q", {{'h', "-1"}}, ""}, {"Q", {{'h', "2"}}, ""}}; }

inline std::vector<Specialization> alpha_specs(char v, const char* field) {
  return {{field, {{'h', "1"}, {v, "a"}}, ""}, {field, {{'h', "1"}, {v, "-a"}}, ""}, {field, {{'h', "2"}, {v, "a"}}, ""}};
}

inline std::vector<Specialization> f_specs(const char* f1, const char* f2, const char* f3) {
  return {{"Q", {{'h', "1"}, {'f', f1}}, ""}, {"Q", {{'h', "1"}, {'f', f2}}, ""}, {"Q", {{'h', "2"}, {'f', f3}}, ""}};
}

inline std::vector<FamilyRecord> build_catalog();

}  // namespace detail

inline const std::vector<FamilyRecord>& default_catalog() {
  static const std::vector<FamilyRecord> cat = detail::build_catalog();
  return cat;
}

inline const FamilyRecord& find_family(const std::vector<FamilyRecord>& cat, char name) {
  for (const FamilyRecord& r : cat)
    if (r.name == name) return r;
  throw UnknownFamily(std::string("unknown family '") + name + "'");
}
inline const FamilyRecord& find_family(char name) { return find_family(default_catalog(), name); }

// Resolves the field and parameter values of a specialization.
inline std::pair<const FieldSpec*, ParamValues> resolve(const Specialization& s) {
  const FieldSpec& f = FieldSpec::parse(s.field);
  ParamValues v;
  for (const auto& [k, e] : s.params) v.emplace(k, f.parse_scalar(e));
  return {&f, v};
}

inline Scalar eval_rational(const std::string& e, const FieldSpec& f, const ParamValues& v) {
  return evaluate_expression(e, f, detail::value_table(v));
}

inline Matrix sigma_pattern_value(const FamilyRecord& rec, const FieldSpec& f, const ParamValues& v) {
  Scalar scale = detail::eval(rec.sigma_scale, f, v);
  Matrix m(f, 4, 4);
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = scale * detail::eval(rec.sigma[i], f, v);
  return m;
}

inline Matrix expected_det_sigma(const FamilyRecord& rec, const FieldSpec& f, const ParamValues& v) {
  Scalar scale = detail::eval(rec.det_scale, f, v);
  Matrix m(f, 2, 2);
  for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = scale * detail::eval(rec.det[i], f, v);
  return m;
}

// Checks the parameter constraints; the algebraic constants p and q default
// to the field generator a when the family pins them by an equation.
inline ParamValues complete_params(const FamilyRecord& rec, const FieldSpec& f, ParamValues v) {
  for (char c : rec.params) {
    if (v.count(c)) continue;
    bool algebraic = false;
    for (const ParamConstraint& e : rec.equalities)
      if (ParamExpr::parse(e.expr).uses(c)) algebraic = true;
    if (algebraic && f.is_quadratic()) {
      v.emplace(c, f.alpha());
      continue;
    }
    if (algebraic) throw ConstraintViolation(std::string("missing algebraic constant ") + c + " over " + f.to_string());
    throw ConstraintViolation(std::string("missing parameter ") + c + " for family " + rec.name);
  }
  for (const auto& [k, s] : v) {
    if (&s.field() != &f) throw FieldMismatch(std::string("parameter ") + k + " is not in " + f.to_string());
    if (!rec.uses(k) && k != 's') throw ConstraintViolation(std::string("family ") + rec.name + " has no parameter " + k);
  }
  if (v.count('s') && (!v.count('f') || v.at('s') * v.at('s') != v.at('f')))
    throw ConstraintViolation("constraint violated: s^2 = f");
  for (const ParamConstraint& e : rec.equalities)
    if (!detail::eval(e.expr, f, v).is_zero()) throw ConstraintViolation("constraint violated: " + e.text);
  for (const ParamConstraint& e : rec.nonzero)
    if (detail::eval(e.expr, f, v).is_zero()) throw ConstraintViolation("constraint violated: " + e.text);
  return v;
}

inline DEData instantiate(const FamilyRecord& rec, const FieldSpec& f, const ParamValues& params) {
  ParamValues v = complete_params(rec, f, params);
  return make_data(f, {detail::eval(rec.P[0], f, v), detail::eval(rec.P[1], f, v)},
                   {detail::eval(rec.Q[0], f, v), detail::eval(rec.Q[1], f, v)}, sigma_pattern_value(rec, f, v));
}

inline DEData instantiate(const FamilyRecord& rec, const Specialization& s) {
  auto [f, v] = resolve(s);
  return instantiate(rec, *f, v);
}

inline const std::vector<Specialization>& default_specializations(const FamilyRecord& rec) {
  return rec.specializations;
}

inline std::string describe(const Specialization& s) {
  std::string out;
  for (const auto& [k, v] : s.params) out += (out.empty() ? "" : ",") + std::string(1, k) + "=" + v;
  return out + " over " + s.field;
}

// Finds parameter values at which the family pattern reproduces d exactly.
inline std::optional<ParamValues> identify(const FamilyRecord& rec, const DEData& d) {
  const FieldSpec& f = *d.field;
  struct Cell {
    ParamExpr expr;
    Scalar value;
  };
  std::vector<Cell> cells;
  ParamExpr scale = ParamExpr::parse(rec.sigma_scale);
  for (int i = 0; i < 16; ++i) cells.push_back({scale * ParamExpr::parse(rec.sigma[i]), d.sigma(i / 4, i % 4)});
  cells.push_back({ParamExpr::parse(rec.P[0]), d.P.first});
  cells.push_back({ParamExpr::parse(rec.P[1]), d.P.second});
  cells.push_back({ParamExpr::parse(rec.Q[0]), d.Q.first});
  cells.push_back({ParamExpr::parse(rec.Q[1]), d.Q.second});
  ParamValues known;
  bool progress = true;
  while (progress && known.size() < rec.params.size()) {
    progress = false;
    for (const Cell& c : cells) {
      // Split each cell into coefficient * monomial in the unknowns.
      std::map<ParamExpr::Exponents, Scalar> groups;
      auto table = detail::value_table(known);
      for (const auto& [x, coef] : c.expr.terms()) {
        ParamExpr::Exponents unk{};
        Scalar t = f.from_rational(coef);
        for (size_t k = 0; k < x.size(); ++k) {
          if (!x[k]) continue;
          if (table[k])
            t *= table[k]->pow(x[k]);
          else
            unk[k] = x[k];
        }
        auto [it, ins] = groups.try_emplace(unk, t);
        if (!ins) it->second += t;
      }
      int var = -1;
      bool linear = true;
      for (const auto& [unk, coef] : groups) {
        if (coef.is_zero()) continue;
        int deg = 0, which = -1;
        for (size_t k = 0; k < unk.size(); ++k)
          if (unk[k]) {
            deg += unk[k];
            which = static_cast<int>(k);
          }
        if (deg == 0) continue;
        if (deg > 1 || (var >= 0 && var != which)) linear = false;
        var = which;
      }
      if (!linear || var < 0) continue;
      ParamExpr::Exponents one{}, lin{};
      lin[var] = 1;
      Scalar a0 = groups.count(one) ? groups.at(one) : f.zero();
      Scalar a1 = groups.at(lin);
      known.emplace(kParamLetters[var], (c.value - a0) / a1);
      progress = true;
      break;
    }
  }
  for (char ch : rec.params)
    if (!known.count(ch)) return std::nullopt;
  try {
    if (instantiate(rec, f, known) == d) return known;
  } catch (const ConstraintViolation&) {
  }
  return std::nullopt;
}

struct Witness {
  Matrix bx, by;
  Scalar h;
  ParamValues partner_params;
};

// Searches changes of generators with entries drawn from `entries` for
// one that carries dual_data(d)-style data d onto the family rec.
inline std::optional<Witness> find_witness(const DEData& d, const FamilyRecord& rec, const std::vector<Scalar>& entries) {
  const FieldSpec& f = *d.field;
  std::vector<Matrix> mats;
  for (const Scalar& a : entries)
    for (const Scalar& b : entries)
      for (const Scalar& c : entries)
        for (const Scalar& e : entries) {
          Matrix m = Matrix::from_rows(f, {{a, b}, {c, e}});
          if (!m.det().is_zero()) mats.push_back(m);
        }
  for (const Matrix& bx : mats)
    for (const Matrix& by : mats) {
      DEData t;
      try {
        t = transform_xy(d, bx, by);
      } catch (const TransformError&) {
        continue;
      }
      if (auto v = identify(rec, t)) return Witness{bx, by, f.one(), *v};
    }
  return std::nullopt;
}

struct WitnessCheck {
  Specialization spec;
  bool ok = false;
  std::string detail;
};

inline const std::vector<Specialization>& duality_specializations(const FamilyRecord& rec) {
  return rec.duality_specializations.empty() ? rec.specializations : rec.duality_specializations;
}

// Evaluates the stored witness of rec at spec and verifies it.
inline WitnessCheck check_stored_witness(const std::vector<FamilyRecord>& cat, const FamilyRecord& rec,
                                         const Specialization& spec) {
  WitnessCheck out{spec, false, ""};
  if (!rec.witness) {
    out.detail = "no stored witness";
    return out;
  }
  try {
    auto [f, v] = resolve(spec);
    ParamValues src = v;
    src.erase('s');
    DEData d = dual_data(instantiate(rec, *f, src));
    const WitnessPattern& w = *rec.witness;
    Matrix bx(*f, 2, 2), by(*f, 2, 2);
    for (int i = 0; i < 4; ++i) {
      bx(i / 2, i % 2) = eval_rational(w.bx[i], *f, v);
      by(i / 2, i % 2) = eval_rational(w.by[i], *f, v);
    }
    ParamValues target;
    for (const auto& [k, e] : w.partner_params) target.emplace(k, eval_rational(e, *f, v));
    DEData d2 = instantiate(find_family(cat, rec.partner), *f, target);
    out.ok = verify_equivalence_witness(d, d2, bx, by, eval_rational(w.h, *f, v));
    out.detail = "Bx=" + bx.to_string() + " By=" + by.to_string();
    if (!out.ok) out.detail += " does not carry the dual onto the partner";
  } catch (const std::exception& e) {
    out.detail = e.what();
  }
  return out;
}

namespace detail {

inline std::vector<FamilyRecord> build_catalog() {
  std::vector<FamilyRecord> c;
  FamilyRecord r;

  r = family('A', "𝔸", "h", {"1", "1"}, {"1", "0"}, "h",
             {"1", "0", "0", "0", "0", "1", "1", "0", "0", "0", "1", "0", "0", "-2", "-1", "1"}, "h^2",
             {"1", "0", "0", "1"});
  r.specializations = h_only();
  r.expected_flags = flags(false, false, true, false);
  c.push_back(r);

  r = family('B', "𝔹", "hp", {"p", "0"}, {"p", "0"}, "h",
             {"0", "0", "0", "1", "0", "0", "1", "0", "0", "-1", "0", "0", "1", "0", "0", "0"}, "p*h^2",
             {"1", "0", "0", "-1"});
  r.equalities = {{"p^2+1", "p^2 = -1"}};
  r.specializations = alpha_specs('p', "Q(a^2+1)");
  r.partner = 'B';
  r.witness = WitnessPattern{{"0", "1", "1", "0"}, {"0", "1", "1", "0"}, "1", {{'h', "h"}, {'p', "p"}}};
  r.normals = {{"y1 normal relative to degree-2 x-words", "y1", {"xx"}, std::nullopt, {}, ""},
                {"y2 normal relative to degree-2 x-words", "y2", {"xx"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('C', "ℂ", "hp", {"p", "0"}, {"p", "0"}, "h",
             {"-1", "p^2", "1", "-p", "-p", "1", "1", "-p", "-p", "-2*p^2", "p", "-p", "-p", "p^2", "1", "-1"},
             "-3*h^2", {"p", "0", "0", "1"});
  r.equalities = {{"p^2+p+1", "p^2 + p + 1 = 0"}};
  r.specializations = {{"Q(a^2+a+1)", {{'h', "1"}, {'p', "a"}}, ""},
                       {"Q(a^2+a+1)", {{'h', "1"}, {'p', "-1-a"}}, ""},
                       {"Q(a^2+a+1)", {{'h', "3"}, {'p', "a"}}, ""}};
  r.partner = 'C';
  r.witness = WitnessPattern{{"0", "1", "1", "0"}, {"0", "1", "1", "0"}, "1", {{'h', "h"}, {'p', "p"}}};
  r.normals = {{"y1^2y2 skew-commutes with x1, x2", "y1^2*y2", {"x"}, "(p-1)^2*(1-p^2)*h^3", {}, ""},
                {"y1^2y2 is normalizing", "y1^2*y2", {"gens"}, std::nullopt, {}, ""},
                {"y1^3-y2^3 is normalizing", "y1^3-y2^3", {"gens"}, std::nullopt, {{"(y1^3-y2^3)*x2", "(1-p^2)^3*h^3*x2*(y1^3-y2^3)"}}, ""}};
  c.push_back(r);

  r = family('D', "𝔻", "hp", {"p", "0"}, {"-1", "0"}, "h",
             {"-p", "0", "0", "0", "0", "-p^2", "1", "0", "0", "0", "p", "0", "1", "0", "0", "1"}, "-p^2*h^2",
             {"1", "0", "0", "1"});
  r.nonzero.push_back({"p", "p ≠ 0"});
  r.specializations = {{"Q", {{'h', "1"}, {'p', "2"}}, ""},
                       {"Q", {{'h', "1"}, {'p', "-1"}}, ""},
                       {"Q", {{'h', "2"}, {'p', "3"}}, ""}};
  r.variants = {{"Q", {{'h', "1"}, {'p', "1"}}, "P = (1, 0) special case"}};
  r.expected_flags = flags(false, false, true, false);
  c.push_back(r);

  r = family('E', "𝔼", "hp", {"p", "0"}, {"-1", "0"}, "h",
             {"0", "0", "1", "1", "0", "0", "1", "-1", "-1", "1", "0", "0", "1", "1", "0", "0"}, "2*p*h^2",
             {"0", "1", "-1", "0"});
  r.equalities = {{"p^2+1", "p^2 = -1"}};
  r.specializations = alpha_specs('p', "Q(a^2+1)");
  r.partner = 'J';
  r.witness = WitnessPattern{{"0", "1", "1", "0"}, {"0", "1", "1", "0"}, "1", {{'h', "h"}, {'q', "p"}}};
  r.normals = {{"y1 normal relative to degree-2 x-words", "y1", {"xx"}, std::nullopt, {}, ""},
                {"y2 normal relative to degree-2 x-words", "y2", {"xx"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('F', "𝔽", "hp", {"p", "0"}, {"-1", "0"}, "h",
             {"-1", "-p", "1", "-1", "-p", "1", "1", "1", "-p", "p", "p", "1", "-p", "-p", "1", "-p"}, "-2*p*h^2",
             {"1", "0", "0", "1"});
  r.equalities = {{"p^2+1", "p^2 = -1"}};
  r.specializations = alpha_specs('p', "Q(a^2+1)");
  r.partner = 'I';
  r.witness = WitnessPattern{{"0", "1", "1", "0"}, {"0", "1", "1", "0"}, "1", {{'h', "h"}, {'q', "p"}}};
  r.normals = {{"x1x2 normal relative to y1, y2", "x1*x2", {"y"}, std::nullopt, {}, ""},
                {"x1^2+x2^2 normal relative to y1, y2", "x1^2+x2^2", {"y"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('G', "𝔾", "hpf", {"p", "0"}, {"1", "0"}, "h",
             {"p", "0", "0", "0", "p", "p^2", "1", "0", "0", "0", "p", "0", "f", "0", "-1", "1"}, "p^2*h^2",
             {"1", "0", "0", "1"});
  r.nonzero.push_back({"p", "p ≠ 0"});
  r.nonzero.push_back({"f", "f ≠ 0"});
  r.specializations = {{"Q", {{'h', "1"}, {'p', "2"}, {'f', "1"}}, ""},
                       {"Q", {{'h', "1"}, {'p', "-1"}, {'f', "3"}}, ""},
                       {"Q", {{'h', "2"}, {'p', "3"}, {'f', "-2"}}, ""}};
  r.expected_flags = flags(false, false, true, false);
  c.push_back(r);

  r = family('H', "ℍ", "hf", {"-1", "0"}, {"1", "1"}, "h",
             {"0", "0", "1", "0", "0", "0", "f", "1", "1", "0", "0", "0", "f", "1", "0", "0"}, "h^2",
             {"1", "0", "2*f", "1"});
  r.specializations = f_specs("1", "0", "-3");
  r.expected_flags = flags(false, false, true, false);
  c.push_back(r);

  r = family('I', "𝕀", "hq", {"-1", "0"}, {"q", "0"}, "h",
             {"-q", "-q", "1", "-q", "1", "1", "1", "-q", "1", "q", "q", "-q", "-1", "-q", "1", "-1"}, "2*h^2",
             {"1", "0", "0", "-1"});
  r.equalities = {{"q^2+1", "q^2 = -1"}};
  r.specializations = alpha_specs('q', "Q(a^2+1)");
  r.partner = 'F';
  r.normals = {{"y1y2 skew-commutes with x1, x2", "y1*y2", {"x"}, "-(1+q)^2*h^2", {}, ""},
                {"y1^2+y2^2 skew-commutes with x1, x2", "y1^2+y2^2", {"x"}, "-(1+q)^2*h^2", {}, ""}};
  c.push_back(r);

  r = family('J', "𝕁", "hq", {"-1", "0"}, {"q", "0"}, "h",
             {"0", "1", "0", "1", "-1", "0", "1", "0", "0", "1", "0", "-1", "1", "0", "1", "0"}, "2*h^2",
             {"1", "0", "0", "1"});
  r.equalities = {{"q^2+1", "q^2 = -1"}};
  r.specializations = alpha_specs('q', "Q(a^2+1)");
  r.partner = 'E';
  r.normals = {{"x1 normal relative to degree-2 y-words", "x1", {"yy"}, std::nullopt, {}, ""},
                {"x2 normal relative to degree-2 y-words", "x2", {"yy"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('K', "𝕂", "hqf", {"-1", "0"}, {"q", "0"}, "h",
             {"1", "0", "0", "0", "0", "0", "0", "1", "0", "0", "1", "0", "0", "f", "0", "0"}, "h^2",
             {"1", "0", "0", "f"});
  r.nonzero.push_back({"q", "q ≠ 0"});
  r.nonzero.push_back({"f", "f ≠ 0"});
  r.specializations = {{"Q", {{'h', "1"}, {'q', "2"}, {'f', "1"}}, ""},
                       {"Q", {{'h', "1"}, {'q', "-1"}, {'f', "3"}}, ""},
                       {"Q", {{'h', "2"}, {'q', "1"}, {'f', "-2"}}, ""}};
  r.expected_flags = flags(false, false, true, true);
  c.push_back(r);

  r = family('L', "𝕃", "hqf", {"-1", "0"}, {"q", "0"}, "h",
             {"0", "0", "f", "0", "0", "0", "0", "1", "f", "0", "0", "0", "0", "1", "0", "0"}, "h^2",
             {"f^2", "0", "0", "1"});
  r.nonzero.push_back({"q", "q ≠ 0"});
  r.nonzero.push_back({"f", "f ≠ 0"});
  r.specializations = {{"Q", {{'h', "1"}, {'q', "2"}, {'f', "1"}}, ""},
                       {"Q", {{'h', "1"}, {'q', "-1"}, {'f', "3"}}, ""},
                       {"Q", {{'h', "2"}, {'q', "1"}, {'f', "-2"}}, ""}};
  r.expected_flags = flags(false, false, true, true);
  c.push_back(r);

  r = family('M', "𝕄", "hf", {"-1", "0"}, {"-1", "0"}, "h",
             {"0", "1", "1", "0", "f", "0", "0", "-1", "1", "0", "0", "-1", "0", "-1", "-f", "0"}, "(1-f)*h^2",
             {"1", "0", "0", "1"});
  r.nonzero.push_back({"f-1", "f ≠ 1"});
  r.specializations = f_specs("2", "3", "-5");
  r.partner = 'M';
  r.witness = WitnessPattern{{"s", "0", "0", "1"}, {"0", "1", "-s", "0"}, "1", {{'h', "-s*h"}, {'f', "1/f"}}};
  r.duality_specializations = {{"Q", {{'h', "1"}, {'f', "4"}, {'s', "2"}}, ""},
                                  {"Q(a^2-2)", {{'h', "1"}, {'f', "2"}, {'s', "a"}}, ""},
                                  {"Q(a^2+3)", {{'h', "2"}, {'f', "-3"}, {'s', "a"}}, ""}};
  r.normals = {{"f x1^2-x2^2 is normal", "f*x1^2-x2^2", {"gens"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('N', "ℕ", "fg", {"-1", "0"}, {"-1", "0"}, "1",
             {"0", "-g", "0", "f", "g", "0", "f", "0", "0", "f", "0", "-g", "f", "0", "g", "0"}, "f^2-g^2",
             {"1", "0", "0", "1"});
  r.nonzero.push_back({"f^2-g^2", "f^2 ≠ g^2"});
  r.specializations = {{"Q", {{'f', "2"}, {'g', "3"}}, ""},
                       {"Q", {{'f', "3"}, {'g', "7"}}, ""},
                       {"Q", {{'f', "-5"}, {'g', "3"}}, ""}};
  r.partner = 'P';
  r.witness = WitnessPattern{{"1", "0", "0", "g/f"}, {"0", "1", "a", "0"}, "1", {{'h', "-g*a"}, {'f', "f^2/g^2"}}};
  r.duality_specializations = {{"Q(a^2+1)", {{'f', "2"}, {'g', "3"}}, ""},
                                  {"Q(a^2+1)", {{'f', "3"}, {'g', "7"}}, ""},
                                  {"Q(a^2+1)", {{'f', "-5"}, {'g', "3"}}, ""}};
  r.normals = {{"x1 normal relative to degree-2 y-words", "x1", {"yy"}, std::nullopt, {}, ""},
                {"x2 normal relative to degree-2 y-words", "x2", {"yy"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('O', "𝕆", "hf", {"-1", "0"}, {"-1", "0"}, "h",
             {"1", "0", "0", "f", "0", "-1", "1", "0", "0", "f", "-1", "0", "1", "0", "0", "1"}, "(f-1)*h^2",
             {"1", "0", "0", "1"});
  r.nonzero.push_back({"f-1", "f ≠ 1"});
  r.specializations = f_specs("2", "3", "-5");
  r.variants = {{"Q", {{'h', "1"}, {'f', "0"}}, "f = 0 special case"}};
  r.partner = 'O';
  r.witness = WitnessPattern{{"s", "0", "0", "1"}, {"1", "0", "0", "s"}, "1", {{'h', "h"}, {'f', "f"}}};
  r.duality_specializations = {{"Q", {{'h', "1"}, {'f', "4"}, {'s', "2"}}, ""},
                                  {"Q(a^2-2)", {{'h', "1"}, {'f', "2"}, {'s', "a"}}, ""},
                                  {"Q(a^2+3)", {{'h', "2"}, {'f', "-3"}, {'s', "a"}}, ""}};
  r.normals = {{"x1^2-f x2^2 is normal", "x1^2-f*x2^2", {"gens"}, std::nullopt, {{"y1*(x1^2-f*x2^2)", "(1-f)*h^2*(x1^2-f*x2^2)*y1"}, {"y2*(x1^2-f*x2^2)", "(1-f)*h^2*(x1^2-f*x2^2)*y2"}}, ""},
                {"x1^2 is normal when f = 0", "x1^2", {"gens"}, std::nullopt, {}, "f=0"}};
  c.push_back(r);

  r = family('P', "ℙ", "hf", {"-1", "0"}, {"-1", "0"}, "h",
             {"0", "0", "1", "f", "0", "0", "1", "1", "1", "-f", "0", "0", "-1", "1", "0", "0"}, "(1-f)*h^2",
             {"1", "0", "0", "1"});
  r.nonzero.push_back({"f-1", "f ≠ 1"});
  r.specializations = f_specs("2", "3", "-5");
  r.partner = 'N';
  r.normals = {{"y1 normal relative to degree-2 x-words", "y1", {"xx"}, std::nullopt, {}, ""},
                {"y2 normal relative to degree-2 x-words", "y2", {"xx"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('Q', "ℚ", "h", {"-1", "0"}, {"-1", "0"}, "h",
             {"0", "0", "1", "0", "1", "1", "1", "0", "-1", "0", "0", "0", "1", "0", "-1", "1"}, "h^2",
             {"-1", "0", "0", "1"});
  r.specializations = h_only();
  r.expected_flags = flags(false, false, true, false);
  c.push_back(r);

  r = family('R', "ℝ", "h", {"-1", "0"}, {"-1", "0"}, "h",
             {"1", "1", "1", "0", "0", "0", "1", "0", "0", "1", "0", "0", "0", "-1", "-1", "1"}, "h^2",
             {"0", "1", "-1", "0"});
  r.specializations = h_only();
  r.partner = 'R';
  r.witness = WitnessPattern{{"0", "1", "-1", "0"}, {"0", "1", "-1", "0"}, "1", {{'h', "h"}}};
  c.push_back(r);

  r = family('S', "𝕊", "h", {"-1", "0"}, {"-1", "0"}, "h",
             {"-1", "1", "1", "1", "1", "-1", "1", "1", "1", "1", "-1", "1", "1", "1", "1", "-1"}, "4*h^2",
             {"1", "0", "0", "1"});
  r.specializations = h_only();
  r.partner = 'S';
  r.witness = WitnessPattern{{"0", "1", "1", "0"}, {"0", "1", "1", "0"}, "1", {{'h', "h"}}};
  r.normals = {{"x1+x2 skew-commutes with y1, y2", "x1+x2", {"y"}, std::nullopt, {}, ""},
                {"x1-x2 skew-commutes with y1, y2", "x1-x2", {"y"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('T', "𝕋", "h", {"-1", "0"}, {"-1", "0"}, "h",
             {"-1", "1", "1", "1", "1", "-1", "1", "1", "1", "1", "1", "-1", "1", "1", "-1", "1"}, "4*h^2",
             {"0", "1", "1", "0"});
  r.specializations = h_only();
  r.partner = 'U';
  r.witness = WitnessPattern{{"1", "0", "0", "1"}, {"1", "0", "0", "1"}, "1", {{'h', "h"}}};
  r.normals = {{"x1+x2 skew-commutes with y1, y2", "x1+x2", {"y"}, std::nullopt, {{"y1*(x1+x2)", "2*h*(x1+x2)*y2"}, {"y2*(x1+x2)", "2*h*(x1+x2)*y1"}}, ""},
                {"x1-x2 skew-commutes with y1, y2", "x1-x2", {"y"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('U', "𝕌", "h", {"-1", "0"}, {"-1", "0"}, "h",
             {"-1", "1", "1", "1", "1", "1", "1", "-1", "1", "1", "-1", "1", "1", "-1", "1", "1"}, "4*h^2",
             {"1", "0", "0", "1"});
  r.specializations = h_only();
  r.partner = 'T';
  r.normals = {{"y1+y2 skew-commutes with x1, x2", "y1+y2", {"x"}, std::nullopt, {}, ""},
                {"y1-y2 skew-commutes with x1, x2", "y1-y2", {"x"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('V', "𝕍", "h", {"-1", "0"}, {"1", "0"}, "h",
             {"0", "1", "1", "0", "0", "1", "0", "0", "-1", "1", "0", "0", "0", "0", "0", "1"}, "h^2",
             {"-1", "1", "0", "1"});
  r.specializations = h_only();
  r.expected_flags = flags(false, false, false, true);
  c.push_back(r);

  r = family('W', "𝕎", "hf", {"-1", "0"}, {"1", "0"}, "h",
             {"0", "f", "1", "0", "1", "0", "0", "-1", "1", "0", "0", "f", "0", "-1", "1", "0"}, "(f+1)*h^2",
             {"1", "0", "0", "1"});
  r.nonzero.push_back({"f+1", "f ≠ -1"});
  r.specializations = f_specs("2", "3", "-3");
  r.partner = 'Z';
  r.normals = {{"y1+y2 skew-commutes with x1, x2", "y1+y2", {"x"}, std::nullopt, {}, ""},
                {"y1-y2 skew-commutes with x1, x2", "y1-y2", {"x"}, std::nullopt, {}, ""}};
  c.push_back(r);

  r = family('X', "𝕏", "h", {"-1", "0"}, {"1", "0"}, "h",
             {"0", "0", "1", "0", "0", "0", "1", "1", "1", "0", "0", "0", "1", "1", "0", "0"}, "h^2",
             {"1", "0", "2", "1"});
  r.specializations = h_only();
  r.expected_flags = flags(false, false, true, false);
  c.push_back(r);

  r = family('Y', "𝕐", "hf", {"-1", "0"}, {"1", "0"}, "h",
             {"1", "0", "0", "0", "f", "-1", "1", "0", "0", "0", "1", "0", "1", "0", "f", "-1"}, "h^2",
             {"1", "0", "0", "1"});
  r.specializations = f_specs("1", "0", "-3");
  r.expected_flags = flags(false, false, true, false);
  c.push_back(r);

  r = family('Z', "ℤ", "hf", {"1", "0"}, {"-1", "0"}, "h",
             {"1", "0", "0", "1", "0", "1", "1", "0", "0", "f", "-1", "0", "f", "0", "0", "-1"}, "-(f+1)*h^2",
             {"1", "0", "0", "1"});
  r.nonzero.push_back({"f", "f ≠ 0"});
  r.nonzero.push_back({"f+1", "f ≠ -1"});
  r.specializations = {{"Q", {{'h', "1"}, {'f', "4"}}, ""},
                       {"Q(a^2-2)", {{'h', "1"}, {'f', "2"}}, ""},
                       {"Q(a^2+3)", {{'h', "2"}, {'f', "-3"}}, ""}};
  r.partner = 'W';
  r.note = "relations follow Sigma: y1x1 = x1y1 + x2y2 and y2x2 = f*x1y1 - x2y2; the published relation list has "
           "x1y2 + x2y2 and f*x1y2 - x2y2, which disagrees with the published Sigma";
  r.witness = WitnessPattern{{"s", "1", "f", "-s"}, {"1", "0", "0", "1"}, "1", {{'h', "s*h"}, {'f', "1/f"}}};
  r.duality_specializations = {{"Q", {{'h', "1"}, {'f', "4"}, {'s', "2"}}, ""},
                                  {"Q(a^2-2)", {{'h', "1"}, {'f', "2"}, {'s', "a"}}, ""},
                                  {"Q(a^2+3)", {{'h', "2"}, {'f', "-3"}, {'s', "a"}}, ""}};
  r.normals = {{"x1+x2 skew-commutes with y1, y2", "x1+x2", {"y"}, std::nullopt, {{"y1*(x1+x2)", "h*(x1+x2)*(y1+y2)"}, {"y2*(x1+x2)", "h*(x1+x2)*(f*y1-y2)"}}, ""},
                {"x1-x2 skew-commutes with y1, y2", "x1-x2", {"y"}, std::nullopt, {{"y1*(x1-x2)", "h*(x1-x2)*(y1-y2)"}, {"y2*(x1-x2)", "h*(x1-x2)*(-f*y1-y2)"}}, ""}};
  c.push_back(r);

  return c;
}

}  // namespace detail

}  // namespace dext
