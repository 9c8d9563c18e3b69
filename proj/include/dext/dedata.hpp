#pragma once

// Data of a trimmed double Ore extension (k_Q[x1,x2])_P[y1,y2; sigma]:
// the parameter pairs P, Q and the 4x4 matrix Sigma.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dext/freealg.hpp"
#include "dext/linalg.hpp"
#include "dext/ncgb.hpp"

namespace dext {

class TransformError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// (p12, p11): the relation y2 y1 = p12 y1 y2 + p11 y1^2.
struct ParamPair {
  Scalar first;
  Scalar second;
  friend bool operator==(const ParamPair& a, const ParamPair& b) {
    return a.first == b.first && a.second == b.second;
  }
  friend bool operator!=(const ParamPair& a, const ParamPair& b) { return !(a == b); }
  std::string to_string() const { return "(" + first.to_plain_string() + ", " + second.to_plain_string() + ")"; }
};

// (1/p12, -p11/p12)
inline ParamPair circ(const ParamPair& p) {
  if (p.first.is_zero()) throw DivisionByZero();
  Scalar inv = p.first.inv();
  return {inv, -p.second * inv};
}

struct DEData {
  const FieldSpec* field = &FieldSpec::rationals();
  ParamPair Q;
  ParamPair P;
  Matrix sigma;

  // a_{ijst}, 1-based.
  const Scalar& a(int i, int j, int s, int t) const { return sigma(2 * (i - 1) + (s - 1), 2 * (j - 1) + (t - 1)); }
  Scalar& a(int i, int j, int s, int t) { return sigma(2 * (i - 1) + (s - 1), 2 * (j - 1) + (t - 1)); }

  // Sigma_ij as a 2x2 matrix (a_{ijst})_{s,t}.
  Matrix block(int i, int j) const { return sigma.block(2 * (i - 1), 2 * (j - 1), 2, 2); }

  friend bool operator==(const DEData& x, const DEData& y) {
    return x.field == y.field && x.Q == y.Q && x.P == y.P && x.sigma == y.sigma;
  }
};

inline DEData make_data(const FieldSpec& f, ParamPair P, ParamPair Q, Matrix sigma) {
  if (sigma.rows() != 4 || sigma.cols() != 4) throw std::invalid_argument("Sigma must be 4x4");
  DEData d;
  d.field = &f;
  d.P = std::move(P);
  d.Q = std::move(Q);
  d.sigma = std::move(sigma);
  return d;
}

// Entry order swap between Sigma and M: both index maps are the
// involution 0,2,1,3 on rows and columns.
inline Matrix swap_inner_outer(const Matrix& s) {
  static const int perm[4] = {0, 2, 1, 3};
  Matrix m(s.field(), 4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(perm[r], perm[c]) = s(r, c);
  return m;
}

// M[2(s-1)+(i-1)][2(t-1)+(j-1)] = a_{ijst}
inline Matrix m_matrix(const DEData& d) { return swap_inner_outer(d.sigma); }
inline Matrix sigma_from_m(const Matrix& m) { return swap_inner_outer(m); }

// NRx, NRy, MR11, MR12, MR21, MR22.
inline std::vector<NcPoly> synth_relations(const DEData& d) {
  const FieldSpec& f = *d.field;
  auto w = [](std::initializer_list<int> l) { return Word::from_letters(std::vector<int>(l)); };
  std::vector<NcPoly> out;
  NcPoly nrx(f);
  nrx.add_term(w({X2, X1}), f.one());
  nrx.add_term(w({X1, X2}), -d.Q.first);
  nrx.add_term(w({X1, X1}), -d.Q.second);
  out.push_back(nrx);
  NcPoly nry(f);
  nry.add_term(w({Y2, Y1}), f.one());
  nry.add_term(w({Y1, Y2}), -d.P.first);
  nry.add_term(w({Y1, Y1}), -d.P.second);
  out.push_back(nry);
  for (int i = 1; i <= 2; ++i)
    for (int s = 1; s <= 2; ++s) {
      NcPoly r(f);
      r.add_term(w({Y1 + i - 1, X1 + s - 1}), f.one());
      for (int j = 1; j <= 2; ++j)
        for (int t = 1; t <= 2; ++t) r.add_term(w({X1 + t - 1, Y1 + j - 1}), -d.a(i, j, s, t));
      out.push_back(r);
    }
  return out;
}

inline Presentation presentation_of(const DEData& d) {
  Presentation p;
  p.field = d.field;
  p.generators = kAllGenerators;
  p.relations = synth_relations(d);
  return p;
}

struct ConstraintReport {
  std::vector<std::string> violated;
  bool det_nonzero = true;
  bool ok() const { return violated.empty() && det_nonzero; }
  std::string summary() const {
    std::string s;
    for (const std::string& v : violated) s += (s.empty() ? "" : ", ") + v;
    if (!det_nonzero) s += (s.empty() ? "" : ", ") + std::string("det Sigma = 0");
    return s.empty() ? "ok" : s;
  }
};

// The 24 polynomial conditions C1ij..C6ij together with det Sigma != 0.
inline ConstraintReport check_system_c(const DEData& d) {
  const Scalar& q12 = d.Q.first;
  const Scalar& q11 = d.Q.second;
  const Scalar& p12 = d.P.first;
  const Scalar& p11 = d.P.second;
  auto A = [&](int i, int j, int s, int t) -> const Scalar& { return d.a(i, j, s, t); };
  ConstraintReport rep;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      Scalar c1 = (A(i, 1, 2, 1) * A(1, j, 1, 1) + A(i, 2, 2, 1) * A(2, j, 1, 1)) +
                  q11 * (A(i, 1, 2, 2) * A(1, j, 1, 1) + A(i, 2, 2, 2) * A(2, j, 1, 1)) -
                  (q11 * ((A(i, 1, 1, 1) * A(1, j, 1, 1) + A(i, 2, 1, 1) * A(2, j, 1, 1)) +
                          q11 * (A(i, 1, 1, 2) * A(1, j, 1, 1) + A(i, 2, 1, 2) * A(2, j, 1, 1))) +
                   q12 * ((A(i, 1, 1, 1) * A(1, j, 2, 1) + A(i, 2, 1, 1) * A(2, j, 2, 1)) +
                          q11 * (A(i, 1, 1, 2) * A(1, j, 2, 1) + A(i, 2, 1, 2) * A(2, j, 2, 1))));
      Scalar c2 = (A(i, 1, 2, 1) * A(1, j, 1, 2) + A(i, 2, 2, 1) * A(2, j, 1, 2)) +
                  q12 * (A(i, 1, 2, 2) * A(1, j, 1, 1) + A(i, 2, 2, 2) * A(2, j, 1, 1)) -
                  (q11 * ((A(i, 1, 1, 1) * A(1, j, 1, 2) + A(i, 2, 1, 1) * A(2, j, 1, 2)) +
                          q12 * (A(i, 1, 1, 2) * A(1, j, 1, 1) + A(i, 2, 1, 2) * A(2, j, 1, 1))) +
                   q12 * ((A(i, 1, 1, 1) * A(1, j, 2, 2) + A(i, 2, 1, 1) * A(2, j, 2, 2)) +
                          q12 * (A(i, 1, 1, 2) * A(1, j, 2, 1) + A(i, 2, 1, 2) * A(2, j, 2, 1))));
      Scalar c3 = (A(i, 1, 2, 2) * A(1, j, 1, 2) + A(i, 2, 2, 2) * A(2, j, 1, 2)) -
                  (q11 * (A(i, 1, 1, 2) * A(1, j, 1, 2) + A(i, 2, 1, 2) * A(2, j, 1, 2)) +
                   q12 * (A(i, 1, 1, 2) * A(1, j, 2, 2) + A(i, 2, 1, 2) * A(2, j, 2, 2)));
      Scalar c4 = (A(1, 1, i, 1) * A(2, 1, 1, j) + A(1, 1, i, 2) * A(2, 1, 2, j)) +
                  p11 * (A(1, 1, i, 1) * A(2, 2, 1, j) + A(1, 1, i, 2) * A(2, 2, 2, j)) -
                  (p11 * (A(1, 1, i, 1) * A(1, 1, 1, j) + A(1, 1, i, 2) * A(1, 1, 2, j)) +
                   p11 * p11 * (A(1, 1, i, 1) * A(1, 2, 1, j) + A(1, 1, i, 2) * A(1, 2, 2, j)) +
                   p12 * (A(2, 1, i, 1) * A(1, 1, 1, j) + A(2, 1, i, 2) * A(1, 1, 2, j)) +
                   p11 * p12 * (A(2, 1, i, 1) * A(1, 2, 1, j) + A(2, 1, i, 2) * A(1, 2, 2, j)));
      Scalar c5 = (A(1, 2, i, 1) * A(2, 1, 1, j) + A(1, 2, i, 2) * A(2, 1, 2, j)) +
                  p12 * (A(1, 1, i, 1) * A(2, 2, 1, j) + A(1, 1, i, 2) * A(2, 2, 2, j)) -
                  (p11 * (A(1, 2, i, 1) * A(1, 1, 1, j) + A(1, 2, i, 2) * A(1, 1, 2, j)) +
                   p11 * p12 * (A(1, 1, i, 1) * A(1, 2, 1, j) + A(1, 1, i, 2) * A(1, 2, 2, j)) +
                   p12 * (A(2, 2, i, 1) * A(1, 1, 1, j) + A(2, 2, i, 2) * A(1, 1, 2, j)) +
                   p12 * p12 * (A(2, 1, i, 1) * A(1, 2, 1, j) + A(2, 1, i, 2) * A(1, 2, 2, j)));
      Scalar c6 = (A(1, 2, i, 1) * A(2, 2, 1, j) + A(1, 2, i, 2) * A(2, 2, 2, j)) -
                  (p11 * (A(1, 2, i, 1) * A(1, 2, 1, j) + A(1, 2, i, 2) * A(1, 2, 2, j)) +
                   p12 * (A(2, 2, i, 1) * A(1, 2, 1, j) + A(2, 2, i, 2) * A(1, 2, 2, j)));
      const Scalar* cs[6] = {&c1, &c2, &c3, &c4, &c5, &c6};
      for (int k = 0; k < 6; ++k)
        if (!cs[k]->is_zero())
          rep.violated.push_back("C" + std::to_string(k + 1) + std::to_string(i) + std::to_string(j));
    }
  rep.det_nonzero = !d.sigma.det().is_zero();
  return rep;
}

namespace detail {

// x-part of A = k_Q[x1,x2] in degree 2, reduced to the basis x1^2, x1x2, x2^2.
inline NcPoly reduce_x2(const DEData& d, const NcPoly& p) {
  const FieldSpec& f = *d.field;
  NcPoly r(f);
  Word x21 = Word::from_letters({X2, X1});
  for (const auto& [w, c] : p.terms()) {
    if (w == x21) {
      r.add_term(Word::from_letters({X1, X2}), c * d.Q.first);
      r.add_term(Word::from_letters({X1, X1}), c * d.Q.second);
    } else {
      r.add_term(w, c);
    }
  }
  return r;
}

// sigma_ij(x_s) = sum_t a_{ijst} x_t as a polynomial.
inline NcPoly sigma_on_x(const DEData& d, int i, int j, int s) {
  NcPoly r(*d.field);
  for (int t = 1; t <= 2; ++t) r.add_term(Word::letter(X1 + t - 1), d.a(i, j, s, t));
  return r;
}

// Linear map on V = span(x1, x2): column vectors, sigma_ij(x_s) -> coefficients.
struct LinMap {
  Matrix m;  // m(t, s) = coefficient of x_t in the image of x_s
  LinMap compose_after(const LinMap& inner) const { return LinMap{m * inner.m}; }
};

inline LinMap sigma_map(const DEData& d, int i, int j) {
  Matrix m(*d.field, 2, 2);
  for (int s = 1; s <= 2; ++s)
    for (int t = 1; t <= 2; ++t) m(t - 1, s - 1) = d.a(i, j, s, t);
  return LinMap{m};
}

}  // namespace detail

// Same 24 conditions by a second route: sigma : A -> M_2(A) is an algebra
// map killing the x-relation, and the three composition identities
// among the sigma_ij hold on V.
inline ConstraintReport check_r3_trimmed(const DEData& d) {
  const FieldSpec& f = *d.field;
  ConstraintReport rep;
  // sigma(x_s x_t)_{ij} = sum_k sigma_ik(x_s) sigma_kj(x_t)
  auto sigma_word = [&](int i, int j, int s, int t) {
    NcPoly r(f);
    for (int k = 1; k <= 2; ++k) r += detail::sigma_on_x(d, i, k, s) * detail::sigma_on_x(d, k, j, t);
    return r;
  };
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      NcPoly img = sigma_word(i, j, 2, 1) - sigma_word(i, j, 1, 2).scaled(d.Q.first) -
                   sigma_word(i, j, 1, 1).scaled(d.Q.second);
      img = detail::reduce_x2(d, img);
      if (!img.is_zero()) {
        std::string tag = std::to_string(i) + std::to_string(j);
        if (!img.coeff(Word::from_letters({X1, X1})).is_zero()) rep.violated.push_back("hom(x1^2)" + tag);
        if (!img.coeff(Word::from_letters({X1, X2})).is_zero()) rep.violated.push_back("hom(x1x2)" + tag);
        if (!img.coeff(Word::from_letters({X2, X2})).is_zero()) rep.violated.push_back("hom(x2^2)" + tag);
      }
    }
  auto S = [&](int i, int j) { return detail::sigma_map(d, i, j); };
  // fg after st
  auto comp = [&](int f1, int g1, int s1, int t1) { return S(f1, g1).compose_after(S(s1, t1)).m; };
  const Scalar& p12 = d.P.first;
  const Scalar& p11 = d.P.second;
  Matrix r1 = comp(2, 1, 1, 1) + comp(2, 2, 1, 1).scaled(p11) - comp(1, 1, 1, 1).scaled(p11) -
              comp(1, 2, 1, 1).scaled(p11 * p11) - comp(1, 1, 2, 1).scaled(p12) - comp(1, 2, 2, 1).scaled(p11 * p12);
  Matrix r2 = comp(2, 1, 1, 2) + comp(2, 2, 1, 1).scaled(p12) - comp(1, 1, 1, 2).scaled(p11) -
              comp(1, 2, 1, 1).scaled(p11 * p12) - comp(1, 1, 2, 2).scaled(p12) - comp(1, 2, 2, 1).scaled(p12 * p12);
  Matrix r3 = comp(2, 2, 1, 2) - comp(1, 2, 1, 2).scaled(p11) - comp(1, 2, 2, 2).scaled(p12);
  const Matrix* rs[3] = {&r1, &r2, &r3};
  for (int k = 0; k < 3; ++k)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        if (!(*rs[k])(t, s).is_zero())
          rep.violated.push_back("R3." + std::to_string(k + 1) + "(x" + std::to_string(s + 1) + ")_x" +
                                 std::to_string(t + 1));
  rep.det_nonzero = !d.sigma.det().is_zero();
  return rep;
}

// det sigma on V: det sigma(x_i) = sum_j D_ij x_j.
inline Matrix det_sigma(const DEData& d) {
  Matrix S11 = d.block(1, 1), S12 = d.block(1, 2), S21 = d.block(2, 1), S22 = d.block(2, 2);
  return (S11 * S22) - (S11 * S12).scaled(d.P.second) - (S21 * S12).scaled(d.P.first);
}

struct OreFlags {
  bool sigma12_zero = false;
  bool sigma21_zero_p11_zero = false;
  bool m12_zero = false;
  bool m21_zero_q11_zero = false;
  bool any() const { return sigma12_zero || sigma21_zero_p11_zero || m12_zero || m21_zero_q11_zero; }
  friend bool operator==(const OreFlags& a, const OreFlags& b) {
    return a.sigma12_zero == b.sigma12_zero && a.sigma21_zero_p11_zero == b.sigma21_zero_p11_zero &&
           a.m12_zero == b.m12_zero && a.m21_zero_q11_zero == b.m21_zero_q11_zero;
  }
  std::string to_string() const {
    auto b = [](bool x) { return x ? "1" : "0"; };
    return std::string("Sigma12=0:") + b(sigma12_zero) + " Sigma21=0&p11=0:" + b(sigma21_zero_p11_zero) +
           " M12=0:" + b(m12_zero) + " M21=0&q11=0:" + b(m21_zero_q11_zero);
  }
};

inline OreFlags ore_flags(const DEData& d) {
  Matrix m = m_matrix(d);
  OreFlags o;
  o.sigma12_zero = d.block(1, 2).is_zero();
  o.sigma21_zero_p11_zero = d.block(2, 1).is_zero() && d.P.second.is_zero();
  o.m12_zero = m.block(0, 2, 2, 2).is_zero();
  o.m21_zero_q11_zero = m.block(2, 0, 2, 2).is_zero() && d.Q.second.is_zero();
  return o;
}

// Data of the double extension obtained by exchanging the roles of x and y.
inline DEData dual_data(const DEData& d) {
  DEData r;
  r.field = d.field;
  r.sigma = m_matrix(d);
  r.Q = circ(d.P);
  r.P = circ(d.Q);
  return r;
}

inline DEData apply_twist(const DEData& d, const Scalar& h) {
  if (h.is_zero()) throw std::invalid_argument("twist scalar must be nonzero");
  DEData r = d;
  r.sigma = d.sigma.scaled(h);
  return r;
}

namespace detail {

// Renormalizes b z_2 z_1 - b_12 z_1 z_2 - b_11 z_1^2 after z = Binv z'.
inline ParamPair renormalize(const ParamPair& p, const Matrix& binv) {
  const FieldSpec& f = binv.field();
  Matrix R(f, 2, 2);
  R(0, 0) = -p.second;
  R(0, 1) = -p.first;
  R(1, 0) = f.one();
  Matrix Rn = binv.transpose() * R * binv;
  if (!Rn(1, 1).is_zero()) throw TransformError("new relation has a z2'z2' term");
  if (Rn(1, 0).is_zero()) throw TransformError("new relation has no z2'z1' term");
  Scalar inv = Rn(1, 0).inv();
  return {-Rn(0, 1) * inv, -Rn(0, 0) * inv};
}

}  // namespace detail

// Change of generators X' = Bx X, Y' = By Y.
inline DEData transform_xy(const DEData& d, const Matrix& bx, const Matrix& by) {
  if (bx.rows() != 2 || bx.cols() != 2 || by.rows() != 2 || by.cols() != 2)
    throw std::invalid_argument("change of generators must be 2x2");
  if (bx.det().is_zero() || by.det().is_zero()) throw SingularMatrix();
  Matrix bxi = bx.inverse(), byi = by.inverse();
  DEData r;
  r.field = d.field;
  Matrix s1 = block_diag2(bx) * d.sigma * block_diag2(bxi);
  Matrix m1 = swap_inner_outer(s1);
  Matrix m2 = block_diag2(by) * m1 * block_diag2(byi);
  r.sigma = sigma_from_m(m2);
  r.Q = detail::renormalize(d.Q, bxi);
  r.P = detail::renormalize(d.P, byi);
  return r;
}

inline bool verify_equivalence_witness(const DEData& d, const DEData& target, const Matrix& bx, const Matrix& by,
                                       const Scalar& h) {
  try {
    DEData t = apply_twist(transform_xy(d, bx, by), h);
    return t == target;
  } catch (const TransformError&) {
    return false;
  } catch (const SingularMatrix&) {
    return false;
  }
}

// .de files: a field line, "Q = (q12, q11)", "P = (p12, p11)", then four
// rows of Sigma. Entries are separated by commas or whitespace; '#' starts
// a comment.
inline DEData parse_de(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    line = detail::trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.size() != 7) throw ParseError(".de file needs 7 non-empty lines, found " + std::to_string(lines.size()));
  const FieldSpec& f = FieldSpec::parse(lines[0]);
  auto pair = [&](const std::string& l, char name) {
    std::string s = detail::strip_spaces(l);
    if (s.size() < 5 || s[0] != name || s[1] != '=' || s[2] != '(' || s.back() != ')')
      throw ParseError(std::string("expected '") + name + " = (x, y)', got '" + l + "'");
    std::string inner = s.substr(3, s.size() - 4);
    size_t comma = inner.find(',');
    if (comma == std::string::npos) throw ParseError("missing ',' in '" + l + "'");
    return ParamPair{f.parse_scalar(inner.substr(0, comma)), f.parse_scalar(inner.substr(comma + 1))};
  };
  ParamPair Q = pair(lines[1], 'Q');
  ParamPair P = pair(lines[2], 'P');
  Matrix sigma(f, 4, 4);
  for (int r = 0; r < 4; ++r) {
    std::vector<std::string> cells;
    const std::string& l = lines[3 + r];
    if (l.find(',') != std::string::npos) {
      std::string cell;
      std::istringstream cs(l);
      while (std::getline(cs, cell, ',')) cells.push_back(cell);
    } else {
      std::istringstream cs(l);
      std::string cell;
      while (cs >> cell) cells.push_back(cell);
    }
    if (cells.size() != 4) throw ParseError("Sigma row " + std::to_string(r + 1) + " needs 4 entries: '" + l + "'");
    for (int c = 0; c < 4; ++c) sigma(r, c) = f.parse_scalar(cells[c]);
  }
  if (P.first.is_zero() || Q.first.is_zero()) throw ParseError("p12 and q12 must be nonzero");
  return make_data(f, P, Q, sigma);
}

inline DEData read_de_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_de(ss.str());
}

inline std::string to_de(const DEData& d) {
  std::ostringstream os;
  os << d.field->to_string() << "\n";
  os << "Q = " << d.Q.to_string() << "\n";
  os << "P = " << d.P.to_string() << "\n";
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) os << (c ? ", " : "") << d.sigma(r, c).to_plain_string();
    os << "\n";
  }
  return os.str();
}

}  // namespace dext
