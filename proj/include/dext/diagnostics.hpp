#pragma once

// Structural diagnostics on a synthesized presentation: the (14641) Hilbert
// check, the quadratic dual, the resolution matrices F and G, and
// verification of normal and normalizing elements.

#include <random>

#include "dext/catalog.hpp"
#include "dext/ncgb.hpp"

namespace dext {

inline uint64_t binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::vector<uint64_t> polynomial_ring_dims(int n) {
  std::vector<uint64_t> d;
  for (int i = 0; i <= n; ++i) d.push_back(binomial(i + 3, 3));
  return d;
}

namespace detail {

inline std::vector<Word> words_of_length(GeneratorSet gens, int n) {
  std::vector<Word> cur = {Word()};
  for (int d = 0; d < n; ++d) {
    std::vector<Word> next;
    for (const Word& w : cur)
      for (int g : letters_of(gens)) next.push_back(w * Word::letter(g));
    cur = std::move(next);
  }
  return cur;
}

// Rank of the span of the homogeneous degree-d parts of the relations.
inline size_t relation_rank(const Presentation& pres, int d) {
  SparseEchelon ech(*pres.field);
  for (const NcPoly& r : pres.relations) {
    if (r.is_zero() || r.degree() != d) continue;
    SparseEchelon::Row row;
    for (const auto& [w, c] : r.terms()) row.emplace(w.key(), c);
    ech.insert(std::move(row));
  }
  return ech.rank();
}

// Coordinates of p in the basis `basis` of words; p must be supported on it.
inline std::vector<Scalar> coordinates(const NcPoly& p, const std::vector<Word>& basis) {
  std::vector<Scalar> v(basis.size(), p.field().zero());
  for (const auto& [w, c] : p.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), w);
    if (it == basis.end() || *it != w) throw std::logic_error("word outside the coordinate basis: " + w.to_string());
    v[static_cast<size_t>(it - basis.begin())] = c;
  }
  return v;
}

}  // namespace detail

struct Type14641Report {
  bool ok = false;
  std::vector<uint64_t> dims;
  size_t degree1_relations = 0;
  size_t degree2_relations = 0;
  std::vector<std::string> failures;
};

inline Type14641Report check_type_14641(const Presentation& pres, const RewriteSystem& rs, int n) {
  Type14641Report r;
  r.degree1_relations = detail::relation_rank(pres, 1);
  r.degree2_relations = detail::relation_rank(pres, 2);
  if (r.degree1_relations != 0) r.failures.push_back(std::to_string(r.degree1_relations) + " relations in degree 1");
  if (r.degree2_relations != 6)
    r.failures.push_back("relation space in degree 2 has dimension " + std::to_string(r.degree2_relations) + ", expected 6");
  r.dims = rs.graded_dims(n);
  std::vector<uint64_t> want = polynomial_ring_dims(n);
  for (int d = 0; d <= n; ++d)
    if (r.dims[d] != want[d])
      r.failures.push_back("dim B_" + std::to_string(d) + " = " + std::to_string(r.dims[d]) + ", expected " +
                           std::to_string(want[d]));
  r.ok = r.failures.empty();
  return r;
}

inline Type14641Report check_type_14641(const Presentation& pres, int n) { return check_type_14641(pres, complete(pres, n), n); }

// Quadratic dual: relations spanning the annihilator of the degree-2
// relation space under the pairing of words with dual words.
inline Presentation quadratic_dual(const Presentation& pres) {
  for (const NcPoly& r : pres.relations)
    if (!r.is_zero() && (r.degree() != 2 || !r.is_homogeneous()))
      throw std::invalid_argument("quadratic dual needs quadratic relations, got " + r.to_string());
  const FieldSpec& f = *pres.field;
  std::vector<Word> basis = detail::words_of_length(pres.generators, 2);
  std::sort(basis.begin(), basis.end());
  std::vector<std::vector<Scalar>> rows;
  for (const NcPoly& r : pres.relations)
    if (!r.is_zero()) rows.push_back(detail::coordinates(r, basis));
  Matrix rel(f, static_cast<int>(rows.size()), static_cast<int>(basis.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) rel(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  Matrix perp = rows.empty() ? Matrix::identity(f, static_cast<int>(basis.size())) : rel.kernel();
  Presentation dual{&f, pres.generators, {}};
  for (int i = 0; i < perp.rows(); ++i) {
    NcPoly p(f);
    for (int j = 0; j < perp.cols(); ++j) p.add_term(basis[j], perp(i, j));
    dual.relations.push_back(std::move(p));
  }
  return dual;
}

struct KoszulReport {
  bool ok = false;
  size_t relation_dim = 0;
  size_t dual_relation_dim = 0;
  std::vector<uint64_t> dual_dims;
  std::vector<std::string> failures;
};

inline std::vector<uint64_t> koszul_dual_dims(const Presentation& pres, int n) {
  Presentation dual = quadratic_dual(pres);
  return complete(dual, n).graded_dims(n);
}

// Dual dims plus the numerical identity sum_m (-1)^m dim B!_m dim B_{n-m} = 0.
inline KoszulReport check_koszul_dual(const Presentation& pres, const std::vector<uint64_t>& dims, int n) {
  KoszulReport r;
  Presentation dual = quadratic_dual(pres);
  r.relation_dim = detail::relation_rank(pres, 2);
  r.dual_relation_dim = dual.relations.size();
  size_t gens = letters_of(pres.generators).size();
  if (r.relation_dim + r.dual_relation_dim != gens * gens)
    r.failures.push_back("dim R + dim R^perp = " + std::to_string(r.relation_dim + r.dual_relation_dim));
  r.dual_dims = complete(dual, n).graded_dims(n);
  for (int d = 1; d <= n && d < static_cast<int>(dims.size()); ++d) {
    int64_t s = 0;
    for (int m = 0; m <= d; ++m) {
      int64_t t = static_cast<int64_t>(r.dual_dims[m] * dims[d - m]);
      s += (m % 2 ? -t : t);
    }
    if (s != 0) r.failures.push_back("Euler identity fails in degree " + std::to_string(d));
  }
  r.ok = r.failures.empty();
  return r;
}

// Linear forms in V are coefficient vectors over the 4 generators.
using LinearForm = std::array<Scalar, kNumGenerators>;

struct ResolutionPair {
  std::vector<std::vector<NcPoly>> F;  // 6 x 4
  std::vector<std::vector<NcPoly>> G;  // 4 x 6
  std::vector<NcPoly> xprime;          // 4
  size_t g_kernel_dim = 0;
  size_t xprime_kernel_dim = 0;
};

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline NcPoly form_poly(const FieldSpec& f, const std::vector<Scalar>& coeffs, size_t offset) {
  NcPoly p(f);
  for (int g = 0; g < kNumGenerators; ++g) p.add_term(Word::letter(g), coeffs[offset + g]);
  return p;
}

// Coordinates of the B_2 class of p in the normal words of degree 2.
inline std::vector<Scalar> b2_coordinates(const RewriteSystem& rs, const NcPoly& p, const std::vector<Word>& normal2) {
  return coordinates(rs.normal_form(p), normal2);
}

// Basis of {c : sum_k c_k * products[k] == 0 in B_2}, products grouped so
// that each unknown contributes to several target slots.
inline Matrix b2_kernel(const FieldSpec& f, const RewriteSystem& rs,
                        const std::vector<std::vector<NcPoly>>& contrib, size_t slots) {
  std::vector<Word> normal2 = rs.normal_words(2);
  int unknowns = static_cast<int>(contrib.size());
  Matrix A(f, unknowns, static_cast<int>(slots * normal2.size()));
  for (int u = 0; u < unknowns; ++u)
    for (size_t s = 0; s < slots; ++s) {
      std::vector<Scalar> c = b2_coordinates(rs, contrib[u][s], normal2);
      for (size_t k = 0; k < c.size(); ++k) A(u, static_cast<int>(s * normal2.size() + k)) = c[k];
    }
  return A.left_kernel();
}

}  // namespace detail

// F from the relations written as sum_j f_ij x_j, G as a canonical basis of
// the rows g with g F = 0 in B_2, and x' spanning the left kernel of G.
inline ResolutionPair resolution_matrices(const Presentation& pres, const RewriteSystem& rs) {
  const FieldSpec& f = *pres.field;
  if (pres.generators != kAllGenerators) throw ResolutionError("resolution matrices need all four generators");
  std::vector<NcPoly> rels;
  for (const NcPoly& r : pres.relations)
    if (!r.is_zero()) rels.push_back(r);
  if (rels.size() != 6 || detail::relation_rank(pres, 2) != 6)
    throw ResolutionError("expected 6 independent quadratic relations");
  ResolutionPair rp;
  rp.F.assign(6, std::vector<NcPoly>(4, NcPoly(f)));
  for (size_t i = 0; i < 6; ++i)
    for (const auto& [w, c] : rels[i].terms()) {
      if (w.size() != 2) throw ResolutionError("relation is not quadratic: " + rels[i].to_string());
      rp.F[i][w[1]].add_term(Word::letter(w[0]), c);
    }

  // Unknown (i, a): coefficient of generator a in g_i; slot j: (gF)_j.
  std::vector<std::vector<NcPoly>> contrib;
  for (int i = 0; i < 6; ++i)
    for (int a = 0; a < 4; ++a) {
      std::vector<NcPoly> slots;
      for (int j = 0; j < 4; ++j) slots.push_back(NcPoly::generator(f, a) * rp.F[i][j]);
      contrib.push_back(std::move(slots));
    }
  Matrix gk = detail::b2_kernel(f, rs, contrib, 4);
  rp.g_kernel_dim = static_cast<size_t>(gk.rows());
  if (gk.rows() != 4)
    throw ResolutionError("kernel of g -> gF has dimension " + std::to_string(gk.rows()) + ", expected 4");
  rp.G.assign(4, std::vector<NcPoly>(6, NcPoly(f)));
  for (int r = 0; r < 4; ++r) {
    std::vector<Scalar> row = gk.row(r);
    for (int i = 0; i < 6; ++i) rp.G[r][i] = detail::form_poly(f, row, static_cast<size_t>(4 * i));
  }

  // Unknown (k, a): coefficient of generator a in x'_k; slot i: (x'G)_i.
  contrib.clear();
  for (int k = 0; k < 4; ++k)
    for (int a = 0; a < 4; ++a) {
      std::vector<NcPoly> slots;
      for (int i = 0; i < 6; ++i) slots.push_back(NcPoly::generator(f, a) * rp.G[k][i]);
      contrib.push_back(std::move(slots));
    }
  Matrix xk = detail::b2_kernel(f, rs, contrib, 6);
  rp.xprime_kernel_dim = static_cast<size_t>(xk.rows());
  if (xk.rows() != 1)
    throw ResolutionError("left kernel of G has dimension " + std::to_string(xk.rows()) + ", expected 1");
  std::vector<Scalar> row = xk.row(0);
  for (int k = 0; k < 4; ++k) rp.xprime.push_back(detail::form_poly(f, row, static_cast<size_t>(4 * k)));
  return rp;
}

struct Lemma22Report {
  bool ok = false;
  bool f_annihilates_generators = false;
  bool gf_zero = false;
  bool xprime_g_zero = false;
  std::vector<std::string> failures;
};

namespace detail {

inline LinearForm form_of(const NcPoly& p) {
  LinearForm v{p.field().zero(), p.field().zero(), p.field().zero(), p.field().zero()};
  for (const auto& [w, c] : p.terms()) {
    if (w.size() != 1) throw std::invalid_argument("entry is not a linear form: " + p.to_string());
    v[w[0]] = c;
  }
  return v;
}

inline int span_dim(const std::vector<NcPoly>& entries) {
  if (entries.empty()) return 0;
  const FieldSpec& f = entries[0].field();
  Matrix m(f, static_cast<int>(entries.size()), kNumGenerators);
  for (size_t i = 0; i < entries.size(); ++i) {
    LinearForm v = form_of(entries[i]);
    for (int g = 0; g < kNumGenerators; ++g) m(static_cast<int>(i), g) = v[g];
  }
  return m.rank();
}

inline std::vector<NcPoly> column(const std::vector<std::vector<NcPoly>>& m, size_t j) {
  std::vector<NcPoly> c;
  for (const auto& row : m) c.push_back(row[j]);
  return c;
}

// Row vector times matrix, or matrix times column vector, of scalars and
// linear forms.
inline std::vector<NcPoly> left_apply(const std::vector<Scalar>& a, const std::vector<std::vector<NcPoly>>& m) {
  std::vector<NcPoly> out(m[0].size(), NcPoly(a[0].field()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out[j] += m[i][j].scaled(a[i]);
  return out;
}
inline std::vector<NcPoly> right_apply(const std::vector<std::vector<NcPoly>>& m, const std::vector<Scalar>& a) {
  std::vector<NcPoly> out(m.size(), NcPoly(a[0].field()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out[i] += m[i][j].scaled(a[j]);
  return out;
}
inline bool all_zero(const std::vector<NcPoly>& v) {
  for (const NcPoly& p : v)
    if (!p.is_zero()) return false;
  return true;
}

inline std::vector<Scalar> random_nonzero_vector(const FieldSpec& f, size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(-5, 5);
  while (true) {
    std::vector<Scalar> v;
    bool nz = false;
    for (size_t i = 0; i < n; ++i) {
      Scalar s = f.from_int(dist(rng));
      if (f.is_quadratic()) s += f.from_int(dist(rng)) * f.alpha();
      nz = nz || !s.is_zero();
      v.push_back(s);
    }
    if (nz) return v;
  }
}

inline void check_matrix_shape(const std::vector<std::vector<NcPoly>>& m, const char* name,
                               std::vector<std::string>& failures) {
  for (size_t i = 0; i < m.size(); ++i) {
    int d = span_dim(m[i]);
    if (d == 0) failures.push_back(std::string(name) + " row " + std::to_string(i + 1) + " is zero");
    else if (d < 2) failures.push_back(std::string(name) + " row " + std::to_string(i + 1) + " spans a 1-dimensional space");
  }
  for (size_t j = 0; j < m[0].size(); ++j) {
    int d = span_dim(column(m, j));
    if (d == 0) failures.push_back(std::string(name) + " column " + std::to_string(j + 1) + " is zero");
    else if (d < 2)
      failures.push_back(std::string(name) + " column " + std::to_string(j + 1) + " spans a 1-dimensional space");
  }
}

}  // namespace detail

// Nonvanishing and span conditions on F and G, plus the defining products
// F x = 0, G F = 0 and x' G = 0 in B.
inline Lemma22Report check_lemma22(const ResolutionPair& rp, const RewriteSystem& rs, uint32_t seed = 22) {
  Lemma22Report r;
  const FieldSpec& f = rs.field();
  detail::check_matrix_shape(rp.F, "F", r.failures);
  if (!rp.G.empty()) detail::check_matrix_shape(rp.G, "G", r.failures);

  r.f_annihilates_generators = true;
  for (const auto& row : rp.F) {
    NcPoly s(f);
    for (int j = 0; j < static_cast<int>(row.size()); ++j) s += row[j] * NcPoly::generator(f, j);
    if (!rs.normal_form(s).is_zero()) r.f_annihilates_generators = false;
  }
  if (!r.f_annihilates_generators) r.failures.push_back("F (x1,x2,y1,y2)^T is not zero in B");

  if (!rp.G.empty()) {
    r.gf_zero = true;
    for (const auto& grow : rp.G)
      for (size_t j = 0; j < rp.F[0].size(); ++j) {
        NcPoly s(f);
        for (size_t i = 0; i < grow.size(); ++i) s += grow[i] * rp.F[i][j];
        if (!rs.normal_form(s).is_zero()) r.gf_zero = false;
      }
    if (!r.gf_zero) r.failures.push_back("G F is not zero in B_2");
    r.xprime_g_zero = !rp.xprime.empty();
    for (size_t i = 0; i < rp.G[0].size() && r.xprime_g_zero; ++i) {
      NcPoly s(f);
      for (size_t k = 0; k < rp.xprime.size(); ++k) s += rp.xprime[k] * rp.G[k][i];
      if (!rs.normal_form(s).is_zero()) r.xprime_g_zero = false;
    }
    if (!r.xprime_g_zero) r.failures.push_back("x' G is not zero in B_2");
  }

  std::mt19937 rng(seed);
  for (int t = 0; t < 20; ++t) {
    std::vector<Scalar> a4 = detail::random_nonzero_vector(f, rp.F[0].size(), rng);
    std::vector<Scalar> b6 = detail::random_nonzero_vector(f, rp.F.size(), rng);
    if (detail::all_zero(detail::right_apply(rp.F, a4))) r.failures.push_back("F a^T = 0 for a random a");
    if (detail::all_zero(detail::left_apply(b6, rp.F))) r.failures.push_back("b F = 0 for a random b");
    if (!rp.G.empty()) {
      if (detail::all_zero(detail::left_apply(a4, rp.G))) r.failures.push_back("a G = 0 for a random a");
      if (detail::all_zero(detail::right_apply(rp.G, b6))) r.failures.push_back("G b^T = 0 for a random b");
    }
  }
  r.ok = r.failures.empty();
  return r;
}

// Normality of z relative to the span of W, degree by degree.
struct NormalizerResult {
  bool ok = false;
  bool scalar_ok = true;
  // For each w in W, coefficients c with z w = sum_k c_k w_k z (and the
  // mirrored coefficients for w z = sum_k d_k z w_k), indexed like W.
  std::vector<std::vector<Scalar>> right_certificate;
  std::vector<std::vector<Scalar>> left_certificate;
  std::string detail;
};

inline NormalizerResult check_normalizer(const RewriteSystem& rs, const NcPoly& z, const std::vector<NcPoly>& W,
                                         const std::optional<Scalar>& scalar = std::nullopt) {
  NormalizerResult res;
  const FieldSpec& f = rs.field();
  if (!z.is_zero() && !z.is_homogeneous()) throw std::invalid_argument("z is not homogeneous");
  for (const NcPoly& w : W)
    if (!w.is_zero() && !w.is_homogeneous()) throw std::invalid_argument("W element is not homogeneous: " + w.to_string());

  auto express = [&](const NcPoly& target, const std::vector<NcPoly>& pool) -> std::optional<std::vector<Scalar>> {
    std::map<Word, int> cols;
    for (const auto& [w, c] : target.terms()) cols.emplace(w, 0);
    for (const NcPoly& p : pool)
      for (const auto& [w, c] : p.terms()) cols.emplace(w, 0);
    int k = 0;
    for (auto& [w, idx] : cols) idx = k++;
    if (pool.empty()) {
      if (target.is_zero()) return std::vector<Scalar>{};
      return std::nullopt;
    }
    Matrix m(f, static_cast<int>(pool.size()), k);
    for (size_t i = 0; i < pool.size(); ++i)
      for (const auto& [w, c] : pool[i].terms()) m(static_cast<int>(i), cols.at(w)) = c;
    std::vector<Scalar> b(static_cast<size_t>(k), f.zero());
    for (const auto& [w, c] : target.terms()) b[static_cast<size_t>(cols.at(w))] = c;
    return m.solve_left(b);
  };

  res.ok = true;
  for (size_t i = 0; i < W.size(); ++i) {
    const NcPoly& w = W[i];
    int d = w.is_zero() ? 0 : w.degree();
    std::vector<size_t> same;
    for (size_t j = 0; j < W.size(); ++j)
      if (!W[j].is_zero() && W[j].degree() == d) same.push_back(j);
    std::vector<NcPoly> wz, zw;
    for (size_t j : same) {
      wz.push_back(rs.normal_form(W[j] * z));
      zw.push_back(rs.normal_form(z * W[j]));
    }
    NcPoly zwi = rs.normal_form(z * w);
    NcPoly wzi = rs.normal_form(w * z);
    auto right = express(zwi, wz);
    auto left = express(wzi, zw);
    std::vector<Scalar> rc(W.size(), f.zero()), lc(W.size(), f.zero());
    if (right)
      for (size_t k = 0; k < same.size(); ++k) rc[same[k]] = (*right)[k];
    if (left)
      for (size_t k = 0; k < same.size(); ++k) lc[same[k]] = (*left)[k];
    res.right_certificate.push_back(rc);
    res.left_certificate.push_back(lc);
    if (!right || !left) {
      res.ok = false;
      if (res.detail.empty())
        res.detail = std::string(!right ? "z*" + w.to_string() + " is not in W z" : w.to_string() + "*z is not in z W");
    }
    if (scalar && zwi != rs.normal_form(w * z).scaled(*scalar)) {
      res.scalar_ok = false;
      if (res.detail.empty()) res.detail = "z*" + w.to_string() + " != " + scalar->to_plain_string() + " * " + w.to_string() + "*z";
    }
  }
  res.ok = res.ok && res.scalar_ok;
  return res;
}

// Parses a polynomial whose coefficients may mention catalog parameters.
inline NcPoly parse_with_params(const std::string& text, const FieldSpec& f, const ParamValues& v) {
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool is_param = kParamLetters.find(c) != std::string_view::npos;
    bool in_word = i > 0 && std::isalpha(static_cast<unsigned char>(text[i - 1]));
    if (is_param && !in_word) {
      auto it = v.find(c);
      if (it == v.end()) throw std::invalid_argument(std::string("missing parameter ") + c + " in '" + text + "'");
      out += "(" + it->second.to_plain_string() + ")";
    } else {
      out += c;
    }
  }
  return NcPoly::parse(f, out);
}

// Standard subspaces named in claims: "x" = {x1, x2}, "y" = {y1, y2},
// "gens" = all four generators, "xx" / "yy" = words of length 2.
inline std::vector<NcPoly> named_subspace(const std::string& name, const FieldSpec& f) {
  auto words = [&](GeneratorSet gens, int n) {
    std::vector<NcPoly> out;
    for (const Word& w : detail::words_of_length(gens, n)) out.push_back(NcPoly::monomial(w, f.one()));
    return out;
  };
  if (name == "x") return words(0x3, 1);
  if (name == "y") return words(0xC, 1);
  if (name == "gens") return words(kAllGenerators, 1);
  if (name == "xx") return words(0x3, 2);
  if (name == "yy") return words(0xC, 2);
  throw std::invalid_argument("unknown subspace '" + name + "'");
}

struct ClaimResult {
  std::string description;
  bool ok = false;
  std::string detail;
};

struct NormalsReport {
  bool ok = false;
  std::vector<ClaimResult> claims;
};

inline std::vector<NcPoly> claim_subspace(const NormalClaim& c, const FieldSpec& f, const ParamValues& v) {
  std::vector<NcPoly> W;
  for (const std::string& w : c.W) {
    if (w == "x" || w == "y" || w == "gens" || w == "xx" || w == "yy") {
      auto s = named_subspace(w, f);
      W.insert(W.end(), s.begin(), s.end());
    } else {
      W.push_back(parse_with_params(w, f, v));
    }
  }
  return W;
}

inline int claim_degree(const NormalClaim& c, const FieldSpec& f, const ParamValues& v) {
  int d = parse_with_params(c.z, f, v).degree();
  int wd = 0;
  for (const NcPoly& w : claim_subspace(c, f, v)) wd = std::max(wd, w.degree());
  for (const auto& [a, b] : c.identities)
    wd = std::max({wd, parse_with_params(a, f, v).degree() - d, parse_with_params(b, f, v).degree() - d});
  return d + wd;
}

inline ClaimResult verify_claim(const RewriteSystem& rs, const NormalClaim& c, const ParamValues& v) {
  const FieldSpec& f = rs.field();
  ClaimResult out{c.description, false, ""};
  try {
    NcPoly z = parse_with_params(c.z, f, v);
    std::optional<Scalar> scalar;
    if (c.scalar) scalar = eval_rational(*c.scalar, f, v);
    NormalizerResult nr = check_normalizer(rs, z, claim_subspace(c, f, v), scalar);
    out.ok = nr.ok;
    out.detail = nr.detail;
    for (const auto& [a, b] : c.identities) {
      NcPoly lhs = rs.normal_form(parse_with_params(a, f, v));
      NcPoly rhs = rs.normal_form(parse_with_params(b, f, v));
      if (lhs != rhs) {
        out.ok = false;
        if (out.detail.empty()) out.detail = "identity " + a + " = " + b + " fails";
      }
    }
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = e.what();
  }
  return out;
}

// Runs every stored normal claim of rec at the given specialization. Claims
// tied to a parameter condition run only when the parameters satisfy it.
inline NormalsReport verify_family_normals(const FamilyRecord& rec, const FieldSpec& f, const ParamValues& params,
                                           int min_degree = 0) {
  NormalsReport rep;
  ParamValues v = complete_params(rec, f, params);
  DEData d = instantiate(rec, f, v);
  Presentation pres = presentation_of(d);
  int need = min_degree;
  std::vector<const NormalClaim*> active;
  for (const NormalClaim& c : rec.normals) {
    if (!c.condition.empty()) {
      size_t eq = c.condition.find('=');
      std::string lhs = c.condition.substr(0, eq), rhs = c.condition.substr(eq + 1);
      if (eval_rational(lhs, f, v) != eval_rational(rhs, f, v)) continue;
    }
    active.push_back(&c);
    need = std::max(need, claim_degree(c, f, v));
  }
  RewriteSystem rs = complete(pres, std::max(need, 1));
  rep.ok = true;
  for (const NormalClaim* c : active) {
    rep.claims.push_back(verify_claim(rs, *c, v));
    rep.ok = rep.ok && rep.claims.back().ok;
  }
  return rep;
}

inline NormalsReport verify_family_normals(const FamilyRecord& rec, const Specialization& s) {
  auto [f, v] = resolve(s);
  return verify_family_normals(rec, *f, v);
}

// Bigraded count: dim B_(a,b) = (a+1)(b+1) for x-degree a and y-degree b,
// and the even-x-degree totals that govern the second Veronese subring.
struct VeroneseReport {
  bool ok = false;
  std::vector<uint64_t> even_x_dims;
  std::vector<std::string> failures;
};

inline VeroneseReport check_veronese_counts(const RewriteSystem& rs, int n) {
  VeroneseReport r;
  for (int d = 0; d <= n; ++d) {
    std::vector<uint64_t> by_x(d + 1, 0);
    for (const Word& w : rs.normal_words(d)) by_x[w.count_if([](int g) { return g < 2; })]++;
    uint64_t even = 0;
    for (int a = 0; a <= d; ++a) {
      uint64_t want = static_cast<uint64_t>((a + 1) * (d - a + 1));
      if (by_x[a] != want)
        r.failures.push_back("dim B_(" + std::to_string(a) + "," + std::to_string(d - a) + ") = " +
                             std::to_string(by_x[a]) + ", expected " + std::to_string(want));
      if (a % 2 == 0) even += by_x[a];
    }
    r.even_x_dims.push_back(even);
  }
  r.ok = r.failures.empty();
  return r;
}

}  // namespace dext
