#pragma once

// Exhaustive enumeration of C-solutions Sigma over GF(q) for fixed (P, Q)
// by backtracking. The constraint system is built here from the algebra-map
// and composition conditions with machine-integer arithmetic mod q, sharing
// no code with check_system_c.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace dext {

using Residues = std::array<uint8_t, 16>;  // Sigma row-major, entries in [0, q)

struct QuadTerm {
  uint8_t u, v;  // variable indices, u <= v
  int coeff;
};

struct QuadConstraint {
  std::string name;
  std::vector<QuadTerm> terms;
  int last = -1;  // position in the variable order after which it is decidable
};

namespace detail {

inline bool is_prime_small(unsigned q) {
  if (q < 2) return false;
  for (unsigned d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

inline int modq(long v, int q) {
  long r = v % q;
  return static_cast<int>(r < 0 ? r + q : r);
}

// Variable index of a_ijst (1-based) inside row-major Sigma.
inline int var_index(int i, int j, int s, int t) { return (2 * (i - 1) + (s - 1)) * 4 + 2 * (j - 1) + (t - 1); }

// Quadratic polynomial in the 16 entries, keyed by (u, v) with u <= v.
class Quad {
 public:
  explicit Quad(int q) : q_(q) {}
  void add(int u, int v, long c) {
    if (u > v) std::swap(u, v);
    int& slot = terms_[{u, v}];
    slot = modq(slot + c, q_);
    if (slot == 0) terms_.erase({u, v});
  }
  void add(const Quad& o, long c) {
    for (const auto& [k, x] : o.terms_) add(k.first, k.second, x * c);
  }
  const std::map<std::pair<int, int>, int>& terms() const { return terms_; }

 private:
  int q_;
  std::map<std::pair<int, int>, int> terms_;
};

}  // namespace detail

// The 24 conditions: sigma(x2x1 - q12 x1x2 - q11 x1^2) = 0 in degree 2 for
// each of the four entries (12 coefficient equations), and the three
// composition identities among sigma_ij on span(x1, x2) (12 more).
inline std::vector<QuadConstraint> build_constraints(int q, int p12, int p11, int q12, int q11) {
  using detail::var_index;
  std::vector<QuadConstraint> out;
  // sigma_ik(x_s) sigma_kj(x_u) expands to sum a_iks t a_kju v x_t x_v.
  // Degree-2 basis after x2x1 -> q12 x1x2 + q11 x1^2: index 0 x1^2, 1 x1x2, 2 x2^2.
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      std::array<detail::Quad, 3> coeff = {detail::Quad(q), detail::Quad(q), detail::Quad(q)};
      auto product = [&](int s, int u, long c) {
        for (int k = 1; k <= 2; ++k)
          for (int t = 1; t <= 2; ++t)
            for (int v = 1; v <= 2; ++v) {
              int a = var_index(i, k, s, t), b = var_index(k, j, u, v);
              if (t == 1 && v == 1) coeff[0].add(a, b, c);
              if (t == 1 && v == 2) coeff[1].add(a, b, c);
              if (t == 2 && v == 2) coeff[2].add(a, b, c);
              if (t == 2 && v == 1) {
                coeff[1].add(a, b, c * q12);
                coeff[0].add(a, b, c * q11);
              }
            }
      };
      product(2, 1, 1);
      product(1, 2, -q12);
      product(1, 1, -q11);
      const char* mono[3] = {"x1^2", "x1x2", "x2^2"};
      for (int m = 0; m < 3; ++m) {
        QuadConstraint c{"alg(" + std::string(mono[m]) + ")" + std::to_string(i) + std::to_string(j), {}, -1};
        for (const auto& [k, x] : coeff[m].terms()) c.terms.push_back({uint8_t(k.first), uint8_t(k.second), x});
        out.push_back(std::move(c));
      }
    }
  // (sigma_fg o sigma_st)(x_s') has x_t' coefficient sum_u a_st s'u a_fg u t'.
  auto comp = [&](detail::Quad& acc, int f, int g, int s, int t, int src, int dst, long c) {
    for (int u = 1; u <= 2; ++u) acc.add(var_index(s, t, src, u), var_index(f, g, u, dst), c);
  };
  struct Term {
    int f, g, s, t;
    long c;
  };
  std::vector<std::vector<Term>> ids = {
      {{2, 1, 1, 1, 1}, {2, 2, 1, 1, p11}, {1, 1, 1, 1, -p11}, {1, 2, 1, 1, -long(p11) * p11}, {1, 1, 2, 1, -p12},
       {1, 2, 2, 1, -long(p11) * p12}},
      {{2, 1, 1, 2, 1}, {2, 2, 1, 1, p12}, {1, 1, 1, 2, -p11}, {1, 2, 1, 1, -long(p11) * p12}, {1, 1, 2, 2, -p12},
       {1, 2, 2, 1, -long(p12) * p12}},
      {{2, 2, 1, 2, 1}, {1, 2, 1, 2, -p11}, {1, 2, 2, 2, -p12}}};
  for (size_t k = 0; k < ids.size(); ++k)
    for (int src = 1; src <= 2; ++src)
      for (int dst = 1; dst <= 2; ++dst) {
        detail::Quad acc(q);
        for (const Term& tm : ids[k]) comp(acc, tm.f, tm.g, tm.s, tm.t, src, dst, tm.c);
        QuadConstraint c{"comp" + std::to_string(k + 1) + "(x" + std::to_string(src) + ")_x" + std::to_string(dst), {}, -1};
        for (const auto& [kk, x] : acc.terms()) c.terms.push_back({uint8_t(kk.first), uint8_t(kk.second), x});
        out.push_back(std::move(c));
      }
  return out;
}

// Determinant of a 4x4 matrix mod q.
inline int det_mod(const Residues& m, int q) {
  std::array<std::array<long, 4>, 4> a{};
  for (int i = 0; i < 16; ++i) a[i / 4][i % 4] = m[i];
  long det = 1;
  for (int c = 0; c < 4; ++c) {
    int p = -1;
    for (int r = c; r < 4; ++r)
      if (a[r][c] % q) {
        p = r;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det = detail::modq(det * a[c][c], q);
    long inv = 1;
    for (int e = 0; e < q - 2; ++e) inv = inv * a[c][c] % q;
    for (int r = c + 1; r < 4; ++r) {
      long f = detail::modq(a[r][c] * inv, q);
      for (int k = c; k < 4; ++k) a[r][k] = detail::modq(a[r][k] - f * a[c][k], q);
    }
  }
  return detail::modq(det, q);
}

struct EnumerationSetup {
  int q;
  int p12, p11, q12, q11;
  std::vector<QuadConstraint> constraints;
  std::vector<int> order;                      // variable order
  std::vector<std::vector<int>> check_at;      // constraint ids decidable after depth d+1
};

inline EnumerationSetup make_setup(int q, std::pair<int, int> P, std::pair<int, int> Q) {
  if (!detail::is_prime_small(static_cast<unsigned>(q))) throw std::invalid_argument("q must be prime, got " + std::to_string(q));
  if (q > 251) throw std::invalid_argument("q too large for residue storage");
  EnumerationSetup s;
  s.q = q;
  s.p12 = detail::modq(P.first, q);
  s.p11 = detail::modq(P.second, q);
  s.q12 = detail::modq(Q.first, q);
  s.q11 = detail::modq(Q.second, q);
  if (s.p12 == 0 || s.q12 == 0) throw std::invalid_argument("p12 and q12 must be nonzero mod q");
  s.constraints = build_constraints(q, s.p12, s.p11, s.q12, s.q11);
  // Greedy order: most frequent variable first, ties by index.
  std::array<int, 16> freq{};
  for (const QuadConstraint& c : s.constraints) {
    std::array<bool, 16> seen{};
    for (const QuadTerm& t : c.terms) seen[t.u] = seen[t.v] = true;
    for (int v = 0; v < 16; ++v) freq[v] += seen[v];
  }
  s.order.resize(16);
  for (int v = 0; v < 16; ++v) s.order[v] = v;
  std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) { return freq[a] > freq[b]; });
  std::array<int, 16> pos{};
  for (int d = 0; d < 16; ++d) pos[s.order[d]] = d;
  s.check_at.assign(16, {});
  for (size_t k = 0; k < s.constraints.size(); ++k) {
    QuadConstraint& c = s.constraints[k];
    if (c.terms.empty()) continue;
    for (const QuadTerm& t : c.terms) c.last = std::max({c.last, pos[t.u], pos[t.v]});
    s.check_at[c.last].push_back(static_cast<int>(k));
  }
  return s;
}

namespace detail {

inline bool holds(const QuadConstraint& c, const Residues& v, int q) {
  long s = 0;
  for (const QuadTerm& t : c.terms) s += static_cast<long>(t.coeff) * v[t.u] * v[t.v];
  return s % q == 0;
}

class Searcher {
 public:
  explicit Searcher(const EnumerationSetup& s) : s_(s) {}
  // Extends v from depth d; appends solutions in lexicographic order.
  void run(Residues& v, int d, std::vector<Residues>& out) const {
    if (d == 16) {
      if (det_mod(v, s_.q) != 0) out.push_back(v);
      return;
    }
    int var = s_.order[d];
    for (int x = 0; x < s_.q; ++x) {
      v[var] = static_cast<uint8_t>(x);
      if (consistent(v, d)) run(v, d + 1, out);
    }
    v[var] = 0;
  }
  bool consistent(const Residues& v, int d) const {
    for (int k : s_.check_at[d])
      if (!holds(s_.constraints[k], v, s_.q)) return false;
    return true;
  }

 private:
  const EnumerationSetup& s_;
};

}  // namespace detail

// All Sigma over GF(q) satisfying the 24 conditions with det Sigma != 0,
// ordered lexicographically in the variable order. The result does not
// depend on the worker count.
inline std::vector<Residues> enumerate_csolutions(int q, std::pair<int, int> P, std::pair<int, int> Q, int workers = 1,
                                                   int prefix_depth = 4) {
  EnumerationSetup s = make_setup(q, P, Q);
  detail::Searcher search(s);
  prefix_depth = std::clamp(prefix_depth, 0, 16);
  std::vector<Residues> prefixes;
  {
    std::vector<Residues> cur = {Residues{}};
    for (int d = 0; d < prefix_depth; ++d) {
      std::vector<Residues> next;
      for (const Residues& p : cur)
        for (int x = 0; x < q; ++x) {
          Residues r = p;
          r[s.order[d]] = static_cast<uint8_t>(x);
          if (search.consistent(r, d)) next.push_back(r);
        }
      cur = std::move(next);
    }
    prefixes = std::move(cur);
  }
  std::vector<std::vector<Residues>> results(prefixes.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < prefixes.size(); i = next++) {
      Residues v = prefixes[i];
      search.run(v, prefix_depth, results[i]);
    }
  };
  int n = std::max(1, workers);
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  std::vector<Residues> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

inline std::string residues_to_string(const Residues& r) {
  std::string s;
  for (int i = 0; i < 16; ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s;
}

struct BucketKey {
  bool sigma12_zero, sigma21_zero, m12_zero, m21_zero;
  int detsigma_trace, detsigma_det;  // char poly t^2 - trace t + det of det sigma
  auto tie() const { return std::tie(sigma12_zero, sigma21_zero, m12_zero, m21_zero, detsigma_trace, detsigma_det); }
  friend bool operator<(const BucketKey& a, const BucketKey& b) { return a.tie() < b.tie(); }
  friend bool operator==(const BucketKey& a, const BucketKey& b) { return a.tie() == b.tie(); }
};

struct BucketSummary {
  std::map<BucketKey, size_t> counts;
  size_t total = 0;
  size_t ore = 0;      // solutions covered by an iterated-Ore criterion
  size_t non_ore = 0;  // the rest
};

inline BucketKey bucket_of(const Residues& r, int q, int p12, int p11) {
  auto at = [&](int row, int col) { return static_cast<long>(r[row * 4 + col]); };
  // M(perm r, perm c) = Sigma(r, c) with perm = (0 2 1 3)
  static const int perm[4] = {0, 2, 1, 3};
  auto zero_block = [&](int r0, int c0, bool m) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        int row = m ? perm[r0 + a] : r0 + a, col = m ? perm[c0 + b] : c0 + b;
        if (at(row, col)) return false;
      }
    return true;
  };
  BucketKey k{};
  k.sigma12_zero = zero_block(0, 2, false);
  k.sigma21_zero = zero_block(2, 0, false);
  k.m12_zero = zero_block(0, 2, true);
  k.m21_zero = zero_block(2, 0, true);
  // det sigma = S11 S22 - p11 S11 S12 - p12 S21 S12 with S_ij the 2x2 blocks.
  auto mul = [&](int b1i, int b1j, int b2i, int b2j, int a, int c) {
    long s = 0;
    for (int u = 0; u < 2; ++u) s += at(2 * b1i + a, 2 * b1j + u) * at(2 * b2i + u, 2 * b2j + c);
    return s;
  };
  long D[2][2];
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      D[a][c] = detail::modq(mul(0, 0, 1, 1, a, c) - p11 * mul(0, 0, 0, 1, a, c) - p12 * mul(1, 0, 0, 1, a, c), q);
  k.detsigma_trace = detail::modq(D[0][0] + D[1][1], q);
  k.detsigma_det = detail::modq(D[0][0] * D[1][1] - D[0][1] * D[1][0], q);
  return k;
}

inline BucketSummary bucket_solutions(const std::vector<Residues>& sols, int q, std::pair<int, int> P,
                                      std::pair<int, int> Q) {
  BucketSummary b;
  int p12 = detail::modq(P.first, q), p11 = detail::modq(P.second, q), q11 = detail::modq(Q.second, q);
  for (const Residues& r : sols) {
    BucketKey k = bucket_of(r, q, p12, p11);
    b.counts[k]++;
    b.total++;
    bool ore = k.sigma12_zero || (k.sigma21_zero && p11 == 0) || k.m12_zero || (k.m21_zero && q11 == 0);
    (ore ? b.ore : b.non_ore)++;
  }
  return b;
}

}  // namespace dext
