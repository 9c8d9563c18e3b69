#pragma once

// Degree-bounded noncommutative Groebner completion for homogeneous ideals
// in k<x1,x2,y1,y2> under deg-lex order.

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "dext/freealg.hpp"
#include "dext/linalg.hpp"

namespace dext {

class DegreeBoundExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Letters of the alphabet as a bitmask over {x1,x2,y1,y2}.
using GeneratorSet = uint8_t;
inline constexpr GeneratorSet kAllGenerators = 0xF;

inline std::vector<int> letters_of(GeneratorSet gens) {
  std::vector<int> out;
  for (int g = 0; g < kNumGenerators; ++g)
    if (gens & (1u << g)) out.push_back(g);
  return out;
}

struct Presentation {
  const FieldSpec* field = &FieldSpec::rationals();
  GeneratorSet generators = kAllGenerators;
  std::vector<NcPoly> relations;
};

// Rule: lead -> tail, lead monic and tail strictly smaller.
struct Rule {
  Word lead;
  NcPoly tail;
};

class RewriteSystem {
 public:
  RewriteSystem() = default;
  RewriteSystem(const FieldSpec& f, GeneratorSet gens) : field_(&f), generators_(gens) {}

  const FieldSpec& field() const { return *field_; }
  GeneratorSet generators() const { return generators_; }
  const std::vector<Rule>& rules() const { return rules_; }
  int complete_through() const { return complete_through_; }
  size_t pending_beyond_bound() const { return pending_; }

  void add_rule(Rule r) {
    lead_lengths_.insert(r.lead.size());
    index_.emplace(r.lead.key(), rules_.size());
    rules_.push_back(std::move(r));
  }
  void set_bound(int n, size_t pending) {
    complete_through_ = n;
    pending_ = pending;
  }

  // Leftmost occurrence of a lead inside w, as (rule index, position).
  std::optional<std::pair<size_t, int>> find_reducible(const Word& w) const {
    for (int pos = 0; pos < w.size(); ++pos)
      for (int len : lead_lengths_) {
        if (pos + len > w.size()) break;
        auto it = index_.find(w.subword(pos, len).key());
        if (it != index_.end()) return std::make_pair(it->second, pos);
      }
    return std::nullopt;
  }
  bool is_normal(const Word& w) const { return !find_reducible(w).has_value(); }

  // Reduction without the degree check; used during completion.
  NcPoly reduce(const NcPoly& p) const {
    NcPoly result(p.field());
    std::map<Word, Scalar> work(p.terms().begin(), p.terms().end());
    std::vector<std::pair<Word, Scalar>> normal;
    while (!work.empty()) {
      auto it = std::prev(work.end());
      Word w = it->first;
      Scalar c = std::move(it->second);
      work.erase(it);
      auto hit = find_reducible(w);
      if (!hit) {
        normal.emplace_back(w, std::move(c));
        continue;
      }
      const Rule& r = rules_[hit->first];
      Word u = w.prefix(hit->second);
      Word v = w.suffix(w.size() - hit->second - r.lead.size());
      for (const auto& [tw, tc] : r.tail.terms()) {
        Word nw = u * tw * v;
        auto [jt, inserted] = work.try_emplace(nw, c * tc);
        if (!inserted) {
          jt->second += c * tc;
          if (jt->second.is_zero()) work.erase(jt);
        }
      }
    }
    for (auto& [w, c] : normal) result.add_term(w, c);
    return result;
  }

  NcPoly normal_form(const NcPoly& p) const {
    if (p.degree() > complete_through_)
      throw DegreeBoundExceeded("normal form requested in degree " + std::to_string(p.degree()) +
                                " but completion only holds through degree " + std::to_string(complete_through_));
    return reduce(p);
  }

  // Normal words of length n in increasing order.
  std::vector<Word> normal_words(int n) const {
    check_degree(n);
    std::vector<Word> cur = {Word()};
    std::vector<int> letters = letters_of(generators_);
    for (int d = 1; d <= n; ++d) {
      std::vector<Word> next;
      for (const Word& w : cur)
        for (int g : letters) {
          Word x = w * Word::letter(g);
          if (!has_lead_suffix(x)) next.push_back(x);
        }
      cur = std::move(next);
    }
    return cur;
  }

  std::vector<uint64_t> graded_dims(int n) const {
    check_degree(n);
    int max_lead = lead_lengths_.empty() ? 1 : *lead_lengths_.rbegin();
    int keep = std::max(0, max_lead - 1);
    std::vector<int> letters = letters_of(generators_);
    std::map<Word, uint64_t> states = {{Word(), 1}};
    std::vector<uint64_t> dims = {1};
    for (int d = 1; d <= n; ++d) {
      std::map<Word, uint64_t> next;
      uint64_t total = 0;
      for (const auto& [s, cnt] : states)
        for (int g : letters) {
          Word x = s * Word::letter(g);
          if (has_lead_suffix(x)) continue;
          Word key = x.size() > keep ? x.suffix(keep) : x;
          next[key] += cnt;
          total += cnt;
        }
      states = std::move(next);
      dims.push_back(total);
    }
    return dims;
  }

  // One rule per line, "lead -> tail".
  std::string serialize() const {
    std::ostringstream os;
    for (const Rule& r : rules_) os << r.lead.to_string() << " -> " << r.tail.to_string() << "\n";
    return os.str();
  }

 private:
  void check_degree(int n) const {
    if (n > complete_through_)
      throw DegreeBoundExceeded("degree " + std::to_string(n) + " is beyond the completion bound " +
                                std::to_string(complete_through_));
  }
  bool has_lead_suffix(const Word& x) const {
    for (int len : lead_lengths_) {
      if (len > x.size()) break;
      if (index_.count(x.suffix(len).key())) return true;
    }
    return false;
  }

  const FieldSpec* field_ = &FieldSpec::rationals();
  GeneratorSet generators_ = kAllGenerators;
  std::vector<Rule> rules_;
  std::unordered_map<uint64_t, size_t> index_;
  std::set<int> lead_lengths_;
  int complete_through_ = 0;
  size_t pending_ = 0;
};

namespace detail {

// Fully interreduces polys of one degree into monic rules with distinct leads.
inline std::vector<Rule> echelon_rules(const FieldSpec& f, const std::vector<NcPoly>& polys) {
  SparseEchelon ech(f);
  for (const NcPoly& p : polys) {
    SparseEchelon::Row row;
    for (const auto& [w, c] : p.terms()) row.emplace(w.key(), c);
    ech.insert(std::move(row));
  }
  std::vector<Rule> out;
  for (const auto& [lead, row] : ech.rows()) {
    Rule r{Word::from_key(lead), NcPoly(f)};
    for (const auto& [k, c] : row)
      if (k != lead) r.tail.add_term(Word::from_key(k), -c);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

// Overlap ambiguities: lead_i = u s, lead_j = s v with |s| = k.
struct Overlap {
  size_t i, j;
  int k;
  int degree;
};

inline std::vector<Overlap> overlaps_of_degree(const std::vector<Rule>& rules, int d) {
  std::vector<Overlap> out;
  for (size_t i = 0; i < rules.size(); ++i)
    for (size_t j = 0; j < rules.size(); ++j) {
      int a = rules[i].lead.size(), b = rules[j].lead.size();
      int k = a + b - d;
      if (k < 1 || k >= std::min(a, b)) continue;
      if (rules[i].lead.suffix(k) == rules[j].lead.prefix(k)) out.push_back({i, j, k, d});
    }
  return out;
}

// Completes a homogeneous presentation through degree n.
inline RewriteSystem complete(const Presentation& pres, int n) {
  if (n > kMaxWordLength) throw std::invalid_argument("degree bound too large");
  const FieldSpec& f = *pres.field;
  for (const NcPoly& r : pres.relations) {
    if (&r.field() != &f) throw FieldMismatch("relation over " + r.field().to_string() + " in a " + f.to_string() + " presentation");
    if (!r.is_homogeneous()) throw std::invalid_argument("relation is not homogeneous: " + r.to_string());
    for (const auto& [w, c] : r.terms())
      for (int i = 0; i < w.size(); ++i)
        if (!(pres.generators & (1u << w[i])))
          throw std::invalid_argument("relation uses a generator outside the alphabet: " + r.to_string());
  }
  RewriteSystem rs(f, pres.generators);
  for (int d = 1; d <= n; ++d) {
    std::vector<NcPoly> cand;
    for (const NcPoly& r : pres.relations)
      if (!r.is_zero() && r.degree() == d) cand.push_back(rs.reduce(r));
    for (const Overlap& o : overlaps_of_degree(rs.rules(), d)) {
      const Rule& ri = rs.rules()[o.i];
      const Rule& rj = rs.rules()[o.j];
      Word u = ri.lead.prefix(ri.lead.size() - o.k);
      Word v = rj.lead.suffix(rj.lead.size() - o.k);
      NcPoly s = ri.tail.sandwiched(Word(), v) - rj.tail.sandwiched(u, Word());
      s = rs.reduce(s);
      if (!s.is_zero()) cand.push_back(std::move(s));
    }
    for (Rule& r : detail::echelon_rules(f, cand)) rs.add_rule(std::move(r));
  }
  size_t pending = 0;
  for (int d = n + 1; d <= 2 * n; ++d) pending += overlaps_of_degree(rs.rules(), d).size();
  rs.set_bound(n, pending);
  return rs;
}

inline std::vector<uint64_t> graded_dims(const RewriteSystem& rs, int n) { return rs.graded_dims(n); }

// Reference dimensions from the span of u r v in each degree.
inline std::vector<uint64_t> dims_oracle(const Presentation& pres, int n) {
  const FieldSpec& f = *pres.field;
  std::vector<int> letters = letters_of(pres.generators);
  std::vector<std::vector<Word>> words = {{Word()}};
  for (int d = 1; d <= n; ++d) {
    std::vector<Word> next;
    for (const Word& w : words.back())
      for (int g : letters) next.push_back(w * Word::letter(g));
    words.push_back(std::move(next));
  }
  std::vector<uint64_t> dims;
  for (int d = 0; d <= n; ++d) {
    SparseEchelon ech(f);
    for (const NcPoly& r : pres.relations) {
      int dr = r.degree();
      if (dr < 0 || dr > d) continue;
      for (int a = 0; a <= d - dr; ++a)
        for (const Word& u : words[a])
          for (const Word& v : words[d - dr - a]) {
            SparseEchelon::Row row;
            for (const auto& [w, c] : r.terms()) row.emplace((u * w * v).key(), c);
            ech.insert(std::move(row));
          }
    }
    dims.push_back(words[d].size() - ech.rank());
  }
  return dims;
}

}  // namespace dext
