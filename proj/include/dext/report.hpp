#pragma once

// End-to-end verification reports for a catalog family or a .de file, their
// JSON form, and the whole-catalog suite.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dext/catalog.hpp"
#include "dext/diagnostics.hpp"
#include "json.hpp"

namespace dext {

inline constexpr const char* kReportSchema = "dext.verify/1";
inline const std::vector<std::string> kCheckNames = {"system_c",   "r3_cross_check", "hilbert_14641",  "koszul_dual",
                                                     "resolution", "lemma22",        "detsigma_match", "ore_flags",
                                                     "duality_witness", "normal_claims"};

struct CheckResult {
  std::string name;
  std::string status;  // pass, fail or skip
  std::string detail;
  double seconds = 0;
  bool operator==(const CheckResult&) const = default;
};

struct VerifyReport {
  std::string target;
  std::string family;  // letter, empty for files
  std::string field;
  std::vector<std::pair<std::string, std::string>> params;
  int N = 8;
  std::vector<std::string> relations;
  std::vector<uint64_t> dims;
  std::vector<uint64_t> dual_dims;
  std::vector<std::string> detsigma;  // row-major 2x2
  std::vector<std::pair<std::string, bool>> flags;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  bool pass() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == "fail"; });
  }
  const CheckResult* check(const std::string& name) const {
    for (const CheckResult& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool operator==(const VerifyReport&) const = default;
};

struct VerifyOptions {
  int N = 8;
  bool witness = true;  // run the stored duality witness at its duality specializations
  bool normals = true;
  uint32_t seed = 22;
};

inline int default_degree_bound() {
  if (const char* e = std::getenv("DEXT_DEGREE_BOUND")) {
    try {
      int n = std::stoi(e);
      if (n >= 4) return n;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("DEXT_DEGREE_BOUND must be an integer >= 4, got '") + e + "'");
  }
  return 8;
}

namespace detail {

class CheckRunner {
 public:
  explicit CheckRunner(VerifyReport& r) : r_(r) {}
  // fn returns {ok, detail}; exceptions become failures with their message.
  void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult c{name, "fail", "", 0};
    try {
      auto [ok, detail] = fn();
      c.status = ok ? "pass" : "fail";
      c.detail = detail;
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r_.checks.push_back(c);
  }
  void skip(const std::string& name, const std::string& why) { r_.checks.push_back({name, "skip", why, 0}); }

 private:
  VerifyReport& r_;
};

inline std::string join(const std::vector<std::string>& v, const std::string& sep = "; ") {
  std::string s;
  for (const std::string& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

template <class T>
std::string join_numbers(const std::vector<T>& v) {
  std::string s;
  for (const T& x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

inline std::vector<std::pair<std::string, bool>> flag_list(const OreFlags& f) {
  return {{"sigma12_zero", f.sigma12_zero},
          {"sigma21_zero_p11_zero", f.sigma21_zero_p11_zero},
          {"m12_zero", f.m12_zero},
          {"m21_zero_q11_zero", f.m21_zero_q11_zero}};
}

// The checks shared by family and file targets.
inline void run_structure_checks(const DEData& d, VerifyReport& rep, CheckRunner& run, const VerifyOptions& opt) {
  Presentation pres = presentation_of(d);
  for (const NcPoly& r : pres.relations) rep.relations.push_back(r.to_string() + " = 0");
  ConstraintReport c = check_system_c(d);
  run.run("system_c", [&] { return std::make_pair(c.ok(), c.summary()); });
  run.run("r3_cross_check", [&] {
    ConstraintReport r3 = check_r3_trimmed(d);
    bool agree = r3.ok() == c.ok();
    std::string detail = r3.summary();
    if (!agree) detail += " (disagrees with system_c)";
    return std::make_pair(r3.ok() && agree, detail);
  });
  RewriteSystem rs = complete(pres, opt.N);
  run.run("hilbert_14641", [&] {
    Type14641Report h = check_type_14641(pres, rs, opt.N);
    rep.dims = h.dims;
    std::vector<std::string> fails = h.failures;
    int m = std::min(opt.N, 4);
    std::vector<uint64_t> oracle = dims_oracle(pres, m);
    for (int k = 0; k <= m; ++k)
      if (k >= static_cast<int>(h.dims.size()) || oracle[k] != h.dims[k])
        fails.push_back("degree " + std::to_string(k) + ": oracle gives " + std::to_string(oracle[k]));
    return std::make_pair(h.ok && fails.empty(), fails.empty() ? "dims " + join_numbers(h.dims) : join(fails));
  });
  run.run("koszul_dual", [&] {
    KoszulReport k = check_koszul_dual(pres, rep.dims, opt.N);
    rep.dual_dims = k.dual_dims;
    return std::make_pair(k.ok, k.ok ? "dual dims " + join_numbers(k.dual_dims) : join(k.failures));
  });
  std::optional<ResolutionPair> rp;
  run.run("resolution", [&] {
    rp = resolution_matrices(pres, rs);
    bool ok = rp->g_kernel_dim == 4 && rp->xprime_kernel_dim == 1;
    return std::make_pair(ok, "kernel dim " + std::to_string(rp->g_kernel_dim) + ", left kernel of G dim " +
                                  std::to_string(rp->xprime_kernel_dim));
  });
  if (rp) {
    run.run("lemma22", [&] {
      Lemma22Report l = check_lemma22(*rp, rs, opt.seed);
      return std::make_pair(l.ok, l.ok ? "row, column and span conditions hold" : join(l.failures));
    });
  } else {
    run.skip("lemma22", "no resolution matrices");
  }
  Matrix D = det_sigma(d);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) rep.detsigma.push_back(D(i, j).to_plain_string());
  rep.flags = flag_list(ore_flags(d));
}

inline std::string flags_text(const std::vector<std::pair<std::string, bool>>& f) {
  std::string s;
  for (const auto& [k, v] : f) s += (s.empty() ? "" : " ") + k + "=" + (v ? "1" : "0");
  return s;
}

}  // namespace detail

// Full pipeline for a family at one specialization. Parameter constraint
// violations propagate as ConstraintViolation.
inline VerifyReport verify_family(const std::vector<FamilyRecord>& cat, const FamilyRecord& rec,
                                  const Specialization& spec, const VerifyOptions& opt = {}) {
  auto [f, raw] = resolve(spec);
  ParamValues v = complete_params(rec, *f, raw);
  DEData d = instantiate(rec, *f, v);
  VerifyReport rep;
  rep.target = std::string(1, rec.name);
  rep.family = std::string(1, rec.name);
  rep.field = f->to_string();
  for (char k : rec.params)
    if (v.count(k)) rep.params.push_back({std::string(1, k), v.at(k).to_plain_string()});
  rep.N = opt.N;
  if (!rec.note.empty()) rep.notes.push_back(rec.note);
  detail::CheckRunner run(rep);
  detail::run_structure_checks(d, rep, run, opt);
  run.run("detsigma_match", [&] {
    Matrix want = expected_det_sigma(rec, *f, v);
    bool ok = det_sigma(d) == want;
    return std::make_pair(ok, ok ? "det sigma = " + want.to_string()
                                 : "computed " + det_sigma(d).to_string() + ", table " + want.to_string());
  });
  run.run("ore_flags", [&] {
    OreFlags got = ore_flags(d);
    return std::make_pair(got == rec.expected_flags,
                          got == rec.expected_flags ? got.to_string()
                                                    : got.to_string() + ", expected " + rec.expected_flags.to_string());
  });
  if (!opt.witness) {
    run.skip("duality_witness", "run separately");
  } else if (rec.witness) {
    run.run("duality_witness", [&] {
      std::vector<std::string> bad, good;
      for (const Specialization& s : duality_specializations(rec)) {
        WitnessCheck w = check_stored_witness(cat, rec, s);
        (w.ok ? good : bad).push_back(describe(s) + (w.ok ? "" : ": " + w.detail));
      }
      std::string partner = std::string(1, rec.partner);
      return std::make_pair(bad.empty(), bad.empty() ? "dual carried onto " + partner + " at " + detail::join(good)
                                                     : detail::join(bad));
    });
  } else if (rec.partner) {
    run.skip("duality_witness", std::string("witness stored on ") + rec.partner);
  } else {
    run.skip("duality_witness", "no recorded duality partner");
  }
  if (!opt.normals || rec.normals.empty()) {
    run.skip("normal_claims", rec.normals.empty() ? "no stored claims" : "run separately");
  } else {
    run.run("normal_claims", [&] {
      NormalsReport n = verify_family_normals(rec, *f, v);
      std::vector<std::string> bad;
      for (const ClaimResult& c : n.claims)
        if (!c.ok) bad.push_back(c.description + ": " + c.detail);
      return std::make_pair(n.ok, n.ok ? std::to_string(n.claims.size()) + " claims hold" : detail::join(bad));
    });
  }
  return rep;
}

inline VerifyReport verify_data(const DEData& d, const std::string& target, const VerifyOptions& opt = {}) {
  VerifyReport rep;
  rep.target = target;
  rep.field = d.field->to_string();
  rep.params = {{"q12", d.Q.first.to_plain_string()},
                {"q11", d.Q.second.to_plain_string()},
                {"p12", d.P.first.to_plain_string()},
                {"p11", d.P.second.to_plain_string()}};
  rep.N = opt.N;
  detail::CheckRunner run(rep);
  detail::run_structure_checks(d, rep, run, opt);
  run.skip("detsigma_match", "no table entry for a file target");
  run.skip("ore_flags", "no expected flags for a file target; computed " + detail::flags_text(rep.flags));
  run.skip("duality_witness", "no stored witness for a file target");
  run.skip("normal_claims", "no stored claims for a file target");
  return rep;
}

inline nlohmann::ordered_json to_json(const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["target"] = r.target;
  j["family"] = r.family;
  j["field"] = r.field;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["N"] = r.N;
  j["status"] = r.pass() ? "pass" : "fail";
  j["relations"] = r.relations;
  j["dims"] = r.dims;
  j["dual_dims"] = r.dual_dims;
  j["detsigma"] = r.detsigma;
  j["flags"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.flags) j["flags"][k] = v;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks)
    j["checks"].push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}, {"seconds", c.seconds}});
  j["notes"] = r.notes;
  return j;
}

inline VerifyReport report_from_json(const nlohmann::ordered_json& j) {
  if (j.value("schema", "") != kReportSchema) throw ParseError("not a " + std::string(kReportSchema) + " report");
  VerifyReport r;
  r.target = j.at("target").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.field = j.at("field").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) r.params.push_back({k, v.get<std::string>()});
  r.N = j.at("N").get<int>();
  r.relations = j.at("relations").get<std::vector<std::string>>();
  r.dims = j.at("dims").get<std::vector<uint64_t>>();
  r.dual_dims = j.at("dual_dims").get<std::vector<uint64_t>>();
  r.detsigma = j.at("detsigma").get<std::vector<std::string>>();
  for (const auto& [k, v] : j.at("flags").items()) r.flags.push_back({k, v.get<bool>()});
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), c.at("status").get<std::string>(),
                        c.at("detail").get<std::string>(), c.at("seconds").get<double>()});
  r.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.at("status").get<std::string>() != (r.pass() ? "pass" : "fail"))
    throw ParseError("report status does not match its checks");
  return r;
}

inline VerifyReport report_from_json(const std::string& text) {
  try {
    return report_from_json(nlohmann::ordered_json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

inline std::string format_report(const VerifyReport& r) {
  std::string s = "target " + r.target + " over " + r.field;
  for (const auto& [k, v] : r.params) s += " " + k + "=" + v;
  s += " (N=" + std::to_string(r.N) + ")\n";
  for (const std::string& rel : r.relations) s += "  " + rel + "\n";
  s += "dims " + detail::join_numbers(r.dims) + "\n";
  s += "dual dims " + detail::join_numbers(r.dual_dims) + "\n";
  if (r.detsigma.size() == 4)
    s += "det sigma [[" + r.detsigma[0] + ", " + r.detsigma[1] + "], [" + r.detsigma[2] + ", " + r.detsigma[3] + "]]\n";
  s += "flags " + detail::flags_text(r.flags) + "\n";
  for (const CheckResult& c : r.checks) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%8.3fs", c.seconds);
    std::string name = c.name;
    name.resize(16, ' ');
    s += "  " + std::string(c.status == "pass" ? "PASS" : c.status == "fail" ? "FAIL" : "skip") + " " + name + buf +
         "  " + c.detail + "\n";
  }
  for (const std::string& n : r.notes) s += "note: " + n + "\n";
  s += std::string("status ") + (r.pass() ? "pass" : "fail") + "\n";
  return s;
}

struct SuiteRow {
  char family = '?';
  std::string symbol;
  int runs = 0;
  std::map<std::string, std::string> cells;  // check name -> ok, FAIL or -
  std::vector<std::string> failures;
  double seconds = 0;
  bool pass() const { return failures.empty(); }
};

struct SuiteResult {
  std::vector<SuiteRow> rows;
  size_t passed() const {
    return static_cast<size_t>(std::count_if(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass(); }));
  }
  bool pass() const { return passed() == rows.size(); }
};

// Verifies every selected family at each default specialization, each
// stored witness at its duality specializations, and the normal claims at
// the variants. Units run on a thread pool; rows are assembled in catalog
// order.
inline SuiteResult run_suite(const std::vector<FamilyRecord>& cat, const std::set<char>& only = {}, int N = 8,
                             int workers = 0) {
  struct Unit {
    size_t row;
    enum Kind { verify, witness, normals } kind;
    const FamilyRecord* rec;
    Specialization spec;
  };
  std::vector<Unit> units;
  SuiteResult res;
  for (const FamilyRecord& rec : cat) {
    if (!only.empty() && !only.count(rec.name)) continue;
    size_t row = res.rows.size();
    SuiteRow r;
    r.family = rec.name;
    r.symbol = rec.symbol;
    for (const std::string& c : kCheckNames) r.cells[c] = "-";
    res.rows.push_back(r);
    for (const Specialization& s : rec.specializations) units.push_back({row, Unit::verify, &rec, s});
    if (rec.witness)
      for (const Specialization& s : duality_specializations(rec)) units.push_back({row, Unit::witness, &rec, s});
    if (!rec.normals.empty())
      for (const Specialization& s : rec.variants) units.push_back({row, Unit::normals, &rec, s});
  }
  struct Outcome {
    std::vector<CheckResult> checks;
    double seconds = 0;
  };
  std::vector<Outcome> out(units.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < units.size(); i = next++) {
      const Unit& u = units[i];
      auto t0 = std::chrono::steady_clock::now();
      std::string where = describe(u.spec);
      try {
        if (u.kind == Unit::verify) {
          VerifyOptions opt;
          opt.N = N;
          opt.witness = false;
          out[i].checks = verify_family(cat, *u.rec, u.spec, opt).checks;
        } else if (u.kind == Unit::witness) {
          WitnessCheck w = check_stored_witness(cat, *u.rec, u.spec);
          out[i].checks.push_back({"duality_witness", w.ok ? "pass" : "fail", w.detail, 0});
        } else {
          NormalsReport n = verify_family_normals(*u.rec, u.spec);
          std::string detail;
          for (const ClaimResult& c : n.claims)
            if (!c.ok) detail += c.description + ": " + c.detail + "; ";
          out[i].checks.push_back({"normal_claims", n.ok ? "pass" : "fail", detail, 0});
        }
      } catch (const std::exception& e) {
        out[i].checks.push_back({u.kind == Unit::witness ? "duality_witness" : "system_c", "fail", e.what(), 0});
      }
      for (CheckResult& c : out[i].checks) c.detail = where + ": " + c.detail;
      out[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  int n = workers > 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (int i = 0; i < n; ++i) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  for (size_t i = 0; i < units.size(); ++i) {
    SuiteRow& r = res.rows[units[i].row];
    if (units[i].kind == Unit::verify) r.runs++;
    r.seconds += out[i].seconds;
    for (const CheckResult& c : out[i].checks) {
      std::string& cell = r.cells[c.name];
      if (c.status == "fail") {
        cell = "FAIL";
        r.failures.push_back(c.name + " " + c.detail);
      } else if (c.status == "pass" && cell == "-") {
        cell = "ok";
      }
    }
  }
  return res;
}

inline std::string format_suite(const SuiteResult& s) {
  static const std::vector<std::pair<std::string, std::string>> cols = {
      {"system_c", "C"},          {"r3_cross_check", "R3"}, {"hilbert_14641", "14641"}, {"koszul_dual", "dual"},
      {"resolution", "res"},      {"lemma22", "L22"},       {"detsigma_match", "det"},  {"ore_flags", "flags"},
      {"duality_witness", "wit"}, {"normal_claims", "normal"}};
  auto pad = [](std::string x, size_t w) {
    x.resize(std::max(x.size(), w), ' ');
    return x;
  };
  std::string out = pad("family", 8) + pad("runs", 6);
  for (const auto& c : cols) out += pad(c.second, 8);
  out += "status\n";
  for (const SuiteRow& r : s.rows) {
    out += pad(std::string(1, r.family) + " " + r.symbol, 8 + r.symbol.size() - 1) + pad(std::to_string(r.runs), 6);
    for (const auto& c : cols) out += pad(r.cells.at(c.first), 8);
    out += r.pass() ? "pass\n" : "FAIL\n";
    for (const std::string& f : r.failures) out += "    " + f + "\n";
  }
  out += std::to_string(s.passed()) + "/" + std::to_string(s.rows.size()) + " families pass\n";
  return out;
}

}  // namespace dext
