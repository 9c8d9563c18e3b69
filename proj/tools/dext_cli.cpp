// dext: verify, compare and enumerate double extension data.
// Exit codes: 0 pass, 1 check failure, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "dext/enumerate.hpp"
#include "dext/report.hpp"

namespace {

using namespace dext;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

bool is_family_letter(const std::string& t) { return t.size() == 1 && t[0] >= 'A' && t[0] <= 'Z'; }

// Parameters start from the first default specialization; --params entries
// override them and --field replaces the field.
Specialization make_spec(const FamilyRecord& rec, const std::string& params, const std::string& field) {
  Specialization s = rec.specializations.empty() ? Specialization{"Q", {}, ""} : rec.specializations.front();
  if (!field.empty()) s.field = field;
  std::stringstream ss(params);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = detail::trim(item);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq != 1) throw UsageError("bad --params entry '" + item + "', expected k=value");
    char k = item[0];
    std::string v = detail::trim(item.substr(2));
    auto it = std::find_if(s.params.begin(), s.params.end(), [&](const auto& p) { return p.first == k; });
    if (it != s.params.end())
      it->second = v;
    else
      s.params.push_back({k, v});
  }
  return s;
}

std::pair<int, int> parse_pair(const std::string& text, const char* what) {
  std::stringstream ss(text);
  std::string a, b;
  if (!std::getline(ss, a, ',') || !std::getline(ss, b) || a.empty() || b.empty())
    throw UsageError(std::string(what) + " expects two comma-separated integers, got '" + text + "'");
  try {
    return {std::stoi(a), std::stoi(b)};
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + " expects integers, got '" + text + "'");
  }
}

std::set<char> parse_only(const std::string& text) {
  std::set<char> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = detail::trim(item);
    if (item.empty()) continue;
    if (!is_family_letter(item)) throw UsageError("--only expects family letters, got '" + item + "'");
    find_family(item[0]);
    out.insert(item[0]);
  }
  return out;
}

int cmd_verify(const std::string& target, const std::string& params, const std::string& field, int N, bool json) {
  VerifyOptions opt;
  opt.N = N;
  VerifyReport r;
  if (is_family_letter(target)) {
    const FamilyRecord& rec = find_family(target[0]);
    r = verify_family(default_catalog(), rec, make_spec(rec, params, field), opt);
  } else {
    if (!params.empty() || !field.empty()) throw UsageError("--params and --field apply to family targets only");
    r = verify_data(read_de_file(target), target, opt);
  }
  if (json)
    std::cout << to_json(r).dump(2) << "\n";
  else
    std::cout << format_report(r);
  return r.pass() ? 0 : 1;
}

int cmd_suite(const std::string& only, int N, int workers) {
  SuiteResult s = run_suite(default_catalog(), parse_only(only), N, workers);
  std::cout << format_suite(s);
  return s.pass() ? 0 : 1;
}

int cmd_list() {
  for (const FamilyRecord& r : default_catalog()) {
    std::string cons;
    for (const ParamConstraint& c : r.equalities) cons += (cons.empty() ? "" : ", ") + c.text;
    for (const ParamConstraint& c : r.nonzero) cons += (cons.empty() ? "" : ", ") + c.text;
    std::cout << r.name << " " << r.symbol << "  P=(" << r.P[0] << ", " << r.P[1] << ")  Q=(" << r.Q[0] << ", "
              << r.Q[1] << ")  params " << (r.params.empty() ? "-" : r.params) << "  constraints "
              << (cons.empty() ? "-" : cons) << "  partner " << (r.partner ? std::string(1, r.partner) : "-") << "\n";
  }
  return 0;
}

int cmd_export(const std::string& letter, const std::string& params, const std::string& field) {
  if (!is_family_letter(letter)) throw UsageError("export expects a family letter");
  const FamilyRecord& rec = find_family(letter[0]);
  Specialization s = make_spec(rec, params, field);
  std::cout << "# family " << rec.name << " at " << describe(s) << "\n" << to_de(instantiate(rec, s));
  return 0;
}

int cmd_dual(const std::string& letter) {
  if (!is_family_letter(letter)) throw UsageError("dual expects a family letter");
  const auto& cat = default_catalog();
  const FamilyRecord& rec = find_family(letter[0]);
  const FamilyRecord* holder = &rec;
  if (!rec.witness && rec.partner) holder = &find_family(rec.partner);
  const Specialization& first = duality_specializations(rec).front();
  auto [f, v] = resolve(first);
  v.erase('s');
  std::cout << "# dual data of " << rec.name << " at " << describe(first) << "\n"
            << to_de(dual_data(instantiate(rec, *f, v)));
  if (!rec.partner) {
    std::cout << "no recorded duality partner\n";
    return 0;
  }
  if (!holder->witness) {
    std::cout << "partner " << rec.partner << ", no stored witness\n";
    return 1;
  }
  if (holder != &rec) std::cout << "witness stored on " << holder->name << "\n";
  bool ok = true;
  for (const Specialization& s : duality_specializations(*holder)) {
    WitnessCheck w = check_stored_witness(cat, *holder, s);
    ok = ok && w.ok;
    std::cout << (w.ok ? "PASS " : "FAIL ") << holder->name << " -> " << holder->partner << " at " << describe(s)
              << "  " << w.detail << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_normals(const std::string& letter, const std::string& params, const std::string& field) {
  if (!is_family_letter(letter)) throw UsageError("normals expects a family letter");
  const FamilyRecord& rec = find_family(letter[0]);
  if (rec.normals.empty()) {
    std::cout << "no stored normal claims for " << rec.name << "\n";
    return 0;
  }
  std::vector<Specialization> specs;
  if (!params.empty() || !field.empty()) {
    specs.push_back(make_spec(rec, params, field));
  } else {
    specs = rec.specializations;
    specs.insert(specs.end(), rec.variants.begin(), rec.variants.end());
  }
  bool ok = true;
  for (const Specialization& s : specs) {
    NormalsReport n = verify_family_normals(rec, s);
    ok = ok && n.ok;
    std::cout << rec.name << " at " << describe(s) << (s.label.empty() ? "" : " (" + s.label + ")") << "\n";
    for (const ClaimResult& c : n.claims)
      std::cout << "  " << (c.ok ? "PASS " : "FAIL ") << c.description << (c.detail.empty() ? "" : "  " + c.detail)
                << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_dual_dims(const std::string& target, const std::string& params, const std::string& field, int N) {
  DEData d;
  if (is_family_letter(target)) {
    const FamilyRecord& rec = find_family(target[0]);
    d = instantiate(rec, make_spec(rec, params, field));
  } else {
    d = read_de_file(target);
  }
  std::vector<uint64_t> dims = koszul_dual_dims(presentation_of(d), N);
  std::cout << detail::join_numbers(dims) << "\n";
  return 0;
}

int cmd_enumerate(int q, const std::string& P, const std::string& Q, int workers, const std::string& out) {
  auto p = parse_pair(P, "--P"), qq = parse_pair(Q, "--Q");
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Residues> sols = enumerate_csolutions(q, p, qq, workers);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    for (const Residues& r : sols) f << residues_to_string(r) << "\n";
  } else {
    for (const Residues& r : sols) std::cout << residues_to_string(r) << "\n";
  }
  BucketSummary b = bucket_solutions(sols, q, p, qq);
  std::printf("# q=%d P=(%d,%d) Q=(%d,%d) solutions %zu, Ore %zu, non-Ore %zu, %.3fs\n", q, p.first, p.second,
              qq.first, qq.second, b.total, b.ore, b.non_ore, secs);
  std::printf("# S12=0 S21=0 M12=0 M21=0  det sigma char poly   count\n");
  for (const auto& [k, n] : b.counts)
    std::printf("#   %d     %d     %d     %d     t^2 - %d t + %d   %8zu\n", k.sigma12_zero, k.sigma21_zero, k.m12_zero,
                k.m21_zero, k.detsigma_trace, k.detsigma_det, n);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dext: double extension data toolkit"};
  app.require_subcommand(1);
  int N = 8;
  std::string params, field, target, only, out, P = "1,0", Q = "1,0", sigma_file;
  bool json = false;
  int workers = 1, suite_workers = 0, q = 3;

  auto add_n = [&](CLI::App* c) { c->add_option("--N", N, "degree bound (default from DEXT_DEGREE_BOUND or 8)"); };
  auto add_params = [&](CLI::App* c) {
    c->add_option("--params", params, "parameter values k=v,...");
    c->add_option("--field", field, "coefficient field: Q, Q(a^2+1), GF(5), ...");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the full pipeline on a family or a .de file");
  verify->add_option("target", target, "family letter or .de path");
  verify->add_option("--sigma-file", sigma_file, ".de file to verify");
  add_params(verify);
  add_n(verify);
  verify->add_flag("--json", json, "JSON report on standard output");

  CLI::App* suite = app.add_subcommand("suite", "verify every family, witness and normal claim");
  suite->add_option("--only", only, "comma-separated family letters");
  suite->add_option("--workers", suite_workers, "threads (default: hardware concurrency)");
  add_n(suite);

  CLI::App* list = app.add_subcommand("list-families", "one line per catalog family");
  CLI::App* exp = app.add_subcommand("export", "print a family in .de format");
  exp->add_option("family", target)->required();
  add_params(exp);

  CLI::App* dual = app.add_subcommand("dual", "dual data and duality witnesses of a family");
  dual->add_option("family", target)->required();

  CLI::App* normals = app.add_subcommand("normals", "check the stored normal-element claims");
  normals->add_option("family", target)->required();
  add_params(normals);

  CLI::App* ddims = app.add_subcommand("dual-dims", "graded dims of the quadratic dual");
  ddims->add_option("target", target, "family letter or .de path")->required();
  add_params(ddims);
  add_n(ddims);

  CLI::App* en = app.add_subcommand("enumerate", "all C-solutions over GF(q) for fixed P, Q");
  en->add_option("--q", q, "prime modulus");
  en->add_option("--P", P, "p12,p11");
  en->add_option("--Q", Q, "q12,q11");
  en->add_option("--workers", workers, "worker threads");
  en->add_option("--out", out, "write solutions here instead of standard output");

  try {
    N = default_degree_bound();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (N < 4) throw UsageError("--N must be at least 4");
    if (*verify) {
      if (target.empty() == sigma_file.empty()) throw UsageError("verify needs exactly one of a target or --sigma-file");
      return cmd_verify(target.empty() ? sigma_file : target, params, field, N, json);
    }
    if (*suite) return cmd_suite(only, N, suite_workers);
    if (*list) return cmd_list();
    if (*exp) return cmd_export(target, params, field);
    if (*dual) return cmd_dual(target);
    if (*normals) return cmd_normals(target, params, field);
    if (*ddims) return cmd_dual_dims(target, params, field, N);
    if (*en) return cmd_enumerate(q, P, Q, workers, out);
  } catch (const ConstraintViolation& e) {
    std::cerr << "constraint error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownFamily& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
