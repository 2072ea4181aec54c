/* Copyright (C) 2026 The zpkcycles authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "zpkcycles/reports.hpp"

using namespace zpk;

namespace {

struct GlobalOpts {
  uint64_t budget = 20000000ull;
  unsigned threads = 1;
  std::string out;
  std::string outdir;
  std::string config;
};

// Config file: plain key=value lines (budget, outdir, threads). Math inputs
// are always explicit flags.
void load_config(GlobalOpts& g) {
  if (g.config.empty()) return;
  std::ifstream in(g.config);
  if (!in) fail(Errc::usage, "cannot read config file " + g.config);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail(Errc::usage, "config line without '=': " + line);
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "budget")
      g.budget = std::stoull(val);
    else if (key == "outdir")
      g.outdir = val;
    else if (key == "threads")
      g.threads = static_cast<unsigned>(std::stoul(val));
    else
      fail(Errc::usage, "unknown config key: " + key);
  }
}

void emit(const GlobalOpts& g, const std::string& payload) {
  if (g.out.empty()) {
    std::cout << payload;
    return;
  }
  std::string path = g.out;
  if (!g.outdir.empty() && path.find('/') == std::string::npos) path = g.outdir + "/" + path;
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::usage, "cannot write output file " + path);
  out << payload;
}

std::string dump(const OJson& j) { return j.dump(2) + "\n"; }

Modulus parse_mod(const std::string& p, unsigned k) { return Modulus::make(BigInt(p), k); }

LinearMap build_map(const Modulus& mod, const std::string& a, const std::string& b,
                    const std::string& poly, unsigned n, bool& is_cat, CatParams& params) {
  bool have_cat = !a.empty() || !b.empty();
  bool have_poly = !poly.empty();
  if (have_cat == have_poly)
    fail(Errc::usage, "give either --a/--b (Cat map) or --poly [--n] (companion map)");
  if (have_cat) {
    if (a.empty() || b.empty()) fail(Errc::usage, "both --a and --b are required");
    is_cat = true;
    params = CatParams::make(BigInt(a), BigInt(b), mod);
    return cat_map(params);
  }
  is_cat = false;
  return companion_map(Polynomial::parse(mod, poly), n);
}

int run_analyze_poly(const GlobalOpts& g, const std::string& p, unsigned k,
                     const std::string& poly, const std::string& format, unsigned ks_cap) {
  Modulus mod = parse_mod(p, k);
  Polynomial f = Polynomial::parse(mod, poly);
  OrderOptions opt;
  opt.ks_cap = ks_cap;
  OrderProfile prof = analyze_poly_order(f, opt);
  OrderEqualityReport eq = verify_order_extension_equality(f, k, opt);
  OJson j = to_json(prof, k);
  j["oracle"] = json_int(eq.oracle);
  j["pass"] = eq.pass;
  if (format == "text") {
    std::ostringstream os;
    os << "f = " << prof.f_text() << " over Z_" << mod.pk.str() << "\n"
       << "P_1 = " << prof.p1.str() << ", k_s = " << prof.ks().str() << ", P_" << k << " = "
       << prof.pk(k).str() << "\n"
       << "oracle = " << eq.oracle.str() << " => " << (eq.pass ? "pass" : "FAIL") << "\n";
    emit(g, os.str());
  } else {
    emit(g, dump(j));
  }
  return eq.pass ? 0 : 1;
}

int run_verify_order(const GlobalOpts& g, const std::string& p, unsigned k,
                     const std::string& poly) {
  Modulus mod = parse_mod(p, k);
  Polynomial f = Polynomial::parse(mod, poly);
  OrderEqualityReport eq = verify_order_extension_equality(f, k);
  emit(g, dump(to_json(eq)));
  return eq.pass ? 0 : 1;
}

int run_analyze_cat(const GlobalOpts& g, const std::string& p, unsigned k, const std::string& a,
                    const std::string& b, const std::string& format) {
  Modulus mod = parse_mod(p, k);
  CatParams params = CatParams::make(BigInt(a), BigInt(b), mod);
  bool table = mod.p > 3;
  CatPrediction pred = cat_table_predict(params, !table);
  OJson j = to_json(pred);
  bool pass = true;
  BigInt true_T = cat_true_period(params);
  j["true_period"] = json_int(true_T);
  pass = pass && true_T == pred.T;
  BigInt states = mod.pk * mod.pk;
  if (states <= g.budget) {
    CycleHistogram h = cat_enumerate(params, g.budget);
    j["histogram"] = to_json(h);
    pass = pass && h.lcm_of_lengths() == true_T;
  } else {
    j["histogram"] = nullptr;
  }
  if (!(params.a == 0 && params.b == 0)) {
    CatStabilization st =
        cat_stabilization_threshold(params, std::min<uint64_t>(g.budget, 1000000));
    j["stabilization"] = to_json(st);
  }
  j["pass"] = pass;
  if (format == "text") {
    std::ostringstream os;
    os << "cat(" << params.a.str() << "," << params.b.str() << ") over Z_" << mod.pk.str()
       << ": T = " << pred.T.str() << " [" << cat_row_label(pred.row) << "] => "
       << (pass ? "pass" : "FAIL") << "\n";
    emit(g, os.str());
  } else {
    emit(g, dump(j));
  }
  return pass ? 0 : 1;
}

int run_enumerate(const GlobalOpts& g, const std::string& p, unsigned k, const std::string& a,
                  const std::string& b, const std::string& poly, unsigned n,
                  const std::string& format) {
  Modulus mod = parse_mod(p, k);
  bool is_cat = false;
  CatParams params;
  LinearMap map = build_map(mod, a, b, poly, n, is_cat, params);
  if (format == "dot") {
    std::ostringstream os;
    write_dot(map, os);
    emit(g, os.str());
    return 0;
  }
  CycleHistogram h = enumerate_cycles(map, g.budget);
  OJson j;
  j["p"] = json_int(mod.p);
  j["k"] = k;
  j["map"] = map.label;
  j["cycles"] = to_json(h)["cycles"];
  j["checksum"] = json_int(h.weighted_sum());
  emit(g, dump(j));
  return 0;
}

int run_census(const GlobalOpts& g, const std::string& p, unsigned k, const std::string& format) {
  CensusTable t = cat_table_census(BigInt(p), k, g.threads);
  if (format == "csv") {
    emit(g, census_csv(t));
  } else {
    emit(g, dump(to_json(t)));
  }
  return t.all_pass_derived ? (t.all_pass_paper ? 0 : 1) : 1;
}

int run_verify_graph(const GlobalOpts& g, const std::string& p, unsigned k, const std::string& a,
                     const std::string& b, const std::string& poly, unsigned n,
                     const std::string& checks_csv, uint64_t samples) {
  Modulus mod = parse_mod(p, k);
  bool is_cat = false;
  CatParams params;
  LinearMap map = build_map(mod, a, b, poly, n, is_cat, params);

  std::vector<std::string> checks;
  {
    std::stringstream ss(checks_csv);
    std::string item;
    while (std::getline(ss, item, ',')) checks.push_back(item);
  }
  OJson j;
  j["map"] = map.label;
  j["p"] = json_int(mod.p);
  j["k"] = k;
  bool pass = true;
  for (const std::string& c : checks) {
    if (c == "embedding") {
      EmbeddingReport r = embedding_check(map, g.budget);
      j["embedding"] = to_json(r);
      pass = pass && r.pass;
    } else if (c == "liftlaw") {
      if (k < 2) fail(Errc::usage, "liftlaw needs k >= 2");
      StateVector x0(map.dim, BigInt(0));
      x0[0] = 1;
      std::mt19937_64 rng(1);
      bool all = true;
      OJson arr = OJson::array();
      for (uint64_t i = 0; i < samples; ++i) {
        StateVector c0(map.dim);
        for (auto& x : c0) x = BigInt(rng()) % mod.p;
        LiftLawReport r = period_lift_law_check(map, x0, c0, k - 1);
        all = all && r.pass;
        if (i < 5) arr.push_back(to_json(r));
      }
      j["liftlaw"] = OJson{{"samples", samples}, {"examples", arr}, {"pass", all}};
      pass = pass && all;
    } else if (c == "dichotomy") {
      std::mt19937_64 rng(2);
      bool all = true;
      for (uint64_t i = 0; i < samples; ++i) {
        StateVector x(map.dim);
        bool nz = false;
        for (auto& vv : x) {
          vv = BigInt(rng()) % mod.p;
          if (vv != 0) nz = true;
        }
        if (!nz) x[0] = 1;
        Threshold ks = ks_of_state(map, x);
        BigInt prev;
        for (unsigned kk = 1; kk <= std::max(k, 4u); ++kk) {
          BigInt t = state_period(map.at_precision(kk), x);
          if (kk > 1) {
            bool stable = ks.is_infinite() || kk - 1 < ks.value;
            all = all && (stable ? t == prev : t == mod.p * prev);
          }
          prev = t;
        }
      }
      j["dichotomy"] = OJson{{"samples", samples}, {"pass", all}};
      pass = pass && all;
    } else if (c == "stabilization") {
      CycleHistogram h = enumerate_cycles(map.at_precision(1), g.budget);
      OJson arr = OJson::array();
      bool all = true;
      for (const auto& [T, cnt] : h.cycles) {
        (void)cnt;
        StabilizationReport r = stabilization_check(map, T, 1, std::max(k, 2u), g.budget);
        arr.push_back(to_json(r));
        all = all && r.pass;
      }
      j["stabilization"] = OJson{{"per_length", arr}, {"pass", all}};
      pass = pass && all;
    } else {
      fail(Errc::usage, "unknown check '" + c + "'");
    }
  }
  j["pass"] = pass;
  emit(g, dump(j));
  return pass ? 0 : 1;
}

int run_d_matrix(const GlobalOpts& g, const std::string& p, unsigned k, unsigned v, unsigned l,
                 const std::string& a, const std::string& b, const std::string& poly, unsigned n) {
  Modulus mod = parse_mod(p, k);
  bool is_cat = false;
  CatParams params;
  LinearMap map = build_map(mod, a, b, poly, n, is_cat, params);
  DmatrixReport r = dmatrix_recursion_check(map, k, v, l, g.budget);
  OJson j = to_json(r);
  j["map"] = map.label;
  emit(g, dump(j));
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cycle-structure analysis of linear permutation maps over Z_{p^k}"};
  app.require_subcommand(1);

  GlobalOpts g;
  bool budget_flag = false;
  app.add_option("--budget", g.budget, "enumeration budget in states")
      ->each([&budget_flag](const std::string&) { budget_flag = true; });
  app.add_option("--threads", g.threads, "worker cap for the census");
  app.add_option("--config", g.config, "key=value defaults (budget, outdir, threads)");
  app.add_option("--out", g.out, "write the report to this file");

  std::string p, a, b, poly, format = "json", checks = "embedding";
  unsigned k = 1, n = 1, v = 1, l = 1, ks_cap = 64;
  uint64_t samples = 100;

  auto* ap = app.add_subcommand("analyze-poly", "order profile of a polynomial, oracle-checked");
  ap->add_option("--p", p)->required();
  ap->add_option("--k", k)->required();
  ap->add_option("--poly", poly)->required();
  ap->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  ap->add_option("--ks-cap", ks_cap);

  auto* vo = app.add_subcommand("verify-order", "theory vs oracle order report");
  vo->add_option("--p", p)->required();
  vo->add_option("--k", k)->required();
  vo->add_option("--poly", poly)->required();

  auto* ac = app.add_subcommand("analyze-cat", "Cat map prediction, enumeration and checks");
  ac->add_option("--p", p)->required();
  ac->add_option("--k", k)->required();
  ac->add_option("--a", a)->required();
  ac->add_option("--b", b)->required();
  ac->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* en = app.add_subcommand("enumerate", "exact cycle histogram or DOT export");
  en->add_option("--p", p)->required();
  en->add_option("--k", k)->required();
  en->add_option("--a", a);
  en->add_option("--b", b);
  en->add_option("--poly", poly);
  en->add_option("--n", n);
  en->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));

  auto* ce = app.add_subcommand("census", "full (a,b) period census against the table");
  ce->add_option("--p", p)->required();
  ce->add_option("--k", k)->required();
  ce->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* vg = app.add_subcommand("verify-graph", "graph-structure checks");
  vg->add_option("--p", p)->required();
  vg->add_option("--k", k)->required();
  vg->add_option("--a", a);
  vg->add_option("--b", b);
  vg->add_option("--poly", poly);
  vg->add_option("--n", n);
  vg->add_option("--checks", checks, "comma list: embedding,liftlaw,dichotomy,stabilization");
  vg->add_option("--samples", samples);

  auto* dm = app.add_subcommand("d-matrix", "cycle-count transition matrix and recursion check");
  dm->add_option("--p", p)->required();
  dm->add_option("--k", k)->required();
  dm->add_option("--v", v)->required();
  dm->add_option("--l", l);
  dm->add_option("--a", a);
  dm->add_option("--b", b);
  dm->add_option("--poly", poly);
  dm->add_option("--n", n);

  CLI11_PARSE(app, argc, argv);

  try {
    load_config(g);
    if (!budget_flag) {
      if (const char* env = std::getenv("ZPKCYCLES_BUDGET")) g.budget = std::stoull(env);
    }
    if (ap->parsed()) return run_analyze_poly(g, p, k, poly, format, ks_cap);
    if (vo->parsed()) return run_verify_order(g, p, k, poly);
    if (ac->parsed()) return run_analyze_cat(g, p, k, a, b, format);
    if (en->parsed()) return run_enumerate(g, p, k, a, b, poly, n, format);
    if (ce->parsed()) return run_census(g, p, k, format);
    if (vg->parsed()) return run_verify_graph(g, p, k, a, b, poly, n, checks, samples);
    if (dm->parsed()) return run_d_matrix(g, p, k, v, l, a, b, poly, n);
  } catch (const Error& e) {
    std::cerr << "error[" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == Errc::theory_violation ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
