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
#include "zpkcycles/reports.hpp"

#include <sstream>

namespace zpk {

OJson json_int(const BigInt& x) {
  static const BigInt lo = -(BigInt(1) << 53), hi = BigInt(1) << 53;
  if (x > lo && x < hi) return OJson(x.convert_to<long long>());
  return OJson(x.str());
}

OJson to_json(const CycleHistogram& h) {
  OJson cycles = OJson::object();
  for (const auto& [t, n] : h.cycles) cycles[t.str()] = json_int(n);
  OJson o;
  o["cycles"] = std::move(cycles);
  o["checksum"] = json_int(h.weighted_sum());
  return o;
}

OJson to_json(const Threshold& t) {
  switch (t.kind) {
    case Threshold::Kind::finite: return OJson(t.value);
    case Threshold::Kind::infinite: return OJson("infinite");
    default: return OJson("undecided(cap=" + std::to_string(t.cap) + ")");
  }
}

OJson to_json(const OrderEqualityReport& r) {
  OJson o;
  o["f"] = r.f_text;
  o["p"] = json_int(r.p);
  o["k"] = r.k;
  o["theory"] = json_int(r.theory);
  o["oracle"] = json_int(r.oracle);
  o["ks"] = to_json(r.ks);
  o["pass"] = r.pass;
  o["roots"] = r.cluster_notes;
  return o;
}

OJson to_json(const OrderProfile& p, unsigned k) {
  OJson o;
  o["f"] = p.f_text();
  o["p"] = json_int(p.given.p);
  o["k"] = k;
  o["p1"] = json_int(p.p1);
  o["ks"] = to_json(p.ks());
  o["pk"] = json_int(p.pk(k));
  o["split_degree"] = p.split_degree;
  OJson roots = OJson::array();
  for (size_t i = 0; i < p.clusters.size(); ++i) {
    const auto& cl = p.clusters[i];
    OJson ro;
    ro["root"] = cl.root.str();
    ro["degree"] = cl.degree;
    ro["multiplicity"] = cl.multiplicity;
    ro["ord1"] = json_int(cl.ord1);
    if (cl.multiplicity == 1) ro["fk"] = to_json(p.cluster_fk(i));
    roots.push_back(std::move(ro));
  }
  o["roots"] = std::move(roots);
  return o;
}

OJson to_json(const EmbeddingReport& r) {
  OJson o;
  o["k"] = r.k;
  o["lower"] = to_json(r.lower);
  o["sub"] = to_json(r.sub);
  o["image_exact"] = r.image_exact;
  o["pass"] = r.pass;
  return o;
}

OJson to_json(const LiftLawReport& r) {
  OJson o;
  o["T_whole"] = json_int(r.t_whole);
  o["T_x0"] = json_int(r.t_x0);
  o["T_c"] = json_int(r.t_c);
  o["lcm"] = json_int(r.expected);
  o["pass"] = r.pass;
  return o;
}

OJson to_json(const DMatrix& d) {
  OJson o;
  o["v"] = d.v;
  OJson basis = OJson::array();
  for (const auto& u : d.odd_basis) basis.push_back(json_int(u));
  o["odd_basis"] = std::move(basis);
  OJson rows = OJson::array();
  for (const auto& row : d.b) {
    OJson jr = OJson::array();
    for (const auto& x : row) jr.push_back(json_int(x));
    rows.push_back(std::move(jr));
  }
  o["b"] = std::move(rows);
  OJson pruned = OJson::array();
  for (const auto& u : d.pruned) pruned.push_back(json_int(u));
  o["pruned"] = std::move(pruned);
  o["notes"] = d.notes;
  return o;
}

namespace {
OJson vec_json(const std::vector<BigInt>& v) {
  OJson a = OJson::array();
  for (const auto& x : v) a.push_back(json_int(x));
  return a;
}
}  // namespace

OJson to_json(const DmatrixReport& r) {
  OJson o;
  o["k"] = r.k;
  o["v"] = r.v;
  o["l"] = r.l;
  o["d_matrix"] = to_json(r.d);
  o["n_k"] = vec_json(r.n_k);
  o["predicted"] = vec_json(r.predicted);
  o["n_k_plus_l"] = vec_json(r.n_kl);
  o["vacuous"] = r.vacuous;
  o["pass"] = r.pass;
  return o;
}

OJson to_json(const StabilizationReport& r) {
  OJson o;
  o["T"] = json_int(r.T);
  o["khat_s"] = to_json(r.khat);
  o["k_start"] = r.k_start;
  o["k_hi"] = r.k_hi;
  o["counts"] = vec_json(r.counts);
  o["pass"] = r.pass;
  return o;
}

OJson to_json(const CatPrediction& p) {
  OJson o;
  o["a"] = json_int(p.params.a);
  o["b"] = json_int(p.params.b);
  o["p"] = json_int(p.params.mod.p);
  o["k"] = p.params.mod.k;
  o["row"] = cat_row_label(p.row);
  o["T"] = json_int(p.T);
  if (p.k1 != 0) {
    o["k1"] = json_int(p.k1);
    o["k2"] = json_int(p.k2);
  }
  o["ks"] = to_json(p.ks);
  o["table_certified"] = p.table_certified;
  return o;
}

OJson to_json(const CensusTable& t) {
  OJson o;
  o["p"] = json_int(t.p);
  o["k"] = t.k;
  o["total_pairs"] = json_int(t.total);
  OJson rows = OJson::array();
  for (const auto& r : t.rows) {
    OJson jr;
    jr["condition"] = r.condition;
    jr["T"] = json_int(r.T);
    jr["paper_count"] = json_int(r.paper_count);
    jr["derived_count"] = json_int(r.derived_count);
    jr["measured_count"] = json_int(r.measured_count);
    jr["pass_paper"] = r.pass_paper;
    jr["pass_derived"] = r.pass_derived;
    if (r.erratum) jr["erratum"] = "printed closed form is inconsistent; derived form shown";
    rows.push_back(std::move(jr));
  }
  o["rows"] = std::move(rows);
  o["all_pass_paper"] = t.all_pass_paper;
  o["all_pass_derived"] = t.all_pass_derived;
  o["prediction_mismatches"] = t.prediction_mismatches;
  return o;
}

OJson to_json(const DoublingReport& r) {
  OJson o;
  o["a"] = json_int(r.params.a);
  o["b"] = json_int(r.params.b);
  o["p"] = json_int(r.params.mod.p);
  o["k"] = r.k;
  OJson rows = OJson::array();
  for (const auto& row : r.rows) {
    OJson jr;
    jr["T"] = json_int(row.T);
    jr["nu"] = row.nu;
    jr["N_T_k"] = json_int(row.n_k);
    jr["N_pT_k1"] = json_int(row.n_pk);
    jr["printed_gate"] = row.printed_gate;
    jr["corrected_gate"] = row.corrected_gate;
    jr["pass"] = row.pass;
    rows.push_back(std::move(jr));
  }
  o["rows"] = std::move(rows);
  o["pass_all"] = r.pass_all;
  o["pass_corrected"] = r.pass_corrected;
  return o;
}

OJson to_json(const CatStabilization& s) {
  OJson o;
  o["theorem6_threshold"] = to_json(s.thm6);
  o["theorem7_bound"] = json_int(s.thm7_bound);
  if (s.verified)
    o["verified_stabilization"] = *s.verified;
  else
    o["verified_stabilization"] = nullptr;
  o["verified_up_to_k"] = s.verified_up_to;
  return o;
}

std::string census_csv(const CensusTable& t) {
  std::ostringstream os;
  os << "T,predicted_count,measured_count,pass\n";
  for (const auto& r : t.rows)
    os << r.T.str() << "," << r.paper_count.str() << "," << r.measured_count.str() << ","
       << (r.pass_paper ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace zpk
