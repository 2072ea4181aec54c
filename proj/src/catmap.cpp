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
#include "zpkcycles/catmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace zpk {

CatParams CatParams::make(const BigInt& a, const BigInt& b, const Modulus& mod) {
  CatParams p;
  p.a = mod_reduce(a, mod.pk);
  p.b = mod_reduce(b, mod.pk);
  p.mod = mod;
  // det C = 1 automatically; assert anyway.
  BigInt det = mod_reduce((1 + p.a * p.b) - p.a * p.b, mod.pk);
  if (det != 1) fail(Errc::theory_violation, "cat matrix determinant is not 1");
  return p;
}

Polynomial cat_minimal_poly(const CatParams& params) {
  ExtPtr ext = ExtensionDescriptor::get(params.mod, 1);
  if (params.a == 0 && params.b == 0)
    return Polynomial::from_integer_coeffs(ext, {BigInt(-1), BigInt(1)});  // t - 1
  BigInt tr = params.a * params.b + 2;
  return Polynomial::from_integer_coeffs(ext, {BigInt(1), -tr, BigInt(1)});
}

LinearMap cat_map(const CatParams& params) {
  std::vector<BigInt> wz = {BigInt(1), params.a, params.b, 1 + params.a * params.b};
  std::ostringstream label;
  label << "cat(" << params.a.str() << "," << params.b.str() << ")";
  LinearMap m = LinearMap::from_integer_matrix(params.mod, 2, std::move(wz),
                                               cat_minimal_poly(params).integer_coeffs(),
                                               label.str());
  return m;
}

LinearMap cat_companion(const CatParams& params) {
  return companion_map(cat_minimal_poly(params), 2);
}

StateVector cat_to_companion_state(const CatParams& params, const StateVector& z0) {
  if (z0.size() != 2) fail(Errc::usage, "cat state has two coordinates");
  LinearMap C = cat_map(params);
  StateVector z1 = C.W.apply(reduce_state(z0, params.mod));
  return {z0[0], z0[1], z1[0], z1[1]};
}

BigInt cat_true_period(const CatParams& params) { return map_order(cat_map(params)); }

const char* cat_row_label(CatRow row) {
  switch (row) {
    case CatRow::origin: return "(a,b)=(0,0)";
    case CatRow::ab0_a_unit: return "ab=0 (mod p), a unit";
    case CatRow::ab0_b_unit: return "ab=0 (mod p), b unit";
    case CatRow::ab_p_minus_4: return "ab=p-4 (mod p)";
    case CatRow::min_val: return "min(nu(a),nu(b))=k-i";
    case CatRow::ab0_max_val: return "ab=0, max(nu(a),nu(b))=k-i";
    case CatRow::k1_div_p_minus_1: return "k1 | p-1";
    case CatRow::k1_div_p_plus_1: return "k1 | p+1";
  }
  return "?";
}

namespace {

BigInt odd_part_of(const BigInt& t, const BigInt& p) {
  BigInt u = t;
  while (u % p == 0) u /= p;
  return u;
}

// Order analysis of the exact integer polynomial t^2 - (ab+2) t + 1. The
// analysis runs at a precision wide enough that every growth threshold
// resolves before the canonical representation wraps; for the unit rows
// ab + 2 >= 3, so the polynomial is never cyclotomic and the valuation of
// alpha^{ord} - 1 is bounded by the norm estimate 2 (p+1) log_p(ab + 3).
OrderProfile cat_order_profile(const CatParams& params) {
  BigInt tr = params.a * params.b + 2;
  const BigInt& p = params.mod.p;
  double pd = p.convert_to<double>();
  double lg = std::log(tr.convert_to<double>() + 1.0) / std::log(pd);
  unsigned K = std::max<unsigned>(
      params.mod.k, static_cast<unsigned>(std::ceil(2.0 * (pd + 1.0) * lg)) + 3);
  ExtPtr ext = ExtensionDescriptor::get(Modulus::make(p, K), 1);
  Polynomial f = Polynomial::from_integer_coeffs(ext, {BigInt(1), -tr, BigInt(1)});
  return analyze_poly_order(f);
}

Threshold min_cluster_threshold(const OrderProfile& prof) {
  std::optional<Threshold> best;
  for (size_t i = 0; i < prof.clusters.size(); ++i) {
    Threshold ti = prof.cluster_fk(i);
    if (!best) {
      best = ti;
      continue;
    }
    if (best->kind == Threshold::Kind::undecided || ti.kind == Threshold::Kind::undecided)
      best = Threshold::undecided(prof.options.ks_cap);
    else if (best->is_infinite())
      best = ti;
    else if (!ti.is_infinite())
      best = Threshold::finite(std::min(best->value, ti.value));
  }
  return best.value_or(Threshold::inf());
}

}  // namespace

CatPrediction cat_table_predict(const CatParams& params, bool analysis_only) {
  const Modulus& mod = params.mod;
  if (mod.p == 2) fail(Errc::out_of_theory, "p = 2 lives outside this parameter table");
  if (mod.p == 3 && !analysis_only)
    fail(Errc::out_of_theory,
         "the parameter/period table is stated for primes larger than 3; rerun with the analysis-only path");
  CatPrediction pred;
  pred.params = params;
  pred.k1 = 0;
  pred.k2 = 0;
  pred.table_certified = mod.p > 3;

  const BigInt& a = params.a;
  const BigInt& b = params.b;
  const unsigned k = mod.k;

  if (a == 0 && b == 0) {
    pred.row = CatRow::origin;
    pred.T = 1;
    pred.ks = Threshold::inf();
    return pred;
  }

  BigInt ab = a * b;
  Polynomial f = cat_minimal_poly(params);

  if (ab % mod.p == 0) {
    bool a_unit = a % mod.p != 0;
    bool b_unit = b % mod.p != 0;
    if (a_unit || b_unit) {
      pred.row = a_unit ? CatRow::ab0_a_unit : CatRow::ab0_b_unit;
      pred.T = mod.pk;
    } else if (a != 0 && b != 0) {
      unsigned v = std::min(int_valuation(a, mod.p), int_valuation(b, mod.p));
      pred.row = CatRow::min_val;
      pred.T = pow_int(mod.p, k - v);
    } else {
      // exactly one is zero (both handled above)
      unsigned v = int_valuation(a == 0 ? b : a, mod.p);
      pred.row = CatRow::ab0_max_val;
      pred.T = pow_int(mod.p, k - v);
    }
    pred.ks = Threshold::finite(1);  // alpha = 1 = alpha^{-1}
    return pred;
  }
  if (ab % mod.p == mod_reduce(-4, mod.p)) {
    pred.row = CatRow::ab_p_minus_4;
    pred.T = 2 * mod.pk;
    pred.ks = Threshold::finite(1);  // alpha = -1 = alpha^{-1}
    return pred;
  }

  // Units with ab not 0 or -4 mod p: the k1 * k2 rows.
  (void)f;
  OrderProfile prof = cat_order_profile(params);
  pred.T = prof.pk(k);
  pred.k1 = odd_part_of(pred.T, mod.p);
  pred.k2 = pred.T / pred.k1;
  pred.row = prof.split_degree == 1 ? CatRow::k1_div_p_minus_1 : CatRow::k1_div_p_plus_1;
  // Theorem threshold: the roots are alpha, alpha^{-1} with alpha != alpha^{-1}.
  pred.ks = min_cluster_threshold(prof);
  return pred;
}

CycleHistogram cat_enumerate(const CatParams& params, uint64_t budget) {
  return enumerate_cycles(cat_map(params), budget);
}

namespace {

struct CensusKey {
  CatRow row;
  BigInt T;
  BigInt k1, k2;
  bool operator<(const CensusKey& o) const {
    if (row != o.row) return row < o.row;
    if (T != o.T) return T < o.T;
    if (k1 != o.k1) return k1 < o.k1;
    return k2 < o.k2;
  }
};

BigInt euler_phi(const BigInt& n) {
  BigInt r = n;
  for (const auto& [q, e] : factorize(n)) r = r / q * (q - 1);
  return r;
}

}  // namespace

CensusTable cat_table_census(const BigInt& p, unsigned k, unsigned threads) {
  Modulus mod = Modulus::make(p, k);
  if (p <= 3)
    fail(Errc::out_of_theory, "census table is stated for primes larger than 3");
  CensusTable table;
  table.p = p;
  table.k = k;
  table.total = mod.pk * mod.pk;
  table.prediction_mismatches = 0;

  const uint64_t qk = mod.pk.convert_to<uint64_t>();
  if (qk > 100000) fail(Errc::capacity, "census over p^(2k) pairs exceeds the desk-scale budget");

  // Measure the true period of every (a, b); bucket by classification row.
  std::map<CensusKey, BigInt> measured;
  unsigned mismatches = 0;
  std::mutex merge_mutex;
  unsigned nthreads = std::max(1u, threads);
  std::vector<std::thread> pool;
  auto worker = [&](uint64_t lo, uint64_t hi) {
    std::map<CensusKey, BigInt> local;
    unsigned local_mismatch = 0;
    for (uint64_t av = lo; av < hi; ++av) {
      for (uint64_t bv = 0; bv < qk; ++bv) {
        CatParams params = CatParams::make(BigInt(av), BigInt(bv), mod);
        CatPrediction pred = cat_table_predict(params);
        BigInt T = cat_true_period(params);
        if (T != pred.T) ++local_mismatch;
        CensusKey key{pred.row, T, pred.k1, pred.k2};
        local[key] += 1;
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (const auto& [key, cnt] : local) measured[key] += cnt;
    mismatches += local_mismatch;
  };
  if (nthreads == 1) {
    worker(0, qk);
  } else {
    uint64_t chunk = (qk + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      uint64_t lo = t * chunk, hi = std::min<uint64_t>(qk, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  table.prediction_mismatches = mismatches;

  // Expected rows with the printed closed forms.
  std::map<CensusKey, std::pair<BigInt, BigInt>> expected;  // key -> (paper, derived)
  BigInt unit_count = mod.pk - mod.pk / p;                  // p^k - p^{k-1}
  BigInt pk2_2 = pow_int(p, 2 * k - 2) * (p - 1);
  expected[{CatRow::origin, BigInt(1), 0, 0}] = {BigInt(1), BigInt(1)};
  expected[{CatRow::ab0_a_unit, mod.pk, 0, 0}] = {pk2_2, pk2_2};
  expected[{CatRow::ab0_b_unit, mod.pk, 0, 0}] = {pk2_2, pk2_2};
  expected[{CatRow::ab_p_minus_4, 2 * mod.pk, 0, 0}] = {pk2_2, pk2_2};
  for (unsigned i = 1; i < k; ++i) {
    BigInt Ti = pow_int(p, i);
    BigInt paper_min = 2 * (p - 1) * pow_int(p, 2 * i - 1);
    BigInt derived_min =
        (pow_int(p, i) - 1) * (pow_int(p, i) - 1) -
        (pow_int(p, i - 1) - 1) * (pow_int(p, i - 1) - 1);
    expected[{CatRow::min_val, Ti, 0, 0}] = {paper_min, derived_min};
    BigInt cnt_max = 2 * (p - 1) * pow_int(p, i - 1);
    expected[{CatRow::ab0_max_val, Ti, 0, 0}] = {cnt_max, cnt_max};
  }
  for (int side = 0; side < 2; ++side) {
    BigInt base = side == 0 ? BigInt(p - 1) : BigInt(p + 1);
    CatRow row = side == 0 ? CatRow::k1_div_p_minus_1 : CatRow::k1_div_p_plus_1;
    for (const BigInt& k1 : divisors(base)) {
      if (k1 <= 2) continue;
      for (unsigned j = 0; j < k; ++j) {
        BigInt k2 = pow_int(p, j);
        BigInt cnt = euler_phi(k1 * k2) / 2 * unit_count;
        expected[{row, k1 * k2, k1, k2}] = {cnt, cnt};
      }
    }
  }

  std::set<CensusKey> keys;
  for (const auto& [key, v] : expected) keys.insert(key);
  for (const auto& [key, v] : measured) keys.insert(key);
  table.all_pass_paper = true;
  table.all_pass_derived = true;
  for (const auto& key : keys) {
    CensusRow row;
    row.condition = cat_row_label(key.row);
    if (key.k1 != 0) row.condition += " k1=" + key.k1.str() + " k2=" + key.k2.str();
    row.T = key.T;
    auto ite = expected.find(key);
    row.paper_count = ite == expected.end() ? BigInt(0) : ite->second.first;
    row.derived_count = ite == expected.end() ? BigInt(0) : ite->second.second;
    auto itm = measured.find(key);
    row.measured_count = itm == measured.end() ? BigInt(0) : itm->second;
    row.erratum = key.row == CatRow::min_val && row.paper_count != row.derived_count;
    row.pass_paper = row.paper_count == row.measured_count;
    row.pass_derived = row.derived_count == row.measured_count;
    table.all_pass_paper = table.all_pass_paper && row.pass_paper;
    table.all_pass_derived = table.all_pass_derived && row.pass_derived;
    table.rows.push_back(std::move(row));
  }
  return table;
}

DoublingReport cat_count_doubling_check(const CatParams& params, unsigned k, uint64_t budget) {
  DoublingReport rep;
  rep.params = params;
  rep.k = k;
  CatParams pk_params = CatParams::make(params.a, params.b, Modulus::make(params.mod.p, k));
  CatParams pk1_params = CatParams::make(params.a, params.b, Modulus::make(params.mod.p, k + 1));
  CycleHistogram hk = cat_enumerate(pk_params, budget);
  CycleHistogram hk1 = cat_enumerate(pk1_params, budget);
  const BigInt& p = params.mod.p;

  unsigned nu_p1 = 0;
  {
    CatParams base = CatParams::make(params.a, params.b, Modulus::make(p, 1));
    BigInt p1 = p1_of_poly(cat_minimal_poly(base).at_precision(1));
    nu_p1 = p1 % p == 0 ? int_valuation(p1, p) : 0;
  }

  std::set<BigInt> lengths;
  for (const auto& [t, n] : hk.cycles)
    if (t % p == 0) lengths.insert(t);
  for (const auto& [t, n] : hk1.cycles)
    if (t % (p * p) == 0) lengths.insert(t / p);

  rep.pass_all = true;
  rep.pass_corrected = true;
  for (const BigInt& t : lengths) {
    DoublingRow row;
    row.T = t;
    row.nu = int_valuation(t, p);
    row.n_k = hk.count(t);
    row.n_pk = hk1.count(t * p);
    row.printed_gate = BigInt(row.nu) > p;
    row.corrected_gate = row.nu > nu_p1;
    row.pass = p * row.n_k == row.n_pk;
    rep.pass_all = rep.pass_all && row.pass;
    if (row.corrected_gate) rep.pass_corrected = rep.pass_corrected && row.pass;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

CatStabilization cat_stabilization_threshold(const CatParams& params, uint64_t budget) {
  if (params.a == 0 && params.b == 0)
    fail(Errc::usage, "stabilization threshold needs (a, b) not both zero");
  CatStabilization out;
  const BigInt& p = params.mod.p;

  BigInt ab = params.a * params.b;
  if (ab % p == 0 || ab % p == mod_reduce(-4, p)) {
    out.thm6 = Threshold::finite(1);  // alpha = alpha^{-1} (root +-1)
  } else {
    out.thm6 = min_cluster_threshold(cat_order_profile(params));
  }

  // Theorem-7 style coarse bound p (p^2 - 1) log_p(ab + 2), rounded up.
  {
    double abp2 = (ab + 2).convert_to<double>();
    double lg = abp2 > 1.0 ? std::log(abp2) / std::log(p.convert_to<double>()) : 0.0;
    double bound = p.convert_to<double>() * (p.convert_to<double>() * p.convert_to<double>() - 1.0) * lg;
    out.thm7_bound = BigInt(static_cast<long long>(std::ceil(bound)));
    if (out.thm7_bound < 1) out.thm7_bound = 1;
  }

  // Enumeration-verified stabilization point within the budget.
  unsigned kmax = 0;
  {
    BigInt space = p * p;
    while (space * p * p <= budget) {
      space *= p * p;
      ++kmax;
    }
    ++kmax;  // space = p^{2 kmax}
  }
  out.verified_up_to = kmax;
  if (kmax >= 2) {
    std::vector<CycleHistogram> hists;
    for (unsigned k = 1; k <= kmax; ++k)
      hists.push_back(cat_enumerate(CatParams::make(params.a, params.b, Modulus::make(p, k)), budget));
    auto stable_from = [&](unsigned k0) {
      for (unsigned k = k0; k < kmax; ++k)
        for (const auto& [t, n] : hists[k - 1].cycles)
          if (hists[k].count(t) != n) return false;
      return true;
    };
    for (unsigned k0 = 1; k0 <= kmax; ++k0) {
      if (stable_from(k0)) {
        out.verified = k0;
        break;
      }
    }
  }
  return out;
}

}  // namespace zpk
