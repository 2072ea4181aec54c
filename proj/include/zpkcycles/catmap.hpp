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
#ifndef ZPKCYCLES_CATMAP_HPP
#define ZPKCYCLES_CATMAP_HPP

#include "zpkcycles/dynamics.hpp"

namespace zpk {

// Parameters of the 2D map (x, y) -> (x + ay, bx + (1 + ab)y) mod p^k.
struct CatParams {
  BigInt a, b;
  Modulus mod;

  static CatParams make(const BigInt& a, const BigInt& b, const Modulus& mod);
};

// The Cat map as a 2-dimensional linear system (det C = 1).
LinearMap cat_map(const CatParams& params);
// Its 4-dimensional block companion (n = 2) for cross-checks.
LinearMap cat_companion(const CatParams& params);
// t - 1 for (0,0), else t^2 - (ab+2) t + 1.
Polynomial cat_minimal_poly(const CatParams& params);
// Embedding of a Cat state z0 into the companion state (z0, C z0).
StateVector cat_to_companion_state(const CatParams& params, const StateVector& z0);
// Exact least period of the map (order of C).
BigInt cat_true_period(const CatParams& params);

enum class CatRow {
  origin,          // (a,b) = (0,0), T = 1
  ab0_a_unit,      // ab = 0 mod p, a a unit: T = p^k
  ab0_b_unit,      // ab = 0 mod p, b a unit: T = p^k
  ab_p_minus_4,    // ab = p-4 mod p: T = 2 p^k
  min_val,         // both nonzero, min(nu a, nu b) = k-i: T = p^i
  ab0_max_val,     // exactly one of a,b zero, its partner valuation k-i: T = p^i
  k1_div_p_minus_1,
  k1_div_p_plus_1,
};

const char* cat_row_label(CatRow row);

struct CatPrediction {
  CatParams params;
  CatRow row;
  BigInt T;             // table-predicted least period
  BigInt k1, k2;        // odd / p parts for the k1*k2 rows (else 0)
  Threshold ks;         // Theorem-level threshold (1 if alpha = alpha^{-1})
  bool table_certified; // false for p <= 3 (table stated for p > 3)
};

// Classifies (a, b) into its table row; p <= 3 raises out-of-table unless
// analysis_only (the pipeline itself runs for p = 3, only the table
// certification is withheld).
CatPrediction cat_table_predict(const CatParams& params, bool analysis_only = false);

struct CensusRow {
  std::string condition;
  BigInt T;
  BigInt paper_count;     // the printed closed form
  BigInt derived_count;   // corrected form where the printed one is inconsistent
  BigInt measured_count;
  bool pass_paper;
  bool pass_derived;
  bool erratum;           // printed form provably wrong (T = p^i row)
};

struct CensusTable {
  BigInt p;
  unsigned k;
  std::vector<CensusRow> rows;
  BigInt total;
  bool all_pass_paper;
  bool all_pass_derived;
  unsigned prediction_mismatches;  // pairs whose measured period left its row's T
};

// Full parameter census over Z_{p^k}^2 against the table's closed forms.
CensusTable cat_table_census(const BigInt& p, unsigned k, unsigned threads = 1);

// Exact cycle histogram of the Cat map on Z_{p^k}^2.
CycleHistogram cat_enumerate(const CatParams& params, uint64_t budget = 20000000ull);

struct DoublingRow {
  BigInt T;
  unsigned nu;
  BigInt n_k, n_pk;
  bool printed_gate;    // nu(T) > p (as printed)
  bool corrected_gate;  // nu(T) > nu(P_1(f))
  bool pass;            // p * N_{T,k} == N_{pT,k+1}
};

struct DoublingReport {
  CatParams params;
  unsigned k;
  std::vector<DoublingRow> rows;
  bool pass_all;        // every nu >= 1 row passes
  bool pass_corrected;  // every corrected-gate row passes
};

DoublingReport cat_count_doubling_check(const CatParams& params, unsigned k,
                                        uint64_t budget = 20000000ull);

struct CatStabilization {
  Threshold thm6;                // 1 if alpha = alpha^{-1}, else k(alpha)
  BigInt thm7_bound;             // ceil(p (p^2 - 1) log_p(ab + 2))
  std::optional<unsigned> verified;  // enumeration-verified stabilization point
  unsigned verified_up_to = 0;
};

CatStabilization cat_stabilization_threshold(const CatParams& params,
                                             uint64_t budget = 20000000ull);

}  // namespace zpk

#endif
