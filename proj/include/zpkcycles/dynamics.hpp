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
#ifndef ZPKCYCLES_DYNAMICS_HPP
#define ZPKCYCLES_DYNAMICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zpkcycles/matrix.hpp"
#include "zpkcycles/order.hpp"

namespace zpk {

using StateVector = std::vector<BigInt>;

// Exact linear permutation x -> Wx on Z_{p^k}^dim. Wz holds the defining
// integer matrix; reducing it mod p^k2 gives the same system at any
// precision. Companion maps carry their (m, n) block structure.
struct LinearMap {
  Modulus mod;
  unsigned dim = 0;
  Matrix W;                   // Wz reduced mod p^k
  std::vector<BigInt> Wz;     // exact integer entries, row-major
  std::vector<BigInt> f;      // canonical integer coefficients, monic, unit constant
  std::optional<std::pair<unsigned, unsigned>> block;
  std::string label;

  static LinearMap from_integer_matrix(const Modulus& mod, unsigned dim, std::vector<BigInt> wz,
                                       std::vector<BigInt> f, std::string label);
  LinearMap at_precision(unsigned k2) const;
  Polynomial f_poly() const;
  Polynomial f_poly_at(unsigned k2) const;
  BigInt state_count() const;  // p^{k*dim}
};

// Block companion map of a monic f with unit constant term: identity blocks
// on the superdiagonal, last block-row -f_0 I, ..., -f_{m-1} I.
LinearMap companion_map(const Polynomial& f, unsigned n);

StateVector reduce_state(const StateVector& x, const Modulus& mod);
StateVector iterate(const LinearMap& map, const StateVector& x, const BigInt& steps);

// Exact least period of the whole map (order of W mod p^k): incremental
// order mod p, then the p-group part.
BigInt map_order(const LinearMap& map, const BigInt& t1_bound = BigInt(10000000));

// Least T >= 1 with W^T x = x, by testing divisors of the global period.
BigInt state_period(const LinearMap& map, const StateVector& x,
                    const std::optional<BigInt>& global_period = std::nullopt);

// Minimal polynomial of the trajectory of x0 at k = 1: least period T_s by
// iteration, then per-coordinate (t^T - 1)/gcd with the trajectory
// polynomial, combined by lcm. The zero trajectory yields 1.
Polynomial minimal_poly_of_sequence(const LinearMap& map, const StateVector& x0);

// Lemma-11 style threshold of a k=1 state: min over the simple roots of the
// trajectory's minimal polynomial of their order-stability thresholds.
Threshold ks_of_state(const LinearMap& map, const StateVector& x0, const OrderOptions& opt = {});

struct CycleHistogram {
  std::map<BigInt, BigInt> cycles;  // length -> count
  BigInt total_states;

  BigInt weighted_sum() const;
  BigInt lcm_of_lengths() const;
  BigInt count(const BigInt& T) const;
};

// Exact cycle decomposition over the full state space via a visited bitmap.
CycleHistogram enumerate_cycles(const LinearMap& map, uint64_t budget = 20000000ull);

struct EmbeddingReport {
  unsigned k = 2;
  CycleHistogram lower;          // full histogram at k-1
  CycleHistogram sub;            // cycles of multiples of p at k
  bool image_exact = false;      // the (p)-states are exactly the embedded copy
  bool pass = false;
};

// Lemma 9: x -> p*x maps G_{p^{k-1}} isomorphically onto the (p)-subgraph.
EmbeddingReport embedding_check(const LinearMap& map, uint64_t budget = 20000000ull);

struct LiftLawReport {
  BigInt t_whole, t_x0, t_c, expected;
  bool pass = false;
};

// Lemma 12: T_k(x0 + p^{k'} c) = lcm(T_k(x0), T_{k-k'}(c)) by measurement.
LiftLawReport period_lift_law_check(const LinearMap& map, const StateVector& x0,
                                    const StateVector& c, unsigned k_prime);

// Lemma 13 count a(T*, T) over the map's own k=1 state space.
BigInt splitting_count(const LinearMap& map, const BigInt& t_star, const BigInt& t);
std::map<BigInt, BigInt> splitting_table(const LinearMap& map, const BigInt& t_star);

struct DMatrix {
  unsigned v = 1;                     // valuation level of the source vector
  std::vector<BigInt> odd_basis;      // ascending odd-of-p parts
  std::vector<std::vector<BigInt>> b; // b[j][i] = a_{ij}/p, lower triangular
  std::vector<BigInt> pruned;         // odd parts dropped (never reach level v)
  std::vector<std::string> notes;
};

// Theorem 2 transition matrix; requires v > nu(P_1(f)).
DMatrix build_d_matrix(const LinearMap& map, unsigned v, const OrderOptions& opt = {});

struct DmatrixReport {
  DMatrix d;
  unsigned k = 1, v = 1, l = 1;
  std::vector<BigInt> n_k;         // measured N_k(v)
  std::vector<BigInt> predicted;   // D^l N_k(v)
  std::vector<BigInt> n_kl;        // measured N_{k+l}(v+l)
  bool vacuous = false;
  bool pass = false;
};

DmatrixReport dmatrix_recursion_check(const LinearMap& map, unsigned k, unsigned v, unsigned l,
                                      uint64_t budget = 20000000ull);

struct StabilizationReport {
  BigInt T;
  unsigned k_start = 1, k_hi = 1;
  Threshold khat;                   // max_x ks_of_state
  std::vector<BigInt> counts;       // N_{T,k} for k in [k_start, k_hi]
  bool pass = false;
};

// Theorem 3: N_{T,k} constant for k >= khat_s + nu(T); hypothesis gate
// f(1), f(-1) units, khat_s finite.
StabilizationReport stabilization_check(const LinearMap& map, const BigInt& T, unsigned k_lo,
                                        unsigned k_hi, uint64_t budget = 20000000ull);

// DOT export of the full functional graph; refuses > 10^4 states.
void write_dot(const LinearMap& map, std::ostream& os);

}  // namespace zpk

#endif
