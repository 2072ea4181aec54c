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
#ifndef ZPKCYCLES_ORDER_HPP
#define ZPKCYCLES_ORDER_HPP

#include <optional>
#include <string>
#include <vector>

#include "zpkcycles/polynomial.hpp"

namespace zpk {

// k_s-style threshold: the largest precision at which a quantity is still
// equal to its k = 1 value. "infinite" is certified (integer divisibility);
// "undecided" means the search cap was reached without a certificate.
struct Threshold {
  enum class Kind { finite, infinite, undecided };
  Kind kind = Kind::finite;
  unsigned value = 1;
  unsigned cap = 0;

  static Threshold finite(unsigned v) { return {Kind::finite, v, 0}; }
  static Threshold inf() { return {Kind::infinite, 0, 0}; }
  static Threshold undecided(unsigned cap) { return {Kind::undecided, 0, cap}; }
  bool is_finite() const { return kind == Kind::finite; }
  bool is_infinite() const { return kind == Kind::infinite; }
  std::string str() const {
    switch (kind) {
      case Kind::finite: return std::to_string(value);
      case Kind::infinite: return "infinite";
      default: return "undecided(cap=" + std::to_string(cap) + ")";
    }
  }
  bool operator==(const Threshold& o) const {
    return kind == o.kind && (kind != Kind::finite || value == o.value);
  }
};

struct OrderOptions {
  unsigned ks_cap = 64;       // incremental search cap for thresholds
  FactorOptions factor;       // root-finding configuration
  unsigned certificate_limit = 1u << 20;  // skip the Z[t] certificate above this P_1
};

// One irreducible-factor cluster of f mod p with its order data.
struct ClusterOrder {
  unsigned degree = 1;
  unsigned multiplicity = 1;
  RingElement root;  // representative root in GR(p, D)
  BigInt ord1;       // multiplicative order of the root mod p
  unsigned c = 0;    // min{c : multiplicity <= p^c}; 0 for simple roots
  // Simple clusters: f_k(alpha) = max{k : ord_k(lift) = ord_1}, resolved lazily.
  mutable std::optional<Threshold> fk;
};

// Order data of a monic unit-constant polynomial under the verbatim-lift
// convention: P_1, the threshold k_s, and the exact P_k closure.
class OrderProfile {
 public:
  std::vector<BigInt> f;  // canonical integer coefficients, low first
  Modulus given;          // modulus the polynomial was supplied at
  unsigned split_degree = 1;
  BigInt p1;
  std::vector<ClusterOrder> clusters;
  OrderOptions options;

  // Exact P_k(f) for any precision k >= 1.
  BigInt pk(unsigned k) const;
  // max{k : P_k = P_1}; runs the incremental scan with the cap and the
  // integer-divisibility certificate. Never throws: cap exhaustion yields
  // Kind::undecided.
  Threshold ks() const;
  // Per-cluster stabilization threshold f_k(alpha) (simple clusters).
  Threshold cluster_fk(size_t idx) const;
  // F_p coefficients of the cluster's irreducible factor g (orbit product).
  std::vector<BigInt> cluster_gbar(size_t idx) const;

  std::string f_text() const;

 private:
  mutable std::optional<Threshold> ks_;
  friend OrderProfile analyze_poly_order(const Polynomial&, const OrderOptions&);
};

OrderProfile analyze_poly_order(const Polynomial& f, const OrderOptions& opt = {});

// P_1(f) per the field-case order formula (lcm of root orders times the
// multiplicity power).
BigInt p1_of_poly(const Polynomial& f);

// Theorem-level k_s with the paper's m <= p hypothesis enforced; throws
// Errc::undecided when the cap is reached without a certificate.
std::pair<Threshold, OrderProfile> ks_of_poly(const Polynomial& f, const OrderOptions& opt = {});

// P_k(f); enforces the same m <= p hypothesis.
BigInt pk_of_poly(const Polynomial& f, unsigned k, const OrderOptions& opt = {});

// Default oracle bound 4 * p^k * (p^d - 1).
BigInt default_oracle_bound(const Modulus& mod, unsigned split_degree);

struct OrderEqualityReport {
  std::string f_text;
  BigInt p;
  unsigned k = 1;
  BigInt theory;
  BigInt oracle;
  Threshold ks;
  bool pass = false;
  std::vector<std::string> cluster_notes;
};

// Lemma-3 style check: the oracle order over Z_{p^k}[t] against the
// root-wise order computed in GR(p^k, d). Failures are report payload.
OrderEqualityReport verify_order_extension_equality(const Polynomial& f, unsigned k,
                                                    const OrderOptions& opt = {});

}  // namespace zpk

#endif
