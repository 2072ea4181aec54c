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
#ifndef ZPKCYCLES_POLYNOMIAL_HPP
#define ZPKCYCLES_POLYNOMIAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "zpkcycles/galois_ring.hpp"

namespace zpk {

// Dense polynomial over GR(p^k, d), lowest degree first. The zero polynomial
// is the empty coefficient vector.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial zero(const ExtPtr& ext);
  static Polynomial one(const ExtPtr& ext);
  static Polynomial t(const ExtPtr& ext);  // the monomial t
  static Polynomial from_coeffs(const ExtPtr& ext, std::vector<RingElement> c);
  // Scalar coefficients embedded into the extension.
  static Polynomial from_integer_coeffs(const ExtPtr& ext, const std::vector<BigInt>& c);
  // Text form "c0 + c1*t + c2*t^2" (also "1 - 4t + t^2") or list form
  // "[c0, c1, ...]". Coefficients with |c| >= p^k are rejected.
  static Polynomial parse(const Modulus& mod, const std::string& text);

  const ExtPtr& ext() const { return ext_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  const RingElement& coeff(size_t i) const;
  RingElement coeff_or_zero(size_t i) const;
  const std::vector<RingElement>& coeffs() const { return c_; }

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  RingElement eval(const RingElement& x) const;
  Polynomial derivative() const;
  std::string str() const;
  // Canonical integer coefficients (the verbatim-lift identity of the poly).
  std::vector<BigInt> integer_coeffs() const;
  // Same integer coefficients reinterpreted at precision k2 (scalar/d kept).
  Polynomial at_precision(unsigned k2) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  ExtPtr ext_;
  std::vector<RingElement> c_;
};

// Division with remainder; the divisor's leading coefficient must be a unit.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b);
Polynomial poly_mod(const Polynomial& a, const Polynomial& b);

// Euclidean gcd, monic; only defined over the field case k = 1.
Polynomial poly_gcd_field(const Polynomial& a, const Polynomial& b);
Polynomial poly_lcm_field(const Polynomial& a, const Polynomial& b);

// One irreducible factor of f mod p: the full Frobenius orbit of roots in
// GR(p, D) with the orbit's common multiplicity.
struct RootCluster {
  std::vector<RingElement> roots;
  unsigned multiplicity = 1;
  unsigned degree = 1;  // == roots.size()
};

struct RootSet {
  ExtPtr gr1;  // GR(p, D), home of all listed roots
  unsigned d = 1;
  std::vector<RootCluster> clusters;

  std::vector<std::pair<RingElement, unsigned>> flat() const;
};

struct FactorOptions {
  // Exhaustive root scan threshold; beyond it odd p falls back to
  // Cantor-Zassenhaus splitting, and past hard_bound a capacity error names d.
  BigInt scan_bound = 1000000;
  BigInt hard_bound = BigInt("1000000000000");
  uint64_t rng_seed = 0x5eedcafe;
};

// Roots of f mod p, with multiplicities, in the splitting ring GR(p, D).
// Requires a unit constant term (the paper's standing "no root of value
// zero" hypothesis).
RootSet factor_mod_p(const Polynomial& f, const FactorOptions& opt = {});

// Hensel/Newton lift of a simple mod-p root to precision target_k by
// iterating x <- x - f'(x)^{-1} f(x) exactly (target_k - 1) times.
RingElement newton_lift(const Polynomial& f, const RingElement& root, unsigned target_k);

// Ground-truth order oracle: least l <= bound with t^l = 1 mod (f, p^k),
// maintained incrementally (one multiply-by-t-and-reduce per step).
BigInt poly_order_oracle(const Polynomial& f, const BigInt& bound);

// The same scan run on several polynomials in lockstep; each polynomial
// still advances one multiply-by-t-and-reduce per step, but the independent
// reduction chains overlap. Results are identical to per-polynomial calls.
std::vector<BigInt> poly_order_oracle_batch(const std::vector<Polynomial>& fs,
                                            const BigInt& bound);

}  // namespace zpk

#endif
