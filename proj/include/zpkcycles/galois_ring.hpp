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
#ifndef ZPKCYCLES_GALOIS_RING_HPP
#define ZPKCYCLES_GALOIS_RING_HPP

#include <memory>
#include <string>
#include <vector>

#include "zpkcycles/common.hpp"

namespace zpk {

// The prime power p^k governing all arithmetic.
struct Modulus {
  BigInt p;
  unsigned k = 1;
  BigInt pk;

  static Modulus make(const BigInt& p, unsigned k);
  Modulus at_precision(unsigned k2) const { return make(p, k2); }
  bool operator==(const Modulus& o) const { return p == o.p && k == o.k; }
  std::string str() const { return p.str() + "^" + std::to_string(k); }
};

class ExtensionDescriptor;
using ExtPtr = std::shared_ptr<const ExtensionDescriptor>;

// GR(p^k, d) = Z_{p^k}[t]/(h) with h monic of degree d, irreducible mod p.
// d = 1 keeps the placeholder h = t and recovers Z_{p^k} itself.
// The defining h is found by a deterministic lexicographic search mod p and
// lifted verbatim, so descriptors are reproducible across runs.
class ExtensionDescriptor {
 public:
  Modulus mod;
  unsigned d;
  std::vector<BigInt> h;  // degree d monic, coefficients low-first, size d+1

  // Cached deterministic descriptor for GR(p^k, d).
  static ExtPtr get(const Modulus& mod, unsigned d);
  // Descriptor with a caller-supplied h (verified irreducible mod p).
  static ExtPtr with_poly(const Modulus& mod, std::vector<BigInt> h);

  bool same(const ExtensionDescriptor& o) const { return mod == o.mod && d == o.d && h == o.h; }
  std::string str() const;

 private:
  ExtensionDescriptor(Modulus m, unsigned dd, std::vector<BigInt> hh)
      : mod(std::move(m)), d(dd), h(std::move(hh)) {}
};

// An element of GR(p^k, d): d residues in [0, p^k), low degree first.
class RingElement {
 public:
  RingElement() = default;
  static RingElement zero(const ExtPtr& ext);
  static RingElement one(const ExtPtr& ext);
  static RingElement from_integer(const ExtPtr& ext, const BigInt& v);
  static RingElement from_coeffs(const ExtPtr& ext, std::vector<BigInt> c);

  const ExtPtr& ext() const { return ext_; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_one() const;
  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  RingElement pow(BigInt e) const;
  // Frobenius x -> x^p (used to walk conjugate orbits).
  RingElement frobenius() const { return pow(ext_->mod.p); }

  std::string str() const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a);

 private:
  ExtPtr ext_;
  std::vector<BigInt> c_;
};

// Multiplicative inverse of a unit (nu(a) = 0): invert mod p by extended gcd
// in F_{p^d}, then Newton refinement x <- x(2 - ax) up to precision p^k.
RingElement ring_inverse(const RingElement& a);

// nu(a): largest v with p^v dividing every coefficient; INFINITE for zero.
Valuation valuation(const RingElement& a);

// Least j >= 1 with a^j = 1 in GR(p^k, d). Non-unit input is an error.
BigInt mult_order(const RingElement& a);

// Same coefficients viewed in GR(p^k2, d) with the same h: reduction for
// k2 < k, verbatim lift for k2 > k.
RingElement at_precision(const RingElement& a, unsigned k2);

}  // namespace zpk

#endif
