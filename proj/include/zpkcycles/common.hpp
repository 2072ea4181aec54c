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
#ifndef ZPKCYCLES_COMMON_HPP
#define ZPKCYCLES_COMMON_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zpk {

using BigInt = boost::multiprecision::cpp_int;

// Error categories surfaced by the library. The CLI maps usage/capacity
// to exit code 2 and theory violations to exit code 1.
enum class Errc {
  descriptor_mismatch,
  non_unit,
  multiple_root,
  zero_root,
  unsupported_ring,
  capacity,
  bound_exhausted,
  out_of_theory,
  undecided,
  theory_violation,
  parse,
  usage,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

const char* errc_name(Errc code);

// p-adic valuation of a ring element; INFINITE marks the zero element.
struct Valuation {
  bool infinite = false;
  unsigned value = 0;

  static Valuation inf() { return Valuation{true, 0}; }
  static Valuation of(unsigned v) { return Valuation{false, v}; }
  bool operator==(const Valuation& o) const { return infinite == o.infinite && (infinite || value == o.value); }
  std::string str() const { return infinite ? "infinite" : std::to_string(value); }
};

// Valuation of a nonzero integer with respect to the prime p.
unsigned int_valuation(BigInt x, const BigInt& p);

BigInt pow_int(const BigInt& base, unsigned e);
BigInt pow_mod(BigInt base, BigInt exp, const BigInt& mod);

// Deterministic Miller-Rabin (valid below ~3.3e24; larger inputs are rejected
// with a capacity error rather than answered probabilistically).
bool is_prime(const BigInt& n);

// Prime factorization by trial division plus a primality check on the
// cofactor. Raises capacity if a large composite cofactor resists.
std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n);

// All positive divisors, ascending.
std::vector<BigInt> divisors(const BigInt& n);

inline BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt big_lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

// x mod m reduced into [0, m).
inline BigInt mod_reduce(BigInt x, const BigInt& m) {
  x %= m;
  if (x < 0) x += m;
  return x;
}

std::string big_str(const BigInt& x);

// --- exact integer polynomials (coefficients low degree first) ---
// Used for the verbatim-lift stabilization certificate and cyclotomics.
using IntPoly = std::vector<BigInt>;

IntPoly int_poly_trim(IntPoly a);
IntPoly int_poly_mul(const IntPoly& a, const IntPoly& b);
// Exact division over Z; returns nullopt when the remainder is nonzero or
// the division leaves the integers. Divisor must be monic.
std::optional<IntPoly> int_poly_exact_div(const IntPoly& num, const IntPoly& den);
// t^n - 1 as an integer polynomial.
IntPoly int_poly_xn_minus_1(unsigned n);

}  // namespace zpk

#endif
