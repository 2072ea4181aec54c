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
#include "zpkcycles/common.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace zpk {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::descriptor_mismatch: return "descriptor-mismatch";
    case Errc::non_unit: return "non-unit";
    case Errc::multiple_root: return "multiple-root";
    case Errc::zero_root: return "zero-root";
    case Errc::unsupported_ring: return "unsupported-ring";
    case Errc::capacity: return "capacity";
    case Errc::bound_exhausted: return "bound-exhausted";
    case Errc::out_of_theory: return "out-of-theory";
    case Errc::undecided: return "undecided";
    case Errc::theory_violation: return "theory-violation";
    case Errc::parse: return "parse";
    case Errc::usage: return "usage";
  }
  return "unknown";
}

unsigned int_valuation(BigInt x, const BigInt& p) {
  if (x == 0) fail(Errc::usage, "valuation of integer zero is infinite");
  if (x < 0) x = -x;
  unsigned v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

BigInt pow_int(const BigInt& base, unsigned e) {
  BigInt r = 1, b = base;
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

BigInt pow_mod(BigInt base, BigInt exp, const BigInt& mod) {
  base = mod_reduce(base, mod);
  return boost::multiprecision::powm(base, exp, mod);
}

namespace {

bool miller_rabin_witness(const BigInt& n, const BigInt& a, const BigInt& d, unsigned r) {
  BigInt x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < r; ++i) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;  // composite witness
}

}  // namespace

namespace {

bool is_prime_uncached(const BigInt& n) {
  static const int small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int q : small_primes) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  // Deterministic bound for this base set (Sorenson & Webster).
  static const BigInt det_bound("3317044064679887385961981");
  if (n >= det_bound) fail(Errc::capacity, "primality check limited to inputs below 3.3e24");
  BigInt d = n - 1;
  unsigned r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (int a : small_primes)
    if (miller_rabin_witness(n, a, d, r)) return false;
  return true;
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  static std::mutex mu;
  static std::map<BigInt, bool> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
  }
  bool result = is_prime_uncached(n);
  std::lock_guard<std::mutex> lock(mu);
  if (memo.size() > 4096) memo.clear();
  memo.emplace(n, result);
  return result;
}

std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n) {
  if (n <= 0) fail(Errc::usage, "factorize expects a positive integer");
  std::vector<std::pair<BigInt, unsigned>> out;
  auto strip = [&](const BigInt& q) {
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e) out.emplace_back(q, e);
  };
  strip(2);
  strip(3);
  for (BigInt q = 5; q * q <= n && q <= 2000000; q += (q % 6 == 5) ? 2 : 4) strip(q);
  if (n > 1) {
    if (!is_prime(n))
      fail(Errc::capacity, "factorize: composite cofactor " + big_str(n) + " beyond trial-division range");
    out.emplace_back(n, 1u);
  }
  return out;
}

std::vector<BigInt> divisors(const BigInt& n) {
  auto fac = factorize(n);
  std::vector<BigInt> out{1};
  for (const auto& [q, e] : fac) {
    const size_t base = out.size();
    BigInt qe = 1;
    for (unsigned i = 1; i <= e; ++i) {
      qe *= q;
      for (size_t j = 0; j < base; ++j) out.push_back(out[j] * qe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string big_str(const BigInt& x) { return x.str(); }

IntPoly int_poly_trim(IntPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

IntPoly int_poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return int_poly_trim(std::move(r));
}

std::optional<IntPoly> int_poly_exact_div(const IntPoly& num, const IntPoly& den_in) {
  IntPoly den = int_poly_trim(den_in);
  if (den.empty() || den.back() != 1) fail(Errc::usage, "integer polynomial division requires a monic divisor");
  IntPoly rem = int_poly_trim(num);
  if (rem.size() < den.size()) return rem.empty() ? std::optional<IntPoly>(IntPoly{}) : std::nullopt;
  IntPoly quot(rem.size() - den.size() + 1, BigInt(0));
  for (size_t i = quot.size(); i-- > 0;) {
    BigInt c = (i + den.size() - 1 < rem.size()) ? rem[i + den.size() - 1] : BigInt(0);
    quot[i] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= c * den[j];
  }
  for (const BigInt& c : rem)
    if (c != 0) return std::nullopt;
  return int_poly_trim(std::move(quot));
}

IntPoly int_poly_xn_minus_1(unsigned n) {
  IntPoly r(n + 1, BigInt(0));
  r[0] = -1;
  r[n] = 1;
  return r;
}

}  // namespace zpk
