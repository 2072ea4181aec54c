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
#include "zpkcycles/galois_ring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace zpk {

Modulus Modulus::make(const BigInt& p, unsigned k) {
  if (k < 1) fail(Errc::usage, "modulus exponent k must be >= 1");
  if (!is_prime(p)) fail(Errc::usage, "modulus base " + p.str() + " is not prime");
  Modulus m;
  m.p = p;
  m.k = k;
  m.pk = pow_int(p, k);
  return m;
}

namespace {

// Minimal F_p[t] toolkit used only for descriptor construction. Polynomials
// are coefficient vectors (low first) with entries in [0, p).
using FpPoly = std::vector<BigInt>;

FpPoly fp_trim(FpPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, const BigInt& p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return fp_trim(std::move(r));
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, const BigInt& p) {
  a = fp_trim(std::move(a));
  const size_t dm = m.size() - 1;
  BigInt lead_inv = pow_mod(m.back(), p - 2, p);
  while (a.size() > dm) {
    BigInt c = a.back() * lead_inv % p;
    size_t shift = a.size() - 1 - dm;
    for (size_t j = 0; j < m.size(); ++j) {
      a[shift + j] = mod_reduce(a[shift + j] - c * m[j], p);
    }
    a = fp_trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

FpPoly fp_powmod_x(const BigInt& exp, const FpPoly& m, const BigInt& p) {
  // t^exp mod m
  FpPoly result{1};
  FpPoly base{0, 1};
  BigInt e = exp;
  while (e > 0) {
    if (e % 2 == 1) result = fp_mod(fp_mul(result, base, p), m, p);
    e /= 2;
    if (e > 0) base = fp_mod(fp_mul(base, base, p), m, p);
  }
  return result;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, const BigInt& p) {
  a = fp_trim(std::move(a));
  b = fp_trim(std::move(b));
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    BigInt inv = pow_mod(a.back(), p - 2, p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

bool fp_is_irreducible(const FpPoly& h, const BigInt& p) {
  const size_t d = h.size() - 1;
  if (d == 0) return false;
  if (d == 1) return true;
  // No irreducible factor of degree <= d/2  <=>  irreducible for monic h.
  BigInt pi = 1;
  for (size_t i = 1; i <= d / 2; ++i) {
    pi *= p;
    FpPoly r = fp_powmod_x(pi, h, p);  // t^{p^i} mod h
    // r - t
    FpPoly rt = r;
    if (rt.size() < 2) rt.resize(2, BigInt(0));
    rt[1] = mod_reduce(rt[1] - 1, p);
    rt = fp_trim(std::move(rt));
    FpPoly g = fp_gcd(rt, h, p);
    if (!(g.size() == 1 && g[0] == 1)) return false;
  }
  return true;
}

std::vector<BigInt> find_irreducible(const BigInt& p, unsigned d) {
  if (d == 1) return {BigInt(0), BigInt(1)};  // placeholder h = t
  // Lexicographic search over monic degree-d polynomials mod p, constant
  // coefficient most significant would also work; the spec fixes coefficient
  // order (c_0, c_1, ...) ascending.
  std::vector<BigInt> c(d + 1, BigInt(0));
  c[d] = 1;
  while (true) {
    if (c[0] != 0 && fp_is_irreducible(c, p)) return c;
    // lexicographic order on (c_0, ..., c_{d-1}): the last coefficient
    // varies fastest.
    size_t i = d;
    while (i > 0) {
      --i;
      c[i] += 1;
      if (c[i] < p) break;
      c[i] = 0;
      if (i == 0) fail(Errc::theory_violation, "no irreducible polynomial found (impossible)");
    }
  }
}

struct DescKey {
  std::string p;
  unsigned k;
  unsigned d;
  bool operator<(const DescKey& o) const {
    return std::tie(p, k, d) < std::tie(o.p, o.k, o.d);
  }
};

std::mutex g_desc_mutex;
std::map<DescKey, ExtPtr> g_desc_cache;
std::map<std::string, ExtPtr> g_poly_desc_cache;

}  // namespace

ExtPtr ExtensionDescriptor::get(const Modulus& mod, unsigned d) {
  if (d < 1) fail(Errc::usage, "extension degree must be >= 1");
  DescKey key{mod.p.str(), mod.k, d};
  std::lock_guard<std::mutex> lock(g_desc_mutex);
  auto it = g_desc_cache.find(key);
  if (it != g_desc_cache.end()) return it->second;
  // h found mod p, lifted verbatim (same integer coefficients).
  std::vector<BigInt> h = find_irreducible(mod.p, d);
  ExtPtr ptr(new ExtensionDescriptor(mod, d, std::move(h)));
  g_desc_cache.emplace(std::move(key), ptr);
  return ptr;
}

ExtPtr ExtensionDescriptor::with_poly(const Modulus& mod, std::vector<BigInt> h) {
  if (h.empty() || h.back() == 0) fail(Errc::usage, "defining polynomial must be nonzero with nonzero lead");
  unsigned d = static_cast<unsigned>(h.size() - 1);
  for (auto& c : h) c = mod_reduce(c, mod.pk);
  if (h.back() != 1) fail(Errc::usage, "defining polynomial must be monic");
  std::string hkey = mod.p.str() + "/" + std::to_string(mod.k);
  for (const auto& c : h) hkey += ":" + c.str();
  {
    std::lock_guard<std::mutex> lock(g_desc_mutex);
    auto it = g_poly_desc_cache.find(hkey);
    if (it != g_poly_desc_cache.end()) return it->second;
  }
  if (d >= 2) {
    std::vector<BigInt> hbar(h.size());
    for (size_t i = 0; i < h.size(); ++i) hbar[i] = h[i] % mod.p;
    if (!fp_is_irreducible(hbar, mod.p))
      fail(Errc::usage, "defining polynomial is not irreducible mod p");
  }
  ExtPtr ptr(new ExtensionDescriptor(mod, d, std::move(h)));
  std::lock_guard<std::mutex> lock(g_desc_mutex);
  auto [it, inserted] = g_poly_desc_cache.emplace(std::move(hkey), ptr);
  return it->second;
}

std::string ExtensionDescriptor::str() const {
  std::ostringstream os;
  os << "GR(" << mod.pk.str() << "," << d << ")";
  return os.str();
}

namespace {

void check_same_ext(const RingElement& a, const RingElement& b) {
  if (!a.ext() || !b.ext()) fail(Errc::usage, "uninitialized ring element");
  if (a.ext().get() == b.ext().get()) return;
  if (!a.ext()->same(*b.ext()))
    fail(Errc::descriptor_mismatch,
         "ring elements from different extensions: " + a.ext()->str() + " vs " + b.ext()->str());
}

}  // namespace

RingElement RingElement::zero(const ExtPtr& ext) {
  return from_coeffs(ext, std::vector<BigInt>(ext->d, BigInt(0)));
}

RingElement RingElement::one(const ExtPtr& ext) { return from_integer(ext, 1); }

RingElement RingElement::from_integer(const ExtPtr& ext, const BigInt& v) {
  std::vector<BigInt> c(ext->d, BigInt(0));
  c[0] = mod_reduce(v, ext->mod.pk);
  return from_coeffs(ext, std::move(c));
}

RingElement RingElement::from_coeffs(const ExtPtr& ext, std::vector<BigInt> c) {
  if (!ext) fail(Errc::usage, "null extension descriptor");
  if (c.size() > ext->d) {
    // reduce by h: only the trivial overflow case d == 1 (h = t) and general
    // polynomial reduction for supplied high-degree vectors.
    // Fold from the top using h monic: t^d = -(h_0 + ... + h_{d-1} t^{d-1}).
    const unsigned d = ext->d;
    const BigInt& pk = ext->mod.pk;
    for (size_t i = c.size(); i-- > d;) {
      BigInt top = mod_reduce(c[i], pk);
      c[i] = 0;
      if (top == 0) continue;
      for (unsigned j = 0; j < d; ++j) c[i - d + j] = mod_reduce(c[i - d + j] - top * ext->h[j], pk);
    }
    c.resize(d);
  }
  c.resize(ext->d, BigInt(0));
  for (auto& x : c) x = mod_reduce(x, ext->mod.pk);
  RingElement r;
  r.ext_ = ext;
  r.c_ = std::move(c);
  return r;
}

bool RingElement::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool RingElement::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool RingElement::operator==(const RingElement& o) const {
  check_same_ext(*this, o);
  return c_ == o.c_;
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  check_same_ext(a, b);
  std::vector<BigInt> c(a.c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod_reduce(a.c_[i] + b.c_[i], a.ext_->mod.pk);
  RingElement r;
  r.ext_ = a.ext_;
  r.c_ = std::move(c);
  return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  check_same_ext(a, b);
  std::vector<BigInt> c(a.c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod_reduce(a.c_[i] - b.c_[i], a.ext_->mod.pk);
  RingElement r;
  r.ext_ = a.ext_;
  r.c_ = std::move(c);
  return r;
}

RingElement operator-(const RingElement& a) {
  std::vector<BigInt> c(a.c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod_reduce(-a.c_[i], a.ext_->mod.pk);
  RingElement r;
  r.ext_ = a.ext_;
  r.c_ = std::move(c);
  return r;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  check_same_ext(a, b);
  const unsigned d = a.ext_->d;
  const BigInt& pk = a.ext_->mod.pk;
  if (d == 1) {
    RingElement r;
    r.ext_ = a.ext_;
    r.c_ = {a.c_[0] * b.c_[0] % pk};
    return r;
  }
  std::vector<BigInt> conv(2 * d - 1, BigInt(0));
  for (unsigned i = 0; i < d; ++i) {
    if (a.c_[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j) conv[i + j] += a.c_[i] * b.c_[j];
  }
  return RingElement::from_coeffs(a.ext_, std::move(conv));
}

RingElement RingElement::pow(BigInt e) const {
  if (e < 0) return ring_inverse(*this).pow(-e);
  RingElement result = RingElement::one(ext_);
  RingElement base = *this;
  while (e > 0) {
    if (e % 2 == 1) result = result * base;
    e /= 2;
    if (e > 0) base = base * base;
  }
  return result;
}

std::string RingElement::str() const {
  if (ext_->d == 1) return c_[0].str();
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i].str();
  }
  os << ")";
  return os.str();
}

Valuation valuation(const RingElement& a) {
  if (a.is_zero()) return Valuation::inf();
  const Modulus& m = a.ext()->mod;
  unsigned best = m.k;
  for (const auto& c : a.coeffs()) {
    if (c == 0) continue;
    best = std::min(best, int_valuation(c, m.p));
    if (best == 0) break;
  }
  return Valuation::of(best);
}

RingElement ring_inverse(const RingElement& a) {
  Valuation v = valuation(a);
  if (v.infinite || v.value > 0)
    fail(Errc::non_unit, "ring_inverse of non-unit (valuation " + v.str() + ")");
  const ExtPtr& ext = a.ext();
  const BigInt& p = ext->mod.p;
  // Inverse mod p by extended Euclid between a mod p and h over F_p.
  FpPoly ap(ext->d);
  for (unsigned i = 0; i < ext->d; ++i) ap[i] = a.coeffs()[i] % p;
  ap = fp_trim(std::move(ap));
  FpPoly hp(ext->h.size());
  for (size_t i = 0; i < ext->h.size(); ++i) hp[i] = ext->h[i] % p;

  // extended gcd: u*ap + w*hp = g
  FpPoly r0 = hp, r1 = ap;
  FpPoly s0 = {}, s1 = {BigInt(1)};  // coefficients of ap
  while (!(r1.size() == 1 || r1.empty())) {
    // divide r0 by r1
    FpPoly q;
    {
      FpPoly rem = r0;
      BigInt lead_inv = pow_mod(r1.back(), p - 2, p);
      q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, BigInt(0));
      while (rem.size() >= r1.size() && !rem.empty()) {
        BigInt c = rem.back() * lead_inv % p;
        size_t shift = rem.size() - r1.size();
        q[shift] = c;
        for (size_t j = 0; j < r1.size(); ++j) rem[shift + j] = mod_reduce(rem[shift + j] - c * r1[j], p);
        rem = fp_trim(std::move(rem));
      }
      r0 = std::move(r1);
      r1 = std::move(rem);
    }
    // s update: s_new = s0 - q*s1
    FpPoly qs = fp_mul(q, s1, p);
    FpPoly snew(std::max(s0.size(), qs.size()), BigInt(0));
    for (size_t i = 0; i < snew.size(); ++i) {
      BigInt x = i < s0.size() ? s0[i] : BigInt(0);
      BigInt y = i < qs.size() ? qs[i] : BigInt(0);
      snew[i] = mod_reduce(x - y, p);
    }
    s0 = std::move(s1);
    s1 = fp_trim(std::move(snew));
  }
  if (r1.empty()) fail(Errc::theory_violation, "unit has zero gcd with h (impossible)");
  // r1 is a nonzero constant: normalize.
  BigInt cinv = pow_mod(r1[0], p - 2, p);
  std::vector<BigInt> inv0(ext->d, BigInt(0));
  for (size_t i = 0; i < s1.size() && i < inv0.size(); ++i) inv0[i] = s1[i] * cinv % p;

  RingElement x = RingElement::from_coeffs(ext, std::move(inv0));
  // Newton refinement doubles p-adic precision per step.
  RingElement two = RingElement::from_integer(ext, 2);
  unsigned prec = 1;
  while (prec < ext->mod.k) {
    x = x * (two - a * x);
    prec *= 2;
  }
  if (!(a * x).is_one()) fail(Errc::theory_violation, "inverse refinement failed");
  return x;
}

BigInt mult_order(const RingElement& a) {
  Valuation v = valuation(a);
  if (v.infinite || v.value > 0)
    fail(Errc::non_unit, "mult_order of non-unit (valuation " + v.str() + ")");
  const ExtPtr& ext = a.ext();
  const Modulus& mod = ext->mod;
  // Order e1 of (a mod p) in F_{p^d}^* from the divisors of p^d - 1.
  ExtPtr ext1 = (mod.k == 1) ? ext : ExtensionDescriptor::with_poly(Modulus::make(mod.p, 1), ext->h);
  std::vector<BigInt> cbar(ext->d);
  for (unsigned i = 0; i < ext->d; ++i) cbar[i] = a.coeffs()[i] % mod.p;
  RingElement abar = RingElement::from_coeffs(ext1, std::move(cbar));

  BigInt group = pow_int(mod.p, ext->d) - 1;
  BigInt e1 = group;
  for (const auto& [q, mult] : factorize(group)) {
    for (unsigned i = 0; i < mult; ++i) {
      if (e1 % q != 0) break;
      BigInt cand = e1 / q;
      if (abar.pow(cand).is_one())
        e1 = cand;
      else
        break;
    }
  }
  if (mod.k == 1) return e1;
  // Full order is e1 * p^s, found by repeated p-th powering.
  RingElement b = a.pow(e1);
  const unsigned s_bound = (mod.k - 1) * ext->d;
  unsigned s = 0;
  while (!b.is_one()) {
    if (s >= s_bound)
      fail(Errc::theory_violation, "mult_order p-part exceeded bound (k-1)*d = " + std::to_string(s_bound));
    b = b.pow(mod.p);
    ++s;
  }
  return e1 * pow_int(mod.p, s);
}

RingElement at_precision(const RingElement& a, unsigned k2) {
  const ExtPtr& ext = a.ext();
  if (ext->mod.k == k2) return a;
  ExtPtr ext2 = ExtensionDescriptor::with_poly(Modulus::make(ext->mod.p, k2), ext->h);
  return RingElement::from_coeffs(ext2, a.coeffs());
}

}  // namespace zpk
