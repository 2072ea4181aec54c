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
#include <algorithm>
#include <optional>
#include <random>

#include "zpkcycles/polynomial.hpp"

namespace zpk {

namespace {

// f must be squarefree-decomposable over F_p; returns (squarefree part, mult).
std::vector<std::pair<Polynomial, unsigned>> squarefree_decompose(const Polynomial& f) {
  // Standard char-p algorithm; p-th powers recurse through the coefficient
  // p-th root (identity on F_p coefficients).
  const ExtPtr& ext = f.ext();
  const BigInt p = ext->mod.p;
  std::vector<std::pair<Polynomial, unsigned>> out;
  if (f.degree() <= 0) return out;

  auto pth_root = [&](const Polynomial& g) {
    size_t pp = p.convert_to<size_t>();
    std::vector<RingElement> c;
    for (size_t i = 0; i * pp <= static_cast<size_t>(g.degree()); ++i) c.push_back(g.coeff(i * pp));
    return Polynomial::from_coeffs(ext, std::move(c));
  };

  Polynomial fp = f.derivative();
  if (fp.is_zero()) {
    for (auto& [g, e] : squarefree_decompose(pth_root(f))) out.emplace_back(g, e * p.convert_to<unsigned>());
    return out;
  }
  Polynomial c = poly_gcd_field(f, fp);
  Polynomial w = poly_divmod(f, c).first;
  unsigned i = 1;
  while (w.degree() > 0) {
    Polynomial y = poly_gcd_field(w, c);
    Polynomial z = poly_divmod(w, y).first;
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = poly_divmod(c, y).first;
  }
  if (c.degree() > 0) {
    for (auto& [g, e] : squarefree_decompose(pth_root(c)))
      out.emplace_back(g, e * p.convert_to<unsigned>());
  }
  return out;
}

// Degrees of the irreducible factors of a squarefree monic w over F_p.
std::vector<unsigned> distinct_degrees(Polynomial w) {
  const ExtPtr& ext = w.ext();
  const BigInt p = ext->mod.p;
  std::vector<unsigned> degs;
  Polynomial r = Polynomial::t(ext);  // t^{p^0}
  unsigned i = 0;
  while (w.degree() > 0) {
    ++i;
    if (2 * i > static_cast<unsigned>(w.degree())) {
      degs.push_back(static_cast<unsigned>(w.degree()));  // remainder is irreducible
      break;
    }
    // advance r to t^{p^i} mod w
    {
      Polynomial base = poly_mod(r, w);
      Polynomial acc = Polynomial::one(ext);
      BigInt e = p;
      while (e > 0) {
        if (e % 2 == 1) acc = poly_mod(acc * base, w);
        e /= 2;
        if (e > 0) base = poly_mod(base * base, w);
      }
      r = acc;
    }
    Polynomial g = poly_gcd_field(r - Polynomial::t(ext), w);
    if (g.degree() > 0) {
      for (int j = 0; j < g.degree() / static_cast<int>(i); ++j) degs.push_back(i);
      w = poly_divmod(w, g).first;
      r = poly_mod(r, w);
    }
  }
  return degs;
}

Polynomial pow_poly_mod(const Polynomial& b, BigInt e, const Polynomial& w) {
  Polynomial base = poly_mod(b, w);
  Polynomial acc = Polynomial::one(w.ext());
  while (e > 0) {
    if (e % 2 == 1) acc = poly_mod(acc * base, w);
    e /= 2;
    if (e > 0) base = poly_mod(base * base, w);
  }
  return acc;
}

void collect_roots_exhaustive(const Polynomial& w, std::vector<RingElement>& out) {
  const ExtPtr& ext = w.ext();
  const BigInt p = ext->mod.p;
  std::vector<BigInt> digits(ext->d, BigInt(0));
  while (true) {
    RingElement x = RingElement::from_coeffs(ext, digits);
    if (w.eval(x).is_zero()) out.push_back(x);
    size_t i = 0;
    while (i < digits.size()) {
      digits[i] += 1;
      if (digits[i] < p) break;
      digits[i] = 0;
      ++i;
    }
    if (i == digits.size()) break;
  }
}

// Equal-degree style splitting of a monic fully-split squarefree w over
// GR(p, D), odd p. Deterministically seeded.
void collect_roots_cz(const Polynomial& w, std::mt19937_64& rng, std::vector<RingElement>& out) {
  const ExtPtr& ext = w.ext();
  if (w.degree() <= 0) return;
  if (w.degree() == 1) {
    RingElement lead_inv = ring_inverse(w.coeff(1));
    out.push_back(-(w.coeff(0) * lead_inv));
    return;
  }
  const BigInt p = ext->mod.p;
  BigInt half = (pow_int(p, ext->d) - 1) / 2;
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<BigInt> digits(ext->d);
    for (auto& dg : digits) dg = BigInt(rng()) % p;
    Polynomial shift = Polynomial::t(ext) + Polynomial::from_coeffs(ext, {RingElement::from_coeffs(ext, digits)});
    Polynomial g = pow_poly_mod(shift, half, w) - Polynomial::one(ext);
    Polynomial d = poly_gcd_field(g, w);
    if (d.degree() > 0 && d.degree() < w.degree()) {
      collect_roots_cz(d, rng, out);
      collect_roots_cz(poly_divmod(w, d).first, rng, out);
      return;
    }
  }
  fail(Errc::capacity, "equal-degree splitting failed to make progress");
}

}  // namespace

RootSet factor_mod_p(const Polynomial& f, const FactorOptions& opt) {
  if (!f.ext()) fail(Errc::usage, "uninitialized polynomial");
  if (f.ext()->d != 1) fail(Errc::usage, "factor_mod_p expects a scalar polynomial over Z_{p^k}");
  if (f.is_zero()) fail(Errc::usage, "factor_mod_p of the zero polynomial");
  const Modulus& mod = f.ext()->mod;
  {
    Valuation v0 = f.degree() >= 0 ? valuation(f.coeff(0)) : Valuation::inf();
    if (v0.infinite || v0.value > 0)
      fail(Errc::zero_root, "constant term is not a unit (the no-zero-root hypothesis fails)");
  }

  RootSet rs;
  if (f.degree() == 0) {
    rs.d = 1;
    rs.gr1 = ExtensionDescriptor::get(Modulus::make(mod.p, 1), 1);
    return rs;
  }

  // Reduce mod p.
  ExtPtr e1 = ExtensionDescriptor::get(Modulus::make(mod.p, 1), 1);
  Polynomial fbar = Polynomial::from_integer_coeffs(e1, f.integer_coeffs());
  if (fbar.degree() != f.degree())
    fail(Errc::zero_root, "leading coefficient vanishes mod p; companion hypothesis violated");
  {
    RingElement lead_inv = ring_inverse(fbar.coeffs().back());
    std::vector<RingElement> c = fbar.coeffs();
    for (auto& x : c) x = x * lead_inv;
    fbar = Polynomial::from_coeffs(e1, std::move(c));
  }

  auto parts = squarefree_decompose(fbar);

  unsigned D = 1;
  for (const auto& [w, mult] : parts) {
    (void)mult;
    for (unsigned dg : distinct_degrees(w)) D = static_cast<unsigned>(big_lcm(D, dg).convert_to<unsigned>());
  }
  BigInt field_size = pow_int(mod.p, D);
  if (field_size > opt.hard_bound)
    fail(Errc::capacity, "splitting field F_p^" + std::to_string(D) + " beyond the configured bound");

  ExtPtr gr1 = ExtensionDescriptor::get(Modulus::make(mod.p, 1), D);
  Polynomial fD = Polynomial::from_integer_coeffs(gr1, fbar.integer_coeffs());

  // Roots of the squarefree parts in F_{p^D}.
  std::vector<std::pair<RingElement, unsigned>> roots;  // (root, multiplicity)
  std::mt19937_64 rng(opt.rng_seed);
  for (const auto& [w, mult] : parts) {
    Polynomial wD = Polynomial::from_integer_coeffs(gr1, w.integer_coeffs());
    std::vector<RingElement> rts;
    if (field_size <= opt.scan_bound) {
      collect_roots_exhaustive(wD, rts);
    } else if (mod.p > 2) {
      collect_roots_cz(wD, rng, rts);
    } else {
      fail(Errc::capacity, "root search over F_2^" + std::to_string(D) + " exceeds the scan bound");
    }
    for (const auto& r : rts) roots.emplace_back(r, mult);
  }

  // Group into Frobenius orbits; orbit members share degree and multiplicity.
  auto coeff_less = [](const RingElement& a, const RingElement& b) {
    return a.coeffs() < b.coeffs();
  };
  std::sort(roots.begin(), roots.end(),
            [&](const auto& a, const auto& b) { return coeff_less(a.first, b.first); });
  std::vector<bool> used(roots.size(), false);
  auto find_root = [&](const RingElement& x) -> size_t {
    for (size_t i = 0; i < roots.size(); ++i)
      if (!used[i] && roots[i].first == x) return i;
    return roots.size();
  };
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    RootCluster cl;
    cl.multiplicity = roots[i].second;
    RingElement x = roots[i].first;
    do {
      size_t idx = find_root(x);
      if (idx == roots.size())
        fail(Errc::theory_violation, "Frobenius orbit escaped the computed root set");
      used[idx] = true;
      cl.roots.push_back(roots[idx].first);
      x = x.frobenius();
    } while (!(x == roots[i].first));
    cl.degree = static_cast<unsigned>(cl.roots.size());
    rs.clusters.push_back(std::move(cl));
  }
  std::sort(rs.clusters.begin(), rs.clusters.end(), [&](const RootCluster& a, const RootCluster& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.roots[0].coeffs() < b.roots[0].coeffs();
  });

  // All deg(fbar) roots live in GR(p, D) by construction.
  unsigned total = 0;
  for (const auto& cl : rs.clusters) total += cl.degree * cl.multiplicity;
  if (total != static_cast<unsigned>(fbar.degree()))
    fail(Errc::theory_violation, "root multiplicities do not account for deg f");

  rs.gr1 = gr1;
  rs.d = D;
  return rs;
}

RingElement newton_lift(const Polynomial& f, const RingElement& root, unsigned target_k) {
  if (f.ext()->d != 1) fail(Errc::usage, "newton_lift expects a scalar polynomial");
  const Modulus& mod = f.ext()->mod;
  const ExtPtr& rext = root.ext();
  if (!(rext->mod.p == mod.p)) fail(Errc::descriptor_mismatch, "root lives over a different prime");
  ExtPtr target = ExtensionDescriptor::with_poly(Modulus::make(mod.p, target_k), rext->h);
  Polynomial F = Polynomial::from_integer_coeffs(target, f.integer_coeffs());
  Polynomial Fp = F.derivative();
  RingElement x = RingElement::from_coeffs(target, root.coeffs());
  {
    Valuation dv = valuation(Fp.eval(x));
    if (dv.infinite || dv.value > 0)
      fail(Errc::multiple_root, "f'(root) is not a unit; simple-root lifting does not apply");
  }
  for (unsigned i = 1; i < target_k; ++i) {
    x = x - ring_inverse(Fp.eval(x)) * F.eval(x);
  }
  if (!F.eval(x).is_zero()) fail(Errc::theory_violation, "Newton lift failed to annihilate f");
  if (!(at_precision(x, 1) == at_precision(RingElement::from_coeffs(target, root.coeffs()), 1)))
    fail(Errc::theory_violation, "Newton lift drifted from the mod-p root");
  return x;
}

namespace {

// Incremental t-power scan with machine-word arithmetic; q < 2^31.
BigInt oracle_scan_fast(const std::vector<BigInt>& fc, uint64_t q, uint64_t bound) {
  const size_t m = fc.size() - 1;
  std::vector<uint64_t> neg(m);
  for (size_t i = 0; i < m; ++i) {
    uint64_t ci = fc[i].convert_to<uint64_t>() % q;
    neg[i] = ci == 0 ? 0 : q - ci;
  }
  if (m == 1) {
    // t = -f0: plain multiplicative order scan.
    uint64_t a = neg[0];
    uint64_t r = 1;
    for (uint64_t l = 1; l <= bound; ++l) {
      r = (r * a) % q;  // q < 2^31: product fits
      if (r == 1) return BigInt(l);
    }
    fail(Errc::bound_exhausted, "poly_order_oracle exhausted bound " + std::to_string(bound));
  }
  if (m == 2 && q <= 4096) {
    // Table-driven step for the degree-2 corpus: two L1 lookups per step.
    std::vector<uint16_t> t0(q), t1(q);
    uint64_t acc0 = 0, acc1 = 0;
    for (uint64_t x = 0; x < q; ++x) {
      t0[x] = static_cast<uint16_t>(acc0);
      t1[x] = static_cast<uint16_t>(acc1);
      acc0 += neg[0];
      if (acc0 >= q) acc0 -= q;
      acc1 += neg[1];
      if (acc1 >= q) acc1 -= q;
    }
    uint64_t r0 = 0, r1 = 1;  // t^1
    for (uint64_t l = 1; l <= bound; ++l) {
      if (r0 == 1 && r1 == 0) return BigInt(l);
      uint64_t lead = r1;
      r1 = r0 + t1[lead];
      if (r1 >= q) r1 -= q;
      r0 = t0[lead];
    }
    fail(Errc::bound_exhausted, "poly_order_oracle exhausted bound " + std::to_string(bound));
  }
  std::vector<uint64_t> r(m, 0);
  r[1 % m] = 1;  // t^1 (m >= 2 here)
  for (uint64_t l = 1; l <= bound; ++l) {
    bool one = r[0] == 1;
    if (one)
      for (size_t i = 1; i < m; ++i)
        if (r[i] != 0) {
          one = false;
          break;
        }
    if (one) return BigInt(l);
    uint64_t lead = r[m - 1];
    for (size_t i = m - 1; i >= 1; --i) r[i] = (r[i - 1] + neg[i] * lead) % q;
    r[0] = (neg[0] * lead) % q;
  }
  fail(Errc::bound_exhausted, "poly_order_oracle exhausted bound " + std::to_string(bound));
}

}  // namespace

std::vector<BigInt> poly_order_oracle_batch(const std::vector<Polynomial>& fs,
                                            const BigInt& bound) {
  std::vector<BigInt> out(fs.size());
  // Lane path: shared small modulus, degree 2, bound in range.
  bool lanes_ok = !fs.empty() && bound >= 1 && bound < (BigInt(1) << 62);
  for (const auto& f : fs)
    lanes_ok = lanes_ok && f.ext()->d == 1 && f.degree() == 2 && f.is_monic() &&
               f.ext()->mod.pk < (BigInt(1) << 31) && f.ext()->same(*fs.front().ext());
  if (!lanes_ok) {
    for (size_t i = 0; i < fs.size(); ++i) out[i] = poly_order_oracle(fs[i], bound);
    return out;
  }
  for (const auto& f : fs) {
    Valuation v0 = valuation(f.coeff(0));
    if (v0.infinite || v0.value > 0)
      fail(Errc::usage, "poly_order_oracle requires a unit constant term");
  }
  const uint64_t q = fs.front().ext()->mod.pk.convert_to<uint64_t>();
  const uint64_t mu = q > 1 ? (~uint64_t(0)) / q : 0;  // floor(2^64 / q)
  const uint64_t limit = bound.convert_to<uint64_t>();
  auto neg_coeffs = [&](const Polynomial& f) {
    const auto fc = f.integer_coeffs();
    uint64_t c0 = fc[0].convert_to<uint64_t>() % q, c1 = fc[1].convert_to<uint64_t>() % q;
    return std::pair<uint64_t, uint64_t>{c0 ? q - c0 : 0, c1 ? q - c1 : 0};
  };

  // Pairs of scans run in lockstep; the two reduction chains are independent
  // and overlap in the pipeline. Callers that group equal-order polynomials
  // retire both lanes on the same step.
  const uint64_t p64 = fs.front().ext()->mod.p.convert_to<uint64_t>();
  // t^l = 1 mod p^k forces l = 0 mod ord(t mod (f, p)); that order comes from
  // its own plain scan, so the equality test only needs to run at its
  // multiples and the stepping loop stays check-free in between.
  auto mod_p_order = [&](uint64_t n0, uint64_t n1) -> uint64_t {
    // q = p^k, so the negated coefficients reduce mod p compatibly.
    uint64_t m0 = n0 % p64, m1 = n1 % p64;
    uint64_t r0 = 0, r1 = 1;  // r = t^l mod (f, p)
    uint64_t cap = std::min<uint64_t>(limit, 2 * p64 * p64 + 2);
    for (uint64_t l = 1; l <= cap; ++l) {
      if (r0 == 1 && r1 == 0) return l;
      uint64_t lead = r1;
      r1 = (r0 + m1 * lead) % p64;
      r0 = (m0 * lead) % p64;
    }
    fail(Errc::bound_exhausted, "mod-p order scan exhausted its cap");
  };

  size_t i = 0;
  std::vector<uint16_t> tables;
  for (; i + 1 < fs.size() && q <= 4096; i += 2) {
    // Small moduli: multiplication by the fixed coefficients becomes two L1
    // table lookups per lane and step.
    auto [na0, na1] = neg_coeffs(fs[i]);
    auto [nb0, nb1] = neg_coeffs(fs[i + 1]);
    tables.assign(4 * q, 0);
    uint16_t* a0t = tables.data();
    uint16_t* a1t = tables.data() + q;
    uint16_t* b0t = tables.data() + 2 * q;
    uint16_t* b1t = tables.data() + 3 * q;
    {
      uint64_t va0 = 0, va1 = 0, vb0 = 0, vb1 = 0;
      for (uint64_t x = 0; x < q; ++x) {
        a0t[x] = static_cast<uint16_t>(va0);
        a1t[x] = static_cast<uint16_t>(va1);
        b0t[x] = static_cast<uint16_t>(vb0);
        b1t[x] = static_cast<uint16_t>(vb1);
        va0 += na0;
        if (va0 >= q) va0 -= q;
        va1 += na1;
        if (va1 >= q) va1 -= q;
        vb0 += nb0;
        if (vb0 >= q) vb0 -= q;
        vb1 += nb1;
        if (vb1 >= q) vb1 -= q;
      }
    }
    const uint64_t ea = mod_p_order(na0, na1);
    const uint64_t eb = mod_p_order(nb0, nb1);
    uint64_t ra0 = 0, ra1 = 1, rb0 = 0, rb1 = 1;
    uint64_t la = 0, lb = 0;
    uint64_t l = 1, next_a = ea, next_b = eb;
    while (true) {
      uint64_t tgt = limit + 1;
      if (!la && next_a < tgt) tgt = next_a;
      if (!lb && next_b < tgt) tgt = next_b;
      if (tgt > limit) break;
      for (; l < tgt; ++l) {
        const uint64_t leada = ra1, leadb = rb1;
        ra1 = ra0 + a1t[leada];
        if (ra1 >= q) ra1 -= q;
        ra0 = a0t[leada];
        rb1 = rb0 + b1t[leadb];
        if (rb1 >= q) rb1 -= q;
        rb0 = b0t[leadb];
      }
      if (!la && l == next_a) {
        if (ra0 == 1 && ra1 == 0)
          la = l;
        else
          next_a += ea;
      }
      if (!lb && l == next_b) {
        if (rb0 == 1 && rb1 == 0)
          lb = l;
        else
          next_b += eb;
      }
      if (la && lb) break;
    }
    if (!la || !lb)
      fail(Errc::bound_exhausted, "poly_order_oracle exhausted bound " + bound.str() + " for " +
                                      fs[la ? i + 1 : i].str());
    out[i] = BigInt(la);
    out[i + 1] = BigInt(lb);
  }
  for (; i + 1 < fs.size(); i += 2) {
    auto [na0, na1] = neg_coeffs(fs[i]);
    auto [nb0, nb1] = neg_coeffs(fs[i + 1]);
    uint64_t ra0 = 0, ra1 = 1, rb0 = 0, rb1 = 1;
    uint64_t la = 0, lb = 0;
    for (uint64_t l = 1; l <= limit; ++l) {
      if (!la && ra0 == 1 && ra1 == 0) la = l;
      if (!lb && rb0 == 1 && rb1 == 0) lb = l;
      if (la && lb) break;
      const uint64_t leada = ra1, leadb = rb1;
      uint64_t xa = na1 * leada, xb = nb1 * leadb;
      uint64_t ta = static_cast<uint64_t>(((unsigned __int128)xa * mu) >> 64);
      uint64_t tb = static_cast<uint64_t>(((unsigned __int128)xb * mu) >> 64);
      xa -= ta * q;
      xb -= tb * q;
      if (xa >= q) xa -= q;
      if (xa >= q) xa -= q;
      if (xb >= q) xb -= q;
      if (xb >= q) xb -= q;
      ra1 = ra0 + xa;
      rb1 = rb0 + xb;
      if (ra1 >= q) ra1 -= q;
      if (rb1 >= q) rb1 -= q;
      uint64_t ya = na0 * leada, yb = nb0 * leadb;
      uint64_t ua = static_cast<uint64_t>(((unsigned __int128)ya * mu) >> 64);
      uint64_t ub = static_cast<uint64_t>(((unsigned __int128)yb * mu) >> 64);
      ya -= ua * q;
      yb -= ub * q;
      if (ya >= q) ya -= q;
      if (ya >= q) ya -= q;
      if (yb >= q) yb -= q;
      if (yb >= q) yb -= q;
      ra0 = ya;
      rb0 = yb;
    }
    if (!la || !lb)
      fail(Errc::bound_exhausted, "poly_order_oracle exhausted bound " + bound.str() + " for " +
                                      fs[la ? i + 1 : i].str());
    out[i] = BigInt(la);
    out[i + 1] = BigInt(lb);
  }
  if (i < fs.size()) out[i] = poly_order_oracle(fs[i], bound);
  return out;
}

BigInt poly_order_oracle(const Polynomial& f, const BigInt& bound) {
  if (f.ext()->d != 1) fail(Errc::usage, "poly_order_oracle expects a polynomial over Z_{p^k}");
  if (!f.is_monic()) fail(Errc::usage, "poly_order_oracle requires a monic polynomial");
  {
    Valuation v0 = valuation(f.coeff(0));
    if (f.degree() >= 1 && (v0.infinite || v0.value > 0))
      fail(Errc::usage, "poly_order_oracle requires a unit constant term");
  }
  if (bound < 1) fail(Errc::usage, "oracle bound must be positive");
  if (f.degree() == 0) return BigInt(1);  // f = 1 divides t - 1

  const Modulus& mod = f.ext()->mod;
  std::vector<BigInt> fc = f.integer_coeffs();
  if (mod.pk < (BigInt(1) << 31) && bound < (BigInt(1) << 62)) {
    return oracle_scan_fast(fc, mod.pk.convert_to<uint64_t>(), bound.convert_to<uint64_t>());
  }

  // Exact wide path.
  const size_t m = fc.size() - 1;
  std::vector<BigInt> r(m, BigInt(0));
  if (m == 1) {
    BigInt a = mod_reduce(-fc[0], mod.pk);
    BigInt x = 1;
    for (BigInt l = 1; l <= bound; ++l) {
      x = x * a % mod.pk;
      if (x == 1) return l;
    }
    fail(Errc::bound_exhausted, "poly_order_oracle exhausted bound " + bound.str());
  }
  r[1] = 1;
  auto is_one = [&]() {
    if (r[0] != 1) return false;
    for (size_t i = 1; i < m; ++i)
      if (r[i] != 0) return false;
    return true;
  };
  for (BigInt l = 1; l <= bound; ++l) {
    if (is_one()) return l;
    BigInt lead = r[m - 1];
    for (size_t i = m - 1; i >= 1; --i) r[i] = mod_reduce(r[i - 1] - lead * fc[i], mod.pk);
    r[0] = mod_reduce(-lead * fc[0], mod.pk);
  }
  fail(Errc::bound_exhausted, "poly_order_oracle exhausted bound " + bound.str());
}

}  // namespace zpk
