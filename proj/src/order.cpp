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
#include "zpkcycles/order.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "zpkcycles/matrix.hpp"

namespace zpk {

namespace {

Polynomial poly_at(const std::vector<BigInt>& coeffs, const BigInt& p, unsigned k) {
  ExtPtr ext = ExtensionDescriptor::get(Modulus::make(p, k), 1);
  return Polynomial::from_integer_coeffs(ext, coeffs);
}

// uint64 arithmetic in GR(p^k, d) for d <= 2 and p^k < 2^31: the hot path of
// the simple-root lift/order computation over the desk-scale corpus.
struct FastGR {
  uint64_t q = 0;
  uint64_t p = 0;
  unsigned d = 1;
  uint64_t h0 = 0, h1 = 0;  // h = t^2 + h1 t + h0 when d == 2

  using E = std::array<uint64_t, 2>;

  E scalar(uint64_t v) const { return {v % q, 0}; }
  bool is_one(const E& x) const { return x[0] == 1 && x[1] == 0; }

  E add(const E& a, const E& b) const {
    E r{a[0] + b[0], a[1] + b[1]};
    if (r[0] >= q) r[0] -= q;
    if (r[1] >= q) r[1] -= q;
    return r;
  }
  E sub(const E& a, const E& b) const {
    E r{a[0] + q - b[0], a[1] + q - b[1]};
    if (r[0] >= q) r[0] -= q;
    if (r[1] >= q) r[1] -= q;
    return r;
  }
  E mul(const E& a, const E& b) const {
    if (d == 1) return {static_cast<uint64_t>((unsigned __int128)a[0] * b[0] % q), 0};
    unsigned __int128 t2 = (unsigned __int128)a[1] * b[1];
    unsigned __int128 c0 = (unsigned __int128)a[0] * b[0] + t2 % q * (q - h0);
    unsigned __int128 c1 =
        (unsigned __int128)a[0] * b[1] + (unsigned __int128)a[1] * b[0] + t2 % q * (q - h1);
    return {static_cast<uint64_t>(c0 % q), static_cast<uint64_t>(c1 % q)};
  }
  E pow(E x, uint64_t e) const {
    E r = scalar(1);
    while (e) {
      if (e & 1) r = mul(r, x);
      e >>= 1;
      if (e) x = mul(x, x);
    }
    return r;
  }
  // units form a group of order (p^d - 1) p^{(k-1)d}
  E inverse(const E& x, uint64_t group) const { return pow(x, group - 1); }
};

// Simple-cluster order contribution with machine words: Newton-lift the root
// exactly (k-1) times, then peel the p-part of its order. Returns nullopt
// when the sizes do not fit.
std::optional<BigInt> simple_cluster_pk_fast(const std::vector<BigInt>& fints, const BigInt& p,
                                             unsigned k, const ClusterOrder& cl) {
  const ExtPtr& rext = cl.root.ext();
  if (rext->d > 2) return std::nullopt;
  BigInt pk_big = pow_int(p, k);
  if (pk_big >= (BigInt(1) << 31)) return std::nullopt;
  if (cl.ord1 >= (BigInt(1) << 32)) return std::nullopt;

  FastGR gr;
  gr.q = pk_big.convert_to<uint64_t>();
  gr.p = p.convert_to<uint64_t>();
  gr.d = rext->d;
  if (gr.d == 2) {
    gr.h0 = rext->h[0].convert_to<uint64_t>() % gr.q;
    gr.h1 = rext->h[1].convert_to<uint64_t>() % gr.q;
  }
  uint64_t group = 1;
  for (unsigned i = 0; i < (k - 1) * gr.d; ++i) group *= gr.p;
  {
    uint64_t sub = 1;
    for (unsigned i = 0; i < gr.d; ++i) sub *= gr.p;
    group *= sub - 1;
  }

  std::vector<FastGR::E> fc, fder;
  for (const auto& c : fints) fc.push_back(gr.scalar((c % pk_big).convert_to<uint64_t>()));
  for (size_t i = 1; i < fc.size(); ++i)
    fder.push_back(gr.mul(gr.scalar(i % gr.q), fc[i]));
  auto eval = [&](const std::vector<FastGR::E>& cs, const FastGR::E& x) {
    FastGR::E acc = gr.scalar(0);
    for (size_t i = cs.size(); i-- > 0;) acc = gr.add(gr.mul(acc, x), cs[i]);
    return acc;
  };

  FastGR::E x{cl.root.coeffs()[0].convert_to<uint64_t>() % gr.q,
              rext->d == 2 ? cl.root.coeffs()[1].convert_to<uint64_t>() % gr.q : 0};
  for (unsigned i = 1; i < k; ++i) {
    FastGR::E fx = eval(fc, x);
    FastGR::E dfx = eval(fder, x);
    x = gr.sub(x, gr.mul(gr.inverse(dfx, group), fx));
  }
  if (!(eval(fc, x)[0] == 0 && eval(fc, x)[1] == 0))
    fail(Errc::theory_violation, "fast Newton lift failed to annihilate f");

  uint64_t ord1 = cl.ord1.convert_to<uint64_t>();
  FastGR::E b = gr.pow(x, ord1);
  unsigned s = 0;
  const unsigned s_bound = (k - 1) * gr.d + 1;
  while (!gr.is_one(b)) {
    if (s > s_bound) fail(Errc::theory_violation, "fast order p-part exceeded its bound");
    b = gr.pow(b, gr.p);
    ++s;
  }
  return cl.ord1 * pow_int(p, s);
}

// Order of the companion matrix of f mod p^k, as P_1 * p^sigma with sigma
// counted through the 1 + pM filtration. Exact for every monic unit-constant
// f (the regular representation identifies it with P'_k(f)).
BigInt companion_order_pk(const std::vector<BigInt>& fints, const BigInt& p, unsigned k,
                          const BigInt& P1) {
  const unsigned m = static_cast<unsigned>(fints.size()) - 1;
  BigInt pk_big = pow_int(p, k);
  const unsigned sigma_bound = k * m + 2;
  if (pk_big < (BigInt(1) << 31) && P1 < (BigInt(1) << 62) && m <= 16) {
    const uint64_t q = pk_big.convert_to<uint64_t>();
    using Mat = std::vector<uint64_t>;  // m x m row-major
    auto mulm = [&](const Mat& A, const Mat& B) {
      Mat C(size_t(m) * m, 0);
      for (unsigned i = 0; i < m; ++i)
        for (unsigned l = 0; l < m; ++l) {
          uint64_t v = A[size_t(i) * m + l];
          if (!v) continue;
          for (unsigned j = 0; j < m; ++j)
            C[size_t(i) * m + j] =
                (C[size_t(i) * m + j] + (unsigned __int128)v * B[size_t(l) * m + j] % q) % q;
        }
      return C;
    };
    auto powm = [&](Mat A, uint64_t e) {
      Mat R(size_t(m) * m, 0);
      for (unsigned i = 0; i < m; ++i) R[size_t(i) * m + i] = 1;
      while (e) {
        if (e & 1) R = mulm(R, A);
        e >>= 1;
        if (e) A = mulm(A, A);
      }
      return R;
    };
    auto is_id = [&](const Mat& A) {
      for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
          if (A[size_t(i) * m + j] != (i == j ? 1u : 0u)) return false;
      return true;
    };
    Mat C(size_t(m) * m, 0);
    for (unsigned i = 0; i + 1 < m; ++i) C[size_t(i) * m + i + 1] = 1;
    for (unsigned j = 0; j < m; ++j) {
      uint64_t c = (fints[j] % pk_big).convert_to<uint64_t>();
      C[size_t(m - 1) * m + j] = c ? q - c : 0;
    }
    Mat A = powm(C, P1.convert_to<uint64_t>());
    unsigned sigma = 0;
    const uint64_t pe = p.convert_to<uint64_t>();
    while (!is_id(A)) {
      if (sigma > sigma_bound) fail(Errc::theory_violation, "matrix order p-part exceeded its bound");
      A = powm(A, pe);
      ++sigma;
    }
    return P1 * pow_int(p, sigma);
  }
  Matrix C(m, pk_big);
  for (unsigned i = 0; i + 1 < m; ++i) C.at(i, i + 1) = 1;
  for (unsigned j = 0; j < m; ++j) C.at(m - 1, j) = mod_reduce(-fints[j], pk_big);
  Matrix A = C.pow(P1);
  unsigned sigma = 0;
  while (!A.is_identity()) {
    if (sigma > sigma_bound) fail(Errc::theory_violation, "matrix order p-part exceeded its bound");
    A = A.pow(p);
    ++sigma;
  }
  return P1 * pow_int(p, sigma);
}

unsigned ceil_log_p(unsigned a, const BigInt& p) {
  unsigned c = 0;
  BigInt x = 1;
  while (x < a) {
    x *= p;
    ++c;
  }
  return c;
}

// Factorization mod p and root orders depend only on f mod p; corpus runs
// hit a handful of residue classes, so memoize them.
struct FactorMemo {
  RootSet rs;
  std::vector<BigInt> ord1s;
};

std::mutex g_factor_mutex;
std::map<std::string, std::shared_ptr<const FactorMemo>> g_factor_cache;

std::shared_ptr<const FactorMemo> factor_memo(const Polynomial& f, const FactorOptions& opt) {
  const BigInt& p = f.ext()->mod.p;
  std::string key = p.str();
  for (const auto& c : f.integer_coeffs()) key += ":" + BigInt(c % p).str();
  {
    std::lock_guard<std::mutex> lock(g_factor_mutex);
    auto it = g_factor_cache.find(key);
    if (it != g_factor_cache.end()) return it->second;
  }
  auto memo = std::make_shared<FactorMemo>();
  memo->rs = factor_mod_p(f, opt);
  for (const auto& cl : memo->rs.clusters) memo->ord1s.push_back(mult_order(cl.roots[0]));
  std::lock_guard<std::mutex> lock(g_factor_mutex);
  auto [it, inserted] = g_factor_cache.emplace(std::move(key), std::move(memo));
  return it->second;
}

}  // namespace

OrderProfile analyze_poly_order(const Polynomial& f, const OrderOptions& opt) {
  if (f.ext()->d != 1) fail(Errc::usage, "order analysis expects a scalar polynomial");
  if (f.is_zero()) fail(Errc::usage, "order analysis of the zero polynomial");
  if (!f.is_monic()) fail(Errc::usage, "order analysis requires a monic polynomial");

  OrderProfile prof;
  prof.f = f.integer_coeffs();
  prof.given = f.ext()->mod;
  prof.options = opt;

  if (f.degree() == 0) {
    prof.p1 = 1;
    prof.split_degree = 1;
    prof.ks_ = Threshold::inf();
    return prof;
  }

  auto memo = factor_memo(f, opt.factor);
  const RootSet& rs = memo->rs;
  prof.split_degree = rs.d;
  BigInt p1 = 1;
  for (size_t i = 0; i < rs.clusters.size(); ++i) {
    const auto& cl = rs.clusters[i];
    ClusterOrder co;
    co.degree = cl.degree;
    co.multiplicity = cl.multiplicity;
    co.root = cl.roots[0];
    co.ord1 = memo->ord1s[i];
    co.c = cl.multiplicity == 1 ? 0 : ceil_log_p(cl.multiplicity, prof.given.p);
    p1 = big_lcm(p1, co.ord1 * pow_int(prof.given.p, co.c));
    prof.clusters.push_back(std::move(co));
  }
  prof.p1 = p1;
  return prof;
}

std::vector<BigInt> OrderProfile::cluster_gbar(size_t idx) const {
  const ClusterOrder& cl = clusters.at(idx);
  ExtPtr grD = cl.root.ext();
  Polynomial g = Polynomial::one(grD);
  RingElement r = cl.root;
  for (unsigned i = 0; i < cl.degree; ++i) {
    g = g * (Polynomial::t(grD) - Polynomial::from_coeffs(grD, {r}));
    r = r.frobenius();
  }
  std::vector<BigInt> gc;
  for (const auto& ce : g.coeffs()) {
    for (size_t j = 1; j < ce.coeffs().size(); ++j)
      if (ce.coeffs()[j] != 0) fail(Errc::theory_violation, "orbit product escaped F_p");
    gc.push_back(ce.coeffs()[0]);
  }
  return gc;
}

BigInt OrderProfile::pk(unsigned k) const {
  if (clusters.empty()) return 1;  // constant polynomial
  const BigInt& p = given.p;
  if (k == 1) return p1;

  // A cluster repeated mod p need not stay repeated at higher precision
  // (t^2 + t + 1 over Z_9 splits into distinct cube roots of unity), so the
  // closed forms of the repeated-root lemmas only bound the answer. When any
  // cluster is repeated, take the exact order of the companion matrix; the
  // simple-root case keeps the root-wise lcm of lifted orders.
  for (const auto& cl : clusters)
    if (cl.multiplicity > 1) return companion_order_pk(f, p, k, p1);

  std::optional<Polynomial> fk;  // built lazily for the wide path
  BigInt result = 1;
  for (size_t ci = 0; ci < clusters.size(); ++ci) {
    const auto& cl = clusters[ci];
    if (auto fast = simple_cluster_pk_fast(f, p, k, cl)) {
      result = big_lcm(result, *fast);
      continue;
    }
    // ord_k(alpha_k) = ord_1 * p^s; find the p-part by repeated powering.
    if (!fk) fk = poly_at(f, p, k);
    RingElement alpha = newton_lift(*fk, cl.root, k);
    RingElement b = alpha.pow(cl.ord1);
    unsigned s = 0;
    const unsigned s_bound = (k - 1) * cl.root.ext()->d + 1;
    while (!b.is_one()) {
      if (s > s_bound) fail(Errc::theory_violation, "root order p-part exceeded its bound");
      b = b.pow(p);
      ++s;
    }
    result = big_lcm(result, cl.ord1 * pow_int(p, s));
  }
  return result;
}

Threshold OrderProfile::ks() const {
  if (ks_) return *ks_;
  const unsigned cap = options.ks_cap;
  // Certificate first: f | t^{P_1} - 1 over the integers pins k_s = infinite.
  if (p1 <= options.certificate_limit) {
    IntPoly target = int_poly_xn_minus_1(p1.convert_to<unsigned>());
    if (int_poly_exact_div(target, int_poly_trim(f)).has_value()) {
      ks_ = Threshold::inf();
      return *ks_;
    }
  }
  for (unsigned k = 2; k <= cap; ++k) {
    if (pk(k) != p1) {
      ks_ = Threshold::finite(k - 1);
      return *ks_;
    }
  }
  ks_ = Threshold::undecided(cap);
  return *ks_;
}

Threshold OrderProfile::cluster_fk(size_t idx) const {
  const ClusterOrder& cl = clusters.at(idx);
  if (cl.fk) return *cl.fk;
  if (cl.multiplicity != 1)
    fail(Errc::multiple_root, "f_k(alpha) is defined for simple roots only");
  const BigInt& p = given.p;
  const unsigned cap = options.ks_cap;
  for (unsigned k = 2; k <= cap; ++k) {
    Polynomial fk_poly = poly_at(f, p, k);
    RingElement alpha = newton_lift(fk_poly, cl.root, k);
    if (!alpha.pow(cl.ord1).is_one()) {
      cl.fk = Threshold::finite(k - 1);
      return *cl.fk;
    }
  }
  // Stable to the cap: certify the lift as a root of unity by reconstructing
  // the orbit factor over Z and testing exact divisibility of both f and
  // t^{ord1} - 1.
  if (cl.ord1 <= options.certificate_limit) {
    unsigned kc = cap;
    Polynomial fkc = poly_at(f, p, kc);
    RingElement alpha = newton_lift(fkc, cl.root, kc);
    ExtPtr ext = alpha.ext();
    Polynomial g = Polynomial::one(ext);
    RingElement r = alpha;
    for (unsigned i = 0; i < cl.degree; ++i) {
      g = g * (Polynomial::t(ext) - Polynomial::from_coeffs(ext, {r}));
      r = r.frobenius();
    }
    BigInt pkc = pow_int(p, kc);
    IntPoly gz;
    bool scalar = true;
    for (const auto& ce : g.coeffs()) {
      for (size_t j = 1; j < ce.coeffs().size() && scalar; ++j)
        if (ce.coeffs()[j] != 0) scalar = false;
      BigInt c0 = ce.coeffs()[0];
      if (c0 * 2 > pkc) c0 -= pkc;  // signed reconstruction
      gz.push_back(c0);
    }
    if (scalar) {
      bool div_f = int_poly_exact_div(int_poly_trim(f), gz).has_value();
      bool div_cyc =
          int_poly_exact_div(int_poly_xn_minus_1(cl.ord1.convert_to<unsigned>()), gz).has_value();
      if (div_f && div_cyc) {
        cl.fk = Threshold::inf();
        return *cl.fk;
      }
    }
  }
  cl.fk = Threshold::undecided(cap);
  return *cl.fk;
}

std::string OrderProfile::f_text() const {
  return poly_at(f, given.p, given.k).str();
}

BigInt p1_of_poly(const Polynomial& f) { return analyze_poly_order(f).p1; }

std::pair<Threshold, OrderProfile> ks_of_poly(const Polynomial& f, const OrderOptions& opt) {
  if (f.degree() > 0 && BigInt(f.degree()) > f.ext()->mod.p)
    fail(Errc::out_of_theory,
         "deg f = " + std::to_string(f.degree()) + " exceeds p (theorem hypothesis m <= p)");
  OrderProfile prof = analyze_poly_order(f, opt);
  Threshold t = prof.ks();
  if (t.kind == Threshold::Kind::undecided)
    fail(Errc::undecided,
         "k_s search reached cap " + std::to_string(t.cap) + " without a stabilization certificate");
  return {t, std::move(prof)};
}

BigInt pk_of_poly(const Polynomial& f, unsigned k, const OrderOptions& opt) {
  if (f.degree() > 0 && BigInt(f.degree()) > f.ext()->mod.p)
    fail(Errc::out_of_theory,
         "deg f = " + std::to_string(f.degree()) + " exceeds p (theorem hypothesis m <= p)");
  if (k < 1) fail(Errc::usage, "precision must be >= 1");
  return analyze_poly_order(f, opt).pk(k);
}

BigInt default_oracle_bound(const Modulus& mod, unsigned split_degree) {
  return 4 * mod.pk * (pow_int(mod.p, split_degree) - 1);
}


OrderEqualityReport verify_order_extension_equality(const Polynomial& f, unsigned k,
                                                    const OrderOptions& opt) {
  OrderProfile prof = analyze_poly_order(f, opt);
  OrderEqualityReport rep;
  rep.f_text = f.str();
  rep.p = f.ext()->mod.p;
  rep.k = k;
  rep.theory = prof.pk(k);
  Polynomial fk = f.at_precision(k);
  Modulus mk = Modulus::make(rep.p, k);
  rep.oracle = poly_order_oracle(fk, default_oracle_bound(mk, prof.split_degree));
  rep.ks = prof.ks();
  rep.pass = rep.theory == rep.oracle;
  for (size_t i = 0; i < prof.clusters.size(); ++i) {
    const auto& cl = prof.clusters[i];
    std::ostringstream os;
    os << "root " << cl.root.str() << " deg " << cl.degree << " mult " << cl.multiplicity
       << " ord1 " << cl.ord1.str();
    if (cl.multiplicity == 1) os << " fk " << prof.cluster_fk(i).str();
    rep.cluster_notes.push_back(os.str());
  }
  return rep;
}

}  // namespace zpk
