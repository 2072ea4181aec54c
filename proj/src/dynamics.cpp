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
#include "zpkcycles/dynamics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace zpk {

LinearMap LinearMap::from_integer_matrix(const Modulus& mod, unsigned dim, std::vector<BigInt> wz,
                                         std::vector<BigInt> f, std::string label) {
  if (wz.size() != size_t(dim) * dim) fail(Errc::usage, "matrix entry count mismatch");
  LinearMap m;
  m.mod = mod;
  m.dim = dim;
  m.Wz = std::move(wz);
  m.f = std::move(f);
  m.label = std::move(label);
  m.W = Matrix(dim, mod.pk);
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j) m.W.at(i, j) = mod_reduce(m.Wz[size_t(i) * dim + j], mod.pk);
  return m;
}

LinearMap LinearMap::at_precision(unsigned k2) const {
  if (k2 == mod.k) return *this;
  LinearMap m = from_integer_matrix(Modulus::make(mod.p, k2), dim, Wz, f, label);
  m.block = block;
  return m;
}

Polynomial LinearMap::f_poly() const { return f_poly_at(mod.k); }

Polynomial LinearMap::f_poly_at(unsigned k2) const {
  ExtPtr ext = ExtensionDescriptor::get(Modulus::make(mod.p, k2), 1);
  return Polynomial::from_integer_coeffs(ext, f);
}

BigInt LinearMap::state_count() const { return pow_int(mod.pk, dim); }

LinearMap companion_map(const Polynomial& f, unsigned n) {
  if (f.ext()->d != 1) fail(Errc::usage, "companion map expects a scalar polynomial");
  if (!f.is_monic() || f.degree() < 1) fail(Errc::usage, "companion map requires a monic polynomial of degree >= 1");
  if (n < 1) fail(Errc::usage, "block dimension n must be >= 1");
  const Modulus& mod = f.ext()->mod;
  {
    Valuation v0 = valuation(f.coeff(0));
    if (v0.infinite || v0.value > 0)
      fail(Errc::non_unit, "det M = +-f(0) must be a unit for a permutation map");
  }
  const unsigned m = static_cast<unsigned>(f.degree());
  const unsigned dim = m * n;
  std::vector<BigInt> wz(size_t(dim) * dim, BigInt(0));
  for (unsigned bi = 0; bi + 1 < m; ++bi)
    for (unsigned j = 0; j < n; ++j) wz[size_t(bi * n + j) * dim + (bi + 1) * n + j] = 1;
  for (unsigned bj = 0; bj < m; ++bj) {
    BigInt coeff = -f.coeff(bj).coeffs()[0];  // exact integer entry
    for (unsigned j = 0; j < n; ++j) wz[size_t((m - 1) * n + j) * dim + bj * n + j] = coeff;
  }
  LinearMap map = LinearMap::from_integer_matrix(mod, dim, std::move(wz), f.integer_coeffs(),
                                                 "companion(" + f.str() + ")/n=" + std::to_string(n));
  map.block = std::make_pair(m, n);
  return map;
}

StateVector reduce_state(const StateVector& x, const Modulus& mod) {
  StateVector y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = mod_reduce(x[i], mod.pk);
  return y;
}

StateVector iterate(const LinearMap& map, const StateVector& x, const BigInt& steps) {
  if (x.size() != map.dim) fail(Errc::usage, "state dimension mismatch");
  if (steps < 0) fail(Errc::usage, "steps must be non-negative");
  StateVector y = reduce_state(x, map.mod);
  if (steps == 0) return y;
  if (steps <= 64) {
    BigInt s = steps;
    while (s > 0) {
      y = map.W.apply(y);
      --s;
    }
    return y;
  }
  return map.W.pow(steps).apply(y);
}

BigInt map_order(const LinearMap& map, const BigInt& t1_bound) {
  // Order mod p by incremental powering, then the p-group part.
  Matrix Wp = map.W.at_modulus(map.mod.p);
  Matrix acc = Wp;
  BigInt t1 = 1;
  while (!acc.is_identity()) {
    if (t1 > t1_bound) fail(Errc::capacity, "map order mod p exceeded bound " + t1_bound.str());
    acc = acc * Wp;
    ++t1;
  }
  if (map.mod.k == 1) return t1;
  Matrix A = map.W.pow(t1);
  unsigned sigma = 0;
  while (!A.is_identity()) {
    if (sigma > map.mod.k * map.dim + 2)
      fail(Errc::theory_violation, "map order p-part exceeded its bound");
    A = A.pow(map.mod.p);
    ++sigma;
  }
  return t1 * pow_int(map.mod.p, sigma);
}

BigInt state_period(const LinearMap& map, const StateVector& x,
                    const std::optional<BigInt>& global_period) {
  StateVector x0 = reduce_state(x, map.mod);
  BigInt global = global_period ? *global_period : map_order(map);
  for (const BigInt& d : divisors(global)) {
    if (iterate(map, x0, d) == x0) return d;
  }
  fail(Errc::theory_violation, "state period does not divide the global period");
}

Polynomial minimal_poly_of_sequence(const LinearMap& map, const StateVector& x0) {
  if (map.mod.k != 1)
    fail(Errc::unsupported_ring, "trajectory minimal polynomial is computed over the field k = 1");
  ExtPtr e1 = ExtensionDescriptor::get(map.mod, 1);
  StateVector s = reduce_state(x0, map.mod);
  bool all_zero = true;
  for (const auto& c : s)
    if (c != 0) all_zero = false;
  if (all_zero) return Polynomial::one(e1);

  // Walk one full period, recording every coordinate sequence.
  std::vector<std::vector<BigInt>> seq(map.dim);
  StateVector cur = s;
  BigInt guard = map.state_count();
  BigInt T = 0;
  do {
    for (unsigned j = 0; j < map.dim; ++j) seq[j].push_back(cur[j]);
    cur = map.W.apply(cur);
    ++T;
    if (T > guard) fail(Errc::theory_violation, "trajectory failed to close (not a permutation?)");
  } while (!(cur == s));

  unsigned Ts = T.convert_to<unsigned>();
  Polynomial xt_minus_1 =
      Polynomial::from_integer_coeffs(e1, int_poly_xn_minus_1(Ts));
  Polynomial h = Polynomial::one(e1);
  for (unsigned j = 0; j < map.dim; ++j) {
    // Trajectory polynomial with reversed coefficients: sum s_i t^{T-1-i}.
    std::vector<BigInt> rev(Ts);
    for (unsigned i = 0; i < Ts; ++i) rev[Ts - 1 - i] = seq[j][i];
    Polynomial Hj = Polynomial::from_integer_coeffs(e1, rev);
    Polynomial g = poly_gcd_field(Hj, xt_minus_1);
    Polynomial mj = g.is_zero() ? Polynomial::one(e1) : poly_divmod(xt_minus_1, g).first;
    h = poly_lcm_field(h, mj);
  }
  return h;
}

Threshold ks_of_state(const LinearMap& map, const StateVector& x0, const OrderOptions& opt) {
  LinearMap m1 = map.at_precision(1);
  StateVector s = reduce_state(x0, m1.mod);
  bool nonzero = false;
  for (const auto& c : s)
    if (c != 0) nonzero = true;
  if (!nonzero) fail(Errc::usage, "ks_of_state requires a state that is nonzero mod p");
  (void)opt;

  // max{k : T_k(x) = T_1(x)} exactly: T_k stays at T_1 precisely while
  // p^k divides the integer vector (Wz^{T_1} - I) x, so the threshold is its
  // minimum entry valuation; the zero vector certifies an infinite threshold.
  BigInt t1 = state_period(m1, s);
  const unsigned dim = map.dim;
  std::vector<BigInt> power(size_t(dim) * dim, BigInt(0));
  for (unsigned i = 0; i < dim; ++i) power[size_t(i) * dim + i] = 1;
  {
    std::vector<BigInt> base = map.Wz;
    BigInt e = t1;
    auto mul = [&](const std::vector<BigInt>& A, const std::vector<BigInt>& B) {
      std::vector<BigInt> C(size_t(dim) * dim, BigInt(0));
      for (unsigned i = 0; i < dim; ++i)
        for (unsigned l = 0; l < dim; ++l) {
          if (A[size_t(i) * dim + l] == 0) continue;
          for (unsigned j = 0; j < dim; ++j)
            C[size_t(i) * dim + j] += A[size_t(i) * dim + l] * B[size_t(l) * dim + j];
        }
      return C;
    };
    while (e > 0) {
      if (e % 2 == 1) power = mul(power, base);
      e /= 2;
      if (e > 0) base = mul(base, base);
    }
  }
  bool all_zero = true;
  unsigned best = 0;
  bool have = false;
  for (unsigned i = 0; i < dim; ++i) {
    BigInt acc = 0;
    for (unsigned j = 0; j < dim; ++j) acc += power[size_t(i) * dim + j] * s[j];
    acc -= s[i];
    if (acc == 0) continue;
    all_zero = false;
    unsigned v = int_valuation(acc, map.mod.p);
    if (!have || v < best) {
      best = v;
      have = true;
    }
  }
  if (all_zero) return Threshold::inf();
  if (best < 1) fail(Errc::theory_violation, "state period certificate broken below its own T_1");
  return Threshold::finite(best);
}

BigInt CycleHistogram::weighted_sum() const {
  BigInt s = 0;
  for (const auto& [t, n] : cycles) s += t * n;
  return s;
}

BigInt CycleHistogram::lcm_of_lengths() const {
  BigInt l = 1;
  for (const auto& [t, n] : cycles)
    if (n > 0) l = big_lcm(l, t);
  return l;
}

BigInt CycleHistogram::count(const BigInt& T) const {
  auto it = cycles.find(T);
  return it == cycles.end() ? BigInt(0) : it->second;
}

CycleHistogram enumerate_cycles(const LinearMap& map, uint64_t budget) {
  BigInt total = map.state_count();
  if (total > budget)
    fail(Errc::capacity, "state space " + total.str() + " exceeds enumeration budget " +
                             std::to_string(budget) + " (raise --budget)");
  const uint64_t n = total.convert_to<uint64_t>();
  const uint64_t q = map.mod.pk.convert_to<uint64_t>();
  const unsigned dim = map.dim;

  std::vector<uint64_t> w(size_t(dim) * dim);
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j) w[size_t(i) * dim + j] = map.W.at(i, j).convert_to<uint64_t>();

  std::vector<uint64_t> visited((n + 63) / 64, 0);
  auto test_and_set = [&](uint64_t idx) {
    uint64_t mask = 1ull << (idx & 63);
    uint64_t& word = visited[idx >> 6];
    bool was = word & mask;
    word |= mask;
    return was;
  };

  std::vector<uint64_t> state(dim), next(dim);
  CycleHistogram hist;
  hist.total_states = total;
  std::map<uint64_t, uint64_t> cycles64;

  for (uint64_t start = 0; start < n; ++start) {
    if (visited[start >> 6] & (1ull << (start & 63))) continue;
    // unpack little-endian base-q digits
    uint64_t idx = start;
    for (unsigned i = 0; i < dim; ++i) {
      state[i] = idx % q;
      idx /= q;
    }
    uint64_t len = 0;
    uint64_t cur = start;
    do {
      test_and_set(cur);
      ++len;
      for (unsigned i = 0; i < dim; ++i) {
        unsigned __int128 acc = 0;
        const uint64_t* row = &w[size_t(i) * dim];
        for (unsigned j = 0; j < dim; ++j) acc += static_cast<unsigned __int128>(row[j]) * state[j];
        next[i] = static_cast<uint64_t>(acc % q);
      }
      state.swap(next);
      cur = 0;
      for (unsigned i = dim; i-- > 0;) cur = cur * q + state[i];
    } while (cur != start);
    ++cycles64[len];
  }
  for (const auto& [t, c] : cycles64) hist.cycles[BigInt(t)] = BigInt(c);
  if (hist.weighted_sum() != total)
    fail(Errc::theory_violation, "cycle histogram checksum mismatch");
  return hist;
}

EmbeddingReport embedding_check(const LinearMap& map, uint64_t budget) {
  if (map.mod.k < 2) fail(Errc::usage, "embedding check needs k >= 2");
  EmbeddingReport rep;
  rep.k = map.mod.k;
  rep.lower = enumerate_cycles(map.at_precision(map.mod.k - 1), budget);

  // Enumerate at k, splitting cycles by whether they lie in (p). A cycle is
  // in (p) iff any of its states is (the map preserves (p)).
  BigInt total = map.state_count();
  if (total > budget)
    fail(Errc::capacity, "state space " + total.str() + " exceeds enumeration budget");
  const uint64_t n = total.convert_to<uint64_t>();
  const uint64_t q = map.mod.pk.convert_to<uint64_t>();
  const uint64_t p = map.mod.p.convert_to<uint64_t>();
  const unsigned dim = map.dim;
  std::vector<uint64_t> w(size_t(dim) * dim);
  for (unsigned i = 0; i < dim; ++i)
    for (unsigned j = 0; j < dim; ++j) w[size_t(i) * dim + j] = map.W.at(i, j).convert_to<uint64_t>();
  std::vector<uint64_t> visited((n + 63) / 64, 0);
  std::vector<uint64_t> state(dim), next(dim);
  std::map<uint64_t, uint64_t> sub;
  BigInt sub_states = 0;
  for (uint64_t start = 0; start < n; ++start) {
    if (visited[start >> 6] & (1ull << (start & 63))) continue;
    uint64_t idx = start;
    bool in_p = true;
    for (unsigned i = 0; i < dim; ++i) {
      state[i] = idx % q;
      idx /= q;
      if (state[i] % p != 0) in_p = false;
    }
    uint64_t len = 0;
    uint64_t cur = start;
    do {
      visited[cur >> 6] |= 1ull << (cur & 63);
      ++len;
      for (unsigned i = 0; i < dim; ++i) {
        unsigned __int128 acc = 0;
        const uint64_t* row = &w[size_t(i) * dim];
        for (unsigned j = 0; j < dim; ++j) acc += static_cast<unsigned __int128>(row[j]) * state[j];
        next[i] = static_cast<uint64_t>(acc % q);
      }
      state.swap(next);
      cur = 0;
      for (unsigned i = dim; i-- > 0;) cur = cur * q + state[i];
    } while (cur != start);
    if (in_p) {
      sub[len] += 1;
      sub_states += len;
    }
  }
  rep.sub.total_states = sub_states;
  for (const auto& [t, c] : sub) rep.sub.cycles[BigInt(t)] = BigInt(c);

  BigInt expected_sub = pow_int(Modulus::make(map.mod.p, map.mod.k - 1).pk, dim);
  rep.image_exact = sub_states == expected_sub;
  rep.pass = rep.image_exact && rep.sub.cycles == rep.lower.cycles;
  return rep;
}

LiftLawReport period_lift_law_check(const LinearMap& map, const StateVector& x0,
                                    const StateVector& c, unsigned k_prime) {
  const unsigned k = map.mod.k;
  if (k_prime < 1 || k_prime >= k) fail(Errc::usage, "period_lift_law_check needs 1 <= k' < k");
  BigInt pk_prime = pow_int(map.mod.p, k_prime);
  StateVector whole(map.dim);
  for (unsigned i = 0; i < map.dim; ++i) whole[i] = mod_reduce(x0[i] + pk_prime * c[i], map.mod.pk);
  LiftLawReport rep;
  BigInt global = map_order(map);
  rep.t_whole = state_period(map, whole, global);
  rep.t_x0 = state_period(map, x0, global);
  LinearMap low = map.at_precision(k - k_prime);
  rep.t_c = state_period(low, reduce_state(c, low.mod));
  rep.expected = big_lcm(rep.t_x0, rep.t_c);
  rep.pass = rep.t_whole == rep.expected;
  return rep;
}

namespace {

// Iterate all states of Z_p^dim with a callback (c, period mod p).
template <typename F>
void for_each_k1_state(const LinearMap& map1, const BigInt& global1, F&& fn) {
  const uint64_t p = map1.mod.p.convert_to<uint64_t>();
  const unsigned dim = map1.dim;
  StateVector c(dim, BigInt(0));
  std::vector<uint64_t> digits(dim, 0);
  while (true) {
    fn(c, state_period(map1, c, global1));
    unsigned i = 0;
    while (i < dim) {
      ++digits[i];
      if (digits[i] < p) {
        c[i] = BigInt(digits[i]);
        break;
      }
      digits[i] = 0;
      c[i] = 0;
      ++i;
    }
    if (i == dim) break;
  }
}

BigInt odd_part(const BigInt& t, const BigInt& p) {
  BigInt u = t;
  while (u % p == 0) u /= p;
  return u;
}

}  // namespace

BigInt splitting_count(const LinearMap& map, const BigInt& t_star, const BigInt& t) {
  auto table = splitting_table(map, t_star);
  auto it = table.find(t);
  return it == table.end() ? BigInt(0) : it->second;
}

std::map<BigInt, BigInt> splitting_table(const LinearMap& map, const BigInt& t_star) {
  BigInt p1 = p1_of_poly(map.f_poly_at(1));
  if (!(t_star > p1))
    fail(Errc::out_of_theory, "splitting counts require T* > P_1(f) = " + p1.str());
  LinearMap m1 = map.at_precision(1);
  BigInt global1 = map_order(m1);
  BigInt pts = map.mod.p * t_star;
  std::map<BigInt, BigInt> out;
  for_each_k1_state(m1, global1, [&](const StateVector&, const BigInt& t1c) {
    out[big_lcm(pts, t1c)] += 1;
  });
  return out;
}

DMatrix build_d_matrix(const LinearMap& map, unsigned v, const OrderOptions& opt) {
  BigInt p1 = p1_of_poly(map.f_poly_at(1));
  unsigned nu_p1 = p1 % map.mod.p == 0 ? int_valuation(p1, map.mod.p) : 0;
  // The recursion needs nu(p T*) to dominate nu(T_1(c)), i.e. v + 1 > nu(P_1):
  // the printed hypothesis v > nu(P_1) is one step more conservative than the
  // argument requires.
  if (v < 1 || v < nu_p1)
    fail(Errc::out_of_theory,
         "cycle-count recursion requires v >= max(1, nu(P_1(f)) = " + std::to_string(nu_p1) + ")");

  LinearMap m1 = map.at_precision(1);
  BigInt global1 = map_order(m1);
  const BigInt& p = map.mod.p;

  // Odd parts of the k=1 period of every state class, with counts, plus the
  // seed set: classes whose period eventually grows (finite ks) feed levels
  // v >= 1; the basis is their lcm-closure under mixing with any class.
  std::map<BigInt, BigInt> odd_counts;
  std::set<std::string> seen_polys;
  std::set<BigInt> seeds;
  std::set<BigInt> all_odds;
  for_each_k1_state(m1, global1, [&](const StateVector& c, const BigInt& t1c) {
    BigInt u = odd_part(t1c, p);
    odd_counts[u] += 1;
    all_odds.insert(u);
    bool zero = true;
    for (const auto& x : c)
      if (x != 0) zero = false;
    if (zero) return;
    Polynomial h = minimal_poly_of_sequence(m1, c);
    if (!seen_polys.insert(h.str()).second) return;  // same h, same decision
    if (ks_of_state(m1, c, opt).is_finite()) seeds.insert(u);
  });

  // lcm-closure of the seeds under mixing with every odd part.
  std::set<BigInt> basis = seeds;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const BigInt& u : std::vector<BigInt>(basis.begin(), basis.end()))
      for (const BigInt& o : all_odds) {
        BigInt l = big_lcm(u, o);
        if (basis.insert(l).second) changed = true;
      }
  }

  DMatrix D;
  D.v = v;
  D.odd_basis.assign(basis.begin(), basis.end());
  for (const BigInt& u : all_odds)
    if (!basis.count(u)) D.pruned.push_back(u);
  const size_t r = D.odd_basis.size();
  auto index_of = [&](const BigInt& u) -> size_t {
    auto it = std::lower_bound(D.odd_basis.begin(), D.odd_basis.end(), u);
    if (it == D.odd_basis.end() || *it != u) return r;
    return static_cast<size_t>(it - D.odd_basis.begin());
  };

  std::vector<std::vector<BigInt>> a(r, std::vector<BigInt>(r, BigInt(0)));
  for (size_t i = 0; i < r; ++i) {
    for (const auto& [o, cnt] : odd_counts) {
      BigInt l = big_lcm(D.odd_basis[i], o);
      size_t j = index_of(l);
      if (j == r) fail(Errc::theory_violation, "lcm escaped the closed basis (impossible)");
      a[i][j] += cnt;
    }
  }
  // Children per parent cycle: a_{ij} * T_{1,i} / (p * T_{1,j}), the Lemma-13
  // count a(T*,T) T*/T. (The printed b_{ij} = a_{ij}/p drops the T_{1,i}/T_{1,j}
  // factor and only matches on the diagonal.) Verify integrality and
  // lower-triangularity.
  D.b.assign(r, std::vector<BigInt>(r, BigInt(0)));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j) {
      if (a[i][j] == 0) continue;
      if (j < i)
        fail(Errc::theory_violation, "D matrix is not lower triangular: a[" + std::to_string(i) +
                                         "][" + std::to_string(j) + "] = " + a[i][j].str());
      BigInt num = a[i][j] * D.odd_basis[i];
      BigInt den = p * D.odd_basis[j];
      if (num % den != 0)
        fail(Errc::theory_violation, "child count a_{ij} T_i / (p T_j) = " + num.str() + "/" +
                                         den.str() + " is not an integer");
      D.b[j][i] = num / den;
    }
  if (!D.pruned.empty()) {
    std::ostringstream os;
    os << "pruned odd parts (never occur at levels v >= 1):";
    for (const auto& u : D.pruned) os << " " << u.str();
    D.notes.push_back(os.str());
  }
  return D;
}

DmatrixReport dmatrix_recursion_check(const LinearMap& map, unsigned k, unsigned v, unsigned l,
                                      uint64_t budget) {
  DmatrixReport rep;
  rep.k = k;
  rep.v = v;
  rep.l = l;
  rep.d = build_d_matrix(map, v);
  const BigInt& p = map.mod.p;

  auto project = [&](const CycleHistogram& h, unsigned level) {
    std::vector<BigInt> vec(rep.d.odd_basis.size(), BigInt(0));
    BigInt scale = pow_int(p, level);
    for (const auto& [t, n] : h.cycles) {
      if (t % scale != 0) continue;
      BigInt u = t / scale;
      if (u % p == 0) continue;  // nu(t) != level
      auto it = std::lower_bound(rep.d.odd_basis.begin(), rep.d.odd_basis.end(), u);
      if (it == rep.d.odd_basis.end() || *it != u)
        fail(Errc::theory_violation,
             "measured length " + t.str() + " has odd part outside the D basis");
      vec[it - rep.d.odd_basis.begin()] = n;
    }
    return vec;
  };

  CycleHistogram hk = enumerate_cycles(map.at_precision(k), budget);
  rep.n_k = project(hk, v);
  CycleHistogram hkl = enumerate_cycles(map.at_precision(k + l), budget);
  rep.n_kl = project(hkl, v + l);

  // predicted = D^l * n_k
  std::vector<BigInt> cur = rep.n_k;
  const size_t r = rep.d.odd_basis.size();
  for (unsigned step = 0; step < l; ++step) {
    std::vector<BigInt> nxt(r, BigInt(0));
    for (size_t j = 0; j < r; ++j)
      for (size_t i = 0; i < r; ++i) nxt[j] += rep.d.b[j][i] * cur[i];
    cur = std::move(nxt);
  }
  rep.predicted = cur;
  rep.vacuous = true;
  for (const auto& x : rep.n_k)
    if (x != 0) rep.vacuous = false;
  rep.pass = rep.predicted == rep.n_kl;
  return rep;
}

StabilizationReport stabilization_check(const LinearMap& map, const BigInt& T, unsigned k_lo,
                                        unsigned k_hi, uint64_t budget) {
  // Hypothesis gate: f(1) and f(-1) units.
  {
    BigInt f1 = 0, fm1 = 0;
    BigInt sign = 1;
    for (size_t i = 0; i < map.f.size(); ++i) {
      f1 += map.f[i];
      fm1 += sign * map.f[i];
      sign = -sign;
    }
    if (f1 % map.mod.p == 0 || fm1 % map.mod.p == 0)
      fail(Errc::out_of_theory, "stabilization requires f(1) and f(-1) to be units mod p");
  }
  StabilizationReport rep;
  rep.T = T;
  rep.k_hi = k_hi;

  // khat_s = max over nonzero states of ks_of_state.
  LinearMap m1 = map.at_precision(1);
  BigInt global1 = map_order(m1);
  unsigned khat = 1;
  bool khat_inf = false;
  std::set<std::string> seen;
  for_each_k1_state(m1, global1, [&](const StateVector& c, const BigInt&) {
    bool zero = true;
    for (const auto& x : c)
      if (x != 0) zero = false;
    if (zero || khat_inf) return;
    Polynomial h = minimal_poly_of_sequence(m1, c);
    if (!seen.insert(h.str()).second) return;
    Threshold t = ks_of_state(m1, c);
    if (t.is_infinite()) {
      khat_inf = true;
      return;
    }
    khat = std::max(khat, t.value);
  });
  if (khat_inf) {
    rep.khat = Threshold::inf();
    fail(Errc::out_of_theory,
         "some state has infinite k_s; Theorem 3 stabilization does not apply");
  }
  rep.khat = Threshold::finite(khat);

  unsigned nu_t = T % map.mod.p == 0 ? int_valuation(T, map.mod.p) : 0;
  rep.k_start = std::max(k_lo, khat + nu_t);
  if (rep.k_start > k_hi)
    fail(Errc::usage, "stabilization window empty: start " + std::to_string(rep.k_start) +
                          " beyond k_hi " + std::to_string(k_hi));
  for (unsigned k = rep.k_start; k <= k_hi; ++k) {
    CycleHistogram h = enumerate_cycles(map.at_precision(k), budget);
    rep.counts.push_back(h.count(T));
  }
  rep.pass = std::all_of(rep.counts.begin(), rep.counts.end(),
                         [&](const BigInt& c) { return c == rep.counts.front(); });
  return rep;
}

void write_dot(const LinearMap& map, std::ostream& os) {
  BigInt total = map.state_count();
  if (total > 10000)
    fail(Errc::capacity,
         "DOT export refused for " + total.str() + " states (limit 10000); a partial graph misleads");
  const uint64_t n = total.convert_to<uint64_t>();
  const uint64_t q = map.mod.pk.convert_to<uint64_t>();
  const unsigned dim = map.dim;
  auto label = [&](uint64_t idx) {
    std::ostringstream ss;
    ss << "\"(";
    for (unsigned i = 0; i < dim; ++i) {
      if (i) ss << ",";
      ss << idx % q;
      idx /= q;
    }
    ss << ")\"";
    return ss.str();
  };
  os << "digraph G {\n";
  std::vector<uint64_t> state(dim);
  for (uint64_t s = 0; s < n; ++s) {
    uint64_t idx = s;
    for (unsigned i = 0; i < dim; ++i) {
      state[i] = idx % q;
      idx /= q;
    }
    uint64_t to = 0;
    for (unsigned i = dim; i-- > 0;) {
      unsigned __int128 acc = 0;
      for (unsigned j = 0; j < dim; ++j)
        acc += static_cast<unsigned __int128>(map.W.at(i, j).convert_to<uint64_t>()) * state[j];
      to = to * q + static_cast<uint64_t>(acc % q);
    }
    os << "  " << label(s) << " -> " << label(to) << ";\n";
  }
  os << "}\n";
}

}  // namespace zpk
