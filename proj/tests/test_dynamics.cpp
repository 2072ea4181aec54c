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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "zpkcycles/dynamics.hpp"

using namespace zpk;

namespace {

Polynomial P(const Modulus& m, const std::string& s) { return Polynomial::parse(m, s); }

LinearMap cat12_companion(unsigned k) {
  // f = t^2 - 4t + 1 (Cat (1,2)) pinned at precision 4 so the integer
  // identity is -4 across the whole tower, then reduced to p^k.
  return companion_map(P(Modulus::make(5, 4), "1 - 4t + t^2"), 2).at_precision(k);
}

std::map<BigInt, BigInt> hist(std::initializer_list<std::pair<long, long>> xs) {
  std::map<BigInt, BigInt> m;
  for (auto [t, n] : xs) m[BigInt(t)] = BigInt(n);
  return m;
}

}  // namespace

TEST_CASE("companion structure and determinant gate") {
  LinearMap m = cat12_companion(1);
  CHECK(m.dim == 4);
  // identity superdiagonal block
  CHECK(m.W.at(0, 2) == 1);
  CHECK(m.W.at(1, 3) == 1);
  // last block-row: -f_0 I, -f_1 I = -I, 4I
  CHECK(m.W.at(2, 0) == 4);
  CHECK(m.W.at(3, 1) == 4);
  CHECK(m.W.at(2, 2) == 4);  // -(-4) mod 5
  try {
    companion_map(P(Modulus::make(5, 1), "t + t^2"), 1);
    FAIL("expected non-unit determinant");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_unit);
  }
}

TEST_CASE("iterate examples") {
  LinearMap m = companion_map(P(Modulus::make(3, 2), "2 + t + t^2"), 1);
  StateVector zero(m.dim, BigInt(0));
  CHECK(iterate(m, zero, BigInt(1000000)) == zero);
  StateVector x{BigInt(1), BigInt(2)};
  CHECK(iterate(m, x, BigInt(0)) == x);

  // Cat companion (1,1), p=5, k=1: every period divides 10 = 2p.
  LinearMap cat11 = companion_map(P(Modulus::make(5, 1), "1 - 3t + t^2"), 2);
  StateVector y{BigInt(1), BigInt(0), BigInt(1), BigInt(1)};
  CHECK(iterate(cat11, y, BigInt(10)) == reduce_state(y, cat11.mod));
}

TEST_CASE("state_period examples") {
  LinearMap m1 = cat12_companion(1);
  StateVector zero(4, BigInt(0));
  CHECK(state_period(m1, zero) == 1);
  StateVector x{BigInt(1), BigInt(0), BigInt(0), BigInt(0)};
  CHECK(state_period(m1, x) == 3);
  LinearMap m2 = cat12_companion(2);
  StateVector y{BigInt(1), BigInt(0), BigInt(5), BigInt(0)};
  CHECK(state_period(m2, y) == 15);  // nonzero mod 5 => full period
}

TEST_CASE("map_order equals the polynomial order") {
  for (unsigned k = 1; k <= 3; ++k) {
    LinearMap m = cat12_companion(k);
    CHECK(map_order(m) == pk_of_poly(m.f_poly(), k));
  }
}

TEST_CASE("minimal_poly_of_sequence over the field") {
  Modulus z5 = Modulus::make(5, 1);
  LinearMap m = companion_map(P(z5, "1 + t + t^2"), 1);
  StateVector zero(2, BigInt(0));
  CHECK(minimal_poly_of_sequence(m, zero) == P(z5, "1"));
  StateVector x{BigInt(1), BigInt(2)};
  CHECK(minimal_poly_of_sequence(m, x) == P(z5, "1 + t + t^2"));

  // split map: eigenvector states have linear minimal polynomials
  LinearMap split = companion_map(P(z5, "2 - 3t + t^2"), 1);  // (t-1)(t-2)
  StateVector e1{BigInt(1), BigInt(1)};
  CHECK(minimal_poly_of_sequence(split, e1) == P(z5, "-1 + t"));
  StateVector e2{BigInt(1), BigInt(2)};
  CHECK(minimal_poly_of_sequence(split, e2) == P(z5, "-2 + t"));
  // trajectory minimal polynomial divides f for every state
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    StateVector x0{BigInt(rng() % 5), BigInt(rng() % 5)};
    Polynomial h = minimal_poly_of_sequence(split, x0);
    if (h.degree() >= 1) {
      auto [q, r] = poly_divmod(P(z5, "2 - 3t + t^2"), h);
      CHECK(r.is_zero());
    }
    // Lemma 1: the order of h equals the measured least period.
    BigInt T = state_period(split, x0);
    if (h.degree() >= 1)
      CHECK(poly_order_oracle(h, BigInt(10000)) == T);
    else
      CHECK(T == 1);
  }
}

TEST_CASE("ks_of_state examples") {
  LinearMap m = cat12_companion(1);
  StateVector x{BigInt(1), BigInt(0), BigInt(0), BigInt(0)};
  CHECK(ks_of_state(m, x) == Threshold::finite(1));

  LinearMap stable = companion_map(P(Modulus::make(5, 1), "1 + t + t^2"), 1);
  StateVector y{BigInt(1), BigInt(0)};
  CHECK(ks_of_state(stable, y).is_infinite());

  StateVector zero(4, BigInt(0));
  CHECK_THROWS_AS(ks_of_state(m, zero), Error);

  // t^2 - 8t + 1 is exactly t^2 + t + 1 mod 9: the period-3 class of the
  // double-root-mod-3 polynomial keeps its period through k = 2 and only
  // grows at k = 3.
  LinearMap late = companion_map(P(Modulus::make(3, 4), "1 - 8t + t^2"), 1);
  StateVector w{BigInt(2), BigInt(0)};
  Threshold t = ks_of_state(late, w);
  CHECK(t == Threshold::finite(2));
  CHECK(state_period(late.at_precision(1), w) == 3);
  CHECK(state_period(late.at_precision(2), w) == 3);
  CHECK(state_period(late.at_precision(3), w) == 9);
}

TEST_CASE("ks_of_state agrees with the root-threshold formula on simple trajectories") {
  // For states whose trajectory polynomial has only simple roots that are
  // also simple in f, the threshold is min over the roots of f_k(alpha).
  std::mt19937_64 rng(606);
  for (const char* ftext : {"1 - 4t + t^2", "2 - 3t + t^2", "3 + 2t + t^2"}) {
    LinearMap m = companion_map(P(Modulus::make(5, 4), ftext), 1);
    Polynomial f1 = m.f_poly_at(1);
    OrderProfile prof = analyze_poly_order(m.f_poly());
    bool all_simple = true;
    for (const auto& cl : prof.clusters) all_simple &= cl.multiplicity == 1;
    if (!all_simple) continue;
    for (int i = 0; i < 20; ++i) {
      StateVector x{BigInt(rng() % 5), BigInt(rng() % 5)};
      if (x[0] == 0 && x[1] == 0) x[0] = 1;
      Polynomial h = minimal_poly_of_sequence(m.at_precision(1), x);
      OrderProfile ph = analyze_poly_order(h);
      std::optional<Threshold> formula;
      for (size_t j = 0; j < ph.clusters.size(); ++j) {
        for (size_t fi = 0; fi < prof.clusters.size(); ++fi) {
          if (prof.cluster_gbar(fi) != ph.cluster_gbar(j)) continue;
          Threshold tj = prof.cluster_fk(fi);
          if (!formula)
            formula = tj;
          else if (formula->is_infinite())
            formula = tj;
          else if (tj.is_finite())
            formula = Threshold::finite(std::min(formula->value, tj.value));
        }
      }
      REQUIRE(formula.has_value());
      CHECK(ks_of_state(m, x) == *formula);
    }
  }
}

TEST_CASE("enumerate_cycles examples and checksum") {
  LinearMap ident = companion_map(P(Modulus::make(3, 2), "-1 + t"), 1);
  CycleHistogram h = enumerate_cycles(ident);
  CHECK(h.cycles == hist({{1, 9}}));

  CycleHistogram h2 = enumerate_cycles(cat12_companion(1));
  CHECK(h2.cycles == hist({{1, 1}, {3, 208}}));  // (625 - 1) / 3

  // split map histogram over Z_25 derived by eigen-decomposition
  LinearMap split = companion_map(P(Modulus::make(5, 2), "2 - 3t + t^2"), 1);
  CHECK(enumerate_cycles(split).cycles == hist({{1, 25}, {4, 25}, {20, 25}}));

  try {
    enumerate_cycles(cat12_companion(4), 1000);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::capacity);
    CHECK(std::string(e.what()).find("budget") != std::string::npos);
  }
}

TEST_CASE("embedding_check (Lemma 9)") {
  EmbeddingReport r = embedding_check(cat12_companion(2));
  CHECK(r.pass);
  CHECK(r.lower.cycles == hist({{1, 1}, {3, 208}}));
  CHECK(r.sub.cycles == r.lower.cycles);

  LinearMap ident = companion_map(P(Modulus::make(3, 3), "-1 + t"), 1);
  CHECK(embedding_check(ident).pass);

  LinearMap cat11 = companion_map(P(Modulus::make(5, 2), "1 - 3t + t^2"), 2);
  CHECK(embedding_check(cat11).pass);
}

TEST_CASE("Lemma 9 pointwise: periods of (p)-states drop a precision") {
  LinearMap m2 = cat12_companion(2);
  LinearMap m1 = m2.at_precision(1);
  BigInt g2 = map_order(m2), g1 = map_order(m1);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 40; ++i) {
    StateVector x(4), x_low(4);
    for (int j = 0; j < 4; ++j) {
      x_low[j] = BigInt(rng() % 5);
      x[j] = 5 * x_low[j];
    }
    CHECK(state_period(m2, x, g2) == state_period(m1, x_low, g1));
  }
}

TEST_CASE("period lift law (Lemma 12)") {
  LinearMap m = cat12_companion(2);
  StateVector x0{BigInt(1), BigInt(0), BigInt(0), BigInt(0)};
  StateVector zero(4, BigInt(0));
  LiftLawReport r0 = period_lift_law_check(m, x0, zero, 1);
  CHECK(r0.pass);
  CHECK(r0.t_c == 1);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    StateVector c(4);
    for (int j = 0; j < 4; ++j) c[j] = BigInt(rng() % 5);
    CHECK(period_lift_law_check(m, x0, c, 1).pass);
  }
}

TEST_CASE("splitting counts over the map's own state space") {
  LinearMap m = cat12_companion(1).at_precision(2);
  // T* = 15 > P_1 = 3; every c in Z_5^4 has T_1(c) in {1, 3}
  CHECK(splitting_count(m, BigInt(15), BigInt(75)) == 625);
  CHECK(splitting_count(m, BigInt(15), BigInt(30)) == 0);
  auto table = splitting_table(m, BigInt(15));
  BigInt total = 0;
  for (const auto& [t, a] : table) total += a;
  CHECK(total == 625);

  try {
    splitting_count(m, BigInt(3), BigInt(15));
    FAIL("expected out-of-theory (T* must exceed P_1)");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_theory);
  }
}

TEST_CASE("D matrix for irreducible and split maps") {
  // n = 1 companion of the Cat (1,2) polynomial: 2-dimensional system.
  LinearMap m = companion_map(P(Modulus::make(5, 4), "1 - 4t + t^2"), 1);
  DMatrix d = build_d_matrix(m, 1);
  REQUIRE(d.odd_basis.size() == 1);
  CHECK(d.odd_basis[0] == 3);
  CHECK(d.b[0][0] == 5);

  // 4-dimensional companion: the same structure scaled by p^2.
  DMatrix d4 = build_d_matrix(cat12_companion(2), 1);
  REQUIRE(d4.odd_basis.size() == 1);
  CHECK(d4.b[0][0] == 125);

  // split polynomial (t-1)(t-2) over Z_25: the root-1 classes stabilize at
  // k = 2 and re-enter the recursion, giving a genuine 2x2 strict lower fill.
  LinearMap split = companion_map(P(Modulus::make(5, 2), "2 - 3t + t^2"), 1);
  DMatrix ds = build_d_matrix(split, 1);
  REQUIRE(ds.odd_basis.size() == 2);
  CHECK(ds.odd_basis == std::vector<BigInt>{BigInt(1), BigInt(4)});
  CHECK(ds.b[0][0] == 1);
  CHECK(ds.b[1][0] == 1);  // a_{12} T_1 / (p T_2) = 20 / 20
  CHECK(ds.b[0][1] == 0);
  CHECK(ds.b[1][1] == 5);
  CHECK(ds.pruned.empty());

  // the cyclotomic tower never reaches level v >= 1: empty basis
  LinearMap stable = companion_map(P(Modulus::make(5, 1), "1 + t + t^2"), 1);
  DMatrix dc = build_d_matrix(stable, 1);
  CHECK(dc.odd_basis.empty());
  CHECK(dc.pruned == std::vector<BigInt>{BigInt(1), BigInt(3)});

  try {
    build_d_matrix(m, 0);
    FAIL("expected out-of-theory (v must exceed nu(P_1))");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_theory);
  }
}

TEST_CASE("D matrix recursion (Theorem 2)") {
  LinearMap m = companion_map(P(Modulus::make(5, 3), "1 - 4t + t^2"), 1);
  DmatrixReport r = dmatrix_recursion_check(m, 2, 1, 1);
  CHECK(r.pass);
  CHECK(r.n_k == std::vector<BigInt>{BigInt(40)});
  CHECK(r.predicted == std::vector<BigInt>{BigInt(200)});

  // split map with the root-1 class stabilizing at k = 2: its component is
  // zero in the first window, alive one deeper, and the strict lower fill
  // propagates both.
  LinearMap split = companion_map(P(Modulus::make(5, 2), "2 - 3t + t^2"), 1);
  DmatrixReport rs = dmatrix_recursion_check(split, 2, 1, 1);
  CHECK(rs.pass);
  CHECK(rs.n_k == std::vector<BigInt>{BigInt(0), BigInt(25)});
  CHECK(rs.n_kl == std::vector<BigInt>{BigInt(0), BigInt(125)});

  DmatrixReport rs2 = dmatrix_recursion_check(split, 3, 1, 1);
  CHECK(rs2.pass);
  CHECK(rs2.n_k == std::vector<BigInt>{BigInt(20), BigInt(145)});
  CHECK(rs2.n_kl == std::vector<BigInt>{BigInt(20), BigInt(745)});

  // stabilized polynomial: no cycles at any level v >= 1, vacuous pass
  LinearMap stable = companion_map(P(Modulus::make(5, 1), "1 + t + t^2"), 1);
  DmatrixReport rv = dmatrix_recursion_check(stable, 2, 1, 1);
  CHECK(rv.vacuous);
  CHECK(rv.pass);
}

TEST_CASE("stabilization (Theorem 3)") {
  LinearMap m = companion_map(P(Modulus::make(5, 3), "1 - 4t + t^2"), 1);
  StabilizationReport r = stabilization_check(m, BigInt(3), 1, 3);
  CHECK(r.pass);
  CHECK(r.khat == Threshold::finite(1));
  CHECK(r.counts == std::vector<BigInt>{BigInt(8), BigInt(8), BigInt(8)});

  StabilizationReport r15 = stabilization_check(m, BigInt(15), 1, 3);
  CHECK(r15.pass);
  CHECK(r15.k_start == 2);  // khat + nu(15) = 1 + 1
  CHECK(r15.counts == std::vector<BigInt>{BigInt(40), BigInt(40)});

  // f(1) = 0 mod p: hypothesis gate
  LinearMap bad = companion_map(P(Modulus::make(5, 2), "2 - 3t + t^2"), 1);
  try {
    stabilization_check(bad, BigInt(4), 1, 3);
    FAIL("expected out-of-theory");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_theory);
  }

  // infinite k_s states: Theorem 3 does not apply
  LinearMap stable = companion_map(P(Modulus::make(5, 1), "1 + t + t^2"), 1);
  try {
    stabilization_check(stable, BigInt(3), 1, 3);
    FAIL("expected out-of-theory (infinite k_s)");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::out_of_theory);
  }
}

TEST_CASE("growth dichotomy across verbatim lifts (Lemma 10)") {
  std::mt19937_64 rng(2024);
  for (const char* ftext : {"1 - 4t + t^2", "1 - 3t + t^2", "2 - 3t + t^2", "1 + t + t^2"}) {
    LinearMap m1 = companion_map(P(Modulus::make(5, 4), ftext), 1);
    for (int i = 0; i < 25; ++i) {
      StateVector x(2);
      x[0] = BigInt(rng() % 5);
      x[1] = BigInt(rng() % 5);
      if (x[0] == 0 && x[1] == 0) x[0] = 1;
      Threshold ks = ks_of_state(m1, x);
      std::vector<BigInt> periods;
      for (unsigned k = 1; k <= 4; ++k) periods.push_back(state_period(m1.at_precision(k), x));
      for (unsigned k = 1; k < 4; ++k) {
        // step T_k -> T_{k+1}: constant through the threshold, then times p
        if (ks.is_infinite() || k < ks.value)
          CHECK(periods[k] == periods[k - 1]);
        else
          CHECK(periods[k] == 5 * periods[k - 1]);
      }
    }
  }
}

TEST_CASE("fixed point count equals the measured kernel of M - I") {
  for (const char* ftext : {"1 - 4t + t^2", "2 - 3t + t^2", "1 - 3t + t^2"}) {
    LinearMap m = companion_map(P(Modulus::make(5, 1), ftext), 1);
    CycleHistogram h = enumerate_cycles(m);
    // brute-force kernel of (M - I) at k = 1
    BigInt fixed = 0;
    for (BigInt a = 0; a < 5; ++a)
      for (BigInt b = 0; b < 5; ++b) {
        StateVector x{a, b};
        if (m.W.apply(x) == reduce_state(x, m.mod)) ++fixed;
      }
    CHECK(h.count(1) == fixed);
  }
}

TEST_CASE("DOT export emits one edge per state and refuses large graphs") {
  LinearMap small = companion_map(P(Modulus::make(3, 1), "2 + t + t^2"), 1);
  std::ostringstream os;
  write_dot(small, os);
  std::string dot = os.str();
  size_t edges = 0;
  for (size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 1))
    ++edges;
  CHECK(edges == 9);

  LinearMap big = cat12_companion(3);
  CHECK_THROWS_AS(write_dot(big, os), Error);
}
