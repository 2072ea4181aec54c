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

#include "zpkcycles/galois_ring.hpp"

using namespace zpk;

namespace {

RingElement elem(const ExtPtr& ext, long v) { return RingElement::from_integer(ext, BigInt(v)); }

RingElement random_unit(const ExtPtr& ext, std::mt19937_64& rng) {
  const BigInt& p = ext->mod.p;
  for (;;) {
    std::vector<BigInt> c(ext->d);
    for (auto& x : c) c.front() = c.front();  // placate older compilers
    for (auto& x : c) x = BigInt(rng()) % ext->mod.pk;
    RingElement e = RingElement::from_coeffs(ext, c);
    Valuation v = valuation(e);
    if (!v.infinite && v.value == 0) return e;
    (void)p;
  }
}

}  // namespace

TEST_CASE("modulus validation") {
  CHECK_NOTHROW(Modulus::make(2, 5));
  CHECK_NOTHROW(Modulus::make(7, 1));
  CHECK_THROWS_AS(Modulus::make(6, 2), Error);
  CHECK_THROWS_AS(Modulus::make(5, 0), Error);
  CHECK(Modulus::make(3, 4).pk == 81);
}

TEST_CASE("ring add/mul in Z_9") {
  ExtPtr ext = ExtensionDescriptor::get(Modulus::make(3, 2), 1);
  CHECK(elem(ext, 7) + elem(ext, 5) == elem(ext, 3));
  CHECK(elem(ext, 7) * elem(ext, 0) == elem(ext, 0));
  CHECK(-elem(ext, 4) == elem(ext, 5));
}

TEST_CASE("GR(25,2) multiplication reduces by h") {
  // deterministic h for (p=5, d=2) is t^2 + t + 1 (lexicographically first
  // irreducible); t * t = -t - 1 => coefficients (24, 24) mod 25.
  ExtPtr ext = ExtensionDescriptor::get(Modulus::make(5, 2), 2);
  REQUIRE(ext->h == std::vector<BigInt>{BigInt(1), BigInt(1), BigInt(1)});
  RingElement t = RingElement::from_coeffs(ext, {BigInt(0), BigInt(1)});
  RingElement t2 = t * t;
  CHECK(t2.coeffs() == std::vector<BigInt>{BigInt(24), BigInt(24)});
}

TEST_CASE("descriptor mismatch is rejected") {
  ExtPtr a = ExtensionDescriptor::get(Modulus::make(5, 2), 1);
  ExtPtr b = ExtensionDescriptor::get(Modulus::make(5, 1), 1);
  CHECK_THROWS_AS(elem(a, 1) + elem(b, 1), Error);
}

TEST_CASE("ring_inverse examples") {
  ExtPtr z25 = ExtensionDescriptor::get(Modulus::make(5, 2), 1);
  CHECK(ring_inverse(elem(z25, 7)) == elem(z25, 18));
  ExtPtr z9 = ExtensionDescriptor::get(Modulus::make(3, 2), 1);
  CHECK(ring_inverse(elem(z9, 1)) == elem(z9, 1));
  try {
    ring_inverse(elem(z9, 3));
    FAIL("expected non-unit error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::non_unit);
    CHECK(std::string(e.what()).find("1") != std::string::npos);  // carries nu = 1
  }
}

TEST_CASE("valuation examples") {
  ExtPtr z27 = ExtensionDescriptor::get(Modulus::make(3, 3), 1);
  CHECK(valuation(elem(z27, 18)) == Valuation::of(2));
  CHECK(valuation(elem(z27, 0)) == Valuation::inf());
  ExtPtr g = ExtensionDescriptor::get(Modulus::make(5, 2), 2);
  RingElement x = RingElement::from_coeffs(g, {BigInt(10), BigInt(5)});
  CHECK(valuation(x) == Valuation::of(1));
}

TEST_CASE("mult_order examples") {
  ExtPtr z5 = ExtensionDescriptor::get(Modulus::make(5, 1), 1);
  CHECK(mult_order(elem(z5, 4)) == 2);
  ExtPtr z25 = ExtensionDescriptor::get(Modulus::make(5, 2), 1);
  CHECK(mult_order(elem(z25, 7)) == 4);
  ExtPtr z9 = ExtensionDescriptor::get(Modulus::make(3, 2), 1);
  CHECK(mult_order(elem(z9, 4)) == 3);
  CHECK_THROWS_AS(mult_order(elem(z9, 6)), Error);
}

TEST_CASE("inverse properties on random units") {
  std::mt19937_64 rng(12345);
  for (auto [p, k, d] : {std::tuple<int, int, int>{3, 3, 1}, {5, 2, 2}, {7, 2, 1}, {3, 2, 2}}) {
    ExtPtr ext = ExtensionDescriptor::get(Modulus::make(p, k), d);
    for (int i = 0; i < 40; ++i) {
      RingElement a = random_unit(ext, rng);
      RingElement inv = ring_inverse(a);
      CHECK((a * inv).is_one());
      CHECK(ring_inverse(inv) == a);
    }
  }
}

TEST_CASE("valuation is additive below k and subadditive under addition") {
  std::mt19937_64 rng(777);
  ExtPtr ext = ExtensionDescriptor::get(Modulus::make(3, 4), 2);
  for (int i = 0; i < 200; ++i) {
    std::vector<BigInt> ca(2), cb(2);
    for (auto& x : ca) x = BigInt(rng()) % ext->mod.pk;
    for (auto& x : cb) x = BigInt(rng()) % ext->mod.pk;
    RingElement a = RingElement::from_coeffs(ext, ca), b = RingElement::from_coeffs(ext, cb);
    Valuation va = valuation(a), vb = valuation(b), vab = valuation(a * b), vs = valuation(a + b);
    if (!va.infinite && !vb.infinite && va.value + vb.value < ext->mod.k) {
      CHECK(!vab.infinite);
      CHECK(vab.value == va.value + vb.value);
    }
    unsigned lo = std::min(va.infinite ? ext->mod.k : va.value, vb.infinite ? ext->mod.k : vb.value);
    CHECK((vs.infinite ? ext->mod.k : vs.value) >= lo);
  }
}

TEST_CASE("order divides group order and reduces compatibly") {
  std::mt19937_64 rng(999);
  for (auto [p, k, d] : {std::tuple<int, int, int>{5, 2, 1}, {3, 3, 1}, {5, 1, 2}, {7, 2, 1}}) {
    ExtPtr ext = ExtensionDescriptor::get(Modulus::make(p, k), d);
    BigInt group = (pow_int(BigInt(p), d) - 1) * pow_int(BigInt(p), (k - 1) * d);
    for (int i = 0; i < 30; ++i) {
      RingElement a = random_unit(ext, rng);
      BigInt ord = mult_order(a);
      CHECK(group % ord == 0);
      CHECK(a.pow(ord).is_one());
      if (k > 1) {
        BigInt ord1 = mult_order(at_precision(a, 1));
        CHECK(ord % ord1 == 0);
      }
    }
  }
}

TEST_CASE("mult_order matches naive powering on small spaces") {
  for (auto [p, k, d] : {std::tuple<int, int, int>{3, 2, 1}, {5, 2, 1}, {3, 1, 2}, {7, 1, 1}, {3, 3, 1}}) {
    ExtPtr ext = ExtensionDescriptor::get(Modulus::make(p, k), d);
    BigInt q = pow_int(BigInt(p), k);
    // all units with scalar coefficients plus a few extension elements
    std::vector<RingElement> units;
    for (BigInt v = 1; v < q; ++v)
      if (v % p != 0) units.push_back(RingElement::from_integer(ext, v));
    if (d == 2) {
      for (BigInt v = 0; v < q; ++v) units.push_back(RingElement::from_coeffs(ext, {v, BigInt(1)}));
    }
    for (const auto& a : units) {
      BigInt naive = 1;
      RingElement x = a;
      while (!x.is_one()) {
        x = x * a;
        ++naive;
        REQUIRE(naive < 100000);
      }
      CHECK(mult_order(a) == naive);
    }
  }
}

TEST_CASE("at_precision round trips") {
  ExtPtr ext = ExtensionDescriptor::get(Modulus::make(5, 3), 2);
  RingElement a = RingElement::from_coeffs(ext, {BigInt(17), BigInt(108)});
  RingElement down = at_precision(a, 1);
  CHECK(down.coeffs() == std::vector<BigInt>{BigInt(2), BigInt(3)});
  RingElement up = at_precision(down, 3);
  CHECK(up.coeffs() == std::vector<BigInt>{BigInt(2), BigInt(3)});
}
