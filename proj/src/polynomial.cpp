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
#include "zpkcycles/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace zpk {

namespace {

void check_same_ext_poly(const Polynomial& a, const Polynomial& b) {
  if (!a.ext() || !b.ext()) fail(Errc::usage, "uninitialized polynomial");
  if (a.ext().get() == b.ext().get() || a.ext()->same(*b.ext())) return;
  fail(Errc::descriptor_mismatch,
       "polynomials over different extensions: " + a.ext()->str() + " vs " + b.ext()->str());
}

std::vector<RingElement> trim(std::vector<RingElement> c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return c;
}

}  // namespace

Polynomial Polynomial::zero(const ExtPtr& ext) { return from_coeffs(ext, {}); }

Polynomial Polynomial::one(const ExtPtr& ext) { return from_coeffs(ext, {RingElement::one(ext)}); }

Polynomial Polynomial::t(const ExtPtr& ext) {
  return from_coeffs(ext, {RingElement::zero(ext), RingElement::one(ext)});
}

Polynomial Polynomial::from_coeffs(const ExtPtr& ext, std::vector<RingElement> c) {
  if (!ext) fail(Errc::usage, "null extension descriptor");
  for (const auto& x : c)
    if (x.ext() && !x.ext()->same(*ext)) fail(Errc::descriptor_mismatch, "coefficient from wrong extension");
  Polynomial p;
  p.ext_ = ext;
  p.c_ = trim(std::move(c));
  return p;
}

Polynomial Polynomial::from_integer_coeffs(const ExtPtr& ext, const std::vector<BigInt>& c) {
  std::vector<RingElement> v;
  v.reserve(c.size());
  for (const auto& x : c) v.push_back(RingElement::from_integer(ext, x));
  return from_coeffs(ext, std::move(v));
}

const RingElement& Polynomial::coeff(size_t i) const {
  if (i >= c_.size()) fail(Errc::usage, "coefficient index out of range");
  return c_[i];
}

RingElement Polynomial::coeff_or_zero(size_t i) const {
  return i < c_.size() ? c_[i] : RingElement::zero(ext_);
}

bool Polynomial::operator==(const Polynomial& o) const {
  check_same_ext_poly(*this, o);
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

RingElement Polynomial::eval(const RingElement& x) const {
  RingElement acc = RingElement::zero(ext_);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<RingElement> d;
  for (size_t i = 1; i < c_.size(); ++i)
    d.push_back(RingElement::from_integer(ext_, BigInt(static_cast<unsigned long>(i))) * c_[i]);
  return from_coeffs(ext_, std::move(d));
}

std::vector<BigInt> Polynomial::integer_coeffs() const {
  if (ext_->d != 1) fail(Errc::usage, "integer_coeffs requires a scalar (d = 1) polynomial");
  std::vector<BigInt> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x.coeffs()[0]);
  return out;
}

Polynomial Polynomial::at_precision(unsigned k2) const {
  ExtPtr ext2 = ExtensionDescriptor::with_poly(Modulus::make(ext_->mod.p, k2), ext_->h);
  std::vector<RingElement> c;
  c.reserve(c_.size());
  for (const auto& x : c_) c.push_back(RingElement::from_coeffs(ext2, x.coeffs()));
  return from_coeffs(ext2, std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  check_same_ext_poly(a, b);
  std::vector<RingElement> c(std::max(a.c_.size(), b.c_.size()), RingElement::zero(a.ext_));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff_or_zero(i) + b.coeff_or_zero(i);
  return Polynomial::from_coeffs(a.ext_, std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  check_same_ext_poly(a, b);
  std::vector<RingElement> c(std::max(a.c_.size(), b.c_.size()), RingElement::zero(a.ext_));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff_or_zero(i) - b.coeff_or_zero(i);
  return Polynomial::from_coeffs(a.ext_, std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same_ext_poly(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial::zero(a.ext_);
  std::vector<RingElement> c(a.c_.size() + b.c_.size() - 1, RingElement::zero(a.ext_));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
  }
  return Polynomial::from_coeffs(a.ext_, std::move(c));
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
  check_same_ext_poly(a, b);
  if (b.is_zero()) fail(Errc::usage, "polynomial division by zero");
  Valuation lv = valuation(b.coeffs().back());
  if (lv.infinite || lv.value > 0)
    fail(Errc::non_unit, "polynomial division requires a unit leading coefficient");
  RingElement lead_inv = ring_inverse(b.coeffs().back());
  std::vector<RingElement> rem = a.coeffs();
  const size_t db = b.coeffs().size();
  if (rem.size() < db) return {Polynomial::zero(a.ext()), a};
  std::vector<RingElement> quot(rem.size() - db + 1, RingElement::zero(a.ext()));
  for (size_t i = quot.size(); i-- > 0;) {
    RingElement c = rem[i + db - 1] * lead_inv;
    quot[i] = c;
    if (c.is_zero()) continue;
    for (size_t j = 0; j < db; ++j) rem[i + j] = rem[i + j] - c * b.coeffs()[j];
  }
  return {Polynomial::from_coeffs(a.ext(), std::move(quot)),
          Polynomial::from_coeffs(a.ext(), std::move(rem))};
}

Polynomial poly_mod(const Polynomial& a, const Polynomial& b) { return poly_divmod(a, b).second; }

Polynomial poly_gcd_field(const Polynomial& a, const Polynomial& b) {
  check_same_ext_poly(a, b);
  if (a.ext()->mod.k != 1)
    fail(Errc::unsupported_ring,
         "polynomial gcd requires k = 1 (Z_{p^k} is not a Euclidean domain for k > 1)");
  Polynomial r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Polynomial r = poly_mod(r0, r1);
    r0 = r1;
    r1 = r;
  }
  if (r0.is_zero()) return r0;
  RingElement inv = ring_inverse(r0.coeffs().back());
  std::vector<RingElement> c = r0.coeffs();
  for (auto& x : c) x = x * inv;
  return Polynomial::from_coeffs(a.ext(), std::move(c));
}

Polynomial poly_lcm_field(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial::zero(a.ext());
  Polynomial g = poly_gcd_field(a, b);
  Polynomial prod = a * b;
  Polynomial l = poly_divmod(prod, g).first;
  RingElement inv = ring_inverse(l.coeffs().back());
  std::vector<RingElement> c = l.coeffs();
  for (auto& x : c) x = x * inv;
  return Polynomial::from_coeffs(a.ext(), std::move(c));
}

std::string Polynomial::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (ext_->d == 1) {
      if (i == 0) {
        os << c_[i].coeffs()[0].str();
      } else {
        os << c_[i].coeffs()[0].str() << "*t";
        if (i > 1) os << "^" << i;
      }
    } else {
      os << c_[i].str();
      if (i >= 1) {
        os << "*t";
        if (i > 1) os << "^" << i;
      }
    }
  }
  return os.str();
}

// --- parsing ---

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;
  const Modulus& mod;

  explicit Parser(const std::string& text, const Modulus& m) : s(text), mod(m) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  BigInt raw_number() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail(Errc::parse, "expected a number at position " + std::to_string(start) + " in '" + s + "'");
    return BigInt(s.substr(start, i - start));
  }
  BigInt number() {
    BigInt v = raw_number();
    if (v >= mod.pk)
      fail(Errc::parse, "coefficient " + v.str() + " out of range for modulus " + mod.pk.str());
    return v;
  }
};

std::vector<BigInt> parse_list_form(Parser& ps) {
  std::vector<BigInt> coeffs;
  ps.accept('[');
  if (!ps.accept(']')) {
    while (true) {
      bool neg = ps.accept('-');
      BigInt v = ps.number();
      coeffs.push_back(neg ? mod_reduce(-v, ps.mod.pk) : v);
      if (ps.accept(']')) break;
      if (!ps.accept(',')) fail(Errc::parse, "expected ',' or ']' in list form");
    }
  }
  if (!ps.eof()) fail(Errc::parse, "trailing characters after list form");
  return coeffs;
}

std::vector<BigInt> parse_text_form(Parser& ps) {
  std::vector<BigInt> coeffs;
  auto put = [&](size_t deg, const BigInt& c) {
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, BigInt(0));
    coeffs[deg] = mod_reduce(coeffs[deg] + c, ps.mod.pk);
  };
  bool first = true;
  while (!ps.eof()) {
    bool neg = false;
    if (ps.accept('+')) {
    } else if (ps.accept('-')) {
      neg = true;
    } else if (!first) {
      fail(Errc::parse, "expected '+' or '-' between terms");
    }
    first = false;
    BigInt c(1);
    bool have_number = false;
    if (std::isdigit(static_cast<unsigned char>(ps.peek()))) {
      c = ps.number();
      have_number = true;
    }
    size_t deg = 0;
    ps.skip_ws();
    bool star = ps.accept('*');
    if (ps.peek() == 't') {
      ++ps.i;
      deg = 1;
      if (ps.accept('^')) {
        BigInt d = ps.raw_number();
        if (d > 256) fail(Errc::parse, "degree too large");
        deg = d.convert_to<size_t>();
      }
    } else {
      if (star) fail(Errc::parse, "dangling '*'");
      if (!have_number) fail(Errc::parse, "expected a term");
    }
    put(deg, neg ? mod_reduce(-c, ps.mod.pk) : c);
  }
  return coeffs;
}

}  // namespace

Polynomial Polynomial::parse(const Modulus& mod, const std::string& text) {
  Parser ps(text, mod);
  std::vector<BigInt> coeffs;
  if (ps.peek() == '[')
    coeffs = parse_list_form(ps);
  else
    coeffs = parse_text_form(ps);
  ExtPtr ext = ExtensionDescriptor::get(mod, 1);
  return from_integer_coeffs(ext, coeffs);
}

std::vector<std::pair<RingElement, unsigned>> RootSet::flat() const {
  std::vector<std::pair<RingElement, unsigned>> out;
  for (const auto& cl : clusters)
    for (const auto& r : cl.roots) out.emplace_back(r, cl.multiplicity);
  return out;
}

}  // namespace zpk
