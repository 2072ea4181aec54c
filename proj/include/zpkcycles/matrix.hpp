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
#ifndef ZPKCYCLES_MATRIX_HPP
#define ZPKCYCLES_MATRIX_HPP

#include <vector>

#include "zpkcycles/common.hpp"

namespace zpk {

// Small dense square matrix with entries reduced into [0, m).
class Matrix {
 public:
  Matrix() = default;
  Matrix(unsigned n, BigInt mod) : n_(n), mod_(std::move(mod)), a_(size_t(n) * n, BigInt(0)) {}

  static Matrix identity(unsigned n, const BigInt& mod) {
    Matrix m(n, mod);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  unsigned n() const { return n_; }
  const BigInt& mod() const { return mod_; }
  BigInt& at(unsigned i, unsigned j) { return a_[size_t(i) * n_ + j]; }
  const BigInt& at(unsigned i, unsigned j) const { return a_[size_t(i) * n_ + j]; }

  void reduce() {
    for (auto& x : a_) x = mod_reduce(x, mod_);
  }

  bool is_identity() const {
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = 0; j < n_; ++j)
        if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  bool operator==(const Matrix& o) const { return n_ == o.n_ && mod_ == o.mod_ && a_ == o.a_; }

  friend Matrix operator*(const Matrix& A, const Matrix& B) {
    Matrix C(A.n_, A.mod_);
    for (unsigned i = 0; i < A.n_; ++i)
      for (unsigned l = 0; l < A.n_; ++l) {
        const BigInt& v = A.at(i, l);
        if (v == 0) continue;
        for (unsigned j = 0; j < A.n_; ++j) C.at(i, j) += v * B.at(l, j);
      }
    C.reduce();
    return C;
  }

  std::vector<BigInt> apply(const std::vector<BigInt>& x) const {
    std::vector<BigInt> y(n_, BigInt(0));
    for (unsigned i = 0; i < n_; ++i) {
      BigInt acc = 0;
      for (unsigned j = 0; j < n_; ++j) acc += at(i, j) * x[j];
      y[i] = mod_reduce(acc, mod_);
    }
    return y;
  }

  Matrix pow(BigInt e) const {
    Matrix result = identity(n_, mod_);
    Matrix base = *this;
    while (e > 0) {
      if (e % 2 == 1) result = result * base;
      e /= 2;
      if (e > 0) base = base * base;
    }
    return result;
  }

  Matrix at_modulus(const BigInt& m2) const {
    Matrix r(n_, m2);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = mod_reduce(a_[i], m2);
    return r;
  }

 private:
  unsigned n_ = 0;
  BigInt mod_;
  std::vector<BigInt> a_;
};

}  // namespace zpk

#endif
