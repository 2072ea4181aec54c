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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zpkcycles/reports.hpp"

namespace py = pybind11;
using namespace zpk;

namespace {

// Reports cross the boundary as plain Python objects via their JSON form.
py::object json_to_py(const OJson& j) {
  switch (j.type()) {
    case OJson::value_t::null: return py::none();
    case OJson::value_t::boolean: return py::bool_(j.get<bool>());
    case OJson::value_t::number_integer: return py::int_(j.get<long long>());
    case OJson::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case OJson::value_t::number_float: return py::float_(j.get<double>());
    case OJson::value_t::string: return py::str(j.get<std::string>());
    case OJson::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case OJson::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

Modulus mk_mod(const std::string& p, unsigned k) { return Modulus::make(BigInt(p), k); }

LinearMap mk_map(const std::string& p, unsigned k, const std::string& poly, unsigned n) {
  Modulus mod = mk_mod(p, k);
  return companion_map(Polynomial::parse(mod, poly), n);
}

CatParams mk_cat(const std::string& p, unsigned k, long long a, long long b) {
  Modulus mod = mk_mod(p, k);
  return CatParams::make(BigInt(a), BigInt(b), mod);
}

py::dict hist_to_py(const CycleHistogram& h) {
  py::dict out;
  for (const auto& [t, c] : h.cycles) out[py::str(t.str())] = py::str(c.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_zpkcycles, m) {
  m.doc() = "exact cycle structure of linear permutation maps over Z_{p^k}";

  py::register_exception<Error>(m, "ZpkError");

  m.def(
      "pk_of_poly",
      [](const std::string& p, unsigned k, const std::string& poly) {
        return pk_of_poly(Polynomial::parse(mk_mod(p, k), poly), k).str();
      },
      py::arg("p"), py::arg("k"), py::arg("poly"),
      "P_k(f): the order of f over Z_{p^k} from the root/cluster analysis");

  m.def(
      "poly_order_oracle",
      [](const std::string& p, unsigned k, const std::string& poly, const std::string& bound) {
        return poly_order_oracle(Polynomial::parse(mk_mod(p, k), poly), BigInt(bound)).str();
      },
      py::arg("p"), py::arg("k"), py::arg("poly"), py::arg("bound"),
      "least l <= bound with t^l = 1 mod (f, p^k), by incremental scan");

  m.def(
      "analyze_poly",
      [](const std::string& p, unsigned k, const std::string& poly) {
        Polynomial f = Polynomial::parse(mk_mod(p, k), poly);
        OrderProfile prof = analyze_poly_order(f);
        return json_to_py(to_json(prof, k));
      },
      py::arg("p"), py::arg("k"), py::arg("poly"));

  m.def(
      "verify_order",
      [](const std::string& p, unsigned k, const std::string& poly) {
        Polynomial f = Polynomial::parse(mk_mod(p, k), poly);
        return json_to_py(to_json(verify_order_extension_equality(f, k)));
      },
      py::arg("p"), py::arg("k"), py::arg("poly"));

  m.def(
      "cat_predict",
      [](const std::string& p, unsigned k, long long a, long long b) {
        return json_to_py(to_json(cat_table_predict(mk_cat(p, k, a, b))));
      },
      py::arg("p"), py::arg("k"), py::arg("a"), py::arg("b"));

  m.def(
      "cat_enumerate",
      [](const std::string& p, unsigned k, long long a, long long b, uint64_t budget) {
        return hist_to_py(cat_enumerate(mk_cat(p, k, a, b), budget));
      },
      py::arg("p"), py::arg("k"), py::arg("a"), py::arg("b"),
      py::arg("budget") = 20000000ull);

  m.def(
      "cat_true_period",
      [](const std::string& p, unsigned k, long long a, long long b) {
        return cat_true_period(mk_cat(p, k, a, b)).str();
      },
      py::arg("p"), py::arg("k"), py::arg("a"), py::arg("b"));

  m.def(
      "cat_census",
      [](const std::string& p, unsigned k, unsigned threads) {
        return json_to_py(to_json(cat_table_census(BigInt(p), k, threads)));
      },
      py::arg("p"), py::arg("k"), py::arg("threads") = 1u);

  m.def(
      "enumerate_companion",
      [](const std::string& p, unsigned k, const std::string& poly, unsigned n, uint64_t budget) {
        return hist_to_py(enumerate_cycles(mk_map(p, k, poly, n), budget));
      },
      py::arg("p"), py::arg("k"), py::arg("poly"), py::arg("n") = 1u,
      py::arg("budget") = 20000000ull);

  m.def(
      "embedding_check",
      [](const std::string& p, unsigned k, const std::string& poly, unsigned n) {
        return json_to_py(to_json(embedding_check(mk_map(p, k, poly, n))));
      },
      py::arg("p"), py::arg("k"), py::arg("poly"), py::arg("n") = 1u);

  m.def(
      "state_period",
      [](const std::string& p, unsigned k, const std::string& poly, unsigned n,
         const std::vector<long long>& x) {
        LinearMap map = mk_map(p, k, poly, n);
        StateVector v(x.begin(), x.end());
        return state_period(map, v).str();
      },
      py::arg("p"), py::arg("k"), py::arg("poly"), py::arg("n"), py::arg("x"));

  m.attr("__version__") = "1.0.0";
}
