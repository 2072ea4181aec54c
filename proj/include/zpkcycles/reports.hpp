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
#ifndef ZPKCYCLES_REPORTS_HPP
#define ZPKCYCLES_REPORTS_HPP

#include <json.hpp>

#include "zpkcycles/catmap.hpp"
#include "zpkcycles/dynamics.hpp"
#include "zpkcycles/order.hpp"

namespace zpk {

// All reports serialize to ordered JSON with fixed insertion order so that
// repeated runs are byte-identical.
using OJson = nlohmann::ordered_json;

// Big integers render as JSON numbers when they fit, decimal strings beyond.
OJson json_int(const BigInt& x);

OJson to_json(const CycleHistogram& h);
OJson to_json(const Threshold& t);
OJson to_json(const OrderEqualityReport& r);
OJson to_json(const OrderProfile& p, unsigned k);
OJson to_json(const EmbeddingReport& r);
OJson to_json(const LiftLawReport& r);
OJson to_json(const DMatrix& d);
OJson to_json(const DmatrixReport& r);
OJson to_json(const StabilizationReport& r);
OJson to_json(const CatPrediction& p);
OJson to_json(const CensusTable& t);
OJson to_json(const DoublingReport& r);
OJson to_json(const CatStabilization& s);

std::string census_csv(const CensusTable& t);

}  // namespace zpk

#endif
