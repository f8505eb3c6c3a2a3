// Copyright 2026 The nonlocal_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef NONLOCAL_JSON_IO_H
#define NONLOCAL_JSON_IO_H

#include <json.hpp>

#include "nonlocal/ghz.h"
#include "nonlocal/model.h"
#include "nonlocal/protocol.h"
#include "nonlocal/rect.h"
#include "nonlocal/search.h"
#include "nonlocal/zgroup.h"

namespace nonlocal {

using Json = nlohmann::json;

/// Rationals are {"num": "p", "den": "q"} with decimal strings; the no-click
/// symbol is the string "null-click". Readers throw ParseError.
Json to_json(const Rational &q);
Rational rational_from_json(const Json &j);

Json to_json(const BiasValue &b);
BiasValue bias_from_json(const Json &j);

Json to_json(const Outcome &a);
Outcome outcome_from_json(const Json &j);

Json to_json(const DeterministicLhv &lhv);
DeterministicLhv lhv_from_json(const Json &j);

Json to_json(const MixedLhv &m);
MixedLhv mixed_lhv_from_json(const Json &j);

Json to_json(const CorrelationProblem &p);
CorrelationProblem problem_from_json(const Json &j);

Json to_json(const ModelDistribution &d);
ModelDistribution distribution_from_json(const Json &j);

/// {"node": {"party": i, "edges": [{"inputs": [...], "child": T}]}} or
/// {"leaf": {"tables": [...]}}.
Json to_json(const ProtocolTree &t);
ProtocolTree protocol_tree_from_json(const Json &j);

Json to_json(const MixedProtocol &m);
MixedProtocol mixed_protocol_from_json(const Json &j);

Json to_json(const GhzInstance &inst);
Json to_json(const MultisetZ &m);
Json to_json(const RectangleStats &s);
Json to_json(const SearchReport &r);
Json to_json(const AdditionReport &r);
Json to_json(const Size2LemmaReport &r);
Json to_json(const TradeoffTable &t);

}  // namespace nonlocal

#endif
