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

#include <gtest/gtest.h>

#include "nonlocal/error.h"
#include "nonlocal/ghz.h"
#include "nonlocal/json_io.h"
#include "oracles.h"

namespace nonlocal {
namespace {

Json reparse(const Json &j) {
    return Json::parse(j.dump());
}

TEST(json_io, rationals) {
    Rational q = make_rational(-6, 8);
    Json j = to_json(q);
    EXPECT_EQ(j["num"], "-3");
    EXPECT_EQ(j["den"], "4");
    EXPECT_EQ(rational_from_json(reparse(j)), q);
    Rational huge = make_rational(BigInt("123456789012345678901234567890"), BigInt(7));
    EXPECT_EQ(rational_from_json(reparse(to_json(huge))), huge);
    EXPECT_EQ(rational_from_json(Json(5)), 5);
    try {
        rational_from_json(Json{{"num", "1"}, {"den", "0"}});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kParseError);
    }
    EXPECT_THROW(rational_from_json(Json{{"num", "x"}, {"den", "1"}}), Error);
    EXPECT_THROW(rational_from_json(Json{{"num", "1"}}), Error);
}

TEST(json_io, outcomes_and_models) {
    Outcome a{{0, kNoClick, 1}};
    Json j = to_json(a);
    EXPECT_EQ(j[1], "null-click");
    EXPECT_EQ(outcome_from_json(reparse(j)), a);
    EXPECT_THROW(outcome_from_json(Json::parse(R"([0, "lost"])")), Error);

    Rng rng(3);
    MixedLhv m;
    for (int i = 0; i < 3; i++) {
        m.components.push_back({oracle::random_lhv(3, 2, 2, rng, true), make_rational(1, 3)});
    }
    MixedLhv back = mixed_lhv_from_json(reparse(to_json(m)));
    ASSERT_EQ(back.components.size(), 3u);
    for (int i = 0; i < 3; i++) {
        EXPECT_EQ(back.components[i].lhv.tables, m.components[i].lhv.tables);
        EXPECT_EQ(back.components[i].weight, m.components[i].weight);
    }
    EXPECT_TRUE(to_json(BiasValue::infinity()) == "inf");
    EXPECT_TRUE(bias_from_json(Json("inf")).infinite);
    EXPECT_EQ(bias_from_json(to_json(BiasValue::finite(make_rational(1, 2)))), BiasValue::finite(make_rational(1, 2)));
}

TEST(json_io, problems_and_distributions) {
    CorrelationProblem p = ghz_problem(GhzInstance::create(3, 2));
    CorrelationProblem back = problem_from_json(reparse(to_json(p)));
    EXPECT_EQ(back.n, 3);
    EXPECT_EQ(back.mu, p.mu);
    EXPECT_EQ(back.target, p.target);
    Json broken = to_json(p);
    broken["mu"][0]["weight"] = to_json(make_rational(1, 3));
    EXPECT_THROW(problem_from_json(broken), Error);

    ModelDistribution d = evaluate_mixed_lhv(MixedLhv{{{DeterministicLhv::constant(3, 2, 1), Rational(1)}}}, p);
    EXPECT_EQ(distribution_from_json(reparse(to_json(d))).probs, d.probs);
}

TEST(json_io, protocols) {
    Rng rng(44);
    for (int trial = 0; trial < 50; trial++) {
        MixedProtocol m = oracle::random_protocol(3, 3, 2, 3, rng, true);
        if (trial % 2) {
            m.flavor = Randomness::kLocal;
        }
        Json j = to_json(m);
        MixedProtocol back = mixed_protocol_from_json(reparse(j));
        EXPECT_EQ(back.flavor, m.flavor);
        ASSERT_EQ(back.components.size(), m.components.size());
        for (std::size_t c = 0; c < m.components.size(); c++) {
            EXPECT_EQ(back.components[c].weight, m.components[c].weight);
            EXPECT_EQ(back.components[c].tree.cost(), m.components[c].tree.cost());
            for (const auto &x : oracle::all_vectors(3, 3)) {
                EXPECT_EQ(back.components[c].tree.execute(x).outcome, m.components[c].tree.execute(x).outcome);
            }
        }
        EXPECT_EQ(to_json(back), j);
    }
    Json tree = Json::parse(R"({"node": {"party": 0, "edges": [
        {"inputs": [0], "child": {"leaf": {"tables": [[0, 0], [1, 1]]}}},
        {"inputs": [1], "child": {"leaf": {"tables": [[1, 1], ["null-click", 0]]}}}]}})");
    ProtocolTree t = protocol_tree_from_json(tree);
    EXPECT_EQ(t.parties(), 2);
    EXPECT_EQ(t.settings(), 2);
    EXPECT_EQ(t.cost(), 1u);
    std::vector<int> x{1, 0};
    EXPECT_EQ(t.execute(x).outcome, (Outcome{{1, kNoClick}}));
    EXPECT_THROW(protocol_tree_from_json(Json::parse(R"({"node": {"party": 0}})")), Error);
    EXPECT_THROW(mixed_protocol_from_json(Json::parse(R"({"flavor": "quantum", "components": []})")), Error);
}

TEST(json_io, reports) {
    SearchReport r = eta_star_lp(ghz_problem(GhzInstance::create(2, 2)), 0);
    Json j = to_json(r);
    EXPECT_EQ(rational_from_json(j["optimum"]), 1);
    EXPECT_TRUE(j.contains("dual"));
    MixedLhv witness = mixed_lhv_from_json(j["witness"]);
    EXPECT_EQ(witness.components.size(), r.witness.components.size());
}

}  // namespace
}  // namespace nonlocal
