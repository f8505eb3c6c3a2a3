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

#include "nonlocal/json_io.h"

#include <utility>

#include "nonlocal/error.h"

namespace nonlocal {

namespace {

constexpr const char *kNoClickName = "null-click";

template <typename Fn>
auto parsing(const char *what, Fn &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error &) {
        throw;
    } catch (const std::exception &e) {
        fail(ErrorKind::kParseError, std::string(what) + ": " + e.what());
    }
}

Json symbol_to_json(int v) {
    return v == kNoClick ? Json(kNoClickName) : Json(v);
}

int symbol_from_json(const Json &j) {
    if (j.is_string()) {
        require(j.get<std::string>() == kNoClickName, ErrorKind::kParseError,
                "unknown output symbol " + j.dump());
        return kNoClick;
    }
    return j.get<int>();
}

Json distribution_rows(const std::map<InputVector, OutcomeDistribution> &rows) {
    Json out = Json::array();
    for (const auto &[x, dist] : rows) {
        Json outcomes = Json::array();
        for (const auto &[a, p] : dist) {
            outcomes.push_back({{"a", to_json(a)}, {"p", to_json(p)}});
        }
        out.push_back({{"x", x}, {"outcomes", outcomes}});
    }
    return out;
}

std::map<InputVector, OutcomeDistribution> distribution_rows_from_json(const Json &j) {
    std::map<InputVector, OutcomeDistribution> rows;
    for (const auto &row : j) {
        auto &dist = rows[row.at("x").get<InputVector>()];
        for (const auto &o : row.at("outcomes")) {
            dist[outcome_from_json(o.at("a"))] = rational_from_json(o.at("p"));
        }
    }
    return rows;
}

Json tree_node_to_json(const ProtocolTree &t, std::size_t index) {
    const ProtocolNode &node = t.nodes()[index];
    if (node.is_leaf()) {
        return {{"leaf", to_json(*node.leaf)}};
    }
    Json edges = Json::array();
    for (const auto &e : node.edges) {
        edges.push_back({{"inputs", e.inputs}, {"child", tree_node_to_json(t, e.child)}});
    }
    return {{"node", {{"party", node.party}, {"edges", edges}}}};
}

}  // namespace

Json to_json(const Rational &q) {
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const Json &j) {
    return parsing("rational", [&] {
        if (j.is_number_integer()) {
            return make_rational(j.get<long>());
        }
        BigInt num(j.at("num").get<std::string>());
        BigInt den(j.at("den").get<std::string>());
        require(den != 0, ErrorKind::kParseError, "zero denominator");
        return make_rational(num, den);
    });
}

Json to_json(const BiasValue &b) {
    return b.infinite ? Json("inf") : to_json(b.value);
}

BiasValue bias_from_json(const Json &j) {
    if (j.is_string() && j.get<std::string>() == "inf") {
        return BiasValue::infinity();
    }
    return BiasValue::finite(rational_from_json(j));
}

Json to_json(const Outcome &a) {
    Json out = Json::array();
    for (int v : a.values) {
        out.push_back(symbol_to_json(v));
    }
    return out;
}

Outcome outcome_from_json(const Json &j) {
    return parsing("outcome", [&] {
        require(j.is_array(), ErrorKind::kParseError, "outcome must be an array");
        Outcome a;
        for (const auto &v : j) {
            a.values.push_back(symbol_from_json(v));
        }
        return a;
    });
}

Json to_json(const DeterministicLhv &lhv) {
    Json tables = Json::array();
    for (const auto &table : lhv.tables) {
        Json row = Json::array();
        for (int v : table) {
            row.push_back(symbol_to_json(v));
        }
        tables.push_back(row);
    }
    return {{"tables", tables}};
}

DeterministicLhv lhv_from_json(const Json &j) {
    return parsing("deterministic model", [&] {
        DeterministicLhv lhv;
        for (const auto &row : j.at("tables")) {
            std::vector<int> table;
            for (const auto &v : row) {
                table.push_back(symbol_from_json(v));
            }
            lhv.tables.push_back(std::move(table));
        }
        return lhv;
    });
}

Json to_json(const MixedLhv &m) {
    Json comps = Json::array();
    for (const auto &c : m.components) {
        comps.push_back({{"weight", to_json(c.weight)}, {"lhv", to_json(c.lhv)}});
    }
    return {{"components", comps}};
}

MixedLhv mixed_lhv_from_json(const Json &j) {
    return parsing("mixed model", [&] {
        MixedLhv m;
        for (const auto &c : j.at("components")) {
            m.components.push_back(WeightedLhv{lhv_from_json(c.at("lhv")), rational_from_json(c.at("weight"))});
        }
        return m;
    });
}

Json to_json(const CorrelationProblem &p) {
    Json mu = Json::array();
    for (const auto &[x, w] : p.mu) {
        mu.push_back({{"x", x}, {"weight", to_json(w)}});
    }
    return {{"n", p.n}, {"k", p.k}, {"l", p.l}, {"mu", mu}, {"target", distribution_rows(p.target)}};
}

CorrelationProblem problem_from_json(const Json &j) {
    return parsing("correlation problem", [&] {
        CorrelationProblem p;
        p.n = j.at("n").get<int>();
        p.k = j.at("k").get<int>();
        p.l = j.at("l").get<int>();
        for (const auto &row : j.at("mu")) {
            p.mu[row.at("x").get<InputVector>()] = rational_from_json(row.at("weight"));
        }
        p.target = distribution_rows_from_json(j.at("target"));
        for (auto it = p.target.begin(); it != p.target.end(); ++it) {
            std::erase_if(it->second, [](const auto &entry) {
                return entry.second == 0;
            });
        }
        p.validate();
        return p;
    });
}

Json to_json(const ModelDistribution &d) {
    return {{"rows", distribution_rows(d.probs)}};
}

ModelDistribution distribution_from_json(const Json &j) {
    return parsing("distribution", [&] {
        return ModelDistribution{distribution_rows_from_json(j.at("rows"))};
    });
}

Json to_json(const ProtocolTree &t) {
    return tree_node_to_json(t, 0);
}

ProtocolTree protocol_tree_from_json(const Json &j) {
    return parsing("protocol tree", [&]() -> ProtocolTree {
        if (j.contains("leaf")) {
            DeterministicLhv lhv = lhv_from_json(j.at("leaf"));
            int k = lhv.inputs();
            return ProtocolTree::make_leaf(k, std::move(lhv));
        }
        const Json &node = j.at("node");
        std::vector<std::pair<std::vector<int>, ProtocolTree>> children;
        for (const auto &e : node.at("edges")) {
            children.emplace_back(e.at("inputs").get<std::vector<int>>(), protocol_tree_from_json(e.at("child")));
        }
        return ProtocolTree::make_node(node.at("party").get<int>(), std::move(children));
    });
}

Json to_json(const MixedProtocol &m) {
    Json comps = Json::array();
    for (const auto &c : m.components) {
        comps.push_back({{"weight", to_json(c.weight)}, {"tree", to_json(c.tree)}});
    }
    return {{"flavor", m.flavor == Randomness::kShared ? "shared" : "local"}, {"components", comps}};
}

MixedProtocol mixed_protocol_from_json(const Json &j) {
    return parsing("mixed protocol", [&] {
        MixedProtocol m;
        std::string flavor = j.value("flavor", std::string("shared"));
        require(flavor == "shared" || flavor == "local", ErrorKind::kParseError, "unknown flavor " + flavor);
        m.flavor = flavor == "shared" ? Randomness::kShared : Randomness::kLocal;
        for (const auto &c : j.at("components")) {
            m.components.push_back(
                WeightedProtocol{protocol_tree_from_json(c.at("tree")), rational_from_json(c.at("weight"))});
        }
        m.validate();
        return m;
    });
}

Json to_json(const GhzInstance &inst) {
    return {{"n", inst.n}, {"k", inst.k}};
}

Json to_json(const MultisetZ &m) {
    Json mult = Json::array();
    for (const auto &v : m.multiplicities()) {
        mult.push_back(v.get_str());
    }
    return {{"modulus", m.modulus()}, {"multiplicities", mult}};
}

Json to_json(const RectangleStats &s) {
    Json counts = Json::array();
    for (const auto &c : s.counts) {
        counts.push_back(c.get_str());
    }
    Json out = {{"size", s.size.get_str()},
                {"involvement", s.involvement},
                {"counts", counts},
                {"n0", s.n0.get_str()},
                {"n1", s.n1.get_str()},
                {"bias", to_json(s.bias)}};
    out["advantage_even"] = s.advantage_even ? to_json(*s.advantage_even) : Json(nullptr);
    out["advantage_odd"] = s.advantage_odd ? to_json(*s.advantage_odd) : Json(nullptr);
    return out;
}

Json to_json(const SearchReport &r) {
    Json out = {{"n", r.n},
                {"k", r.k},
                {"l", r.l},
                {"optimum", to_json(r.optimum)},
                {"optimum_decimal", r.optimum.get_d()},
                {"witness", to_json(r.witness)},
                {"witness_index", r.witness_index},
                {"enumerated", r.enumerated},
                {"seconds", r.seconds},
                {"witness_eta_n", to_json(r.witness_eta_n)}};
    out["witness_eps"] = r.witness_eps ? to_json(*r.witness_eps) : Json(nullptr);
    if (r.lp_columns > 0) {
        out["eps_budget"] = to_json(r.eps_budget);
        out["lp_columns"] = r.lp_columns;
        out["lp_pivots"] = r.lp_pivots;
        Json dual = Json::array();
        for (const auto &y : r.dual) {
            dual.push_back(to_json(y));
        }
        out["dual"] = dual;
    }
    return out;
}

Json to_json(const AdditionReport &r) {
    return {{"subgroup", {{"modulus", r.subgroup.modulus}, {"generator", r.subgroup.generator}}},
            {"bias", to_json(r.bias)},
            {"bias_decimal", r.bias.to_double()},
            {"bound", r.bound},
            {"pass", r.pass},
            {"sum", to_json(r.sum)}};
}

Json to_json(const Size2LemmaReport &r) {
    return {{"subgroup", {{"modulus", r.subgroup.modulus}, {"generator", r.subgroup.generator}}},
            {"majority_difference", r.majority_difference},
            {"copies", r.copies},
            {"bias", to_json(r.bias)},
            {"copies_bias", to_json(r.copies_bias)},
            {"copies_pass", r.copies_pass},
            {"bound", r.bound},
            {"pass", r.pass}};
}

Json to_json(const TradeoffTable &t) {
    Json families = Json::array();
    for (const auto &f : t.families) {
        families.push_back({{"broadcasters", f.broadcasters},
                            {"cost", f.cost},
                            {"eps", to_json(f.eps)},
                            {"eta_n", to_json(f.eta_n)}});
    }
    Json lp = Json::array();
    for (const auto &[eps, q] : t.lp_points) {
        lp.push_back({{"eps", to_json(eps)}, {"eta_n", to_json(q)}});
    }
    Json rows = Json::array();
    for (const auto &row : t.rows) {
        Json r = {{"c", row.c}, {"eps", to_json(row.eps)}, {"achieved_by", row.achieved_by}};
        r["achievable"] = row.achievable ? to_json(*row.achievable) : Json(nullptr);
        r["bound"] = row.bound ? to_json(*row.bound) : Json(nullptr);
        if (row.bound) {
            r["bound_delta"] = to_json(row.bound_delta);
            r["bound_r_cap"] = to_json(row.bound_r_cap);
        }
        rows.push_back(r);
    }
    return {{"instance", to_json(t.instance)},
            {"scan_mode", scan_mode_name(t.scan_mode)},
            {"families", families},
            {"lp_points", lp},
            {"rows", rows}};
}

}  // namespace nonlocal
