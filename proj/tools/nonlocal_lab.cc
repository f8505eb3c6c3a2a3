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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nonlocal/error.h"
#include "nonlocal/ghz.h"
#include "nonlocal/json_io.h"
#include "nonlocal/model.h"
#include "nonlocal/protocol.h"
#include "nonlocal/random.h"
#include "nonlocal/rect.h"
#include "nonlocal/search.h"
#include "nonlocal/zgroup.h"

namespace {

using namespace nonlocal;

struct Common {
    int n = 3;
    int k = 2;
    std::uint64_t seed = 1;
    std::uint64_t budget = 10'000'000;
    std::string format = "json";
    std::string out;
    int threads = 1;
};

std::uint64_t default_budget() {
    if (const char *env = std::getenv("NONLOCAL_LAB_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            fail(ErrorKind::kInvalidArgument, std::string("NONLOCAL_LAB_BUDGET is not a number: ") + env);
        }
    }
    return 10'000'000;
}

void emit(const Common &c, const std::string &text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(c.out);
    require(static_cast<bool>(file), ErrorKind::kInvalidArgument, "cannot write " + c.out);
    file << text;
}

void emit_json(const Common &c, const Json &j) {
    emit(c, j.dump(2) + "\n");
}

Json read_json(const std::string &path) {
    std::ifstream file(path);
    require(static_cast<bool>(file), ErrorKind::kInvalidArgument, "cannot read " + path);
    try {
        return Json::parse(file);
    } catch (const std::exception &e) {
        fail(ErrorKind::kParseError, path + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

Rational parse_rational(const std::string &text) {
    try {
        Rational q(text);
        require(q.get_den() != 0, ErrorKind::kParseError, "zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument &) {
        fail(ErrorKind::kParseError, "not a rational: " + text);
    }
}

std::vector<Rational> parse_rational_grid(const std::string &text) {
    std::vector<Rational> out;
    for (const auto &item : split(text)) {
        out.push_back(parse_rational(item));
    }
    return out;
}

std::vector<unsigned> parse_cost_grid(const std::string &text) {
    std::vector<unsigned> out;
    for (const auto &item : split(text)) {
        try {
            out.push_back(static_cast<unsigned>(std::stoul(item)));
        } catch (const std::exception &) {
            fail(ErrorKind::kParseError, "not a bit count: " + item);
        }
    }
    return out;
}

std::string join(const std::vector<int> &v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); i++) {
        out += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    }
    return out;
}

CorrelationProblem load_problem(const Common &c, const std::string &path) {
    if (!path.empty()) {
        return problem_from_json(read_json(path));
    }
    return ghz_problem(GhzInstance::create(c.n, c.k), c.budget);
}

std::vector<Outcome> click_outcomes(int n, int l) {
    std::vector<Outcome> out;
    Outcome a{std::vector<int>(n, 0)};
    while (true) {
        out.push_back(a);
        int i = n - 1;
        while (i >= 0 && ++a.values[i] == l) {
            a.values[i--] = 0;
        }
        if (i < 0) {
            return out;
        }
    }
}

bool cmd_quantum(const Common &c) {
    GhzInstance inst = GhzInstance::create(c.n, c.k);
    BigInt rows = inst.valid_input_count() * ipow(BigInt(2), static_cast<unsigned>(inst.n));
    require(rows <= BigInt(std::to_string(c.budget)), ErrorKind::kBudgetExceeded,
            to_string(rows) + " table rows exceed the budget");
    std::vector<Outcome> outcomes = click_outcomes(inst.n, 2);
    double max_dev = 0;
    Json table = Json::array();
    std::ostringstream csv;
    csv << "x,a,target,quantum,deviation\n" << std::setprecision(17);
    for (const auto &x : valid_inputs(inst, c.budget)) {
        for (const auto &a : outcomes) {
            Rational t = target_probability(inst, x, a);
            double q = quantum_probability(inst, x, a);
            double dev = std::abs(q - t.get_d());
            max_dev = std::max(max_dev, dev);
            if (c.format == "csv") {
                csv << join(x, ' ') << ',' << join(a.values, ' ') << ',' << to_string(t) << ',' << q << ',' << dev
                    << '\n';
            } else {
                table.push_back({{"x", x}, {"a", to_json(a)}, {"target", to_json(t)}, {"quantum", q},
                                 {"deviation", dev}});
            }
        }
    }
    bool pass = max_dev < kRealTolerance;
    if (c.format == "csv") {
        emit(c, csv.str());
    } else {
        emit_json(c, {{"instance", to_json(inst)}, {"rows", table}, {"max_deviation", max_dev}, {"pass", pass}});
    }
    return pass;
}

bool cmd_lhv_eval(const Common &c, const std::string &model_path, const std::string &problem_path) {
    CorrelationProblem problem = load_problem(c, problem_path);
    MixedLhv model = mixed_lhv_from_json(read_json(model_path));
    model.validate(problem.n, problem.k, problem.l);
    ModelDistribution d = evaluate_mixed_lhv(model, problem);
    Efficiency e = detection_efficiency(d, problem);
    Json out = {{"eta_n", to_json(e.eta_n)}, {"eta", e.eta}, {"distribution", to_json(d)}};
    out["eps"] = e.eta_n > 0 ? to_json(error_probability(d, problem)) : Json(nullptr);
    out["eps_var"] = e.eta_n > 0 ? to_json(total_variation_error(d, problem)) : Json(nullptr);
    out["pass"] = true;
    emit_json(c, out);
    return true;
}

bool cmd_search(const Common &c, const std::string &problem_path, const std::string &eps, bool relaxed) {
    CorrelationProblem problem = load_problem(c, problem_path);
    SearchOptions opts{c.budget, c.threads, relaxed};
    SearchReport report = eps.empty() ? best_deterministic_error(problem, opts)
                                      : eta_star_lp(problem, parse_rational(eps), opts);
    bool pass = eps.empty() ? report.witness_eps == report.optimum
                            : report.witness_eta_n == report.optimum &&
                                  (!report.witness_eps || *report.witness_eps <= report.eps_budget);
    Json out = to_json(report);
    out["mode"] = eps.empty() ? "min-error" : "eta-star-lp";
    out["pass"] = pass;
    emit_json(c, out);
    return pass;
}

bool cmd_rect_scan(const Common &c, const std::string &delta_grid, bool no_symmetry, bool sample,
                   std::uint64_t samples) {
    GhzInstance inst = GhzInstance::create(c.n, c.k);
    if (c.format == "csv") {
        require(exhaustive_rectangle_count(inst.n, inst.k) <= c.budget, ErrorKind::kBudgetExceeded,
                "rectangle listing exceeds the budget");
        std::ostringstream csv;
        csv << stats_csv_header() << '\n';
        bool pass = true;
        for_each_rectangle(inst.n, inst.k, [&](const Rectangle &r) {
            RectangleStats s = rectangle_stats(r, inst);
            pass = pass && satisfies_size_bound(r, inst.k);
            csv << stats_csv_row(r, s) << '\n';
        });
        emit(c, csv.str());
        return pass;
    }
    ScanOptions opts;
    opts.budget = c.budget;
    opts.use_symmetry = !no_symmetry;
    opts.allow_sampling = sample;
    opts.samples = samples;
    opts.seed = c.seed;
    opts.threads = c.threads;
    RectangleProfile profile = profile_rectangles(inst, opts);
    std::vector<Rational> deltas = parse_rational_grid(delta_grid);
    if (deltas.empty()) {
        deltas = profile.thresholds();
    }
    Json rows = Json::array();
    for (const auto &delta : deltas) {
        rows.push_back({{"delta", to_json(delta)}, {"r_cap", to_json(profile.r_cap(delta))}});
    }
    emit_json(c, {{"instance", to_json(inst)},
                  {"mode", scan_mode_name(profile.mode)},
                  {"exhaustive", profile.exhaustive()},
                  {"visited", profile.visited},
                  {"seed", c.seed},
                  {"rows", rows},
                  {"pass", true}});
    return true;
}

bool cmd_addition(const Common &c, int T, std::int64_t r, int min_size, bool pairs, bool show_sum) {
    Rng rng(c.seed);
    Json out;
    bool pass;
    if (pairs) {
        auto sets = random_pairs(T, r, rng);
        Size2LemmaReport report = verify_size2_lemma(sets, T);
        out = to_json(report);
        pass = report.pass;
    } else {
        auto sets = random_subsets(T, r, min_size, rng);
        AdditionReport report = verify_addition_theorem(sets, T);
        out = to_json(report);
        pass = report.pass;
        if (!show_sum) {
            out.erase("sum");
        }
    }
    out["T"] = T;
    out["r"] = r;
    out["seed"] = c.seed;
    emit_json(c, out);
    return pass;
}

bool cmd_tradeoff(const Common &c, const std::string &c_grid_text, const std::string &eps_grid_text, bool no_lp,
                  bool sample) {
    GhzInstance inst = GhzInstance::create(c.n, c.k);
    std::vector<unsigned> c_grid;
    if (c_grid_text == "default") {
        unsigned top = static_cast<unsigned>(inst.n) * ceil_log2(static_cast<std::uint64_t>(inst.k));
        for (unsigned v = 0; v <= top; v++) {
            c_grid.push_back(v);
        }
    } else {
        c_grid = parse_cost_grid(c_grid_text);
    }
    std::vector<Rational> eps_grid =
        parse_rational_grid(eps_grid_text == "default" ? std::string("0,1/16,1/8,1/4,1/2") : eps_grid_text);
    TradeoffOptions opts;
    opts.search.budget = c.budget;
    opts.search.threads = c.threads;
    opts.scan.budget = c.budget;
    opts.scan.threads = c.threads;
    opts.scan.allow_sampling = sample;
    opts.scan.seed = c.seed;
    opts.use_lp = !no_lp;
    TradeoffTable table = tradeoff_table(inst, c_grid, eps_grid, opts);
    bool pass = true;
    for (const auto &row : table.rows) {
        if (row.achievable && row.bound && *row.achievable > *row.bound) {
            pass = false;
        }
    }
    if (c.format == "csv") {
        emit(c, tradeoff_csv(table));
    } else {
        Json out = to_json(table);
        out["pass"] = pass;
        emit_json(c, out);
    }
    return pass;
}

bool cmd_protocol_run(const Common &c, const std::string &protocol_path, const std::string &problem_path,
                      const std::string &input) {
    CorrelationProblem problem = load_problem(c, problem_path);
    MixedProtocol protocol = protocol_path.empty()
                                 ? MixedProtocol::deterministic(broadcast_strategy(GhzInstance::create(c.n, c.k)))
                                 : mixed_protocol_from_json(read_json(protocol_path));
    Json out = {{"cost", protocol.cost()}, {"flavor", protocol.flavor == Randomness::kShared ? "shared" : "local"}};
    Json leaf_costs = Json::array();
    for (const auto &comp : protocol.components) {
        Json costs = Json::array();
        for (const auto &region : comp.tree.leaf_regions()) {
            costs.push_back(region.path_cost);
        }
        leaf_costs.push_back(costs);
    }
    out["leaf_costs"] = leaf_costs;
    if (!input.empty()) {
        InputVector x;
        for (const auto &item : split(input)) {
            x.push_back(std::stoi(item));
        }
        Json runs = Json::array();
        for (const auto &comp : protocol.components) {
            ExecutionResult res = comp.tree.execute(x);
            runs.push_back({{"leaf", res.leaf}, {"outcome", to_json(res.outcome)}});
        }
        out["execution"] = runs;
    }
    ModelDistribution induced = induced_distribution(protocol, problem);
    out["induced"] = to_json(induced);
    bool pass = true;
    if (protocol.flavor == Randomness::kShared) {
        MixedLhv detector = to_detector_model(protocol);
        ModelDistribution d = evaluate_mixed_lhv(detector, problem);
        Rational scale = inverse_power_of_two(protocol.cost());
        for (const auto &[x, w] : problem.mu) {
            (void)w;
            for (const auto &a : click_outcomes(problem.n, problem.l)) {
                if (d.probability(x, a) != scale * induced.probability(x, a)) {
                    pass = false;
                }
            }
        }
        Efficiency e = detection_efficiency(d, problem);
        out["detector_eta_n"] = to_json(e.eta_n);
        out["detector_eta"] = e.eta;
        out["detector_eps"] = e.eta_n > 0 ? to_json(error_probability(d, problem)) : Json(nullptr);
        out["detector_components"] = detector.components.size();
    }
    out["pass"] = pass;
    emit_json(c, out);
    return pass;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multiparty nonlocality and detector-efficiency experiments"};
    app.require_subcommand(1);
    Common c;
    c.budget = 0;

    auto add_common = [&](CLI::App *sub, bool instance) {
        if (instance) {
            sub->add_option("--n", c.n, "number of parties")->capture_default_str();
            sub->add_option("--k", c.k, "measurement settings per party")->capture_default_str();
        }
        sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
        sub->add_option("--budget", c.budget, "enumeration budget (default NONLOCAL_LAB_BUDGET or 10000000)");
        sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        sub->add_option("--out", c.out, "output path (default stdout)");
        sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    };

    std::string model_path, problem_path, protocol_path, eps, delta_grid, c_grid = "default", eps_grid = "default",
                                                                             input;
    bool relaxed = false, no_symmetry = false, sample = false, no_lp = false, pairs = false, show_sum = false;
    std::uint64_t samples = 100'000;
    int T = 4, min_size = 2;
    std::int64_t r = 6400;

    auto *quantum = app.add_subcommand("quantum", "compare the quantum table with the target");
    add_common(quantum, true);

    auto *lhv_eval = app.add_subcommand("lhv-eval", "evaluate a mixed deterministic model");
    add_common(lhv_eval, true);
    lhv_eval->add_option("--model", model_path, "mixed model JSON")->required();
    lhv_eval->add_option("--problem", problem_path, "problem JSON (default GHZ n,k)");

    auto *search = app.add_subcommand("search", "minimum error, or max efficiency with --eps");
    add_common(search, true);
    search->add_option("--problem", problem_path, "problem JSON (default GHZ n,k)");
    search->add_option("--eps", eps, "error budget; runs the efficiency LP");
    search->add_flag("--relaxed", relaxed, "click probability at least q per input");

    auto *rect_scan = app.add_subcommand("rect-scan", "rectangle scan; --format csv lists every rectangle");
    add_common(rect_scan, true);
    rect_scan->add_option("--delta-grid", delta_grid, "comma-separated deltas (default all thresholds)");
    rect_scan->add_flag("--no-symmetry", no_symmetry, "scan ordered tuples");
    rect_scan->add_flag("--sample", sample, "fall back to sampling over budget");
    rect_scan->add_option("--samples", samples, "sample count")->capture_default_str();

    auto *addition = app.add_subcommand("addition", "bias of random multiset sums in Z_T");
    add_common(addition, false);
    addition->add_option("--T", T, "group order (power of two)")->capture_default_str();
    addition->add_option("--r", r, "number of sets")->capture_default_str();
    addition->add_option("--min-size", min_size, "minimum set size")->capture_default_str();
    addition->add_flag("--pairs", pairs, "size-two sets (majority difference lemma)");
    addition->add_flag("--show-sum", show_sum, "include the multiplicities of the sum");

    auto *tradeoff = app.add_subcommand("tradeoff", "achievable efficiency against the rectangle bound");
    add_common(tradeoff, true);
    tradeoff->add_option("--c-grid", c_grid, "comma-separated bit counts")->capture_default_str();
    tradeoff->add_option("--eps-grid", eps_grid, "comma-separated error levels")->capture_default_str();
    tradeoff->add_flag("--no-lp", no_lp, "skip the zero-communication LP");
    tradeoff->add_flag("--sample", sample, "fall back to sampling over budget");

    auto *protocol_run = app.add_subcommand("protocol-run", "run a protocol and its detector model");
    add_common(protocol_run, true);
    protocol_run->add_option("--protocol", protocol_path, "mixed protocol JSON (default broadcast)");
    protocol_run->add_option("--problem", problem_path, "problem JSON (default GHZ n,k)");
    protocol_run->add_option("--input", input, "comma-separated input to execute");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c.budget == 0) {
            c.budget = default_budget();
        }
        bool pass = false;
        if (*quantum) {
            pass = cmd_quantum(c);
        } else if (*lhv_eval) {
            pass = cmd_lhv_eval(c, model_path, problem_path);
        } else if (*search) {
            pass = cmd_search(c, problem_path, eps, relaxed);
        } else if (*rect_scan) {
            pass = cmd_rect_scan(c, delta_grid, no_symmetry, sample, samples);
        } else if (*addition) {
            pass = cmd_addition(c, T, r, min_size, pairs, show_sum);
        } else if (*tradeoff) {
            pass = cmd_tradeoff(c, c_grid, eps_grid, no_lp, sample);
        } else if (*protocol_run) {
            pass = cmd_protocol_run(c, protocol_path, problem_path, input);
        }
        return pass ? 0 : 1;
    } catch (const Error &e) {
        std::cerr << Json{{"error", error_kind_name(e.kind())}, {"message", e.what()}}.dump() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << Json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
        return 3;
    }
}
