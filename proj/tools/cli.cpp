#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "manifest.hpp"
#include "ssco/codesign.hpp"
#include "ssco/errors.hpp"
#include "ssco/form_search.hpp"
#include "ssco/io.hpp"
#include "ssco/oracle.hpp"
#include "ssco/placement.hpp"
#include "ssco/stair.hpp"

namespace ssco::cli {

namespace {

struct ProblemArgs {
    std::string e_file;
    std::string a_file;
    std::string order_file;
    std::string scope;  ///< "", "pinned" or "all"
    int exhaustive_limit = 16;
    bool json = false;
    bool timing = false;
};

struct Problem {
    PencilPattern pencil;
    StairOptions stair;
    FormScope scope = FormScope::AllMaximal;
};

void add_problem_options(CLI::App* cmd, ProblemArgs& a) {
    cmd->add_option("e_file", a.e_file, "pattern of E")->required();
    cmd->add_option("a_file", a.a_file, "pattern of A")->required();
    cmd->add_option("--order", a.order_file, "JSON stair order {\"rows\": [...], \"cols\": [...]} (1-based)");
    cmd->add_option("--scope", a.scope, "pinned: the single form under the stair order; all: every maximal form")
        ->check(CLI::IsMember({"pinned", "all"}));
    cmd->add_option("--exhaustive-limit", a.exhaustive_limit, "largest n for the exact stair search")
        ->check(CLI::Range(0, FormSearch::max_rows));
    cmd->add_flag("--json", a.json, "machine-readable output");
    cmd->add_flag("--timing", a.timing, "record wall time in the manifest");
}

std::vector<int> priority_from(const Json& j, const char* key, int n, const std::string& path) {
    if (!j.contains(key)) return {};
    std::vector<int> out;
    for (const auto& v : j.at(key)) out.push_back(v.get<int>() - 1);
    std::vector<int> sorted = out;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
        if (sorted[i] != i || static_cast<int>(sorted.size()) != n)
            throw DimensionError(path + ": '" + key + "' must be a permutation of 1.." + std::to_string(n));
    return out;
}

Problem load_problem(const ProblemArgs& a, RunManifest& manifest) {
    Problem p;
    p.pencil.e = load_pattern_file(a.e_file);
    p.pencil.a = load_pattern_file(a.a_file);
    manifest.add_input("E", a.e_file);
    manifest.add_input("A", a.a_file);
    const Pattern& e = p.pencil.e;
    const Pattern& am = p.pencil.a;
    if (e.rows() != e.cols() || am.rows() != am.cols() || e.rows() != am.rows())
        throw DimensionError(fmt::format("dimension mismatch: {} is {}x{}, {} is {}x{}", a.e_file, e.rows(), e.cols(),
                                         a.a_file, am.rows(), am.cols()));
    const int n = p.pencil.n();
    p.stair.exhaustive_limit = a.exhaustive_limit;
    if (!a.order_file.empty()) {
        manifest.add_input("order", a.order_file);
        Json j;
        try {
            j = Json::parse(read_file(a.order_file));
        } catch (const Json::parse_error& ex) {
            throw ParseError(a.order_file + ": " + ex.what(), 1, static_cast<int>(ex.byte));
        }
        p.stair.row_priority = priority_from(j, "rows", n, a.order_file);
        p.stair.col_priority = priority_from(j, "cols", n, a.order_file);
    }
    p.scope = a.scope == "pinned" || (a.scope.empty() && !a.order_file.empty()) ? FormScope::Pinned : FormScope::AllMaximal;
    manifest.set_config("scope", to_string(p.scope));
    manifest.set_config("exhaustive_limit", a.exhaustive_limit);
    return p;
}

std::string set_string(std::vector<int> v, bool sorted = true) {
    if (sorted) std::sort(v.begin(), v.end());
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i] + 1);
    return out + "}";
}

std::string pattern_block(const Pattern& p, const std::vector<int>& row_labels, const std::vector<int>& col_labels) {
    std::string out = "      ";
    for (int c = 0; c < p.cols(); ++c) out += fmt::format("{:>3}", col_labels.empty() ? c + 1 : col_labels[c] + 1);
    out += '\n';
    for (int r = 0; r < p.rows(); ++r) {
        out += fmt::format("  {:>3} ", row_labels.empty() ? r + 1 : row_labels[r] + 1);
        for (int c = 0; c < p.cols(); ++c) out += fmt::format("{:>3}", entry_symbol(p(r, c)));
        out += '\n';
    }
    return out;
}

void emit(std::ostream& out, const RunManifest& manifest, Json result, bool json, const std::string& text) {
    if (json) {
        Json report = {{"manifest", manifest.to_json()}, {"result", std::move(result)}};
        out << report.dump(2) << '\n';
        return;
    }
    const Json m = manifest.to_json();
    out << "# ssco " << m["version"].get<std::string>() << " " << m["command"].get<std::string>() << '\n';
    for (const auto& in : m["inputs"])
        out << "# input " << in["role"].get<std::string>() << " " << in["path"].get<std::string>() << " sha256 "
            << (in["sha256"].is_null() ? std::string("-") : in["sha256"].get<std::string>()) << '\n';
    out << "# config " << m["config"].dump() << '\n';
    if (m.contains("timing_ms")) out << "# timing_ms " << m["timing_ms"].get<double>() << '\n';
    out << text;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const ProblemArgs& args, std::ostream& out) {
    RunManifest manifest("analyze");
    if (args.timing) manifest.enable_timing();
    const Problem p = load_problem(args, manifest);
    const int n = p.pencil.n();
    const Pattern lam = lambda_pattern(p.pencil);
    const StairMode mode = n <= std::min(p.stair.exhaustive_limit, FormSearch::max_rows) ? StairMode::Exhaustive
                                                                                         : StairMode::Greedy;
    const StairForm form = stair_decompose(lam, mode, p.stair);
    const auto [normalized, pivots] = normalize_steps(form);
    const std::vector<StepDifference> diffs = step_differences(normalized);
    PivotChoiceEnumerator choices(form);
    const Assumption1Report a1 = check_assumption1(normalized);
    const int required = n - static_cast<int>(pivots.size());

    std::ostringstream text;
    text << fmt::format("lambda pattern ({}x{}):\n", n, n) << pattern_block(lam, {}, {});
    text << fmt::format("stair form: {} steps, maximality {}\n", normalized.step_count(),
                        normalized.maximality_certified ? "certified" : "not certified (greedy)");
    text << pattern_block(normalized.permuted(), normalized.row_perm, normalized.col_perm);
    text << "step differences:\n";
    for (const StepDifference& d : diffs) {
        std::vector<int> rows(normalized.row_perm.begin() + d.row_begin, normalized.row_perm.begin() + d.row_end);
        std::vector<int> cols(normalized.col_perm.begin() + d.col_begin, normalized.col_perm.begin() + d.col_end);
        text << fmt::format("  step {:>2}: rows {} new columns {}\n", d.step_index + 1, set_string(rows, false),
                            set_string(cols, false));
    }
    text << "pivots:";
    for (const Pivot& pv : pivots) text << fmt::format(" ({},{})", pv.orig_row + 1, pv.orig_col + 1);
    text << '\n';
    text << fmt::format("{} pivots; {} dedicated actuators required\n", pivots.size(), required);
    text << fmt::format("pivot alternatives: {} collections\n", choices.count());
    for (std::size_t s = 0; s < choices.candidates().size(); ++s) {
        const auto& cand = choices.candidates()[s];
        if (cand.size() < 2) continue;
        text << fmt::format("  step {:>2}:", cand.front().step + 1);
        for (const Pivot& pv : cand) text << fmt::format(" ({},{})", pv.orig_row + 1, pv.orig_col + 1);
        text << '\n';
    }
    text << "assumption 1:\n";
    for (const Assumption1Item& it : a1.items)
        text << fmt::format("  step {:>2}: {}\n", it.step + 1, to_string(it.verdict));

    Json result;
    result["n"] = n;
    result["lambda_pattern"] = to_json(lam);
    Json jform = to_json(normalized);
    Json jp = Json::array();
    for (const Pivot& pv : pivots) jp.push_back({pv.row + 1, pv.col + 1, pv.orig_row + 1, pv.orig_col + 1, pv.step + 1});
    jform["pivots"] = jp;
    result["form"] = jform;
    Json jd = Json::array();
    for (const StepDifference& d : diffs)
        jd.push_back({{"step", d.step_index + 1},
                      {"rows", {d.row_begin + 1, d.row_end}},
                      {"cols", {d.col_begin + 1, d.col_end}},
                      {"cells", to_json(d.cells)}});
    result["step_differences"] = jd;
    result["pivots"] = pivots.size();
    result["dedicated_actuators_required"] = required;
    Json alt = Json::array();
    for (const auto& cand : choices.candidates()) {
        Json c = Json::array();
        for (const Pivot& pv : cand) c.push_back({pv.orig_row + 1, pv.orig_col + 1});
        alt.push_back(c);
    }
    result["pivot_alternatives"] = {{"collections", choices.count()}, {"per_step", alt}};
    Json ja = Json::array();
    for (const Assumption1Item& it : a1.items)
        ja.push_back({{"step", it.step + 1},
                      {"verdict", to_string(it.verdict)},
                      {"witness_col", it.witness_col < 0 ? Json() : Json(it.witness_col + 1)}});
    result["assumption1"] = ja;
    emit(out, manifest, std::move(result), args.json, text.str());
    return kOk;
}

// ---------------------------------------------------------------- actuate / sense

struct PlaceArgs {
    ProblemArgs problem;
    int k = 0;
    std::string cost = "uniform";
    bool all_alternatives = false;
};

void add_place_options(CLI::App* cmd, PlaceArgs& a) {
    add_problem_options(cmd, a.problem);
    cmd->add_option("--k", a.k, "resilience level")->check(CLI::NonNegativeNumber);
    cmd->add_option("--cost", a.cost, "cost matrix file (CSV or JSON) or 'uniform'");
    cmd->add_flag("--all-alternatives", a.all_alternatives, "list every optimal base solution");
}

int cmd_place(const PlaceArgs& args, SolutionKind kind, std::ostream& out) {
    RunManifest manifest(kind == SolutionKind::Actuation ? "actuate" : "sense");
    if (args.problem.timing) manifest.enable_timing();
    const Problem p = load_problem(args.problem, manifest);
    PlacementOptions o;
    o.k = args.k;
    o.scope = p.scope;
    o.stair = p.stair;
    o.cost = load_cost(args.cost);
    manifest.add_input("cost", args.cost);
    manifest.set_config("k", args.k);
    manifest.set_config("all_alternatives", args.all_alternatives);
    const PlacementResult r = kind == SolutionKind::Actuation ? place_actuators(p.pencil, o) : place_sensors(p.pencil, o);

    std::ostringstream text;
    const char* noun = kind == SolutionKind::Actuation ? "actuation" : "sensing";
    text << fmt::format("{} (k = {}): {}{}\n", noun, args.k, set_string(r.best.indices),
                        r.unique ? " unique" : "");
    text << fmt::format("base solution: {}\n", set_string(r.best.base));
    text << fmt::format("cost: {}\n", r.best.cost);
    text << fmt::format("optimal base solutions: {}{}\n", r.alternatives.size(), r.truncated ? " (truncated)" : "");
    if (args.all_alternatives)
        for (const DedicatedSolution& s : r.alternatives)
            text << fmt::format("  {} cost {}\n", set_string(s.base), s.cost);
    for (const std::string& d : r.best.diagnostics) text << "note: " << d << '\n';

    Json result = to_json(r.best);
    result["unique"] = r.unique;
    result["truncated"] = r.truncated;
    if (args.all_alternatives) {
        Json alts = Json::array();
        for (const DedicatedSolution& s : r.alternatives) alts.push_back(to_json(s));
        result["alternatives"] = alts;
    }
    emit(out, manifest, std::move(result), args.problem.json, text.str());
    return kOk;
}

// ---------------------------------------------------------------- codesign

struct CodesignArgs {
    ProblemArgs problem;
    int k = 0;
    std::string wb = "uniform", wc = "uniform", wk = "uniform";
    std::string dot;
    int max_actuators = -1;
    std::size_t candidate_cap = 20000;
};

int cmd_codesign(const CodesignArgs& args, std::ostream& out, std::ostream& err) {
    RunManifest manifest("codesign");
    if (args.problem.timing) manifest.enable_timing();
    const Problem p = load_problem(args.problem, manifest);
    CodesignOptions o;
    o.k = args.k;
    o.scope = p.scope;
    o.stair = p.stair;
    o.wb = load_cost(args.wb);
    o.wc = load_cost(args.wc);
    o.wk = load_cost(args.wk);
    o.candidate_cap = args.candidate_cap;
    manifest.add_input("wb", args.wb);
    manifest.add_input("wc", args.wc);
    manifest.add_input("wk", args.wk);
    manifest.set_config("k", args.k);
    manifest.set_config("max_actuators", args.max_actuators);
    manifest.set_config("candidate_cap", args.candidate_cap);
    CodesignResult r = codesign(p.pencil, o);

    const int n = p.pencil.n();
    std::vector<int> actuated = r.actuation.indices;
    if (args.max_actuators >= 0 && static_cast<int>(r.actuation.base.size()) > args.max_actuators) {
        actuated.clear();
        for (int q = 0; q <= args.k; ++q)
            actuated.insert(actuated.end(), r.actuation.base.begin(), r.actuation.base.begin() + args.max_actuators);
    }
    const NecessaryConditions nc =
        necessary_conditions(p.pencil, dedicated_columns(n, actuated), dedicated_rows(n, r.sensing.indices));
    if (!nc.holds()) {
        std::string which;
        if (nc.sssc != Certificate::Certified) which = "controllability ramp certificate of [A - lambda E | B] fails";
        if (nc.ssso != Certificate::Certified)
            which += (which.empty() ? "" : "; ") + std::string("observability ramp certificate of [A - lambda E ; C] fails");
        err << "structurally infeasible: " << which << '\n';
        return kInfeasible;
    }
    if (!args.dot.empty()) {
        std::ofstream f(args.dot);
        if (!f) throw IoError("cannot write '" + args.dot + "'");
        f << to_dot(r.info);
    }

    std::ostringstream text;
    text << fmt::format("actuation (k = {}): {}\n", args.k, set_string(r.actuation.indices));
    text << fmt::format("sensing (k = {}): {}\n", args.k, set_string(r.sensing.indices));
    text << fmt::format("channels: {}\n", r.info.channels.size());
    for (const IndexMate& m : r.info.mates)
        text << fmt::format("  actuator {} (state {}) <- sensor {} (state {})\n", m.actuator + 1, m.actuator_state + 1,
                            m.sensor + 1, m.sensor_state + 1);
    text << "index mates:";
    for (auto [a, s] : r.info.channels) text << fmt::format(" ({},{})", a + 1, s + 1);
    text << '\n';
    text << fmt::format("total cost: {}\n", r.total_cost);
    for (const std::string& d : r.diagnostics) text << "note: " << d << '\n';
    emit(out, manifest, to_json(r), args.problem.json, text.str());
    return kOk;
}

// ---------------------------------------------------------------- verify / falsify

struct OracleArgs {
    int trials = 200;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    int threads = 0;
    std::string counterexample_out = "counterexample.json";
    std::string replay;
};

void add_oracle_options(CLI::App* cmd, OracleArgs& a) {
    cmd->add_option("--trials", a.trials, "sampled realizations")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a.seed, "random seed");
    cmd->add_option("--rank-tol", a.tol, "relative singular value threshold");
    cmd->add_option("--threads", a.threads, "oracle threads (0: SSCO_THREADS or the OpenMP default)");
    cmd->add_option("--counterexample-out", a.counterexample_out, "where a found counterexample is written");
    cmd->add_option("--replay", a.replay, "re-verify a stored counterexample instead of searching");
}

OracleConfig oracle_config(const OracleArgs& a, RunManifest& manifest) {
    OracleConfig c;
    c.trials = a.trials;
    c.seed = a.seed;
    c.rank_rel_tol = a.tol;
    c.threads = a.threads;
    manifest.set_config("trials", a.trials);
    manifest.set_config("seed", a.seed);
    manifest.set_config("rank_rel_tol", a.tol);
    return c;
}

std::string verdict_text(const OracleVerdict& v) {
    std::string out = fmt::format("outcome: {} ({} checks)\n", to_string(v.outcome), v.trials_run);
    for (const std::string& n : v.notes) out += "note: " + n + '\n';
    if (v.counterexample) {
        const Counterexample& cx = *v.counterexample;
        out += fmt::format("counterexample: {} in phase {} at trial {}, lambda = {}{:+}i, ratio {:.3e} < {:.1e}\n",
                           cx.kind, cx.phase, cx.trial, cx.lambda.real(), cx.lambda.imag(), cx.ratio, cx.tolerance);
        if (cx.kind == "fixed_mode") {
            std::vector<int> a = cx.scenario.actuators, s = cx.scenario.sensors;
            out += fmt::format("  struck actuators {} sensors {} channels {}\n", set_string(a), set_string(s),
                               cx.scenario.channels.size());
            out += fmt::format("  actuator subset {} retained sensors {}\n", set_string(cx.subset),
                               set_string(cx.retained_sensors));
        }
    }
    return out;
}

int finish_verdict(const OracleVerdict& v, const OracleArgs& args, const RunManifest& manifest, bool json,
                   std::ostream& out) {
    std::string text = verdict_text(v);
    if (v.counterexample) {
        std::ofstream f(args.counterexample_out);
        if (!f) throw IoError("cannot write '" + args.counterexample_out + "'");
        f << to_json(*v.counterexample).dump(2) << '\n';
        text += "counterexample written to " + args.counterexample_out + '\n';
    }
    emit(out, manifest, to_json(v), json, text);
    return v.outcome == Outcome::CounterexampleFound ? kVerification : kOk;
}

int replay(const std::string& path, const PencilPattern& pencil, const Pattern* b, const Pattern* c,
           RunManifest& manifest, bool json, std::ostream& out) {
    manifest.add_input("replay", path);
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::parse_error& ex) {
        throw ParseError(path + ": " + ex.what(), 1, static_cast<int>(ex.byte));
    }
    const Counterexample cx = counterexample_from_json(j);
    std::string reason;
    const bool ok = replay_counterexample(cx, pencil, b, c, &reason);
    Json result = {{"confirmed", ok}, {"reason", ok ? Json() : Json(reason)}};
    emit(out, manifest, result, json, ok ? "counterexample confirmed\n" : "counterexample rejected: " + reason + '\n');
    return ok ? kVerification : kOk;
}

struct VerifyArgs {
    std::string design;
    ProblemArgs problem;
    OracleArgs oracle;
    std::string strikes = "k";
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    RunManifest manifest("verify");
    if (args.problem.timing) manifest.enable_timing();
    const Problem p = load_problem(args.problem, manifest);
    manifest.add_input("design", args.design);
    Json j;
    try {
        j = Json::parse(read_file(args.design));
    } catch (const Json::parse_error& ex) {
        throw ParseError(args.design + ": " + ex.what(), 1, static_cast<int>(ex.byte));
    }
    if (j.contains("result") && j.contains("manifest")) j = j["result"];
    const CodesignResult design = design_from_json(j);
    const int n = p.pencil.n();
    for (int s : design.actuation.indices)
        if (s >= n) throw DimensionError(args.design + ": actuated state outside the pattern");
    for (int s : design.sensing.indices)
        if (s >= n) throw DimensionError(args.design + ": sensed state outside the pattern");
    OracleConfig c = oracle_config(args.oracle, manifest);
    if (args.strikes == "all") {
        c.max_strikes = design.actuation.k;
        c.strike_cap = std::numeric_limits<std::size_t>::max();
    } else if (args.strikes != "k") {
        try {
            c.max_strikes = std::stoi(args.strikes);
        } catch (const std::exception&) {
            throw ParseError("--strikes takes an integer, 'k' or 'all'", 0, 0);
        }
    }
    manifest.set_config("strikes", args.strikes);
    if (!args.oracle.replay.empty()) {
        const Pattern b = dedicated_columns(n, design.actuation.indices);
        const Pattern cc = dedicated_rows(n, design.sensing.indices);
        return replay(args.oracle.replay, p.pencil, &b, &cc, manifest, args.problem.json, out);
    }
    return finish_verdict(verify_design(design, p.pencil, c), args.oracle, manifest, args.problem.json, out);
}

struct FalsifyArgs {
    ProblemArgs problem;
    OracleArgs oracle;
    std::string b_file;
    int attempts = 200;
};

int cmd_falsify(const FalsifyArgs& args, std::ostream& out) {
    RunManifest manifest("falsify");
    if (args.problem.timing) manifest.enable_timing();
    const Problem p = load_problem(args.problem, manifest);
    const Pattern b = load_pattern_file(args.b_file);
    manifest.add_input("B", args.b_file);
    if (b.rows() != p.pencil.n())
        throw DimensionError(fmt::format("dimension mismatch: {} has {} rows, expected {}", args.b_file, b.rows(),
                                         p.pencil.n()));
    OracleConfig c = oracle_config(args.oracle, manifest);
    c.adversarial_attempts = args.attempts;
    manifest.set_config("adversarial_attempts", args.attempts);
    if (!args.oracle.replay.empty()) return replay(args.oracle.replay, p.pencil, &b, nullptr, manifest, args.problem.json, out);
    const Certificate cert = sssc_check(p.pencil, b);
    OracleVerdict v = falsify_sssc(p.pencil, b, c);
    v.notes.insert(v.notes.begin(), std::string("ramp certificate: ") + to_string(cert));
    return finish_verdict(v, args.oracle, manifest, args.problem.json, out);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Resilient actuator, sensor and communication design for descriptor systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    ProblemArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "lambda pattern, stair form, pivots and Assumption 1 report");
    add_problem_options(analyze, analyze_args);

    PlaceArgs actuate_args, sense_args;
    auto* actuate = app.add_subcommand("actuate", "minimum-cost k-resilient dedicated actuators");
    add_place_options(actuate, actuate_args);
    auto* sense = app.add_subcommand("sense", "minimum-cost k-resilient dedicated sensors");
    add_place_options(sense, sense_args);

    CodesignArgs co;
    auto* codesign_cmd = app.add_subcommand("codesign", "actuators, sensors and information pattern together");
    add_problem_options(codesign_cmd, co.problem);
    codesign_cmd->add_option("--k", co.k, "resilience level")->check(CLI::NonNegativeNumber);
    codesign_cmd->add_option("--wb", co.wb, "actuation cost n x (k+1)n, or 'uniform'");
    codesign_cmd->add_option("--wc", co.wc, "sensing cost (k+1)n x n, or 'uniform'");
    codesign_cmd->add_option("--wk", co.wk, "channel cost (k+1)n x (k+1)n, or 'uniform'");
    codesign_cmd->add_option("--dot", co.dot, "write the information pattern as DOT");
    codesign_cmd->add_option("--max-actuators", co.max_actuators, "cap on actuators per copy (-1: none)");
    codesign_cmd->add_option("--candidate-cap", co.candidate_cap, "largest number of pivot collections compared");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "numeric fixed-mode check of a design under strikes");
    verify->add_option("design", va.design, "design JSON written by codesign --json")->required();
    add_problem_options(verify, va.problem);
    add_oracle_options(verify, va.oracle);
    verify->add_option("--strikes", va.strikes, "largest strike count: an integer, 'k' (default) or 'all'");

    FalsifyArgs fa;
    auto* falsify = app.add_subcommand("falsify", "search for a realization that is not R-controllable");
    add_problem_options(falsify, fa.problem);
    falsify->add_option("--b", fa.b_file, "pattern of B")->required();
    add_oracle_options(falsify, fa.oracle);
    falsify->add_option("--attempts", fa.attempts, "constructive attempts")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*analyze) return cmd_analyze(analyze_args, out);
        if (*actuate) return cmd_place(actuate_args, SolutionKind::Actuation, out);
        if (*sense) return cmd_place(sense_args, SolutionKind::Sensing, out);
        if (*codesign_cmd) return cmd_codesign(co, out, err);
        if (*verify) return cmd_verify(va, out);
        if (*falsify) return cmd_falsify(fa, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kParse;
    } catch (const CostDimensionError& e) {
        err << "cost dimension error: " << e.what() << '\n';
        return kCostDimension;
    } catch (const DimensionError& e) {
        err << "dimension error: " << e.what() << '\n';
        return kDimension;
    } catch (const NotNormalizable& e) {
        err << "error: " << e.what() << '\n';
        return kDimension;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    } catch (const Json::exception& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    }
    return kFailure;
}

} // namespace ssco::cli
