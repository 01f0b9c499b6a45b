#include "qproc/cli/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qproc/cqp/parser.h"
#include "qproc/cqp/printer.h"
#include "qproc/cqp/semantics.h"
#include "qproc/cqp/typecheck.h"
#include "qproc/criteria/checks.h"
#include "qproc/criteria/counterexample.h"
#include "qproc/criteria/report.h"
#include "qproc/encode/encode.h"
#include "qproc/qccs/parser.h"
#include "qproc/qccs/printer.h"
#include "qproc/qccs/semantics.h"
#include "qproc/qccs/wellformed.h"
#include "qproc/text/numeric.h"

namespace qproc::cli {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string> &parts, const std::string &sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        out += (i ? sep : "") + parts[i];
    }
    return out;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    double tolerance = quantum::kDefaultTolerance;
    size_t max_depth = criteria::Budget{}.max_depth;
    size_t max_states = criteria::Budget{}.max_states;
    std::optional<uint64_t> seed;
    std::string format = "text";
    std::vector<size_t> script;
    std::string perm_mode = "on_demand";
    size_t instances = 500;
    bool weak = false;

    criteria::Budget budget() const {
        return {max_depth, max_states};
    }
    cqp::StepOptions cqp_steps() const {
        cqp::StepOptions s;
        s.tolerance = tolerance;
        s.perm_mode = perm_mode == "explicit" ? cqp::PermMode::Explicit : cqp::PermMode::OnDemand;
        return s;
    }
    qccs::StepOptions qccs_steps() const {
        qccs::StepOptions s;
        s.tolerance = tolerance;
        return s;
    }
    criteria::CheckOptions check() const {
        criteria::CheckOptions c;
        c.budget = budget();
        c.tolerance = tolerance;
        c.perm_mode = cqp_steps().perm_mode;
        c.corr.mode = weak ? criteria::CorrMode::Weak : criteria::CorrMode::Literal;
        return c;
    }
    bool json_output() const {
        return format == "json";
    }
};

uint64_t resolve_seed(const RunOptions &o) {
    if (o.seed) {
        return *o.seed;
    }
    if (const char *env = std::getenv("QPROC_SEED")) {
        try {
            size_t used = 0;
            uint64_t v = std::stoull(env, &used);
            if (used == std::string(env).size()) {
                return v;
            }
        } catch (const std::exception &) {
        }
        throw UsageError(std::string("QPROC_SEED is not an unsigned integer: ") + env);
    }
    return 0;
}

enum class FileKind { Cqp, Qccs };

FileKind kind_of(const std::string &path) {
    auto ends = [&](const std::string &ext) {
        return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
    };
    if (ends(".cqp")) {
        return FileKind::Cqp;
    }
    if (ends(".qccs")) {
        return FileKind::Qccs;
    }
    throw UsageError(path + ": expected a .cqp or .qccs file");
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError(path + ": cannot read file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Errors from the calculi carry a position; prefix the file name.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename F>
auto load(const std::string &path, F parse) {
    std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const Error &e) {
        throw InputError(path + ":" + e.what());
    }
}

cqp::Config load_cqp(const std::string &path, bool typecheck = true) {
    if (kind_of(path) != FileKind::Cqp) {
        throw UsageError(path + ": expected a .cqp file");
    }
    return load(path, [&](const std::string &text) {
        auto c = cqp::parse_cqp(text);
        if (typecheck) {
            cqp::typecheck_config(c);
        }
        return c;
    });
}

qccs::File load_qccs(const std::string &path) {
    if (kind_of(path) != FileKind::Qccs) {
        throw UsageError(path + ": expected a .qccs file");
    }
    return load(path, [](const std::string &text) { return qccs::parse_qccs(text); });
}

void emit(std::ostream &out, const json &j) {
    out << criteria::render(j);
}

int exit_for(criteria::VerdictKind k) {
    switch (k) {
        case criteria::VerdictKind::Holds:
            return kExitOk;
        case criteria::VerdictKind::Fails:
            return kExitFails;
        case criteria::VerdictKind::Inconclusive:
            return kExitInconclusive;
    }
    return kExitUsage;
}

// ---- AST dumps

const char *cqp_kind(cqp::TermKind k) {
    static const char *names[] = {"Nil", "Success", "Par", "In", "Out", "Trans", "Measure", "NewChan", "NewQbit"};
    return names[static_cast<int>(k)];
}

const char *qccs_kind(qccs::Kind k) {
    static const char *names[] = {"Nil", "Success", "Tau", "Oper", "In", "Out", "Choice", "Par", "Restrict",
                                  "IfThen", "Call"};
    return names[static_cast<int>(k)];
}

json ast(const cqp::TermPtr &p) {
    json j = {{"kind", cqp_kind(p->kind)}};
    for (auto [key, value] : {std::pair{"chan", &p->chan}, {"var", &p->var}, {"qubit", &p->qubit}, {"gate", &p->gate}}) {
        if (!value->empty()) {
            j[key] = *value;
        }
    }
    if (!p->qubits.empty()) {
        j["qubits"] = p->qubits;
    }
    if (p->body) {
        j["body"] = ast(p->body);
    }
    if (p->right) {
        j["right"] = ast(p->right);
    }
    return j;
}

json ast(const qccs::TermPtr &p) {
    json j = {{"kind", qccs_kind(p->kind)}};
    for (auto [key, value] : {std::pair{"chan", &p->chan}, {"var", &p->var}, {"qubit", &p->qubit}, {"op", &p->op}}) {
        if (!value->empty()) {
            j[key] = *value;
        }
    }
    if (!p->qubits.empty()) {
        j["qubits"] = p->qubits;
    }
    if (!p->restricted.empty()) {
        j["restricted"] = p->restricted;
    }
    if (p->cond) {
        j["cond"] = qccs::print_bool(p->cond);
    }
    if (p->body) {
        j["body"] = ast(p->body);
    }
    if (p->right) {
        j["right"] = ast(p->right);
    }
    return j;
}

// Indented tree: one node per line, attributes after the kind.
void dump_tree(std::ostream &out, const json &node, int indent) {
    out << std::string(indent * 2, ' ') << node["kind"].get<std::string>();
    for (const auto &[key, value] : node.items()) {
        if (key == "kind" || key == "body" || key == "right") {
            continue;
        }
        out << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
    }
    out << "\n";
    for (const char *child : {"body", "right"}) {
        if (node.contains(child)) {
            dump_tree(out, node[child], indent + 1);
        }
    }
}

int cmd_parse(const std::string &path, const RunOptions &o, std::ostream &out) {
    json j = {{"schema", criteria::kReportSchema}, {"command", "parse"}, {"file", path}};
    if (kind_of(path) == FileKind::Cqp) {
        auto c = load_cqp(path, false);
        j["calculus"] = "cqp";
        j["qubits"] = c.state().names();
        j["channels"] = c.channels();
        j["term"] = ast(c.term());
    } else {
        auto f = load_qccs(path);
        j["calculus"] = "qccs";
        j["qubits"] = f.config.rho.names();
        j["constants"] = json::object();
        for (const auto &[name, def] : f.defs.consts) {
            j["constants"][name] = {{"params", def.params}, {"body", ast(def.body)}};
        }
        j["term"] = ast(f.config.term);
    }
    if (o.json_output()) {
        emit(out, j);
        return kExitOk;
    }
    out << j["calculus"].get<std::string>() << " qubits " << j["qubits"].dump() << "\n";
    if (j.contains("constants")) {
        for (const auto &[name, def] : j["constants"].items()) {
            out << "def " << name << def["params"].dump() << "\n";
            dump_tree(out, def["body"], 1);
        }
    }
    dump_tree(out, j["term"], 0);
    return kExitOk;
}

int cmd_typecheck(const std::string &path, const RunOptions &o, std::ostream &out) {
    std::string what;
    if (kind_of(path) == FileKind::Cqp) {
        load_cqp(path);
        what = "well-typed";
    } else {
        load_qccs(path);
        what = "well-formed";
    }
    if (o.json_output()) {
        emit(out, {{"schema", criteria::kReportSchema}, {"command", "typecheck"}, {"file", path}, {"result", what}});
    } else {
        out << path << ": " << what << "\n";
    }
    return kExitOk;
}

// ---- run and steps

std::string cqp_state_text(const cqp::Config &c, const std::vector<std::string> &initial_order) {
    if (c.is_dist()) {
        return cqp::print_config(c);
    }
    // Initial qubits first, in their original order, so a run reads independently of register permutations.
    std::vector<std::string> order;
    for (const auto &n : initial_order) {
        if (c.state().position_of(n) >= 0) {
            order.push_back(n);
        }
    }
    for (const auto &n : c.state().names()) {
        if (std::find(order.begin(), order.end(), n) == order.end()) {
            order.push_back(n);
        }
    }
    return cqp::print_state(c.state().reordered(order)) + "\n";
}

struct Picked {
    size_t choice;
    size_t options;
    std::string rule;
    std::string description;
    std::string state;
};

template <typename Config, typename Steps, typename Describe, typename Show, typename Barb>
int run_loop(Config current, const RunOptions &o, std::ostream &out, Steps steps, Describe describe, Show show,
             Barb barb) {
    std::mt19937_64 rng(resolve_seed(o));
    size_t scripted = 0;
    std::vector<Picked> trace;
    bool truncated = false;
    std::string initial = show(current);
    while (true) {
        auto enabled = steps(current);
        if (enabled.empty()) {
            break;
        }
        if (trace.size() == o.max_depth) {
            truncated = true;
            break;
        }
        size_t pick = 0;
        if (enabled.size() > 1) {
            pick = scripted < o.script.size() ? o.script[scripted++] : rng() % enabled.size();
            if (pick >= enabled.size()) {
                throw UsageError("script entry " + std::to_string(pick) + " exceeds the " +
                                 std::to_string(enabled.size()) + " enabled steps");
            }
        }
        auto [rule, description] = describe(enabled[pick]);
        current = enabled[pick].next;
        trace.push_back({pick, enabled.size(), rule, description, show(current)});
    }
    bool success = barb(current);
    if (o.json_output()) {
        json steps_json = json::array();
        for (const auto &t : trace) {
            steps_json.push_back({{"choice", t.choice},
                                  {"options", t.options},
                                  {"rule", t.rule},
                                  {"step", t.description},
                                  {"state", t.state}});
        }
        emit(out, {{"schema", criteria::kReportSchema},
                   {"command", "run"},
                   {"seed", resolve_seed(o)},
                   {"initial", initial},
                   {"steps", steps_json},
                   {"final", show(current)},
                   {"success", success},
                   {"truncated", truncated}});
    } else {
        out << "initial: " << initial;
        for (size_t i = 0; i < trace.size(); ++i) {
            const auto &t = trace[i];
            out << "[" << i + 1 << "] " << (t.description.empty() ? t.rule : t.description);
            if (t.options > 1) {
                out << " (choice " << t.choice << " of " << t.options << ")";
            }
            out << "\n    " << t.state;
        }
        out << "final: " << show(current);
        if (truncated) {
            out << "TRUNCATED after " << trace.size() << " steps\n";
        }
        out << (success ? "SUCCESS" : "NO SUCCESS") << "\n";
    }
    return kExitOk;
}

std::string indent_lines(const std::string &text) {
    std::string out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out += "    " + line + "\n";
    }
    return out;
}

int cmd_run(const std::string &path, const RunOptions &o, std::ostream &out) {
    if (kind_of(path) == FileKind::Cqp) {
        auto start = load_cqp(path);
        auto names = start.state().names();
        auto show = [&](const cqp::Config &c) {
            return cqp_state_text(c, names) + (c.is_dist() ? "" : "    " + cqp::print_term(c.term()) + "\n");
        };
        return run_loop(
            start, o, out, [&](const cqp::Config &c) { return cqp::enumerate_steps(c, o.cqp_steps()); },
            [](const cqp::Step &s) { return std::pair{std::string(cqp::rule_name(s.rule)), s.description}; }, show,
            [](const cqp::Config &c) { return cqp::has_success_barb(c); });
    }
    auto file = load_qccs(path);
    auto show = [](const qccs::Config &c) {
        return "rho over " + join(c.rho.names(), ", ") + "\n" + indent_lines(qccs::print_rho(c)) + "    " +
               qccs::print_term(c.term) + "\n";
    };
    return run_loop(
        file.config, o, out,
        [&](const qccs::Config &c) { return qccs::reduce_steps(c, file.defs, o.qccs_steps()); },
        [](const qccs::Transition &t) { return std::pair{t.rule, std::string()}; }, show,
        [&](const qccs::Config &c) { return qccs::has_success_barb(c, file.defs); });
}

int cmd_steps(const std::string &path, const RunOptions &o, std::ostream &out) {
    json listing = json::array();
    if (kind_of(path) == FileKind::Cqp) {
        auto c = load_cqp(path);
        auto steps = cqp::enumerate_steps(c, o.cqp_steps());
        for (size_t i = 0; i < steps.size(); ++i) {
            listing.push_back({{"index", i},
                               {"rule", cqp::rule_name(steps[i].rule)},
                               {"step", steps[i].description},
                               {"next", cqp::print_config(steps[i].next)}});
        }
    } else {
        auto f = load_qccs(path);
        auto steps = qccs::lts_steps(f.config, f.defs, o.qccs_steps());
        for (size_t i = 0; i < steps.size(); ++i) {
            listing.push_back({{"index", i},
                               {"label", qccs::label_text(steps[i].label)},
                               {"rule", steps[i].rule},
                               {"next", qccs::print_term(steps[i].next.term)}});
        }
    }
    if (o.json_output()) {
        emit(out, {{"schema", criteria::kReportSchema}, {"command", "steps"}, {"file", path}, {"steps", listing}});
        return kExitOk;
    }
    if (listing.empty()) {
        out << "no steps\n";
    }
    for (const auto &s : listing) {
        out << "[" << s["index"].get<size_t>() << "] ";
        if (s.contains("label")) {
            out << s["label"].get<std::string>() << " ";
        }
        out << (s.contains("step") ? s["step"] : s["rule"]).get<std::string>();
        out << "\n" << indent_lines(s["next"].get<std::string>());
    }
    return kExitOk;
}

// ---- translate

std::string translation_text(const std::string &path) {
    auto source = load_cqp(path);
    auto enc = encode::encode_config(source);
    std::string text = "// Translation of " + std::filesystem::path(path).filename().string() + "\n";
    text += "// operators:";
    for (const auto &op : enc.op_table) {
        text += " " + op.name + "/" + std::to_string(op.arity);
    }
    text += "\n";
    return text + qccs::print_file(enc.defs, enc.config);
}

int cmd_translate(const std::string &path, const std::string &output, std::ostream &out) {
    std::string text = translation_text(path);
    if (output.empty()) {
        out << text;
        return kExitOk;
    }
    std::ofstream file(output);
    if (!file) {
        throw UsageError(output + ": cannot write file");
    }
    file << text;
    return kExitOk;
}

// ---- check

const std::vector<std::string> kSourceChecks = {"completeness", "soundness",  "name-inv",   "qubit-inv",
                                                "size",         "congruence", "divergence", "success"};

json renaming_json(const std::map<std::string, std::string> &gamma) {
    json j = json::object();
    for (const auto &[from, to] : gamma) {
        j[from] = to;
    }
    return j;
}

int cmd_check(const std::string &which, const std::vector<std::string> &files, const RunOptions &o,
              std::ostream &out) {
    uint64_t seed = resolve_seed(o);
    auto opts = o.check();
    json report;
    criteria::VerdictKind verdict;
    bool is_source_check = std::find(kSourceChecks.begin(), kSourceChecks.end(), which) != kSourceChecks.end();
    if (is_source_check) {
        if (files.size() != 1) {
            throw UsageError("check " + which + " takes one .cqp file");
        }
        auto source = load_cqp(files[0]);
        criteria::CheckResult r;
        std::optional<std::map<std::string, std::string>> gamma;
        if (which == "completeness") {
            r = criteria::check_completeness(source, opts);
        } else if (which == "soundness") {
            r = criteria::check_soundness(source, opts);
        } else if (which == "name-inv") {
            gamma = criteria::random_channel_renaming(source, seed);
            r = criteria::check_name_invariance(source, *gamma);
        } else if (which == "qubit-inv") {
            gamma = criteria::random_qubit_renaming(source, seed);
            r = criteria::check_qubit_invariance(source, *gamma);
        } else if (which == "size") {
            r = criteria::check_register_size(source, opts);
        } else if (which == "congruence") {
            r = criteria::check_congruence_preservation(source, seed);
        } else if (which == "divergence") {
            r = criteria::check_divergence_reflection(source, opts);
        } else {
            r = criteria::check_success_sensitiveness(source, opts);
        }
        report = criteria::check_report(which, r, o.tolerance, seed);
        report["file"] = files[0];
        if (gamma) {
            report["renaming"] = renaming_json(*gamma);
        }
        verdict = r.verdict.kind;
    } else if (which == "corr-sim" || which == "bisim") {
        if (files.size() != 2) {
            throw UsageError("check " + which + " takes two .qccs files");
        }
        auto left = load_qccs(files[0]);
        auto right = load_qccs(files[1]);
        auto l = criteria::build_lts(left.config, left.defs, o.budget(), criteria::QccsSteps::Labelled, o.qccs_steps());
        auto r = criteria::build_lts(right.config, right.defs, o.budget(), criteria::QccsSteps::Labelled,
                                     o.qccs_steps());
        criteria::CheckResult result;
        result.stats = criteria::combine(criteria::stats_of(l.lts), criteria::stats_of(r.lts));
        result.verdict = which == "corr-sim"
                             ? criteria::corr_sim_check(l.lts, r.lts, opts.corr)
                             : criteria::bisimulation_check(l.lts, r.lts,
                                                            o.weak ? criteria::BisimMode::Weak : criteria::BisimMode::Strong);
        report = criteria::check_report(which, result, o.tolerance, seed);
        report["files"] = files;
        report["mode"] = o.weak ? "weak" : (which == "corr-sim" ? "literal" : "strong");
        verdict = result.verdict.kind;
    } else if (which == "campaign") {
        if (!files.empty()) {
            throw UsageError("check campaign takes no files");
        }
        criteria::CampaignOptions c;
        c.seed = seed;
        c.instances = o.instances;
        c.check = opts;
        auto result = criteria::run_campaign(c);
        report = criteria::campaign_report(result, c);
        verdict = result.total_fails()          ? criteria::VerdictKind::Fails
                  : result.total_inconclusive() ? criteria::VerdictKind::Inconclusive
                                                : criteria::VerdictKind::Holds;
    } else {
        throw UsageError("unknown check " + which);
    }
    if (o.json_output()) {
        emit(out, report);
    } else {
        out << which << ": " << report["verdict"].get<std::string>() << " (" << report["reason"].get<std::string>()
            << ")\n";
        if (report.contains("checks")) {
            for (const auto &[name, t] : report["checks"].items()) {
                out << "  " << name << ": " << t["holds"] << " holds, " << t["fails"] << " fails, "
                    << t["inconclusive"] << " inconclusive\n";
            }
            for (const auto &f : report["failures"]) {
                out << "  failure " << f.get<std::string>() << "\n";
            }
        }
        if (report.contains("script")) {
            out << "script: " << report["script"].dump() << "\n";
        }
        if (report.contains("stats")) {
            const auto &s = report["stats"];
            out << "states " << s["states"] << ", edges " << s["edges"] << ", depth " << s["depth"]
                << (s["truncated"].get<bool>() ? ", truncated" : "") << "\n";
        }
    }
    return exit_for(verdict);
}

// ---- counterexample

std::string matrix_text(const quantum::Matrix &m) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            // Twelve digits hide the last-bit noise of the products.
            auto round = [](double v) { return std::round(v * 1e12) / 1e12 + 0.0; };
            out += (j ? ", " : "") + text::format_complex({round(m(i, j).real()), round(m(i, j).imag())});
        }
        out += "]";
    }
    return out + "]";
}

int cmd_counterexample(const RunOptions &o, std::ostream &out) {
    auto rows = criteria::counterexample_suite(o.budget(), o.tolerance);
    auto report = criteria::counterexample_report(rows, o.tolerance, resolve_seed(o));
    if (o.json_output()) {
        emit(out, report);
    } else {
        size_t width = 6;
        for (const auto &r : rows) {
            width = std::max(width, matrix_text(r.image).size());
        }
        std::string header = "Q(rho)";
        header.resize(width, ' ');
        out << "state  " << header << "  success\n";
        for (const auto &r : rows) {
            std::string image = matrix_text(r.image);
            image.resize(width, ' ');
            out << r.state << "    " << image << "  " << r.outcome << (r.matches() ? "" : "  (expected " + r.expected_outcome + ")")
                << "\n";
        }
    }
    return report["verdict"] == "holds" ? kExitOk : kExitFails;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Workbench for CQP and qCCS: execution, translation and encoding checks", "qproc"};
    app.require_subcommand(1);
    RunOptions o;
    uint64_t seed_value = 0;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--tolerance", o.tolerance, "Comparison tolerance")
            ->check(CLI::Range(std::numeric_limits<double>::min(), 1e-3));
        cmd->add_option("--max-depth", o.max_depth, "Exploration depth, or step bound for run")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-states", o.max_states, "Exploration state budget")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed_value, "Random seed (default: QPROC_SEED, else 0)");
        cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--script", o.script, "Comma-separated choices at branching points")->delimiter(',');
        cmd->add_option("--perm-mode", o.perm_mode, "Register permutation steps")
            ->check(CLI::IsMember({"on_demand", "explicit"}));
    };

    std::string file;
    std::string output;
    std::string which;
    std::vector<std::string> files;

    auto *parse = app.add_subcommand("parse", "Print the syntax tree of a .cqp or .qccs file");
    parse->add_option("file", file)->required();
    auto *typecheck = app.add_subcommand("typecheck", "Typecheck a .cqp file or check a .qccs file is well formed");
    typecheck->add_option("file", file)->required();
    auto *run = app.add_subcommand("run", "Execute to completion, choosing by script then seed");
    run->add_option("file", file)->required();
    auto *steps = app.add_subcommand("steps", "List the steps enabled in the initial configuration");
    steps->add_option("file", file)->required();
    auto *translate = app.add_subcommand("translate", "Translate a .cqp file to a .qccs file");
    translate->add_option("file", file)->required();
    translate->add_option("-o,--output", output, "Output file (default: standard output)");
    auto *check = app.add_subcommand("check", "Run an encoding check and print a report");
    check->add_option("which", which,
                      "completeness, soundness, name-inv, qubit-inv, size, congruence, divergence, success, "
                      "corr-sim, bisim or campaign")
        ->required();
    check->add_option("files", files);
    check->add_option("--instances", o.instances, "Campaign size")->check(CLI::PositiveNumber);
    check->add_flag("--weak", o.weak, "Weak matching for corr-sim and bisim");
    auto *counterexample = app.add_subcommand("counterexample", "Tabulate the signed-operator example");
    for (auto *cmd : {parse, typecheck, run, steps, translate, check, counterexample}) {
        add_common(cmd);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    for (auto *cmd : app.get_subcommands()) {
        if (cmd->count("--seed")) {
            o.seed = seed_value;
        }
    }
    if (check->parsed() && !check->count("--format")) {
        o.format = "json";
    }

    try {
        if (parse->parsed()) {
            return cmd_parse(file, o, out);
        }
        if (typecheck->parsed()) {
            return cmd_typecheck(file, o, out);
        }
        if (run->parsed()) {
            return cmd_run(file, o, out);
        }
        if (steps->parsed()) {
            return cmd_steps(file, o, out);
        }
        if (translate->parsed()) {
            return cmd_translate(file, output, out);
        }
        if (check->parsed()) {
            return cmd_check(which, files, o, out);
        }
        return cmd_counterexample(o, out);
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError &e) {
        err << e.what() << "\n";
        return kExitFails;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitFails;
    }
}

}  // namespace qproc::cli
