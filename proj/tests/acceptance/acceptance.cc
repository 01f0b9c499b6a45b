// One line per acceptance criterion: "AC<n> PASS|FAIL <title> (<details>)". Exits non-zero when
// any criterion fails. Every criterion must also finish within ten seconds.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "qproc/cli/cli.h"
#include "qproc/cqp/parser.h"
#include "qproc/cqp/semantics.h"
#include "qproc/criteria/checks.h"
#include "qproc/criteria/counterexample.h"
#include "qproc/criteria/generator.h"
#include "qproc/criteria/systems.h"
#include "qproc/encode/encode.h"
#include "qproc/qccs/parser.h"
#include "qproc/qccs/semantics.h"
#include "qproc/qccs/wellformed.h"
#include "support/data.h"

using namespace qproc;
using quantum::Complex;
using quantum::DensityMatrix;
using quantum::StateVector;

namespace {

constexpr double kTol = 1e-9;
constexpr double kSecondsPerCriterion = 10.0;

struct Result {
    bool pass = true;
    std::string details;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            details += (details.empty() ? "" : "; ") + ("failed: " + what);
        }
    }
    void note(const std::string &what) {
        details += (details.empty() ? "" : "; ") + what;
    }
};

StateVector ket(const std::vector<std::string> &names, std::vector<std::pair<uint64_t, Complex>> terms) {
    quantum::Vector v = quantum::Vector::Zero(uint64_t{1} << names.size());
    for (const auto &[index, amp] : terms) {
        v(index) = amp;
    }
    return StateVector(names, v);
}

// Equal up to a global phase.
bool same_ray(const StateVector &a, const StateVector &b) {
    if (a.names() != b.names()) {
        return same_ray(a, b.reordered(a.names()));
    }
    return std::abs(std::abs(a.amplitudes().dot(b.amplitudes())) - 1) <= kTol;
}

bool same_matrix(const DensityMatrix &a, const DensityMatrix &b) {
    return quantum::approx_eq_unordered(a, b, kTol);
}

std::string run_cli_text(const std::vector<std::string> &args, int *code = nullptr) {
    std::ostringstream out, err;
    int c = cli::run_cli(args, out, err);
    if (code) {
        *code = c;
    }
    return out.str();
}

const std::vector<std::string> kTeleportNames = {"q0", "q1", "q2"};
const double kHalfRoot = 1 / std::sqrt(2.0);

StateVector psi1() {
    return ket(kTeleportNames, {{0b110, kHalfRoot}, {0b101, kHalfRoot}});
}

StateVector psi2() {
    return ket(kTeleportNames, {{0b001, 0.5}, {0b010, 0.5}, {0b101, -0.5}, {0b110, -0.5}});
}

// Teleportation source run.
Result teleport_source() {
    Result r;
    auto start = cqp::parse_cqp(read_data("teleport.cqp"));
    r.require(same_ray(start.state(), ket(kTeleportNames, {{0b100, kHalfRoot}, {0b111, kHalfRoot}})), "initial state");
    auto run = cqp::run(start, 0, 100, {0});
    std::vector<StateVector> after_gates;
    const cqp::Config *dist = nullptr;
    for (const auto &step : run.trace) {
        std::string rule = cqp::rule_name(step.rule);
        if (rule == "R-Trans" && after_gates.size() < 2) {
            after_gates.push_back(step.next.state());
        }
        if (rule == "R-Measure") {
            dist = &step.next;
        }
    }
    r.require(after_gates.size() == 2, "two gate steps before the measurement");
    if (after_gates.size() == 2) {
        r.require(same_ray(after_gates[0], psi1()) && quantum::approx_eq(after_gates[0].reordered(kTeleportNames), psi1(), kTol),
                  "state after CNOT");
        r.require(quantum::approx_eq(after_gates[1].reordered(kTeleportNames), psi2(), kTol), "state after H");
    }
    r.require(dist && dist->is_dist() && dist->cases().size() == 4, "four-case distribution");
    if (dist && dist->is_dist() && dist->cases().size() == 4) {
        const uint64_t posts[] = {0b001, 0b010, 0b101, 0b110};
        for (size_t m = 0; m < 4; ++m) {
            const auto &k = dist->cases()[m];
            r.require(std::abs(k.probability - 0.25) <= kTol, "probability of case " + std::to_string(m));
            r.require(same_ray(ket(kTeleportNames, {{posts[m], 1}}), k.state), "post state of case " + std::to_string(m));
        }
    }
    r.require(!run.truncated && cqp::has_success_barb(run.final_config), "branch 0 reaches success");
    r.require(quantum::approx_eq(run.final_config.state().reordered(kTeleportNames), ket(kTeleportNames, {{0b001, 1}}), kTol),
              "final state |001>");
    r.note(std::to_string(run.trace.size()) + " steps");
    return r;
}

// Teleportation translation.
Result teleport_translation() {
    Result r;
    int code = 0;
    std::string text = run_cli_text({"translate", std::string(QPROC_DATA_DIR) + "/teleport.cqp"}, &code);
    r.require(code == 0, "translate exits 0");
    auto file = qccs::parse_qccs(text);
    r.require(text == read_data("teleport-encoded.qccs"), "output equals the bundled teleport-encoded.qccs");
    auto rho0 = quantum::outer(ket(kTeleportNames, {{0b100, kHalfRoot}, {0b111, kHalfRoot}}));
    r.require(same_matrix(file.config.rho, rho0), "rho0");

    // Expected: rho3 is the mixture of the four post-measurement states with weight 1/4.
    DensityMatrix rho3(kTeleportNames, quantum::Matrix::Zero(8, 8));
    {
        quantum::Matrix acc = quantum::Matrix::Zero(8, 8);
        for (const auto &o : quantum::measure_prefix(psi2(), 2)) {
            acc += o.probability * quantum::outer(o.post_state).entries();
        }
        rho3 = DensityMatrix(kTeleportNames, acc);
    }
    const std::pair<std::string, DensityMatrix> expected[] = {
        {"Oper CNOT[", quantum::outer(psi1())},
        {"Oper H[", quantum::outer(psi2())},
        {"Oper M[", rho3},
        {"Oper E0[", quantum::outer(ket(kTeleportNames, {{0b001, 1}}))},
    };
    size_t seen = 0;
    auto config = file.config;
    for (size_t guard = 0; guard < 100; ++guard) {
        auto steps = qccs::reduce_steps(config, file.defs);
        if (steps.empty()) {
            break;
        }
        size_t pick = 0;
        for (size_t i = 0; i < steps.size(); ++i) {
            if (steps[i].rule.rfind("Oper E0[", 0) == 0) {
                pick = i;
            }
        }
        const auto &step = steps[pick];
        if (seen < 4 && step.rule.rfind(expected[seen].first, 0) == 0) {
            r.require(same_matrix(step.next.rho, expected[seen].second), "rho" + std::to_string(seen + 1));
            ++seen;
        }
        config = step.next;
    }
    r.require(seen == 4, "the four operator steps occur in order");
    r.require(qccs::has_success_barb(config, file.defs), "reaches success");
    r.note("rho1..rho4 matched: " + std::to_string(seen));
    return r;
}

// The signed-operator example.
Result counterexample() {
    Result r;
    auto rows = criteria::counterexample_suite({}, kTol);
    const double h = std::sqrt(2.0) / 2;
    auto m = [](double a, double b, double c, double d) {
        quantum::Matrix x(2, 2);
        x << a, b, c, d;
        return x;
    };
    const std::tuple<const char *, quantum::Matrix, const char *> table[] = {
        {"|0>", m(1, 0, 0, 0), "must"},
        {"|1>", m(-1, 0, 0, 2), "may-not-must"},
        {"|+>", m(0, h, h, 1), "cannot"},
        {"|->", m(0, -h, -h, 1), "cannot"},
    };
    r.require(rows.size() == 4, "four rows");
    for (size_t i = 0; i < rows.size() && i < 4; ++i) {
        const auto &[state, image, outcome] = table[i];
        r.require(rows[i].state == state, std::string("row order at ") + state);
        r.require(quantum::max_abs_diff(rows[i].image, image) <= kTol, std::string("Q image of ") + state);
        r.require(rows[i].outcome == outcome, std::string("outcome of ") + state + " is " + rows[i].outcome);
        r.note(std::string(state) + " " + rows[i].outcome);
    }
    return r;
}

// Measurement as a distribution and as a super-operator.
Result measurement_linkage() {
    Result r;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> normal;
    size_t cases = 0;
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = 1 + rng() % 3;
        size_t measured = rng() % (n + 1);
        std::vector<std::string> names;
        for (size_t k = 0; k < n; ++k) {
            names.push_back("q" + std::to_string(k));
        }
        quantum::Vector v(uint64_t{1} << n);
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            v(k) = Complex(normal(rng), normal(rng));
        }
        StateVector psi(names, v / v.norm());
        quantum::Matrix mixture = quantum::Matrix::Zero(v.size(), v.size());
        for (const auto &o : quantum::measure_prefix(psi, measured)) {
            if (o.probability > kTol) {
                mixture += o.probability * quantum::outer(o.post_state).entries();
            }
        }
        std::vector<std::string> targets(names.begin(), names.begin() + measured);
        auto applied = quantum::superop_apply(quantum::SuperOperator::meas_unknown(measured), targets, quantum::outer(psi));
        r.require(quantum::max_abs_diff(applied.entries(), mixture) <= kTol, "random state " + std::to_string(trial));
        ++cases;
    }
    auto ex = criteria::separation_example();
    quantum::Matrix half = quantum::Matrix::Zero(2, 2);
    half(0, 0) = half(1, 1) = 0.5;
    r.require(quantum::max_abs_diff(ex.encoded_measured.rho.entries(), half) <= kTol, "translated distribution of |+>");
    r.require(quantum::max_abs_diff(ex.target_measured.rho.entries(), half) <= kTol, "target after M on |+>");
    r.note(std::to_string(cases) + " random states");
    return r;
}

// Property campaign.
Result campaign() {
    Result r;
    criteria::CampaignOptions o;
    o.instances = 500;
    o.max_qubits = 4;
    o.max_depth = 6;
    auto result = criteria::run_campaign(o);
    r.require(result.instances == 500, "500 instances");
    for (const auto &[name, t] : result.tallies) {
        r.require(t.fails == 0, name + " has " + std::to_string(t.fails) + " failures");
    }
    double rate = result.total_runs() ? double(result.total_inconclusive()) / result.total_runs() : 0;
    r.require(rate < 0.01, "inconclusive rate below 1%");
    r.require(result.longest_emulation <= 1, "emulations use at most one target step");
    for (size_t k = 0; k < result.failures.size() && k < 3; ++k) {
        r.note(result.failures[k]);
    }
    std::ostringstream s;
    s << "corroborated on " << result.instances << " instances, " << result.total_inconclusive() << " of "
      << result.total_runs() << " runs inconclusive (" << 100 * rate << "%), longest emulation "
      << result.longest_emulation;
    r.note(s.str());
    return r;
}

// Correspondence simulation holds where bisimulation fails.
Result separation() {
    Result r;
    auto ex = criteria::separation_example();
    qccs::Definitions defs;
    auto enc = criteria::build_lts(ex.encoded_measured, defs, {}, criteria::QccsSteps::Labelled);
    auto target = criteria::build_lts(ex.target_measured, defs, {}, criteria::QccsSteps::Labelled);
    auto corr = criteria::corr_sim_check(enc.lts, target.lts);
    auto bisim = criteria::bisimulation_check(enc.lts, target.lts);
    r.require(corr.is(criteria::VerdictKind::Holds), "corr-sim from the translated derivative: " + corr.reason);
    r.require(bisim.is(criteria::VerdictKind::Fails), "bisimulation diagnostic fails");
    auto complete = criteria::check_completeness(ex.source);
    auto sound = criteria::check_soundness(ex.source);
    r.require(complete.verdict.is(criteria::VerdictKind::Holds), "completeness on the instance");
    r.require(sound.verdict.is(criteria::VerdictKind::Holds), "soundness on the instance");
    auto reverse = criteria::corr_sim_check(target.lts, enc.lts);
    r.note(std::string("corr-sim ") + criteria::verdict_name(corr.kind) + ", bisimulation " +
           criteria::verdict_name(bisim.kind) + ", reverse corr-sim " + criteria::verdict_name(reverse.kind));
    return r;
}

// Translations are well formed; violations are located.
Result wellformedness() {
    Result r;
    size_t checked = 0;
    for (uint64_t seed = 0; seed < 500; ++seed) {
        auto out = encode::encode_config(criteria::gen_config(seed));
        try {
            qccs::check_wellformed(out.defs, out.config);
            ++checked;
        } catch (const Error &e) {
            r.require(false, "seed " + std::to_string(seed) + ": " + e.what());
        }
    }
    auto teleport = qccs::parse_qccs(read_data("teleport-encoded.qccs"));
    r.require(teleport.config.term != nullptr, "bundled translation is well formed");
    const std::pair<const char *, const char *> injected[] = {
        {"Cond1", "qubits q;\nrho = outer(|0>);\nprocess c!q.H[q].nil\n"},
        {"Cond2", "qubits q;\nrho = outer(|0>);\nprocess H[q].nil | X[q].nil\n"},
    };
    for (const auto &[name, text] : injected) {
        try {
            qccs::parse_qccs(text);
            r.require(false, std::string(name) + " violation accepted");
        } catch (const Error &e) {
            r.require(e.kind() == ErrorKind::NoCloningViolation, std::string(name) + " error kind");
            r.require(e.loc().known(), std::string(name) + " error has a location");
            r.note(std::string(name) + " rejected at " + e.loc().str());
        }
    }
    r.note(std::to_string(checked) + " generated translations well formed");
    return r;
}

// Repeated check runs print the same bytes.
Result determinism() {
    Result r;
    std::string teleport = std::string(QPROC_DATA_DIR) + "/teleport.cqp";
    const std::vector<std::vector<std::string>> commands = {
        {"check", "completeness", teleport, "--seed", "7"},
        {"check", "soundness", teleport, "--seed", "7"},
        {"check", "name-inv", teleport, "--seed", "7"},
        {"check", "qubit-inv", teleport, "--seed", "7"},
        {"check", "congruence", teleport, "--seed", "7"},
        {"check", "campaign", "--instances", "20", "--seed", "7"},
        {"counterexample", "--format", "json", "--seed", "7"},
    };
    for (const auto &args : commands) {
        std::string a = run_cli_text(args);
        std::string b = run_cli_text(args);
        r.require(!a.empty() && a == b, args[0] + " " + args[1]);
    }
    r.note(std::to_string(commands.size()) + " commands compared");
    return r;
}

}  // namespace

int main() {
    const std::pair<const char *, std::function<Result()>> criteria_list[] = {
        {"teleportation source run", teleport_source},
        {"teleportation translation", teleport_translation},
        {"signed-operator counterexample table", counterexample},
        {"measurement linkage", measurement_linkage},
        {"property campaign", campaign},
        {"correspondence simulation vs bisimulation", separation},
        {"well-formedness of translations", wellformedness},
        {"deterministic check output", determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto &[title, body] : criteria_list) {
        ++index;
        auto start = std::chrono::steady_clock::now();
        Result r;
        try {
            r = body();
        } catch (const std::exception &e) {
            r.require(false, std::string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.require(seconds < kSecondsPerCriterion, "time limit");
        std::ostringstream time;
        time.precision(2);
        time << std::fixed << seconds << " s";
        r.note(time.str());
        std::cout << "AC" << index << " " << (r.pass ? "PASS" : "FAIL") << " " << title << " (" << r.details << ")"
                  << std::endl;
        failed += r.pass ? 0 : 1;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
    return failed ? 1 : 0;
}
