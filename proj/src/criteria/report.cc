#include "qproc/criteria/report.h"

namespace qproc::criteria {

nlohmann::json trace_json(const std::vector<TraceStep> &trace) {
    auto out = nlohmann::json::array();
    for (const auto &s : trace) {
        out.push_back({{"choice", s.choice}, {"options", s.options}, {"step", s.description}});
    }
    return out;
}

nlohmann::json stats_json(const Stats &stats) {
    return {{"states", stats.states}, {"edges", stats.edges}, {"depth", stats.depth}, {"truncated", stats.truncated}};
}

nlohmann::json matrix_json(const quantum::Matrix &m) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

nlohmann::json header(const std::string &check, double tolerance, uint64_t seed) {
    return {{"schema", kReportSchema}, {"check", check}, {"tolerance", tolerance}, {"seed", seed}};
}

void add_verdict(nlohmann::json &j, const Verdict &v) {
    j["verdict"] = verdict_name(v.kind);
    j["reason"] = v.reason;
    if (v.is(VerdictKind::Fails) || !v.witness.empty()) {
        j["witness_trace"] = trace_json(v.witness);
        j["script"] = script_of(v.witness);
    }
}

}  // namespace

nlohmann::json check_report(const std::string &check, const CheckResult &result, double tolerance, uint64_t seed) {
    auto j = header(check, tolerance, seed);
    add_verdict(j, result.verdict);
    j["stats"] = stats_json(result.stats);
    if (check == "completeness") {
        j["longest_emulation"] = result.longest_emulation;
    }
    return j;
}

nlohmann::json counterexample_report(const std::vector<CounterexampleRow> &rows, double tolerance, uint64_t seed) {
    auto j = header("counterexample", tolerance, seed);
    auto table = nlohmann::json::array();
    bool all = true;
    Stats total;
    for (const auto &r : rows) {
        table.push_back({{"state", r.state},
                         {"image", matrix_json(r.image)},
                         {"image_matches", r.image_matches},
                         {"may", verdict_name(r.may.kind)},
                         {"must", verdict_name(r.must.kind)},
                         {"outcome", r.outcome},
                         {"expected", r.expected_outcome}});
        all = all && r.matches();
        total = combine(total, r.stats);
    }
    j["rows"] = std::move(table);
    j["verdict"] = all ? "holds" : "fails";
    j["reason"] = all ? "every row matches" : "some row differs from the expected table";
    j["stats"] = stats_json(total);
    return j;
}

nlohmann::json campaign_report(const CampaignResult &result, const CampaignOptions &options) {
    auto j = header("campaign", options.check.tolerance, options.seed);
    auto checks = nlohmann::json::object();
    for (const auto &[name, t] : result.tallies) {
        checks[name] = {{"holds", t.holds}, {"fails", t.fails}, {"inconclusive", t.inconclusive}};
    }
    j["instances"] = result.instances;
    j["checks"] = std::move(checks);
    j["failures"] = result.failures;
    j["longest_emulation"] = result.longest_emulation;
    bool ok = result.total_fails() == 0;
    j["verdict"] = !ok ? "fails" : result.total_inconclusive() ? "inconclusive" : "holds";
    j["reason"] = "corroborated on " + std::to_string(result.instances) + " instances";
    return j;
}

std::string render(const nlohmann::json &j) {
    return j.dump(2) + "\n";
}

}  // namespace qproc::criteria
