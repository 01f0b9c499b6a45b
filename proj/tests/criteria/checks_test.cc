#include <gtest/gtest.h>

#include "qproc/cqp/parser.h"
#include "qproc/criteria/checks.h"
#include "qproc/criteria/report.h"
#include "support/data.h"

using namespace qproc;
using namespace qproc::criteria;

namespace {

cqp::Config teleport() {
    return cqp::parse_cqp(read_data("teleport.cqp"));
}

}  // namespace

TEST(checks, teleport) {
    auto s = teleport();
    auto comp = check_completeness(s);
    EXPECT_TRUE(comp.verdict.is(VerdictKind::Holds)) << comp.verdict.reason;
    EXPECT_LE(comp.longest_emulation, 1u);
    EXPECT_TRUE(check_soundness(s).verdict.is(VerdictKind::Holds));
    EXPECT_TRUE(check_register_size(s).verdict.is(VerdictKind::Holds));
    EXPECT_TRUE(check_divergence_reflection(s).verdict.is(VerdictKind::Holds));
    EXPECT_TRUE(check_success_sensitiveness(s).verdict.is(VerdictKind::Holds));
    EXPECT_TRUE(check_congruence_preservation(s, 3).verdict.is(VerdictKind::Holds));
}

TEST(checks, measurement_file) {
    auto s = cqp::parse_cqp(read_data("measurement.cqp"));
    EXPECT_TRUE(check_completeness(s).verdict.is(VerdictKind::Holds));
    EXPECT_TRUE(check_soundness(s).verdict.is(VerdictKind::Holds));
    EXPECT_TRUE(check_success_sensitiveness(s).verdict.is(VerdictKind::Holds));
}

TEST(checks, name_invariance) {
    auto s = cqp::parse_cqp("qubits q; state |0>; channels c, d; process c![q].0 | c?[y].d![y].ok");
    auto r = check_name_invariance(s, {{"c", "e"}, {"d", "c"}});
    EXPECT_TRUE(r.verdict.is(VerdictKind::Holds)) << r.verdict.reason;
    auto gamma = random_channel_renaming(s, 5);
    EXPECT_FALSE(gamma.empty());
    EXPECT_TRUE(check_name_invariance(s, gamma).verdict.is(VerdictKind::Holds));
    EXPECT_TRUE(check_name_invariance(s, {{"c", "d"}}).verdict.is(VerdictKind::Inconclusive));
    EXPECT_TRUE(check_name_invariance(s, {{"c", "0"}}).verdict.is(VerdictKind::Inconclusive));
}

TEST(checks, qubit_invariance) {
    auto s = teleport();
    EXPECT_TRUE(check_qubit_invariance(s, {{"q0", "q1"}, {"q1", "q0"}}).verdict.is(VerdictKind::Holds));
    EXPECT_TRUE(check_qubit_invariance(s, {{"q2", "r"}}).verdict.is(VerdictKind::Holds));
    try {
        check_qubit_invariance(s, {{"q0", "q1"}});
        ADD_FAILURE() << "identifying two qubits should throw";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoCloningViolation);
    }
}

TEST(checks, budget_makes_checks_inconclusive) {
    CheckOptions o;
    o.budget = {2, 1000};
    EXPECT_TRUE(check_success_sensitiveness(teleport(), o).verdict.is(VerdictKind::Inconclusive));
}

TEST(checks, small_campaign) {
    CampaignOptions o;
    o.instances = 40;
    auto r = run_campaign(o);
    EXPECT_EQ(r.instances, 40u);
    EXPECT_EQ(r.total_fails(), 0u);
    EXPECT_EQ(r.tallies.size(), 8u);
    EXPECT_EQ(r.total_runs(), 40u * 8u);
    EXPECT_EQ(render(campaign_report(r, o)), render(campaign_report(run_campaign(o), o)));
}

TEST(checks, report_fields) {
    auto j = check_report("soundness", check_soundness(teleport()), 1e-9, 0);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["check"], "soundness");
    EXPECT_EQ(j["verdict"], "holds");
    EXPECT_TRUE(j["stats"].contains("states"));
    EXPECT_FALSE(j.contains("witness_trace"));
}
