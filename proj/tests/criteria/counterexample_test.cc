#include <gtest/gtest.h>

#include <cmath>

#include "qproc/criteria/counterexample.h"
#include "qproc/criteria/report.h"

using namespace qproc;
using namespace qproc::criteria;

TEST(counterexample, table) {
    auto rows = counterexample_suite();
    ASSERT_EQ(rows.size(), 4u);
    const char *states[] = {"|0>", "|1>", "|+>", "|->"};
    const char *outcomes[] = {"must", "may-not-must", "cannot", "cannot"};
    for (size_t i = 0; i < rows.size(); ++i) {
        SCOPED_TRACE(states[i]);
        EXPECT_EQ(rows[i].state, states[i]);
        EXPECT_TRUE(rows[i].image_matches);
        EXPECT_EQ(rows[i].outcome, outcomes[i]);
        EXPECT_LE(rows[i].stats.states, 6u);
        EXPECT_FALSE(rows[i].stats.truncated);
    }
}

TEST(counterexample, images_computed_by_hand) {
    // Q(rho) = A rho A^dag - B rho B^dag with A = diag(1, sqrt 2), B = |0><1|.
    auto rows = counterexample_suite();
    EXPECT_NEAR(rows[1].image(0, 0).real(), -1, 1e-12);
    EXPECT_NEAR(rows[1].image(1, 1).real(), 2, 1e-12);
    EXPECT_NEAR(rows[2].image(0, 0).real(), 0.5 - 0.5, 1e-12);
    EXPECT_NEAR(rows[2].image(0, 1).real(), std::sqrt(2.0) / 2, 1e-12);
    EXPECT_NEAR(rows[3].image(1, 0).real(), -std::sqrt(2.0) / 2, 1e-12);
    EXPECT_NEAR(rows[3].image(1, 1).real(), 1, 1e-12);
}

TEST(counterexample, classify) {
    auto h = Verdict::holds();
    auto f = Verdict::fails("x");
    auto i = Verdict::inconclusive("x");
    EXPECT_EQ(classify(h, h), "must");
    EXPECT_EQ(classify(h, f), "may-not-must");
    EXPECT_EQ(classify(f, f), "cannot");
    EXPECT_EQ(classify(h, i), "inconclusive");
}

TEST(counterexample, report_is_deterministic) {
    auto a = render(counterexample_report(counterexample_suite(), 1e-9, 7));
    auto b = render(counterexample_report(counterexample_suite(), 1e-9, 7));
    EXPECT_EQ(a, b);
    auto j = nlohmann::json::parse(a);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["verdict"], "holds");
    EXPECT_EQ(j["rows"].size(), 4u);
}
