#include "qproc/criteria/counterexample.h"

#include <cmath>

#include "qproc/criteria/systems.h"

namespace qproc::criteria {

std::string classify(const Verdict &may, const Verdict &must) {
    if (may.is(VerdictKind::Inconclusive) || must.is(VerdictKind::Inconclusive)) {
        return "inconclusive";
    }
    if (must.is(VerdictKind::Holds)) {
        return "must";
    }
    return may.is(VerdictKind::Holds) ? "may-not-must" : "cannot";
}

std::vector<CounterexampleRow> counterexample_suite(const Budget &budget, double tolerance) {
    const double h = std::sqrt(2.0) / 2;
    struct Case {
        const char *name;
        quantum::Vector ket;
        quantum::Matrix image;
        const char *outcome;
    };
    auto ket = [](double a, double b) {
        quantum::Vector v(2);
        v << a, b;
        return v;
    };
    auto matrix = [](double a, double b, double c, double d) {
        quantum::Matrix m(2, 2);
        m << a, b, c, d;
        return m;
    };
    const Case cases[] = {
        {"|0>", ket(1, 0), matrix(1, 0, 0, 0), "must"},
        {"|1>", ket(0, 1), matrix(-1, 0, 0, 2), "may-not-must"},
        {"|+>", ket(h, h), matrix(0, h, h, 1), "cannot"},
        {"|->", ket(h, -h), matrix(0, -h, -h, 1), "cannot"},
    };
    auto defs = counterexample_defs();
    qccs::StepOptions steps;
    steps.tolerance = tolerance;
    std::vector<CounterexampleRow> rows;
    for (const auto &c : cases) {
        CounterexampleRow row;
        row.state = c.name;
        quantum::DensityMatrix rho = quantum::outer(quantum::StateVector({"q"}, c.ket));
        row.rho = rho.entries();
        row.image = quantum::superop_apply_raw(defs.ops.at("Q"), {"q"}, rho).entries();
        row.expected_image = c.image;
        row.image_matches = quantum::max_abs_diff(row.image, row.expected_image) <= tolerance;
        auto lts = build_lts(counterexample_system(rho), defs, budget, QccsSteps::Reductions, steps);
        row.may = may_reach_success(lts.lts);
        row.must = must_reach_success(lts.lts);
        row.outcome = classify(row.may, row.must);
        row.expected_outcome = c.outcome;
        row.stats = stats_of(lts.lts);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qproc::criteria
