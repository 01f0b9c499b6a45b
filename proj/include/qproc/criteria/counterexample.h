#pragma once

#include <string>
#include <vector>

#include "qproc/criteria/checks.h"

namespace qproc::criteria {

struct CounterexampleRow {
    std::string state;
    quantum::Matrix rho;
    /// Q applied to rho, and the value it should have.
    quantum::Matrix image;
    quantum::Matrix expected_image;
    bool image_matches = false;
    Verdict may;
    Verdict must;
    /// "must", "may-not-must", "cannot" or "inconclusive".
    std::string outcome;
    std::string expected_outcome;
    Stats stats;

    bool matches() const {
        return image_matches && outcome == expected_outcome;
    }
};

std::string classify(const Verdict &may, const Verdict &must);

/// The system Q[q].(outcome guards) over |0>, |1>, |+> and |->: the image of each state under Q
/// and whether success may or must be reached. The guards see a trace that Q has pushed outside
/// [0, 1], which no source measurement can reproduce.
std::vector<CounterexampleRow> counterexample_suite(const Budget &budget = {},
                                                    double tolerance = quantum::kDefaultTolerance);

}  // namespace qproc::criteria
