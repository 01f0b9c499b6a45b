#include "qproc/cqp/config.h"

#include <cmath>

namespace qproc::cqp {

Config Config::pure(quantum::StateVector state, std::vector<std::string> channels, TermPtr term) {
    Config c;
    c.state_ = std::move(state);
    c.channels_ = std::move(channels);
    c.term_ = std::move(term);
    return c;
}

Config Config::dist(std::vector<std::string> channels, TermPtr term, std::string measured_var, size_t measured_count,
                    std::vector<DistCase> cases) {
    if (cases.size() != (size_t{1} << measured_count)) {
        throw Error(ErrorKind::InvalidState, "a distribution over " + std::to_string(measured_count) +
                                                 " measured qubits needs " +
                                                 std::to_string(size_t{1} << measured_count) + " cases");
    }
    double total = 0;
    for (const auto &c : cases) {
        total += c.probability;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw Error(ErrorKind::InvalidState, "case probabilities sum to " + std::to_string(total));
    }
    Config c;
    c.dist_ = true;
    c.channels_ = std::move(channels);
    c.term_ = std::move(term);
    c.measured_var_ = std::move(measured_var);
    c.measured_count_ = measured_count;
    c.cases_ = std::move(cases);
    c.state_ = c.cases_.front().state;
    return c;
}

const quantum::StateVector &Config::state() const {
    return state_;
}

TermPtr Config::case_term(size_t index) const {
    if (!dist_) {
        return term_;
    }
    return subst_channel(term_, measured_var_, std::to_string(index));
}

Config Config::resolve(size_t index) const {
    if (!dist_) {
        return *this;
    }
    return pure(cases_.at(index).state, channels_, case_term(index));
}

}  // namespace qproc::cqp
