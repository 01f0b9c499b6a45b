#pragma once

#include <string>
#include <vector>

#include "qproc/cqp/term.h"
#include "qproc/quantum/state.h"

namespace qproc::cqp {

struct DistCase {
    double probability;
    quantum::StateVector state;
};

/// (sigma; phi; P), or a distribution over cases (sigma_i; phi; P{i/x}). The distribution keeps
/// P once with x unsubstituted, so its cases differ only in the instantiated integer.
class Config {
   public:
    Config() = default;

    static Config pure(quantum::StateVector state, std::vector<std::string> channels, TermPtr term);
    static Config dist(std::vector<std::string> channels, TermPtr term, std::string measured_var,
                       size_t measured_count, std::vector<DistCase> cases);

    bool is_dist() const {
        return dist_;
    }
    const std::vector<std::string> &channels() const {
        return channels_;
    }
    /// For a distribution: the shared term with the measured variable free.
    const TermPtr &term() const {
        return term_;
    }
    /// The register of a pure configuration, or of case 0 of a distribution.
    const quantum::StateVector &state() const;
    const std::string &measured_var() const {
        return measured_var_;
    }
    size_t measured_count() const {
        return measured_count_;
    }
    const std::vector<DistCase> &cases() const {
        return cases_;
    }
    TermPtr case_term(size_t index) const;
    /// Case `index` as a pure configuration.
    Config resolve(size_t index) const;

    size_t register_size() const {
        return state().num_qubits();
    }

   private:
    bool dist_ = false;
    std::vector<std::string> channels_;
    TermPtr term_ = nil();
    quantum::StateVector state_;
    std::string measured_var_;
    size_t measured_count_ = 0;
    std::vector<DistCase> cases_;
};

}  // namespace qproc::cqp
