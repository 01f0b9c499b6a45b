#include "qproc/criteria/generator.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "qproc/cqp/term.h"

namespace qproc::criteria {

namespace {

class Generator {
   public:
    Generator(uint64_t seed, size_t max_qubits, size_t max_depth)
        : rng_(seed), max_qubits_(max_qubits), max_depth_(max_depth) {}

    cqp::Config run() {
        size_t n = 1 + below(max_qubits_);
        allocated_ = n;
        std::vector<std::string> names;
        for (size_t k = 0; k < n; ++k) {
            names.push_back("q" + std::to_string(k));
        }
        std::vector<std::string> channels = {"c0", "c1"};
        // One level is kept for the listener added below.
        auto term = process(names, channels, max_depth_ - 1);
        // Listeners for measurement outcomes used as channel names.
        if (sends_on_outcome_ && chance(0.7)) {
            term = cqp::par(term, cqp::input("0", fresh("y"), cqp::success()));
        }
        return cqp::Config::pure(quantum::StateVector(names, state(n)), channels, term);
    }

   private:
    // Portable draws: only the raw engine output is used.
    size_t below(size_t n) {
        return static_cast<size_t>(rng_() % n);
    }
    double uniform() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }
    bool chance(double p) {
        return uniform() < p;
    }

    std::string fresh(const std::string &stem) {
        return stem + std::to_string(counter_++);
    }

    quantum::Vector state(size_t n) {
        size_t dim = size_t{1} << n;
        quantum::Vector v = quantum::Vector::Zero(static_cast<Eigen::Index>(dim));
        switch (below(3)) {
            case 0:
                v[static_cast<Eigen::Index>(below(dim))] = 1;
                break;
            case 1: {
                // Equal superposition of two basis states, possibly with a relative phase.
                size_t a = below(dim), b = below(dim);
                if (a == b) {
                    v[static_cast<Eigen::Index>(a)] = 1;
                    break;
                }
                static const quantum::Complex phases[] = {1.0, -1.0, {0, 1}, {0, -1}};
                v[static_cast<Eigen::Index>(a)] = 1 / std::sqrt(2.0);
                v[static_cast<Eigen::Index>(b)] = phases[below(4)] / std::sqrt(2.0);
                break;
            }
            default: {
                double norm = 0;
                for (size_t k = 0; k < dim; ++k) {
                    v[static_cast<Eigen::Index>(k)] = {uniform() - 0.5, uniform() - 0.5};
                    norm += std::norm(v[static_cast<Eigen::Index>(k)]);
                }
                v /= std::sqrt(norm);
                break;
            }
        }
        return v;
    }

    std::vector<std::string> pick_distinct(const std::vector<std::string> &from, size_t k) {
        std::vector<std::string> pool = from;
        std::vector<std::string> out;
        for (size_t j = 0; j < k; ++j) {
            size_t at = below(pool.size());
            out.push_back(pool[at]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
        }
        return out;
    }

    static std::vector<std::string> without(std::vector<std::string> v, const std::string &q) {
        v.erase(std::remove(v.begin(), v.end(), q), v.end());
        return v;
    }

    // `owned`: qubits this subterm may use; `channels`: names usable as channels.
    cqp::TermPtr process(const std::vector<std::string> &owned, const std::vector<std::string> &channels,
                         size_t depth) {
        if (depth <= 1 || chance(0.12)) {
            return chance(0.5) ? cqp::success() : cqp::nil();
        }
        switch (below(8)) {
            case 0:
            case 1:
                if (!owned.empty()) {
                    return gate(owned, channels, depth);
                }
                break;
            case 2:
                if (!owned.empty()) {
                    return measurement(owned, channels, depth);
                }
                break;
            case 3: {
                std::string c = fresh("k");
                auto body_channels = channels;
                body_channels.push_back(c);
                if (depth >= 4 && !owned.empty() && chance(0.6)) {
                    return cqp::new_chan(c, exchange(c, owned, body_channels, depth - 1));
                }
                return cqp::new_chan(c, process(owned, body_channels, depth - 1));
            }
            case 4:
                if (allocated_ < max_qubits_) {
                    ++allocated_;
                    std::string x = fresh("b");
                    auto more = owned;
                    more.push_back(x);
                    return cqp::new_qbit(x, process(more, channels, depth - 1));
                }
                break;
            case 5:
                if (!owned.empty()) {
                    std::string q = owned[below(owned.size())];
                    return cqp::output(channels[below(channels.size())], q,
                                       process(without(owned, q), channels, depth - 1));
                }
                break;
            case 6: {
                std::string y = fresh("y");
                auto more = owned;
                more.push_back(y);
                return cqp::input(channels[below(channels.size())], y, process(more, channels, depth - 1));
            }
            default:
                return parallel(owned, channels, depth);
        }
        return parallel(owned, channels, depth);
    }

    cqp::TermPtr gate(const std::vector<std::string> &owned, const std::vector<std::string> &channels, size_t depth) {
        static const char *one[] = {"X", "Y", "Z", "H", "S", "T"};
        static const char *two[] = {"CNOT", "CZ", "SWAP"};
        if (owned.size() >= 2 && chance(0.4)) {
            return cqp::trans(pick_distinct(owned, 2), two[below(3)], process(owned, channels, depth - 1));
        }
        return cqp::trans(pick_distinct(owned, 1), one[below(6)], process(owned, channels, depth - 1));
    }

    cqp::TermPtr measurement(const std::vector<std::string> &owned, const std::vector<std::string> &channels,
                             size_t depth) {
        size_t r = owned.size() >= 2 && chance(0.3) ? 2 : 1;
        auto qubits = pick_distinct(owned, r);
        std::string x = fresh("x");
        if (depth >= 3 && chance(0.5)) {
            // Send a qubit on the channel named by the outcome.
            sends_on_outcome_ = true;
            std::string q = owned[below(owned.size())];
            return cqp::measure(qubits, x, cqp::output(x, q, process(without(owned, q), channels, depth - 2)));
        }
        return cqp::measure(qubits, x, process(owned, channels, depth - 1));
    }

    // A sender and a receiver on the channel `c`.
    cqp::TermPtr exchange(const std::string &c, const std::vector<std::string> &owned,
                          const std::vector<std::string> &channels, size_t depth) {
        std::string q = owned[below(owned.size())];
        auto rest = without(owned, q);
        std::vector<std::string> left, right;
        for (const auto &p : rest) {
            (chance(0.5) ? left : right).push_back(p);
        }
        std::string y = fresh("y");
        right.push_back(y);
        auto sender = cqp::output(c, q, process(left, channels, depth - 2));
        auto receiver = cqp::input(c, y, process(right, channels, depth - 2));
        return chance(0.5) ? cqp::par(sender, receiver) : cqp::par(receiver, sender);
    }

    cqp::TermPtr parallel(const std::vector<std::string> &owned, const std::vector<std::string> &channels,
                          size_t depth) {
        std::vector<std::string> left, right;
        for (const auto &q : owned) {
            (chance(0.5) ? left : right).push_back(q);
        }
        return cqp::par(process(left, channels, depth - 1), process(right, channels, depth - 1));
    }

    std::mt19937_64 rng_;
    size_t max_qubits_;
    size_t max_depth_;
    size_t allocated_ = 0;
    size_t counter_ = 0;
    bool sends_on_outcome_ = false;
};

}  // namespace

cqp::Config gen_config(uint64_t seed, size_t max_qubits, size_t max_depth) {
    return Generator(seed, std::max<size_t>(max_qubits, 1), std::max<size_t>(max_depth, 2)).run();
}

}  // namespace qproc::criteria
