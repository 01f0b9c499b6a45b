#include "qproc/quantum/state.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "qproc/error.h"

namespace qproc::quantum {

namespace {

void check_names(const std::vector<std::string> &names) {
    std::set<std::string> seen;
    for (const auto &name : names) {
        if (name.empty()) {
            throw Error(ErrorKind::InvalidRegister, "empty qubit name");
        }
        if (!seen.insert(name).second) {
            throw Error(ErrorKind::InvalidRegister, "duplicate qubit name '" + name + "'");
        }
    }
}

uint64_t dim_for(size_t n) {
    if (n >= 30) {
        throw Error(ErrorKind::InvalidRegister, "register of " + std::to_string(n) + " qubits is too large");
    }
    return uint64_t{1} << n;
}

bool all_finite(const Complex *data, Eigen::Index size) {
    for (Eigen::Index k = 0; k < size; ++k) {
        if (!std::isfinite(data[k].real()) || !std::isfinite(data[k].imag())) {
            return false;
        }
    }
    return true;
}

/// Index map for a reordering: result[new_index] = old_index.
std::vector<uint64_t> reorder_map(const std::vector<std::string> &from, const std::vector<std::string> &to) {
    size_t n = from.size();
    if (to.size() != n) {
        throw Error(ErrorKind::InvalidPermutation, "reordering must list every qubit exactly once");
    }
    std::vector<size_t> source_pos(n);
    std::set<std::string> seen;
    for (size_t j = 0; j < n; ++j) {
        auto it = std::find(from.begin(), from.end(), to[j]);
        if (it == from.end() || !seen.insert(to[j]).second) {
            throw Error(ErrorKind::InvalidPermutation, "reordering must list every qubit exactly once");
        }
        source_pos[j] = static_cast<size_t>(it - from.begin());
    }
    uint64_t dim = dim_for(n);
    std::vector<uint64_t> map(dim);
    for (uint64_t idx = 0; idx < dim; ++idx) {
        uint64_t old = 0;
        for (size_t j = 0; j < n; ++j) {
            if (idx & position_bit(n, j)) {
                old |= position_bit(n, source_pos[j]);
            }
        }
        map[idx] = old;
    }
    return map;
}

std::vector<std::string> rename_all(const std::vector<std::string> &names, const std::map<std::string, std::string> &gamma) {
    std::vector<std::string> out;
    out.reserve(names.size());
    for (const auto &name : names) {
        auto it = gamma.find(name);
        out.push_back(it == gamma.end() ? name : it->second);
    }
    return out;
}

void append_number(std::string &out, double v) {
    long long q = std::llround(v * 1e9);
    out += std::to_string(q);
}

}  // namespace

StateVector::StateVector() : amps_(Vector::Ones(1)) {
}

StateVector::StateVector(std::vector<std::string> names, Vector amps, double tol)
    : names_(std::move(names)), amps_(std::move(amps)) {
    check_names(names_);
    if (static_cast<uint64_t>(amps_.size()) != dim_for(names_.size())) {
        throw Error(
            ErrorKind::InvalidState,
            "state of " + std::to_string(names_.size()) + " qubits needs " + std::to_string(dim_for(names_.size())) +
                " amplitudes, got " + std::to_string(amps_.size()));
    }
    if (!all_finite(amps_.data(), amps_.size())) {
        throw Error(ErrorKind::InvalidState, "non-finite amplitude");
    }
    double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol) {
        throw Error(ErrorKind::InvalidState, "amplitudes are not normalized (squared norm " + std::to_string(norm2) + ")");
    }
}

StateVector StateVector::zero_branch(std::vector<std::string> names, Vector amps) {
    check_names(names);
    if (static_cast<uint64_t>(amps.size()) != dim_for(names.size())) {
        throw Error(ErrorKind::InvalidState, "amplitude count does not match register size");
    }
    StateVector out;
    out.names_ = std::move(names);
    out.amps_ = std::move(amps);
    out.zero_branch_ = true;
    return out;
}

StateVector StateVector::basis(std::vector<std::string> names, uint64_t index) {
    uint64_t dim = dim_for(names.size());
    if (index >= dim) {
        throw Error(ErrorKind::InvalidOutcome, "basis index out of range");
    }
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(names), std::move(amps));
}

int StateVector::position_of(const std::string &name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

StateVector StateVector::reordered(const std::vector<std::string> &order) const {
    auto map = reorder_map(names_, order);
    Vector out(amps_.size());
    for (size_t idx = 0; idx < map.size(); ++idx) {
        out[static_cast<Eigen::Index>(idx)] = amps_[static_cast<Eigen::Index>(map[idx])];
    }
    StateVector result = *this;
    result.names_ = order;
    result.amps_ = std::move(out);
    return result;
}

StateVector StateVector::renamed(const std::map<std::string, std::string> &gamma) const {
    StateVector result = *this;
    result.names_ = rename_all(names_, gamma);
    check_names(result.names_);
    return result;
}

DensityMatrix::DensityMatrix() : entries_(Matrix::Ones(1, 1)) {
}

DensityMatrix::DensityMatrix(std::vector<std::string> names, Matrix entries)
    : names_(std::move(names)), entries_(std::move(entries)) {
    check_names(names_);
    uint64_t dim = dim_for(names_.size());
    if (static_cast<uint64_t>(entries_.rows()) != dim || static_cast<uint64_t>(entries_.cols()) != dim) {
        throw Error(
            ErrorKind::InvalidState, "density matrix for " + std::to_string(names_.size()) + " qubits must be " +
                                         std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (!all_finite(entries_.data(), entries_.size())) {
        throw Error(ErrorKind::InvalidState, "non-finite density matrix entry");
    }
}

int DensityMatrix::position_of(const std::string &name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

DensityMatrix DensityMatrix::reordered(const std::vector<std::string> &order) const {
    auto map = reorder_map(names_, order);
    Matrix out(entries_.rows(), entries_.cols());
    auto dim = static_cast<Eigen::Index>(map.size());
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            out(i, j) = entries_(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j]));
        }
    }
    return DensityMatrix(order, std::move(out));
}

DensityMatrix DensityMatrix::renamed(const std::map<std::string, std::string> &gamma) const {
    return DensityMatrix(rename_all(names_, gamma), entries_);
}

DensityMatrix DensityMatrix::canonical() const {
    auto order = names_;
    std::sort(order.begin(), order.end());
    if (order == names_) {
        return *this;
    }
    return reordered(order);
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<std::string> names = a.names();
    for (const auto &name : b.names()) {
        if (a.position_of(name) >= 0) {
            throw Error(ErrorKind::InvalidRegister, "qubit '" + name + "' occurs on both sides of a tensor product");
        }
        names.push_back(name);
    }
    const Vector &x = a.amplitudes();
    const Vector &y = b.amplitudes();
    Vector out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        for (Eigen::Index j = 0; j < y.size(); ++j) {
            out[i * y.size() + j] = x[i] * y[j];
        }
    }
    return StateVector(std::move(names), std::move(out));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    std::vector<std::string> names = a.names();
    for (const auto &name : b.names()) {
        if (a.position_of(name) >= 0) {
            throw Error(ErrorKind::InvalidRegister, "qubit '" + name + "' occurs on both sides of a tensor product");
        }
        names.push_back(name);
    }
    const Matrix &x = a.entries();
    const Matrix &y = b.entries();
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return DensityMatrix(std::move(names), std::move(out));
}

DensityMatrix outer(const StateVector &psi) {
    const Vector &v = psi.amplitudes();
    return DensityMatrix(psi.names(), v * v.adjoint());
}

std::vector<MeasurementOutcome> measure_prefix(const StateVector &psi, size_t r, double tol) {
    size_t n = psi.num_qubits();
    if (r > n) {
        throw Error(
            ErrorKind::InvalidArity,
            "cannot measure " + std::to_string(r) + " qubits of a " + std::to_string(n) + "-qubit register");
    }
    uint64_t block = uint64_t{1} << (n - r);
    uint64_t outcomes = uint64_t{1} << r;
    std::vector<MeasurementOutcome> out;
    out.reserve(outcomes);
    const Vector &amps = psi.amplitudes();
    for (uint64_t m = 0; m < outcomes; ++m) {
        auto lo = static_cast<Eigen::Index>(block * m);
        auto len = static_cast<Eigen::Index>(block);
        double p = amps.segment(lo, len).squaredNorm();
        Vector post = Vector::Zero(amps.size());
        post.segment(lo, len) = amps.segment(lo, len);
        if (p > tol) {
            post /= std::sqrt(p);
            out.push_back({m, p, StateVector(psi.names(), std::move(post), std::max(tol, 1e-9) * 100)});
        } else {
            out.push_back({m, p, StateVector::zero_branch(psi.names(), std::move(post))});
        }
    }
    return out;
}

std::vector<size_t> positions_of(const std::vector<std::string> &register_names, const std::vector<std::string> &targets) {
    std::vector<size_t> positions;
    std::set<std::string> seen;
    for (const auto &t : targets) {
        auto it = std::find(register_names.begin(), register_names.end(), t);
        if (it == register_names.end()) {
            throw Error(ErrorKind::UnknownQubit, "qubit '" + t + "' is not in the register");
        }
        if (!seen.insert(t).second) {
            throw Error(ErrorKind::InvalidArity, "qubit '" + t + "' is targeted twice");
        }
        positions.push_back(static_cast<size_t>(it - register_names.begin()));
    }
    return positions;
}

namespace {

struct TargetLayout {
    std::vector<uint64_t> deposit;  // operator index -> register index bits
    std::vector<uint64_t> bases;    // register indices with all target bits clear
};

TargetLayout layout_for(const std::vector<size_t> &positions, size_t n) {
    size_t k = positions.size();
    TargetLayout layout;
    uint64_t op_dim = uint64_t{1} << k;
    uint64_t mask = 0;
    layout.deposit.resize(op_dim);
    for (uint64_t s = 0; s < op_dim; ++s) {
        uint64_t bits = 0;
        for (size_t j = 0; j < k; ++j) {
            if ((s >> (k - 1 - j)) & 1) {
                bits |= position_bit(n, positions[j]);
            }
        }
        layout.deposit[s] = bits;
    }
    for (size_t p : positions) {
        mask |= position_bit(n, p);
    }
    uint64_t dim = uint64_t{1} << n;
    for (uint64_t idx = 0; idx < dim; ++idx) {
        if ((idx & mask) == 0) {
            layout.bases.push_back(idx);
        }
    }
    return layout;
}

void check_operator(const Matrix &op, const std::vector<size_t> &positions, size_t n) {
    uint64_t op_dim = uint64_t{1} << positions.size();
    if (static_cast<uint64_t>(op.rows()) != op_dim || static_cast<uint64_t>(op.cols()) != op_dim) {
        throw Error(ErrorKind::InvalidArity, "operator dimension does not match the number of targets");
    }
    for (size_t p : positions) {
        if (p >= n) {
            throw Error(ErrorKind::InvalidArity, "target position out of range");
        }
    }
}

}  // namespace

Vector apply_on_positions(const Matrix &op, const std::vector<size_t> &positions, size_t n, const Vector &v) {
    check_operator(op, positions, n);
    TargetLayout layout = layout_for(positions, n);
    Vector out = Vector::Zero(v.size());
    auto op_dim = static_cast<Eigen::Index>(layout.deposit.size());
    Vector gathered(op_dim);
    for (uint64_t base : layout.bases) {
        for (Eigen::Index s = 0; s < op_dim; ++s) {
            gathered[s] = v[static_cast<Eigen::Index>(base | layout.deposit[s])];
        }
        Vector mixed = op * gathered;
        for (Eigen::Index t = 0; t < op_dim; ++t) {
            out[static_cast<Eigen::Index>(base | layout.deposit[t])] = mixed[t];
        }
    }
    return out;
}

Matrix apply_left_on_positions(const Matrix &op, const std::vector<size_t> &positions, size_t n, const Matrix &m) {
    check_operator(op, positions, n);
    TargetLayout layout = layout_for(positions, n);
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    auto op_dim = static_cast<Eigen::Index>(layout.deposit.size());
    Matrix gathered(op_dim, m.cols());
    for (uint64_t base : layout.bases) {
        for (Eigen::Index s = 0; s < op_dim; ++s) {
            gathered.row(s) = m.row(static_cast<Eigen::Index>(base | layout.deposit[s]));
        }
        Matrix mixed = op * gathered;
        for (Eigen::Index t = 0; t < op_dim; ++t) {
            out.row(static_cast<Eigen::Index>(base | layout.deposit[t])) = mixed.row(t);
        }
    }
    return out;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::ShapeMismatch, "matrices have different shapes");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Vector &a, const Vector &b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::ShapeMismatch, "vectors have different lengths");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

bool approx_eq(const StateVector &a, const StateVector &b, double tol) {
    double diff = max_abs_diff(a.amplitudes(), b.amplitudes());
    return a.names() == b.names() && diff <= tol;
}

bool approx_eq(const DensityMatrix &a, const DensityMatrix &b, double tol) {
    double diff = max_abs_diff(a.entries(), b.entries());
    return a.names() == b.names() && diff <= tol;
}

bool approx_eq_unordered(const DensityMatrix &a, const DensityMatrix &b, double tol) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    auto x = a.canonical();
    auto y = b.canonical();
    if (x.names() != y.names()) {
        return false;
    }
    return max_abs_diff(x.entries(), y.entries()) <= tol;
}

void append_rounded(std::string &out, const Vector &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        append_number(out, v[i].real());
        out += ',';
        append_number(out, v[i].imag());
        out += ';';
    }
}

void append_rounded(std::string &out, const Matrix &m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            append_number(out, m(i, j).real());
            out += ',';
            append_number(out, m(i, j).imag());
            out += ';';
        }
        out += '/';
    }
}

std::string fresh_qubit_name(const std::vector<std::string> &register_names) {
    std::set<std::string> taken(register_names.begin(), register_names.end());
    size_t n = register_names.size();
    while (taken.count("q" + std::to_string(n))) {
        ++n;
    }
    return "q" + std::to_string(n);
}

}  // namespace qproc::quantum
