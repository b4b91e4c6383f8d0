#include "qpinn/statevector.hpp"

#include <cmath>
#include <string>

#include "qpinn/errors.hpp"
#include "qpinn/parallel.hpp"

namespace qpinn {

StateVector::StateVector(int num_qubits, int max_qubits) : n_(num_qubits) {
    if (num_qubits < 1 || num_qubits > max_qubits) {
        throw ConfigError("num_qubits must be in [1, " + std::to_string(max_qubits) +
                          "], got " + std::to_string(num_qubits));
    }
    amps_.assign(std::size_t(1) << n_, cd(0.0, 0.0));
    amps_[0] = cd(1.0, 0.0);
}

void StateVector::set_amplitudes(std::vector<cd> amps) {
    if (amps.size() != amps_.size()) {
        throw ShapeError("amplitude vector has " + std::to_string(amps.size()) +
                         " entries, state needs " + std::to_string(amps_.size()));
    }
    amps_ = std::move(amps);
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_) {
        throw IndexError("qubit " + std::to_string(qubit) + " out of range [0, " +
                         std::to_string(n_ - 1) + "]");
    }
}

void StateVector::apply_ry(int qubit, double theta) {
    check_qubit(qubit);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const std::size_t mask = std::size_t(1) << bit_position(qubit);
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    cd* a = amps_.data();
    parallel_for(amps_.size() >> 1, [=](std::size_t g) {
        const std::size_t i0 = ((g & hi) << 1) | (g & lo);
        const std::size_t i1 = i0 | mask;
        const cd x = a[i0];
        const cd y = a[i1];
        a[i0] = c * x - s * y;
        a[i1] = s * x + c * y;
    });
}

void StateVector::apply_h(int qubit) {
    check_qubit(qubit);
    const double r = 1.0 / std::sqrt(2.0);
    const std::size_t mask = std::size_t(1) << bit_position(qubit);
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    cd* a = amps_.data();
    parallel_for(amps_.size() >> 1, [=](std::size_t g) {
        const std::size_t i0 = ((g & hi) << 1) | (g & lo);
        const std::size_t i1 = i0 | mask;
        const cd x = a[i0];
        const cd y = a[i1];
        a[i0] = r * (x + y);
        a[i1] = r * (x - y);
    });
}

void StateVector::apply_cp_all(double phi) {
    // Touches one amplitude; no loop regardless of N.
    amps_.back() *= cd(std::cos(phi), -std::sin(phi));
}

double StateVector::norm_sq() const {
    const cd* a = amps_.data();
    return block_reduce_sum(amps_.size(), [=](std::size_t i) { return std::norm(a[i]); });
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    const cd* a = amps_.data();
    parallel_for(amps_.size(), [&, a](std::size_t i) { p[i] = std::norm(a[i]); });
    return p;
}

double StateVector::expect_z(int qubit) const {
    check_qubit(qubit);
    const int pos = bit_position(qubit);
    const cd* a = amps_.data();
    return block_reduce_sum(amps_.size(), [=](std::size_t i) {
        const double pr = std::norm(a[i]);
        return ((i >> pos) & 1u) ? -pr : pr;
    });
}

double StateVector::expect_z_sum() const {
    double total = 0.0;
    for (int q = 0; q < n_; ++q) total += expect_z(q);
    return total;
}

double StateVector::expect_z_global() const {
    const cd* a = amps_.data();
    return block_reduce_sum(amps_.size(), [=](std::size_t i) {
        const double pr = std::norm(a[i]);
        return (__builtin_popcountll(static_cast<unsigned long long>(i)) & 1) ? -pr : pr;
    });
}

}  // namespace qpinn
