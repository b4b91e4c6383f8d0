#include "qpinn/reference.hpp"

#include <cmath>

namespace qpinn::ref {

void apply_ry(std::vector<cd>& amps, int num_qubits, int qubit, double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const std::size_t mask = std::size_t(1) << (num_qubits - 1 - qubit);
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    for (std::size_t g = 0; g < amps.size() >> 1; ++g) {
        const std::size_t i0 = ((g & hi) << 1) | (g & lo);
        const std::size_t i1 = i0 | mask;
        const cd x = amps[i0];
        const cd y = amps[i1];
        amps[i0] = c * x - s * y;
        amps[i1] = s * x + c * y;
    }
}

void apply_h(std::vector<cd>& amps, int num_qubits, int qubit) {
    const double r = 1.0 / std::sqrt(2.0);
    const std::size_t mask = std::size_t(1) << (num_qubits - 1 - qubit);
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    for (std::size_t g = 0; g < amps.size() >> 1; ++g) {
        const std::size_t i0 = ((g & hi) << 1) | (g & lo);
        const std::size_t i1 = i0 | mask;
        const cd x = amps[i0];
        const cd y = amps[i1];
        amps[i0] = r * (x + y);
        amps[i1] = r * (x - y);
    }
}

void apply_cp_all(std::vector<cd>& amps, double phi) {
    amps.back() *= cd(std::cos(phi), -std::sin(phi));
}

double expect_z(const std::vector<cd>& amps, int num_qubits, int qubit) {
    const int pos = num_qubits - 1 - qubit;
    double sum = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double pr = std::norm(amps[i]);
        sum += ((i >> pos) & 1u) ? -pr : pr;
    }
    return sum;
}

double expect_z_sum(const std::vector<cd>& amps, int num_qubits) {
    double total = 0.0;
    for (int q = 0; q < num_qubits; ++q) total += expect_z(amps, num_qubits, q);
    return total;
}

double expect_z_global(const std::vector<cd>& amps) {
    double sum = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double pr = std::norm(amps[i]);
        sum += (__builtin_popcountll(static_cast<unsigned long long>(i)) & 1) ? -pr : pr;
    }
    return sum;
}

}  // namespace qpinn::ref
