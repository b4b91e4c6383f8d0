#pragma once

#include <vector>

#include "qpinn/statevector.hpp"

// Serial reference kernels: the same stride-loop algorithms as StateVector
// but with plain loops and naive left-to-right accumulation. Kept for tests
// (independent of the OpenMP path) and for the kernel benchmark.

namespace qpinn::ref {

void apply_ry(std::vector<cd>& amps, int num_qubits, int qubit, double theta);
void apply_h(std::vector<cd>& amps, int num_qubits, int qubit);
void apply_cp_all(std::vector<cd>& amps, double phi);

double expect_z(const std::vector<cd>& amps, int num_qubits, int qubit);
double expect_z_sum(const std::vector<cd>& amps, int num_qubits);
double expect_z_global(const std::vector<cd>& amps);

}  // namespace qpinn::ref
