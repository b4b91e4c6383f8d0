#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qpinn {

using cd = std::complex<double>;

// Desk-scale cap on simulated qubits (2^20 amplitudes). Raise here if a
// larger study is ever needed; every entry point names this cap in its error.
inline constexpr int kMaxQubits = 20;

// Dense statevector over N qubits. Indexing convention, fixed project-wide:
// qubit 0 is the MOST significant bit of the amplitude index, i.e. basis
// state |b_0 b_1 ... b_{N-1}> lives at index (b_0 << (N-1)) | ... | b_{N-1}.
// Tests pin this convention; all kernels are O(2^N) stride loops.
class StateVector {
public:
    explicit StateVector(int num_qubits, int max_qubits = kMaxQubits);

    int num_qubits() const { return n_; }
    std::size_t size() const { return amps_.size(); }
    const std::vector<cd>& amplitudes() const { return amps_; }
    void set_amplitudes(std::vector<cd> amps);

    // In-place single-qubit rotation about Y:
    //   [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
    void apply_ry(int qubit, double theta);

    // In-place Hadamard on one qubit.
    void apply_h(int qubit);

    // Phase phi on the all-ones basis state only: multiplies the amplitude
    // of |1...1> by exp(-i*phi). Identity elsewhere.
    void apply_cp_all(double phi);

    double norm_sq() const;
    std::vector<double> probabilities() const;

    // <Z_qubit>, in [-1, 1]; +1 eigenvalue on bit value 0.
    double expect_z(int qubit) const;

    // <sum_k Z_k>, in [-N, N].
    double expect_z_sum() const;

    // <Z x Z x ... x Z> (parity observable), in [-1, 1].
    double expect_z_global() const;

private:
    int n_;
    std::vector<cd> amps_;

    // Bit position of a qubit inside an amplitude index (qubit 0 is MSB).
    int bit_position(int qubit) const { return n_ - 1 - qubit; }
    void check_qubit(int qubit) const;
};

}  // namespace qpinn
