// Timing comparison: OpenMP statevector kernels vs the serial reference
// implementation. The check column doubles as a correctness probe at
// benchmark sizes: gate kernels must match bitwise, expectation values to
// 1e-12 (the fixed-block reduction associates the sum differently than the
// serial left-to-right pass).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qpinn/qnode.hpp"
#include "qpinn/reference.hpp"
#include "qpinn/rng.hpp"
#include "qpinn/statevector.hpp"

namespace {

using namespace qpinn;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct GateTimes {
    double parallel_s = 0.0;
    double serial_s = 0.0;
    const char* verdict = "MISMATCH";
};

GateTimes bench_layer(int num_qubits, int repeats, std::mt19937_64& rng) {
    std::vector<double> angles(static_cast<std::size_t>(num_qubits));
    for (double& a : angles) a = uniform(rng, 0.0, 2.0 * kPi);

    StateVector state(num_qubits);
    auto t0 = clock_type::now();
    for (int r = 0; r < repeats; ++r) {
        for (int q = 0; q < num_qubits; ++q) state.apply_ry(q, angles[static_cast<std::size_t>(q)]);
        state.apply_h(0);
        state.apply_cp_all(kPi);
    }
    GateTimes out;
    out.parallel_s = seconds_since(t0);

    std::vector<std::complex<double>> serial(std::size_t(1) << num_qubits);
    serial[0] = 1.0;
    t0 = clock_type::now();
    for (int r = 0; r < repeats; ++r) {
        for (int q = 0; q < num_qubits; ++q) {
            ref::apply_ry(serial, num_qubits, q, angles[static_cast<std::size_t>(q)]);
        }
        ref::apply_h(serial, num_qubits, 0);
        ref::apply_cp_all(serial, kPi);
    }
    out.serial_s = seconds_since(t0);
    if (state.amplitudes() == serial) out.verdict = "bitwise-equal";
    return out;
}

GateTimes bench_expectation(int num_qubits, int repeats, std::mt19937_64& rng) {
    StateVector state(num_qubits);
    for (int q = 0; q < num_qubits; ++q) state.apply_ry(q, uniform(rng, 0.0, 2.0 * kPi));

    GateTimes out;
    double acc_par = 0.0;
    auto t0 = clock_type::now();
    for (int r = 0; r < repeats; ++r) acc_par += state.expect_z_sum();
    out.parallel_s = seconds_since(t0);

    double acc_ser = 0.0;
    t0 = clock_type::now();
    for (int r = 0; r < repeats; ++r) acc_ser += ref::expect_z_sum(state.amplitudes(), num_qubits);
    out.serial_s = seconds_since(t0);
    if (std::abs(acc_par - acc_ser) <= 1e-12 * repeats) out.verdict = "agree<=1e-12";
    return out;
}

void print_row(const char* label, int num_qubits, const GateTimes& t) {
    std::printf("%-14s n=%2d  parallel %8.4fs  serial %8.4fs  speedup %5.2fx  %s\n", label,
                num_qubits, t.parallel_s, t.serial_s,
                t.parallel_s > 0.0 ? t.serial_s / t.parallel_s : 0.0, t.verdict);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run serially\n");
#endif

    std::mt19937_64 rng = make_rng({42});
    for (int n : {12, 14, 16, 18, 20}) {
        const int repeats = n >= 18 ? 4 : 16;
        print_row("layer", n, bench_layer(n, repeats, rng));
        print_row("expect_z_sum", n, bench_expectation(n, repeats, rng));
    }

    // Parameter-shift gradients parallelize across circuit evaluations rather
    // than amplitudes, so they scale with thread count even at small n.
    for (int n : {8, 10}) {
        QNodeConfig qc;
        qc.num_qubits = n;
        qc.depth = 4;
        QNodeParams params = QNodeParams::zeros(qc.depth, qc.num_qubits);
        for (auto& a : params.angles) a = uniform(rng, 0.0, 2.0 * kPi);

        auto t0 = clock_type::now();
        QNodeParams g = grad_parameter_shift(qc, params, Observable::z_sum);
        const double elapsed = seconds_since(t0);
        std::printf("param-shift    n=%2d  depth=%d  %zu partials in %8.4fs\n", n, qc.depth,
                    g.angles.size(), elapsed);
    }
    return 0;
}
