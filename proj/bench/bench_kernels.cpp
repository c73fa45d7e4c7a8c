// Benchmarks for the data-parallel kernels: each runs the serial reference
// and the OpenMP path on the same inputs and prints the speedup.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "psi6/montecarlo.hpp"
#include "psi6/pauli.hpp"
#include "psi6/parallel.hpp"
#include "psi6/witness.hpp"

using namespace psi6;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double dt =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (dt < best) best = dt;
    }
    return best;
}

void row(const char* name, int repeats, const std::function<void(Execution)>& fn) {
    const double serial = best_of(repeats, [&] { fn(Execution::Serial); });
    const double parallel = best_of(repeats, [&] { fn(Execution::Parallel); });
    std::printf("%-44s %10.2f ms %10.2f ms %7.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
    const QubitKet psi = reference_state(ReferenceState::Psi6Plus);
    const DensityOperator rho = add_white_noise(psi, 0.859);
    const PauliObservable wMax = max_overlap_witness(psi, 2.0 / 3.0);
    const PauliObservable wRed = reduce_witness(wMax, 181.0 / 576.0);
    const SettingVector zSettings = uniform_settings(NamedBasis::HV, 6);

    std::printf("threads available: %d\n\n", max_threads());
    std::printf("%-44s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

    row("pauli_decompose, 6 qubits (4096 words)", 5,
        [&](Execution policy) { pauli_decompose(rho.matrix(), policy); });

    {
        std::mt19937_64 rng(5);
        const QubitKet big = random_ket(7, rng);
        Eigen::MatrixXcd m = big.amplitudes() * big.amplitudes().adjoint();
        row("pauli_decompose, 7 qubits (16384 words)", 3,
            [&](Execution policy) { pauli_decompose(m, policy); });
    }

    row("correlation tensor, density operator (3^6)", 5,
        [&](Execution policy) { correlation_tensor_values(rho, policy); });

    row("product-state sweep, 2000 states", 3, [&](Execution policy) {
        product_state_sweep(wMax, wRed, 2000, 99, policy);
    });

    row("correlation sweep, 1000 seeds x 320 events", 3, [&](Execution policy) {
        correlation_sweep(rho, zSettings, 320, 1234, 1000, policy);
    });

    return 0;
}
