#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "psi6/analyzer.hpp"

namespace psi6 {

/// Dense n-qubit pure state. Basis order: qubit 0 is the leftmost letter of
/// the outcome string and the most significant bit of the amplitude index;
/// H maps to bit 0 and sorts before V. For the six-photon state the qubits
/// are the spatial modes (a, b, c, d, e, f) in that order.
class QubitKet {
public:
    QubitKet(int n, Eigen::VectorXcd amplitudes);  // must be unit norm to 1e-12

    static QubitKet computational(int n, std::uint64_t index);

    int qubit_count() const { return n_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }

    /// 0 for H, 1 for V at the given qubit of a basis index.
    static int bit_at(std::uint64_t index, int qubit, int n) {
        return static_cast<int>((index >> (n - 1 - qubit)) & 1u);
    }

private:
    int n_;
    Eigen::VectorXcd amps_;
};

/// Hermitian, unit-trace, positive-semidefinite operator on n qubits.
class DensityOperator {
public:
    DensityOperator(int n, Eigen::MatrixXcd matrix);

    static DensityOperator pure(const QubitKet& ket);
    static DensityOperator maximally_mixed(int n);

    int qubit_count() const { return n_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }

private:
    int n_;
    Eigen::MatrixXcd mat_;
};

enum class ReferenceState { Psi6Plus, GHZ6Plus, W3, W3bar, Psi2Plus };

/// Exact amplitudes of the named state. Psi6Plus is
/// (1/sqrt2)|GHZ6+> + (1/2)(|W3bar>|W3> + |W3>|W3bar>), GHZ6Plus is
/// (|HHHVVV> + |VVVHHH>)/sqrt2 and W3 = (|HHV> + |HVH> + |VHH>)/sqrt3.
QubitKet reference_state(ReferenceState name);

/// The collective-rotation-invariant four-qubit singlet
/// (|HHVV> + |VVHH> - (|HV>+|VH>)(|HV>+|VH>)/2)/sqrt3.
QubitKet four_qubit_singlet();

QubitKet kron(const QubitKet& a, const QubitKet& b);

/// p |ket><ket| + (1-p) 1/2^n.
DensityOperator add_white_noise(const QubitKet& ket, double p);

/// Probabilities of all 2^n outcome strings under the product projective
/// measurement; sums to 1.
std::vector<double> outcome_distribution(const QubitKet& state, const SettingVector& settings);
std::vector<double> outcome_distribution(const DensityOperator& state, const SettingVector& settings);

/// Expectation value of the product of the n local +-1 observables,
/// sum_outcomes parity * probability.
double correlation(const QubitKet& state, const SettingVector& settings);
double correlation(const DensityOperator& state, const SettingVector& settings);

/// Parity of an outcome: +1 if the number of minus-outcomes (V-like) is even.
int outcome_parity(std::uint64_t index, int n);

struct ProjectionResult {
    std::optional<QubitKet> state;  // empty on a null result
    double probability = 0;
};

/// Projects one qubit onto `outcome` (a normalized single-qubit ket) and
/// returns the renormalized (n-1)-qubit state plus the outcome probability.
/// Probability below 1e-14 yields a null result rather than an error.
ProjectionResult project_qubit(const QubitKet& ket, int position, const Eigen::Vector2cd& outcome);

/// <target| rho |target>.
double fidelity(const DensityOperator& rho, const QubitKet& target);
/// |<target|ket>|^2.
double fidelity(const QubitKet& ket, const QubitKet& target);

/// p_hat = (|corrZ| + |corrX| + |corrY|) / 3.
double estimate_p_from_correlations(double corrZ, double corrX, double corrY);

QubitKet apply_single_qubit(const QubitKet& ket, int position, const Eigen::Matrix2cd& u);

/// Reduced 2x2 state of one qubit.
DensityOperator reduce_to_qubit(const QubitKet& ket, int position);

/// Outcome string for a basis index, e.g. 0b001011 -> "HHVHVV" in the HV
/// basis (lexicographic with H < V); uses the per-qubit letters of the
/// settings when given.
std::string outcome_label(std::uint64_t index, int n);
std::string outcome_label(std::uint64_t index, const SettingVector& settings);
std::uint64_t outcome_index(const std::string& label);

// Seeded random states (Haar where applicable).
QubitKet random_product_ket(int n, std::mt19937_64& rng);
QubitKet random_ket(int n, std::mt19937_64& rng);
Eigen::Vector2cd random_bloch_ket(std::mt19937_64& rng);
Eigen::Matrix2cd random_single_qubit_unitary(std::mt19937_64& rng);

nlohmann::json ket_to_json(const QubitKet& ket);
QubitKet ket_from_json(const nlohmann::json& j);

}  // namespace psi6
