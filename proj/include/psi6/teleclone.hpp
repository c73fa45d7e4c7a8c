#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "psi6/qstate.hpp"

namespace psi6 {

/// Bell outcomes and their two-bit classical message. PhiPlus/Minus are
/// (|HH> +- |VV>)/sqrt2, PsiPlus/Minus are (|HV> +- |VH>)/sqrt2.
enum class BellOutcome { PhiPlus = 0, PsiPlus = 1, PhiMinus = 2, PsiMinus = 3 };

constexpr std::array<BellOutcome, 4> kBellOutcomes{BellOutcome::PhiPlus, BellOutcome::PsiPlus,
                                                   BellOutcome::PhiMinus, BellOutcome::PsiMinus};

std::string bell_outcome_name(BellOutcome o);
Eigen::Vector4cd bell_state(BellOutcome o);

struct BellMeasurement {
    std::optional<QubitKet> state;  // n-2 qubits, renormalized; empty on a null result
    double probability = 0;
};

/// Projects qubits (q1, q2) onto the chosen Bell state and removes them.
/// The remaining qubits keep their relative order.
BellMeasurement bell_measure(const QubitKet& state, int q1, int q2, BellOutcome outcome);

/// Qubit roles within the shared six-qubit state (indices 1..6 as appended
/// after the input qubit 0): Alice keeps the port and two passive ancillas,
/// the three receivers hold one qubit each.
struct ProtocolLayout {
    int portQubit = 1;
    std::array<int, 2> ancillaQubits{2, 3};
    std::array<int, 3> receiverQubits{4, 5, 6};

    static ProtocolLayout canonical() { return {}; }
    void validate() const;  // indices must partition {1..6}
};

/// Pauli correction applied at each receiver for each Bell outcome.
struct CorrectionTable {
    std::array<std::array<char, 3>, 4> corrections{};  // [outcome][receiver], 'I','X','Y','Z'
    bool identicalAcrossReceivers = true;

    char at(BellOutcome o, int receiver) const {
        return corrections[static_cast<std::size_t>(o)][static_cast<std::size_t>(receiver)];
    }
};

struct ProtocolConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Searches Pauli corrections (one Pauli shared by the receivers first,
/// then per-receiver combinations) such that every receiver's fidelity with
/// the input is the same for every probe input and every Bell outcome.
/// Throws ProtocolConfigError when no table achieves this.
CorrectionTable derive_correction_table(const ProtocolLayout& layout);

struct TelecloneRun {
    BellOutcome outcome = BellOutcome::PhiPlus;
    double outcomeProbability = 0;
    std::array<DensityOperator, 3> receiverStates;
    std::array<double, 3> fidelities{};
};

/// Composes input (x) shared state, Bell-measures the input against the
/// port, applies the table's corrections and reduces each receiver to its
/// single-qubit state.
TelecloneRun teleclone(const Eigen::Vector2cd& input, const ProtocolLayout& layout,
                       const CorrectionTable& table, BellOutcome outcome);

/// Draws the Bell outcome from its distribution (seeded).
TelecloneRun teleclone_random_outcome(const Eigen::Vector2cd& input, const ProtocolLayout& layout,
                                      const CorrectionTable& table, std::uint64_t seed);

/// Optimal 1 -> M universal cloning fidelity (2M+1)/(3M); M >= 1.
double optimal_fidelity(int M);

nlohmann::json teleclone_report(const ProtocolLayout& layout, const CorrectionTable& table,
                                const Eigen::Vector2cd& input, const std::string& inputName);

}  // namespace psi6
