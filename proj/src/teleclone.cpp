#include "psi6/teleclone.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "psi6/pauli.hpp"

namespace psi6 {

namespace {
constexpr double kNullTol = 1e-14;
constexpr double kUniversalTol = 1e-9;
const std::complex<double> kI{0.0, 1.0};

Eigen::Matrix2cd pauli_matrix(char c) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -kI, kI, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("correction must be a Pauli letter");
    }
    return m;
}

QubitKet input_ket(const Eigen::Vector2cd& input) {
    if (std::abs(input.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("input qubit must be normalized");
    }
    Eigen::VectorXcd v(2);
    v << input(0), input(1);
    return QubitKet(1, std::move(v));
}

/// Receiver positions after the Bell measurement removed qubits 0 and port.
std::array<int, 3> receiver_positions(const ProtocolLayout& layout) {
    std::array<int, 3> pos{};
    for (int r = 0; r < 3; ++r) {
        const int orig = layout.receiverQubits[static_cast<std::size_t>(r)];
        int shift = 1;  // qubit 0 (the input) is always removed
        if (layout.portQubit < orig) ++shift;
        pos[static_cast<std::size_t>(r)] = orig - shift;
    }
    return pos;
}

struct ProbeResult {
    double probability = 0;
    std::array<double, 3> fidelities{};
    bool null = false;
};

ProbeResult run_probe(const Eigen::Vector2cd& input, const ProtocolLayout& layout,
                      BellOutcome outcome, const std::array<char, 3>& corrections) {
    const QubitKet joint = kron(input_ket(input), reference_state(ReferenceState::Psi6Plus));
    const BellMeasurement bm = bell_measure(joint, 0, layout.portQubit, outcome);
    ProbeResult res;
    res.probability = bm.probability;
    if (!bm.state) {
        res.null = true;
        return res;
    }
    QubitKet rest = *bm.state;
    const std::array<int, 3> positions = receiver_positions(layout);
    for (int r = 0; r < 3; ++r) {
        const char c = corrections[static_cast<std::size_t>(r)];
        if (c != 'I') {
            rest = apply_single_qubit(rest, positions[static_cast<std::size_t>(r)],
                                      pauli_matrix(c));
        }
    }
    const QubitKet in = input_ket(input);
    for (int r = 0; r < 3; ++r) {
        const DensityOperator rho =
            reduce_to_qubit(rest, positions[static_cast<std::size_t>(r)]);
        res.fidelities[static_cast<std::size_t>(r)] = fidelity(rho, in);
    }
    return res;
}

std::vector<Eigen::Vector2cd> probe_inputs() {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<Eigen::Vector2cd> probes;
    probes.emplace_back(Eigen::Vector2cd(1, 0));                    // H
    probes.emplace_back(Eigen::Vector2cd(0, 1));                    // V
    probes.emplace_back(Eigen::Vector2cd(s, s));                    // D
    probes.emplace_back(Eigen::Vector2cd(s, kI * s));               // L
    std::mt19937_64 rng(0x70726f6265735ULL);
    for (int k = 0; k < 3; ++k) probes.push_back(random_bloch_ket(rng));
    return probes;
}

/// Common fidelity across probes and receivers, or empty when the
/// correction is not universal for the outcome.
std::optional<double> universal_fidelity(const ProtocolLayout& layout, BellOutcome outcome,
                                         const std::array<char, 3>& corrections,
                                         const std::vector<Eigen::Vector2cd>& probes) {
    double lo = 1, hi = 0;
    for (const auto& probe : probes) {
        const ProbeResult res = run_probe(probe, layout, outcome, corrections);
        if (res.null) return std::nullopt;
        for (double f : res.fidelities) {
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
    }
    if (hi - lo > kUniversalTol) return std::nullopt;
    return (hi + lo) / 2;
}
}  // namespace

std::string bell_outcome_name(BellOutcome o) {
    switch (o) {
        case BellOutcome::PhiPlus: return "Phi+";
        case BellOutcome::PsiPlus: return "Psi+";
        case BellOutcome::PhiMinus: return "Phi-";
        case BellOutcome::PsiMinus: return "Psi-";
    }
    return "?";
}

Eigen::Vector4cd bell_state(BellOutcome o) {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    switch (o) {
        case BellOutcome::PhiPlus: v(0b00) = s; v(0b11) = s; break;
        case BellOutcome::PhiMinus: v(0b00) = s; v(0b11) = -s; break;
        case BellOutcome::PsiPlus: v(0b01) = s; v(0b10) = s; break;
        case BellOutcome::PsiMinus: v(0b01) = s; v(0b10) = -s; break;
    }
    return v;
}

BellMeasurement bell_measure(const QubitKet& state, int q1, int q2, BellOutcome outcome) {
    const int n = state.qubit_count();
    if (q1 == q2 || q1 < 0 || q2 < 0 || q1 >= n || q2 >= n) {
        throw std::invalid_argument("bell_measure needs two distinct in-range qubits");
    }
    const Eigen::Vector4cd bell = bell_state(outcome);
    const int s1 = n - 1 - q1;
    const int s2 = n - 1 - q2;
    const std::uint64_t m1 = std::uint64_t{1} << s1;
    const std::uint64_t m2 = std::uint64_t{1} << s2;

    // Map a reduced index (remaining qubits in order) to the full index with
    // the measured qubits set to (b1, b2).
    std::vector<int> keptShifts;
    for (int q = n - 1; q >= 0; --q) {
        if (q == q1 || q == q2) continue;
        keptShifts.push_back(n - 1 - q);  // ascending significance of kept qubits
    }
    const Eigen::Index outDim = Eigen::Index{1} << (n - 2);
    Eigen::VectorXcd rest = Eigen::VectorXcd::Zero(outDim);
    for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(outDim); ++r) {
        std::uint64_t base = 0;
        for (std::size_t b = 0; b < keptShifts.size(); ++b) {
            if ((r >> b) & 1u) base |= std::uint64_t{1} << keptShifts[b];
        }
        std::complex<double> acc = 0;
        for (int b1 = 0; b1 < 2; ++b1) {
            for (int b2 = 0; b2 < 2; ++b2) {
                std::uint64_t full = base;
                if (b1) full |= m1;
                if (b2) full |= m2;
                acc += std::conj(bell(2 * b1 + b2)) *
                       state.amplitudes()(static_cast<Eigen::Index>(full));
            }
        }
        rest(static_cast<Eigen::Index>(r)) = acc;
    }
    BellMeasurement out;
    out.probability = rest.squaredNorm();
    if (out.probability < kNullTol) {
        out.probability = std::max(out.probability, 0.0);
        return out;
    }
    out.state = QubitKet(n - 2, rest / rest.norm());
    return out;
}

void ProtocolLayout::validate() const {
    std::set<int> all{portQubit, ancillaQubits[0], ancillaQubits[1],
                      receiverQubits[0], receiverQubits[1], receiverQubits[2]};
    if (all.size() != 6 || *all.begin() != 1 || *all.rbegin() != 6) {
        throw std::invalid_argument("layout must partition qubits 1..6");
    }
}

CorrectionTable derive_correction_table(const ProtocolLayout& layout) {
    layout.validate();
    const std::vector<Eigen::Vector2cd> probes = probe_inputs();
    static constexpr char kPaulis[4] = {'I', 'X', 'Y', 'Z'};

    CorrectionTable table;
    std::array<double, 4> outcomeFidelity{};
    for (std::size_t o = 0; o < 4; ++o) {
        const BellOutcome outcome = kBellOutcomes[o];
        std::optional<double> found;
        // Identical correction at every receiver first.
        for (char p : kPaulis) {
            const std::array<char, 3> cand{p, p, p};
            if (auto f = universal_fidelity(layout, outcome, cand, probes)) {
                table.corrections[o] = cand;
                found = f;
                break;
            }
        }
        // Fall back to per-receiver corrections.
        if (!found) {
            table.identicalAcrossReceivers = false;
            for (int c0 = 0; c0 < 4 && !found; ++c0) {
                for (int c1 = 0; c1 < 4 && !found; ++c1) {
                    for (int c2 = 0; c2 < 4 && !found; ++c2) {
                        const std::array<char, 3> cand{kPaulis[c0], kPaulis[c1], kPaulis[c2]};
                        if (auto f = universal_fidelity(layout, outcome, cand, probes)) {
                            table.corrections[o] = cand;
                            found = f;
                        }
                    }
                }
            }
        }
        if (!found) {
            throw ProtocolConfigError("no Pauli correction gives an input-independent fidelity "
                                      "for outcome " +
                                      bell_outcome_name(outcome) + "; wrong layout?");
        }
        outcomeFidelity[o] = *found;
    }
    const auto [lo, hi] = std::minmax_element(outcomeFidelity.begin(), outcomeFidelity.end());
    if (*hi - *lo > kUniversalTol) {
        throw ProtocolConfigError("receiver fidelity depends on the Bell outcome; wrong layout?");
    }
    return table;
}

TelecloneRun teleclone(const Eigen::Vector2cd& input, const ProtocolLayout& layout,
                       const CorrectionTable& table, BellOutcome outcome) {
    layout.validate();
    const QubitKet joint = kron(input_ket(input), reference_state(ReferenceState::Psi6Plus));
    const BellMeasurement bm = bell_measure(joint, 0, layout.portQubit, outcome);
    if (!bm.state) {
        throw std::runtime_error("teleclone: Bell outcome has zero probability");
    }
    QubitKet rest = *bm.state;
    const std::array<int, 3> positions = receiver_positions(layout);
    for (int r = 0; r < 3; ++r) {
        const char c = table.at(outcome, r);
        if (c != 'I') {
            rest = apply_single_qubit(rest, positions[static_cast<std::size_t>(r)],
                                      pauli_matrix(c));
        }
    }
    const QubitKet in = input_ket(input);
    TelecloneRun run{outcome, bm.probability,
                     {reduce_to_qubit(rest, positions[0]), reduce_to_qubit(rest, positions[1]),
                      reduce_to_qubit(rest, positions[2])},
                     {}};
    for (int r = 0; r < 3; ++r) {
        run.fidelities[static_cast<std::size_t>(r)] =
            fidelity(run.receiverStates[static_cast<std::size_t>(r)], in);
    }
    return run;
}

TelecloneRun teleclone_random_outcome(const Eigen::Vector2cd& input, const ProtocolLayout& layout,
                                      const CorrectionTable& table, std::uint64_t seed) {
    const QubitKet joint = kron(input_ket(input), reference_state(ReferenceState::Psi6Plus));
    std::array<double, 4> probs{};
    for (std::size_t o = 0; o < 4; ++o) {
        probs[o] = bell_measure(joint, 0, layout.portQubit, kBellOutcomes[o]).probability;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u = uni(rng);
    double acc = 0;
    std::size_t chosen = 3;
    for (std::size_t o = 0; o < 4; ++o) {
        acc += probs[o];
        if (u < acc) {
            chosen = o;
            break;
        }
    }
    return teleclone(input, layout, table, kBellOutcomes[chosen]);
}

double optimal_fidelity(int M) {
    if (M < 1) throw std::domain_error("receiver count must be at least 1");
    return (2.0 * M + 1.0) / (3.0 * M);
}

nlohmann::json teleclone_report(const ProtocolLayout& layout, const CorrectionTable& table,
                                const Eigen::Vector2cd& input, const std::string& inputName) {
    nlohmann::json outcomes = nlohmann::json::array();
    for (const BellOutcome o : kBellOutcomes) {
        const TelecloneRun run = teleclone(input, layout, table, o);
        std::string corr;
        for (int r = 0; r < 3; ++r) corr.push_back(table.at(o, r));
        outcomes.push_back({{"outcome", bell_outcome_name(o)},
                            {"message", static_cast<int>(o)},
                            {"probability", run.outcomeProbability},
                            {"correction", corr},
                            {"fidelities",
                             {run.fidelities[0], run.fidelities[1], run.fidelities[2]}}});
    }
    return {{"input", inputName},
            {"layout",
             {{"port", layout.portQubit},
              {"ancillas", {layout.ancillaQubits[0], layout.ancillaQubits[1]}},
              {"receivers",
               {layout.receiverQubits[0], layout.receiverQubits[1], layout.receiverQubits[2]}}}},
            {"identicalCorrections", table.identicalAcrossReceivers},
            {"optimalFidelity", optimal_fidelity(3)},
            {"outcomes", std::move(outcomes)}};
}

}  // namespace psi6
