#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psi6/parallel.hpp"
#include "psi6/pauli.hpp"
#include "psi6/qstate.hpp"

namespace psi6 {

/// overlapBound * 1 - |target><target| as a Pauli decomposition. The bound
/// is the maximum overlap of the target with any biseparable state (2/3 for
/// the six-photon state).
PauliObservable max_overlap_witness(const QubitKet& target, double overlapBound,
                                    Execution policy = Execution::Parallel);

/// Keeps exactly the terms of `full` whose non-identity letters are all the
/// same Pauli (measurable with the three uniform settings plus marginals)
/// and replaces the identity coefficient with identityConstant.
PauliObservable reduce_witness(const PauliObservable& full, double identityConstant);

/// Largest admixture 1 - p* of white noise at which the witness expectation
/// on p|t><t| + (1-p) 1/2^n is still negative. Requires a negative
/// expectation on the pure target.
double white_noise_tolerance(const PauliObservable& obs, const QubitKet& target);

struct WitnessReport {
    double expectation = 0;
    std::optional<double> standardError;
    double threshold = 0;
    bool entangled = false;  // expectation + k * SE < threshold
    double noiseToleranceAtPureTarget = 0;
};

/// Evaluates a witness on a state; k scales the standard error in the
/// verdict (0 for analytic inputs).
WitnessReport witness_report(const PauliObservable& obs, const DensityOperator& state,
                             const QubitKet& target, double k = 0,
                             std::optional<double> standardError = std::nullopt);
WitnessReport witness_report_from_estimate(const PauliObservable& obs, double expectation,
                                           std::optional<double> standardError,
                                           const QubitKet& target, double k = 0);

/// Correlation tensor T_w = <sigma_{w_1} x ... x sigma_{w_n}> indexed by
/// setting words over {x, y, z} (e.g. "zzzzzz"). Either the full 3^n tensor
/// or a declared subset of words.
class CorrelationTensor {
public:
    static CorrelationTensor full(const QubitKet& state, Execution policy = Execution::Parallel);
    static CorrelationTensor full(const DensityOperator& state,
                                  Execution policy = Execution::Parallel);
    static CorrelationTensor subset(int n, const std::map<std::string, double>& values);

    int qubit_count() const { return n_; }
    bool is_full() const { return full_; }
    bool has(const std::string& word) const;
    double at(const std::string& word) const;  // throws std::invalid_argument when missing
    const std::map<std::string, double>& values() const { return values_; }

    /// Sum of squares over all stored entries.
    double norm_squared() const;

private:
    CorrelationTensor(int n, bool full, std::map<std::string, double> values);
    int n_;
    bool full_;
    std::map<std::string, double> values_;
};

/// Raw kernel behind CorrelationTensor::full: all 3^n entries, word index in
/// base 3 with digit 0=x, 1=y, 2=z at the leftmost qubit first.
std::vector<double> correlation_tensor_values(const QubitKet& state, Execution policy);
std::vector<double> correlation_tensor_values(const DensityOperator& state, Execution policy);
std::string tensor_word(std::uint64_t index, int n);

struct IndicatorResult {
    double value = 0;
    bool notFullySeparable = false;  // value > 1
};

/// Partial sum of squared correlation-tensor entries over `subset`; any
/// value above 1 rules out full separability.
IndicatorResult indicator_norm(const CorrelationTensor& tensor,
                               const std::vector<std::string>& subset);

/// Per-state results of a random pure-product-state sweep: witness
/// expectations stay non-negative and the full tensor norm stays <= 1.
struct ProductSweepBounds {
    double minMaxOverlapWitness = 0;
    double minReducedWitness = 0;
    double maxTensorNormSquared = 0;
    int states = 0;
};

ProductSweepBounds product_state_sweep(const PauliObservable& maxOverlap,
                                       const PauliObservable& reduced, int count,
                                       std::uint64_t seed,
                                       Execution policy = Execution::Parallel);

}  // namespace psi6
