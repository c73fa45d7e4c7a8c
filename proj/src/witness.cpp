#include "psi6/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psi6 {

PauliObservable max_overlap_witness(const QubitKet& target, double overlapBound,
                                    Execution policy) {
    if (!(overlapBound > 0.0 && overlapBound < 1.0)) {
        throw std::domain_error("overlap bound must lie in (0, 1)");
    }
    const Eigen::Index d = static_cast<Eigen::Index>(target.dim());
    const Eigen::MatrixXcd op =
        overlapBound * Eigen::MatrixXcd::Identity(d, d) -
        target.amplitudes() * target.amplitudes().adjoint();
    return pauli_decompose(op, policy);
}

PauliObservable reduce_witness(const PauliObservable& full, double identityConstant) {
    if (!(identityConstant > 0.0)) {
        throw std::domain_error("identity constant must be positive");
    }
    PauliObservable reduced(full.qubit_count());
    for (const auto& [word, coeff] : full.terms()) {
        if (single_pauli_type(word)) reduced.set(word, coeff);
    }
    reduced.set(reduced.identity_word(), identityConstant);
    return reduced;
}

double white_noise_tolerance(const PauliObservable& obs, const QubitKet& target) {
    const double onPure = expectation(obs, target);
    if (!(onPure < 0.0)) {
        throw std::domain_error("witness does not detect the target state");
    }
    // Expectation on p|t><t| + (1-p) 1/2^n is linear in p:
    // E(p) = p * onPure + (1 - p) * identityCoeff.
    const double onMixed = obs.coeff(obs.identity_word());
    const double pStar = onMixed / (onMixed - onPure);
    return 1.0 - pStar;
}

WitnessReport witness_report_from_estimate(const PauliObservable& obs, double expectationValue,
                                           std::optional<double> standardError,
                                           const QubitKet& target, double k) {
    WitnessReport r;
    r.expectation = expectationValue;
    r.standardError = standardError;
    r.noiseToleranceAtPureTarget = white_noise_tolerance(obs, target);
    const double margin = standardError ? k * *standardError : 0.0;
    r.entangled = expectationValue + margin < r.threshold;
    return r;
}

WitnessReport witness_report(const PauliObservable& obs, const DensityOperator& state,
                             const QubitKet& target, double k,
                             std::optional<double> standardError) {
    return witness_report_from_estimate(obs, expectation(obs, state), standardError, target, k);
}

std::string tensor_word(std::uint64_t index, int n) {
    static constexpr char letters[3] = {'x', 'y', 'z'};
    std::string w(static_cast<std::size_t>(n), 'x');
    for (int q = n - 1; q >= 0; --q) {
        w[static_cast<std::size_t>(q)] = letters[index % 3];
        index /= 3;
    }
    return w;
}

namespace {
std::uint64_t pow3(int n) {
    std::uint64_t p = 1;
    for (int k = 0; k < n; ++k) p *= 3;
    return p;
}

std::string tensor_to_pauli_word(const std::string& word) {
    std::string p = word;
    for (char& c : p) {
        switch (c) {
            case 'x': c = 'X'; break;
            case 'y': c = 'Y'; break;
            case 'z': c = 'Z'; break;
            default:
                throw std::invalid_argument("tensor words use letters x, y, z: " + word);
        }
    }
    return p;
}

template <typename State>
std::vector<double> tensor_values_impl(const State& state, Execution policy) {
    const int n = state.qubit_count();
    const std::int64_t count = static_cast<std::int64_t>(pow3(n));
    std::vector<double> values(static_cast<std::size_t>(count));
    parallel_for(policy, count, [&](std::int64_t w) {
        const std::string word =
            tensor_to_pauli_word(tensor_word(static_cast<std::uint64_t>(w), n));
        values[static_cast<std::size_t>(w)] = pauli_word_expectation(word, state);
    });
    return values;
}
}  // namespace

std::vector<double> correlation_tensor_values(const QubitKet& state, Execution policy) {
    return tensor_values_impl(state, policy);
}

std::vector<double> correlation_tensor_values(const DensityOperator& state, Execution policy) {
    return tensor_values_impl(state, policy);
}

CorrelationTensor::CorrelationTensor(int n, bool full, std::map<std::string, double> values)
    : n_(n), full_(full), values_(std::move(values)) {
    for (const auto& [word, value] : values_) {
        if (static_cast<int>(word.size()) != n_) {
            throw std::invalid_argument("tensor word length must match the qubit count");
        }
        if (std::abs(value) > 1.0 + 1e-9) {
            throw std::invalid_argument("correlation tensor entries must lie in [-1, 1]");
        }
    }
}

namespace {
std::map<std::string, double> label_values(const std::vector<double>& raw, int n) {
    std::map<std::string, double> values;
    for (std::size_t w = 0; w < raw.size(); ++w) {
        values.emplace(tensor_word(w, n), raw[w]);
    }
    return values;
}
}  // namespace

CorrelationTensor CorrelationTensor::full(const QubitKet& state, Execution policy) {
    const int n = state.qubit_count();
    return CorrelationTensor(n, true, label_values(correlation_tensor_values(state, policy), n));
}

CorrelationTensor CorrelationTensor::full(const DensityOperator& state, Execution policy) {
    const int n = state.qubit_count();
    return CorrelationTensor(n, true, label_values(correlation_tensor_values(state, policy), n));
}

CorrelationTensor CorrelationTensor::subset(int n, const std::map<std::string, double>& values) {
    return CorrelationTensor(n, false, values);
}

bool CorrelationTensor::has(const std::string& word) const { return values_.count(word) > 0; }

double CorrelationTensor::at(const std::string& word) const {
    auto it = values_.find(word);
    if (it == values_.end()) {
        throw std::invalid_argument("correlation tensor has no entry for '" + word + "'");
    }
    return it->second;
}

double CorrelationTensor::norm_squared() const {
    double s = 0;
    for (const auto& [word, value] : values_) s += value * value;
    return s;
}

IndicatorResult indicator_norm(const CorrelationTensor& tensor,
                               const std::vector<std::string>& subset) {
    IndicatorResult r;
    for (const auto& word : subset) {
        const double t = tensor.at(word);
        r.value += t * t;
    }
    r.notFullySeparable = r.value > 1.0;
    return r;
}

ProductSweepBounds product_state_sweep(const PauliObservable& maxOverlap,
                                       const PauliObservable& reduced, int count,
                                       std::uint64_t seed, Execution policy) {
    const int n = maxOverlap.qubit_count();
    std::vector<double> wMax(static_cast<std::size_t>(count));
    std::vector<double> wRed(static_cast<std::size_t>(count));
    std::vector<double> norms(static_cast<std::size_t>(count));
    parallel_for(policy, count, [&](std::int64_t i) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
        const QubitKet ket = random_product_ket(n, rng);
        wMax[static_cast<std::size_t>(i)] = expectation(maxOverlap, ket);
        wRed[static_cast<std::size_t>(i)] = expectation(reduced, ket);
        const std::vector<double> tensor = correlation_tensor_values(ket, Execution::Serial);
        double norm2 = 0;
        for (double t : tensor) norm2 += t * t;
        norms[static_cast<std::size_t>(i)] = norm2;
    });
    ProductSweepBounds bounds;
    bounds.states = count;
    bounds.minMaxOverlapWitness = *std::min_element(wMax.begin(), wMax.end());
    bounds.minReducedWitness = *std::min_element(wRed.begin(), wRed.end());
    bounds.maxTensorNormSquared = *std::max_element(norms.begin(), norms.end());
    return bounds;
}

}  // namespace psi6
