#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>

#include "psi6/parallel.hpp"
#include "psi6/qstate.hpp"

namespace psi6 {

/// Weighted sum of n-qubit Pauli strings (words over {I, X, Y, Z}, leftmost
/// letter = qubit 0). Coefficients are real, so the observable is Hermitian;
/// zero coefficients are never stored.
class PauliObservable {
public:
    explicit PauliObservable(int n);

    int qubit_count() const { return n_; }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<std::string, double>& terms() const { return terms_; }

    void set(const std::string& word, double coeff);
    void add(const std::string& word, double coeff);
    double coeff(const std::string& word) const;  // 0 when absent

    std::string identity_word() const { return std::string(static_cast<std::size_t>(n_), 'I'); }

private:
    int n_;
    std::map<std::string, double> terms_;
};

/// <sigma_word> on a pure state / Tr(rho sigma_word). O(2^n) via the signed
/// permutation action of the Pauli string.
double pauli_word_expectation(const std::string& word, const QubitKet& state);
double pauli_word_expectation(const std::string& word, const DensityOperator& state);

double expectation(const PauliObservable& obs, const QubitKet& state);
double expectation(const PauliObservable& obs, const DensityOperator& state);

/// c_word = Tr(op . sigma_word) / 2^n over all 4^n words, zeros dropped.
/// Throws std::domain_error when op is not Hermitian to 1e-10.
PauliObservable pauli_decompose(const Eigen::MatrixXcd& op,
                                Execution policy = Execution::Parallel,
                                double dropTol = 1e-13);

/// sum_word c_word sigma_word as a dense matrix.
Eigen::MatrixXcd reconstruct(const PauliObservable& obs);

/// Dense matrix of one Pauli word.
Eigen::MatrixXcd pauli_word_matrix(const std::string& word);

/// Text form, one term per line: "<coeff> <WORD>", sorted by word.
std::string pauli_to_text(const PauliObservable& obs);
PauliObservable pauli_from_text(const std::string& text);

/// True when all non-identity letters of the word are the same Pauli.
bool single_pauli_type(const std::string& word);

}  // namespace psi6
