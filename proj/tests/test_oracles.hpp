// Test-only brute-force oracles, kept independent of the library's
// implementation paths they cross-check.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "psi6/fock.hpp"
#include "psi6/optics.hpp"

namespace psi6::testing {

/// Naive permanent by minor expansion along the first row.
inline std::complex<double> permanent(const Eigen::MatrixXcd& m) {
    const Eigen::Index n = m.rows();
    if (n == 0) return 1.0;
    if (n == 1) return m(0, 0);
    std::complex<double> sum = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::MatrixXcd minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            Eigen::Index cc = 0;
            for (Eigen::Index c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        sum += m(0, j) * permanent(minor);
    }
    return sum;
}

inline double fact(int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// Monomial-basis transfer amplitude <m| phi(N) |n> via the permanent of the
/// row/column-repeated submatrix: coefficient of prod (out_j)^{m_j} in
/// prod_k (sum_j N_{jk} out_j)^{n_k} equals Per(N[m|n]) / prod_j m_j!.
inline std::complex<double> oracle_transfer(const Eigen::MatrixXcd& net, const Occupation& in,
                                            const Occupation& out) {
    int tIn = 0, tOut = 0;
    for (int v : in) tIn += v;
    for (int v : out) tOut += v;
    if (tIn != tOut) return 0.0;
    Eigen::MatrixXcd sub(tIn, tIn);
    int r = 0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        for (int rep = 0; rep < out[j]; ++rep) {
            int c = 0;
            for (std::size_t k = 0; k < in.size(); ++k) {
                for (int rep2 = 0; rep2 < in[k]; ++rep2) {
                    sub(r, c++) = net(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
                }
            }
            ++r;
        }
    }
    double mFact = 1;
    for (int v : out) mFact *= fact(v);
    return permanent(sub) / mFact;
}

inline void enumerate_occupations(int total, int modes,
                                  const std::function<void(const Occupation&)>& visit,
                                  Occupation& prefix) {
    if (modes == 1) {
        prefix.push_back(total);
        visit(prefix);
        prefix.pop_back();
        return;
    }
    for (int k = 0; k <= total; ++k) {
        prefix.push_back(k);
        enumerate_occupations(total - k, modes - 1, visit, prefix);
        prefix.pop_back();
    }
}

/// Dense brute-force image of a Fock polynomial under a network, term by
/// term through oracle_transfer.
inline FockPolynomial oracle_apply_network(const FockPolynomial& state,
                                           const LinearNetwork& net) {
    FockPolynomial result(net.output_register());
    const int outModes = static_cast<int>(net.output_register().size());
    for (const auto& [occ, amp] : state.terms()) {
        int total = 0;
        for (int v : occ) total += v;
        Occupation prefix;
        const std::complex<double> inAmp = amp;
        const Occupation inOcc = occ;
        enumerate_occupations(total, outModes,
                             [&](const Occupation& outOcc) {
                                 const auto c = oracle_transfer(net.matrix(), inOcc, outOcc);
                                 if (std::abs(c) > 0) result.add(outOcc, inAmp * c);
                             },
                             prefix);
    }
    result.prune();
    return result;
}

inline Eigen::Matrix2cd pauli_letter_matrix(char c) {
    Eigen::Matrix2cd m;
    const std::complex<double> I{0, 1};
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -I, I, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

/// Dense Pauli word by explicit Kronecker products.
inline Eigen::MatrixXcd kron_word(const std::string& word) {
    Eigen::MatrixXcd acc = pauli_letter_matrix(word.at(0));
    for (std::size_t q = 1; q < word.size(); ++q) {
        const Eigen::Matrix2cd next = pauli_letter_matrix(word[q]);
        Eigen::MatrixXcd grown(acc.rows() * 2, acc.cols() * 2);
        for (Eigen::Index r = 0; r < acc.rows(); ++r) {
            for (Eigen::Index c = 0; c < acc.cols(); ++c) {
                grown.block(2 * r, 2 * c, 2, 2) = acc(r, c) * next;
            }
        }
        acc = std::move(grown);
    }
    return acc;
}

/// Dense-trace decomposition c_w = Tr(op sigma_w)/2^n over all 4^n words.
inline std::map<std::string, double> oracle_decompose(const Eigen::MatrixXcd& op, int n,
                                                      double dropTol = 1e-13) {
    static constexpr char letters[4] = {'I', 'X', 'Y', 'Z'};
    std::map<std::string, double> coeffs;
    const std::uint64_t words = std::uint64_t{1} << (2 * n);
    for (std::uint64_t s = 0; s < words; ++s) {
        std::string word(static_cast<std::size_t>(n), 'I');
        std::uint64_t v = s;
        for (int q = n - 1; q >= 0; --q) {
            word[static_cast<std::size_t>(q)] = letters[v & 3];
            v >>= 2;
        }
        // Tr(sigma_w op) without forming the product matrix.
        const double c = kron_word(word).cwiseProduct(op.transpose()).sum().real() /
                         static_cast<double>(op.rows());
        if (std::abs(c) > dropTol) coeffs[word] = c;
    }
    return coeffs;
}

}  // namespace psi6::testing
