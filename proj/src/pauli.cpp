#include "psi6/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace psi6 {

namespace {
constexpr double kHermTol = 1e-10;

struct WordMasks {
    std::uint64_t flip = 0;     // X and Y letters
    std::uint64_t phase = 0;    // Y and Z letters
    int yCount = 0;
};

int letter_index(char c) {
    switch (c) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
    }
    throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
}

WordMasks word_masks(const std::string& word) {
    WordMasks m;
    const int n = static_cast<int>(word.size());
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
        switch (word[static_cast<std::size_t>(q)]) {
            case 'I': break;
            case 'X': m.flip |= bit; break;
            case 'Y':
                m.flip |= bit;
                m.phase |= bit;
                ++m.yCount;
                break;
            case 'Z': m.phase |= bit; break;
            default:
                throw std::invalid_argument("invalid Pauli word: " + word);
        }
    }
    return m;
}

// i^yCount times the parity sign of the phase bits.
std::complex<double> word_phase(const WordMasks& m, std::uint64_t k) {
    static constexpr std::complex<double> iPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::complex<double> ph = iPow[m.yCount & 3];
    if (std::popcount(k & m.phase) & 1) ph = -ph;
    return ph;
}

std::string word_from_index(std::uint64_t s, int n) {
    static constexpr char letters[4] = {'I', 'X', 'Y', 'Z'};
    std::string w(static_cast<std::size_t>(n), 'I');
    for (int q = n - 1; q >= 0; --q) {
        w[static_cast<std::size_t>(q)] = letters[s & 3];
        s >>= 2;
    }
    return w;
}

std::complex<double> word_trace(const WordMasks& m, const Eigen::MatrixXcd& op) {
    std::complex<double> tr = 0;
    const std::uint64_t dim = static_cast<std::uint64_t>(op.rows());
    for (std::uint64_t k = 0; k < dim; ++k) {
        tr += word_phase(m, k) * op(static_cast<Eigen::Index>(k),
                                    static_cast<Eigen::Index>(k ^ m.flip));
    }
    return tr;
}
}  // namespace

PauliObservable::PauliObservable(int n) : n_(n) {
    if (n < 1 || n > 16) throw std::invalid_argument("PauliObservable: bad qubit count");
}

void PauliObservable::set(const std::string& word, double coeff) {
    if (static_cast<int>(word.size()) != n_) {
        throw std::invalid_argument("Pauli word length must match the qubit count");
    }
    word_masks(word);  // validates letters
    if (coeff == 0.0) {
        terms_.erase(word);
    } else {
        terms_[word] = coeff;
    }
}

void PauliObservable::add(const std::string& word, double coeff) {
    set(word, this->coeff(word) + coeff);
}

double PauliObservable::coeff(const std::string& word) const {
    auto it = terms_.find(word);
    return it == terms_.end() ? 0.0 : it->second;
}

double pauli_word_expectation(const std::string& word, const QubitKet& state) {
    if (static_cast<int>(word.size()) != state.qubit_count()) {
        throw std::invalid_argument("Pauli word length must match the qubit count");
    }
    const WordMasks m = word_masks(word);
    const auto& v = state.amplitudes();
    std::complex<double> e = 0;
    for (std::uint64_t k = 0; k < state.dim(); ++k) {
        // <psi| sigma |psi> = sum_k conj(psi_{k ^ flip}) phase(k) psi_k
        e += std::conj(v(static_cast<Eigen::Index>(k ^ m.flip))) * word_phase(m, k) *
             v(static_cast<Eigen::Index>(k));
    }
    return e.real();
}

double pauli_word_expectation(const std::string& word, const DensityOperator& state) {
    if (static_cast<int>(word.size()) != state.qubit_count()) {
        throw std::invalid_argument("Pauli word length must match the qubit count");
    }
    return word_trace(word_masks(word), state.matrix()).real();
}

namespace {
template <typename State>
double expectation_impl(const PauliObservable& obs, const State& state) {
    if (obs.qubit_count() != state.qubit_count()) {
        throw std::invalid_argument("observable and state dimensions do not match");
    }
    double e = 0;
    for (const auto& [word, coeff] : obs.terms()) {
        e += coeff * pauli_word_expectation(word, state);
    }
    return e;
}
}  // namespace

double expectation(const PauliObservable& obs, const QubitKet& state) {
    return expectation_impl(obs, state);
}

double expectation(const PauliObservable& obs, const DensityOperator& state) {
    return expectation_impl(obs, state);
}

PauliObservable pauli_decompose(const Eigen::MatrixXcd& op, Execution policy, double dropTol) {
    const Eigen::Index dim = op.rows();
    if (dim != op.cols() || dim < 2 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("operator dimension must be a power of two");
    }
    if ((op - op.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
        throw std::domain_error("pauli_decompose needs a Hermitian operator");
    }
    const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
    const std::int64_t words = std::int64_t{1} << (2 * n);
    std::vector<double> coeffs(static_cast<std::size_t>(words));
    parallel_for(policy, words, [&](std::int64_t s) {
        const WordMasks m =
            word_masks(word_from_index(static_cast<std::uint64_t>(s), n));
        coeffs[static_cast<std::size_t>(s)] =
            word_trace(m, op).real() / static_cast<double>(dim);
    });
    PauliObservable obs(n);
    for (std::int64_t s = 0; s < words; ++s) {
        if (std::abs(coeffs[static_cast<std::size_t>(s)]) > dropTol) {
            obs.set(word_from_index(static_cast<std::uint64_t>(s), n),
                    coeffs[static_cast<std::size_t>(s)]);
        }
    }
    return obs;
}

Eigen::MatrixXcd pauli_word_matrix(const std::string& word) {
    const int n = static_cast<int>(word.size());
    const WordMasks m = word_masks(word);
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k) {
        mat(static_cast<Eigen::Index>(k ^ m.flip), static_cast<Eigen::Index>(k)) =
            word_phase(m, k);
    }
    return mat;
}

Eigen::MatrixXcd reconstruct(const PauliObservable& obs) {
    const Eigen::Index dim = Eigen::Index{1} << obs.qubit_count();
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [word, coeff] : obs.terms()) {
        mat += coeff * pauli_word_matrix(word);
    }
    return mat;
}

std::string pauli_to_text(const PauliObservable& obs) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& [word, coeff] : obs.terms()) {
        out << coeff << ' ' << word << '\n';
    }
    return out.str();
}

PauliObservable pauli_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<std::string, double>> parsed;
    int n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double coeff = 0;
        std::string word;
        if (!(ls >> coeff >> word)) {
            throw std::invalid_argument("bad Pauli text line: " + line);
        }
        parsed.emplace_back(word, coeff);
        n = static_cast<int>(word.size());
    }
    if (parsed.empty()) throw std::invalid_argument("empty Pauli text");
    PauliObservable obs(n);
    for (const auto& [word, coeff] : parsed) obs.add(word, coeff);
    return obs;
}

bool single_pauli_type(const std::string& word) {
    char type = 0;
    for (char c : word) {
        letter_index(c);
        if (c == 'I') continue;
        if (type == 0) {
            type = c;
        } else if (type != c) {
            return false;
        }
    }
    return true;
}

}  // namespace psi6
