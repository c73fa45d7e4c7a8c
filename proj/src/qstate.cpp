#include "psi6/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace psi6 {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kNullTol = 1e-14;
const std::complex<double> kI{0.0, 1.0};

Eigen::VectorXcd check_dim(int n, Eigen::VectorXcd v, const char* what) {
    if (n < 1 || v.size() != (Eigen::Index{1} << n)) {
        throw std::invalid_argument(std::string(what) + ": amplitude count must be 2^n");
    }
    return v;
}
}  // namespace

QubitKet::QubitKet(int n, Eigen::VectorXcd amplitudes)
    : n_(n), amps_(check_dim(n, std::move(amplitudes), "QubitKet")) {
    if (std::abs(amps_.norm() - 1.0) > kNormTol) {
        throw std::invalid_argument("QubitKet amplitudes must have unit norm");
    }
}

QubitKet QubitKet::computational(int n, std::uint64_t index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return QubitKet(n, std::move(v));
}

DensityOperator::DensityOperator(int n, Eigen::MatrixXcd matrix) : n_(n), mat_(std::move(matrix)) {
    const Eigen::Index d = Eigen::Index{1} << n;
    if (n < 1 || mat_.rows() != d || mat_.cols() != d) {
        throw std::invalid_argument("DensityOperator: matrix must be 2^n x 2^n");
    }
    if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    }
    if (std::abs(mat_.trace() - std::complex<double>(1.0)) > kHermTol) {
        throw std::invalid_argument("DensityOperator: trace must be 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw std::invalid_argument("DensityOperator: matrix is not positive semidefinite");
    }
}

DensityOperator DensityOperator::pure(const QubitKet& ket) {
    return DensityOperator(ket.qubit_count(), ket.amplitudes() * ket.amplitudes().adjoint());
}

DensityOperator DensityOperator::maximally_mixed(int n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    return DensityOperator(n, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

QubitKet kron(const QubitKet& a, const QubitKet& b) {
    Eigen::VectorXcd v(a.amplitudes().size() * b.amplitudes().size());
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        v.segment(i * b.amplitudes().size(), b.amplitudes().size()) =
            a.amplitudes()(i) * b.amplitudes();
    }
    return QubitKet(a.qubit_count() + b.qubit_count(), std::move(v));
}

namespace {
QubitKet w3_state(bool flipped) {
    const double a = 1.0 / std::sqrt(3.0);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    if (!flipped) {
        v(0b001) = a;  // HHV
        v(0b010) = a;  // HVH
        v(0b100) = a;  // VHH
    } else {
        v(0b110) = a;  // VVH
        v(0b101) = a;  // VHV
        v(0b011) = a;  // HVV
    }
    return QubitKet(3, std::move(v));
}
}  // namespace

QubitKet reference_state(ReferenceState name) {
    switch (name) {
        case ReferenceState::W3:
            return w3_state(false);
        case ReferenceState::W3bar:
            return w3_state(true);
        case ReferenceState::Psi2Plus: {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
            v(0b01) = v(0b10) = 1.0 / std::sqrt(2.0);
            return QubitKet(2, std::move(v));
        }
        case ReferenceState::GHZ6Plus: {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(64);
            v(0b000111) = v(0b111000) = 1.0 / std::sqrt(2.0);
            return QubitKet(6, std::move(v));
        }
        case ReferenceState::Psi6Plus: {
            const QubitKet ghz = reference_state(ReferenceState::GHZ6Plus);
            const QubitKet w = w3_state(false);
            const QubitKet wbar = w3_state(true);
            Eigen::VectorXcd v = (1.0 / std::sqrt(2.0)) * ghz.amplitudes() +
                                 0.5 * (kron(wbar, w).amplitudes() + kron(w, wbar).amplitudes());
            return QubitKet(6, std::move(v));
        }
    }
    throw std::invalid_argument("unknown reference state");
}

QubitKet four_qubit_singlet() {
    const double a = 1.0 / std::sqrt(3.0);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
    v(0b0011) = a;       // HHVV
    v(0b1100) = a;       // VVHH
    v(0b0101) = -a / 2;  // HVHV
    v(0b0110) = -a / 2;  // HVVH
    v(0b1001) = -a / 2;  // VHHV
    v(0b1010) = -a / 2;  // VHVH
    return QubitKet(4, std::move(v));
}

DensityOperator add_white_noise(const QubitKet& ket, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("white-noise weight p must lie in [0, 1]");
    }
    const Eigen::Index d = static_cast<Eigen::Index>(ket.dim());
    Eigen::MatrixXcd m = p * (ket.amplitudes() * ket.amplitudes().adjoint()) +
                         ((1.0 - p) / static_cast<double>(d)) * Eigen::MatrixXcd::Identity(d, d);
    return DensityOperator(ket.qubit_count(), std::move(m));
}

namespace {
Eigen::VectorXcd apply_1q(const Eigen::VectorXcd& v, int n, int position,
                          const Eigen::Matrix2cd& u) {
    const int shift = n - 1 - position;
    const std::uint64_t mask = std::uint64_t{1} << shift;
    Eigen::VectorXcd out(v.size());
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(v.size()); ++k) {
        if (k & mask) continue;
        const std::uint64_t k1 = k | mask;
        const auto v0 = v(static_cast<Eigen::Index>(k));
        const auto v1 = v(static_cast<Eigen::Index>(k1));
        out(static_cast<Eigen::Index>(k)) = u(0, 0) * v0 + u(0, 1) * v1;
        out(static_cast<Eigen::Index>(k1)) = u(1, 0) * v0 + u(1, 1) * v1;
    }
    return out;
}

Eigen::MatrixXcd rotate_all(const Eigen::MatrixXcd& rho, int n, const SettingVector& settings) {
    Eigen::MatrixXcd m = rho;
    for (int q = 0; q < n; ++q) {
        const Eigen::Matrix2cd u = analyzer_basis(settings[static_cast<std::size_t>(q)]).rotation();
        // Apply U on the left and U^dag on the right, one qubit at a time.
        for (Eigen::Index col = 0; col < m.cols(); ++col) {
            m.col(col) = apply_1q(m.col(col), n, q, u);
        }
        for (Eigen::Index row = 0; row < m.rows(); ++row) {
            m.row(row) = apply_1q(m.row(row).transpose(), n, q, u.conjugate()).transpose();
        }
    }
    return m;
}

void check_settings(int n, const SettingVector& settings) {
    if (static_cast<int>(settings.size()) != n) {
        throw std::invalid_argument("settings length must match the qubit count");
    }
}
}  // namespace

QubitKet apply_single_qubit(const QubitKet& ket, int position, const Eigen::Matrix2cd& u) {
    return QubitKet(ket.qubit_count(),
                    apply_1q(ket.amplitudes(), ket.qubit_count(), position, u));
}

std::vector<double> outcome_distribution(const QubitKet& state, const SettingVector& settings) {
    const int n = state.qubit_count();
    check_settings(n, settings);
    Eigen::VectorXcd v = state.amplitudes();
    for (int q = 0; q < n; ++q) {
        v = apply_1q(v, n, q, analyzer_basis(settings[static_cast<std::size_t>(q)]).rotation());
    }
    std::vector<double> probs(static_cast<std::size_t>(v.size()));
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        probs[static_cast<std::size_t>(k)] = std::norm(v(k));
    }
    return probs;
}

std::vector<double> outcome_distribution(const DensityOperator& state,
                                         const SettingVector& settings) {
    const int n = state.qubit_count();
    check_settings(n, settings);
    const Eigen::MatrixXcd m = rotate_all(state.matrix(), n, settings);
    std::vector<double> probs(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        probs[static_cast<std::size_t>(k)] = std::real(m(k, k));
    }
    return probs;
}

int outcome_parity(std::uint64_t index, int n) {
    int ones = 0;
    for (int q = 0; q < n; ++q) ones += QubitKet::bit_at(index, q, n);
    return (ones % 2 == 0) ? 1 : -1;
}

namespace {
template <typename State>
double correlation_impl(const State& state, const SettingVector& settings) {
    const std::vector<double> probs = outcome_distribution(state, settings);
    double corr = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        corr += outcome_parity(k, static_cast<int>(settings.size())) * probs[k];
    }
    return corr;
}
}  // namespace

double correlation(const QubitKet& state, const SettingVector& settings) {
    return correlation_impl(state, settings);
}

double correlation(const DensityOperator& state, const SettingVector& settings) {
    return correlation_impl(state, settings);
}

ProjectionResult project_qubit(const QubitKet& ket, int position,
                               const Eigen::Vector2cd& outcome) {
    const int n = ket.qubit_count();
    if (position < 0 || position >= n) {
        throw std::invalid_argument("project_qubit: position out of range");
    }
    if (std::abs(outcome.norm() - 1.0) > kNormTol) {
        throw std::invalid_argument("project_qubit: outcome ket must be normalized");
    }
    const int shift = n - 1 - position;
    const std::uint64_t mask = std::uint64_t{1} << shift;
    const std::uint64_t lowMask = mask - 1;
    const Eigen::Index outDim = Eigen::Index{1} << (n - 1);
    Eigen::VectorXcd rest(outDim);
    for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(outDim); ++r) {
        const std::uint64_t base = ((r & ~lowMask) << 1) | (r & lowMask);
        rest(static_cast<Eigen::Index>(r)) =
            std::conj(outcome(0)) * ket.amplitudes()(static_cast<Eigen::Index>(base)) +
            std::conj(outcome(1)) * ket.amplitudes()(static_cast<Eigen::Index>(base | mask));
    }
    ProjectionResult result;
    result.probability = rest.squaredNorm();
    if (result.probability < kNullTol) {
        result.probability = std::max(result.probability, 0.0);
        return result;  // null result
    }
    result.state = QubitKet(n - 1, rest / rest.norm());
    return result;
}

double fidelity(const DensityOperator& rho, const QubitKet& target) {
    if (rho.qubit_count() != target.qubit_count()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const std::complex<double> val =
        (target.amplitudes().adjoint() * rho.matrix() * target.amplitudes())(0);
    return std::clamp(std::real(val), 0.0, 1.0);
}

double fidelity(const QubitKet& ket, const QubitKet& target) {
    if (ket.qubit_count() != target.qubit_count()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    return std::norm(target.amplitudes().dot(ket.amplitudes()));
}

double estimate_p_from_correlations(double corrZ, double corrX, double corrY) {
    for (double c : {corrZ, corrX, corrY}) {
        if (!(c >= -1.0 && c <= 1.0)) {
            throw std::domain_error("correlations must lie in [-1, 1]");
        }
    }
    return (std::abs(corrZ) + std::abs(corrX) + std::abs(corrY)) / 3.0;
}

DensityOperator reduce_to_qubit(const QubitKet& ket, int position) {
    const int n = ket.qubit_count();
    if (position < 0 || position >= n) {
        throw std::invalid_argument("reduce_to_qubit: position out of range");
    }
    const int shift = n - 1 - position;
    const std::uint64_t mask = std::uint64_t{1} << shift;
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    const auto& v = ket.amplitudes();
    for (std::uint64_t k = 0; k < ket.dim(); ++k) {
        if (k & mask) continue;
        const auto v0 = v(static_cast<Eigen::Index>(k));
        const auto v1 = v(static_cast<Eigen::Index>(k | mask));
        rho(0, 0) += std::norm(v0);
        rho(1, 1) += std::norm(v1);
        rho(0, 1) += v0 * std::conj(v1);
    }
    rho(1, 0) = std::conj(rho(0, 1));
    return DensityOperator(1, rho);
}

std::string outcome_label(std::uint64_t index, int n) {
    std::string s(static_cast<std::size_t>(n), 'H');
    for (int q = 0; q < n; ++q) {
        if (QubitKet::bit_at(index, q, n)) s[static_cast<std::size_t>(q)] = 'V';
    }
    return s;
}

std::string outcome_label(std::uint64_t index, const SettingVector& settings) {
    const int n = static_cast<int>(settings.size());
    std::string s(settings.size(), '0');
    for (int q = 0; q < n; ++q) {
        const MeasurementBasis b = analyzer_basis(settings[static_cast<std::size_t>(q)]);
        s[static_cast<std::size_t>(q)] =
            QubitKet::bit_at(index, q, n) ? b.labelMinus : b.labelPlus;
    }
    return s;
}

std::uint64_t outcome_index(const std::string& label) {
    std::uint64_t idx = 0;
    for (char c : label) {
        idx <<= 1;
        if (c == 'V' || c == 'A' || c == 'R' || c == '1') {
            idx |= 1;
        } else if (c != 'H' && c != 'D' && c != 'L' && c != '0') {
            throw std::invalid_argument(std::string("unknown outcome letter '") + c + "'");
        }
    }
    return idx;
}

QubitKet random_product_ket(int n, std::mt19937_64& rng) {
    auto one_qubit = [&rng] {
        const Eigen::Vector2cd b = random_bloch_ket(rng);
        Eigen::VectorXcd v(2);
        v << b(0), b(1);
        return QubitKet(1, std::move(v));
    };
    QubitKet ket = one_qubit();
    for (int q = 1; q < n; ++q) ket = kron(ket, one_qubit());
    return ket;
}

QubitKet random_ket(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(Eigen::Index{1} << n);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        v(k) = std::complex<double>(gauss(rng), gauss(rng));
    }
    return QubitKet(n, v / v.norm());
}

Eigen::Vector2cd random_bloch_ket(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double z = 1.0 - 2.0 * uni(rng);
    const double phi = 2.0 * M_PI * uni(rng);
    const double theta = std::acos(std::clamp(z, -1.0, 1.0));
    Eigen::Vector2cd v;
    v << std::cos(theta / 2), std::exp(kI * phi) * std::sin(theta / 2);
    return v;
}

Eigen::Matrix2cd random_single_qubit_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix2cd m;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) m(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    }
    const Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
    Eigen::Matrix2cd q = qr.householderQ();
    const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity of QR so the distribution is Haar.
    for (int c = 0; c < 2; ++c) {
        const std::complex<double> d = r(c, c);
        if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
    }
    return q;
}

nlohmann::json ket_to_json(const QubitKet& ket) {
    nlohmann::json amps = nlohmann::json::array();
    for (Eigen::Index k = 0; k < ket.amplitudes().size(); ++k) {
        amps.push_back({{"label", outcome_label(static_cast<std::uint64_t>(k), ket.qubit_count())},
                        {"re", ket.amplitudes()(k).real()},
                        {"im", ket.amplitudes()(k).imag()}});
    }
    return {{"qubits", ket.qubit_count()}, {"amplitudes", std::move(amps)}};
}

QubitKet ket_from_json(const nlohmann::json& j) {
    const int n = j.at("qubits").get<int>();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    for (const auto& a : j.at("amplitudes")) {
        const std::uint64_t idx = outcome_index(a.at("label").get<std::string>());
        v(static_cast<Eigen::Index>(idx)) =
            std::complex<double>(a.at("re").get<double>(), a.at("im").get<double>());
    }
    return QubitKet(n, std::move(v));
}

}  // namespace psi6
