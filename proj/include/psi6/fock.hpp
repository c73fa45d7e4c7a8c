#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "psi6/modes.hpp"
#include "psi6/optics.hpp"
#include "psi6/qstate.hpp"

namespace psi6 {

using Occupation = std::vector<int>;

/// Sparse polynomial in creation operators applied to the vacuum: a finite
/// map from per-mode occupation vectors to complex amplitudes.
///
/// Amplitude convention: coefficients of the monomial basis
/// prod_m (m^dag)^{n_m} |0>, so the squared norm is
/// sum |amp|^2 * prod n_m!. States written with normalized creation-operator
/// polynomials then have unit norm without converting to the orthonormal
/// Fock basis. Terms with |amp| below 1e-12 are dropped on collection.
class FockPolynomial {
public:
    static constexpr double kCollectTol = 1e-12;

    explicit FockPolynomial(ModeRegister reg);

    static FockPolynomial vacuum(ModeRegister reg);
    static FockPolynomial monomial(ModeRegister reg, Occupation occ, std::complex<double> amp);

    const ModeRegister& mode_register() const { return reg_; }
    const std::map<Occupation, std::complex<double>>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add(const Occupation& occ, std::complex<double> amp);
    std::complex<double> amplitude(const Occupation& occ) const;

    double squared_norm() const;
    double norm() const;

    FockPolynomial scaled(std::complex<double> factor) const;
    FockPolynomial operator+(const FockPolynomial& other) const;

    /// Drops terms with |amp| < kCollectTol.
    void prune();

    /// Total photon number if every term agrees, otherwise empty.
    std::optional<int> total_photon_number() const;

private:
    ModeRegister reg_;
    std::map<Occupation, std::complex<double>> terms_;
};

/// Two-mode pair emitter. alpha is the dimensionless coupling (|alpha| < 1),
/// relativePhase the phase between the two terms of the exponent, and the
/// input modes are a0H, a0V, b0H, b0V.
struct PdcSource {
    std::complex<double> alpha;
    double relativePhase = 0;
    ModeRegister inputModes = source_register();

    PdcSource(std::complex<double> alpha_, double relativePhase_ = 0);
};

/// C = 1/sqrt(sum_n (1+n)|alpha|^{2n}) = 1 - |alpha|^2. Throws
/// std::domain_error for |alpha| >= 1 (state not normalizable).
double normalization_constant(std::complex<double> alpha);

/// P(n) = C^2 (1+n) |alpha|^{2n} for n = 0..maxOrder.
std::vector<double> pair_number_distribution(const PdcSource& source, int maxOrder);

/// Order-n term of the emission series:
/// (-i alpha)^n/n! (a0H^dag b0V^dag + e^{i phi} a0V^dag b0H^dag)^n |0>.
/// Every term has n photons in each arm (2n in total).
FockPolynomial pdc_term(const PdcSource& source, int order);

/// Substitutes each input creation operator with the network's combination
/// of output creation operators and re-collects. Preserves the squared norm
/// for isometric networks. Throws std::invalid_argument when the network
/// input register differs from the state's register.
FockPolynomial apply_network(const FockPolynomial& state, const LinearNetwork& network);

struct PostselectResult {
    std::optional<QubitKet> ket;  // empty when the post-selected subspace is empty
    double probability = 0;       // squared weight of the kept component
};

/// Keeps the terms with exactly one photon (either polarization) in every
/// listed spatial mode and none elsewhere, and encodes them as qubits
/// (H -> 0, V -> 1; qubit order = list order). The returned ket is
/// renormalized and gauge-fixed: the first nonzero amplitude in basis order
/// is rotated to be real positive. `probability` is the squared weight of
/// the kept component before renormalization (the post-selection probability
/// when the input is normalized).
PostselectResult postselect_one_per_spatial_mode(const FockPolynomial& state,
                                                 const std::vector<std::string>& spatialModes);

nlohmann::json fock_to_json(const FockPolynomial& poly);
FockPolynomial fock_from_json(const nlohmann::json& j);

}  // namespace psi6
