#include "psi6/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace psi6 {

namespace {
const std::complex<double> kI{0.0, 1.0};

double factorial(int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double occupation_factorials(const Occupation& occ) {
    double f = 1;
    for (int n : occ) f *= factorial(n);
    return f;
}

std::complex<double> ipow(std::complex<double> base, int exponent) {
    std::complex<double> r = 1.0;
    for (int k = 0; k < exponent; ++k) r *= base;
    return r;
}
}  // namespace

FockPolynomial::FockPolynomial(ModeRegister reg) : reg_(std::move(reg)) {}

FockPolynomial FockPolynomial::vacuum(ModeRegister reg) {
    FockPolynomial p(std::move(reg));
    p.add(Occupation(p.reg_.size(), 0), 1.0);
    return p;
}

FockPolynomial FockPolynomial::monomial(ModeRegister reg, Occupation occ,
                                        std::complex<double> amp) {
    FockPolynomial p(std::move(reg));
    p.add(occ, amp);
    return p;
}

void FockPolynomial::add(const Occupation& occ, std::complex<double> amp) {
    if (occ.size() != reg_.size()) {
        throw std::invalid_argument("occupation length does not match the mode register");
    }
    for (int n : occ) {
        if (n < 0) throw std::invalid_argument("negative photon count");
    }
    auto it = terms_.find(occ);
    if (it == terms_.end()) {
        if (std::abs(amp) >= kCollectTol) terms_.emplace(occ, amp);
        return;
    }
    it->second += amp;
    if (std::abs(it->second) < kCollectTol) terms_.erase(it);
}

std::complex<double> FockPolynomial::amplitude(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? std::complex<double>{0.0} : it->second;
}

double FockPolynomial::squared_norm() const {
    double s = 0;
    for (const auto& [occ, amp] : terms_) s += std::norm(amp) * occupation_factorials(occ);
    return s;
}

double FockPolynomial::norm() const { return std::sqrt(squared_norm()); }

FockPolynomial FockPolynomial::scaled(std::complex<double> factor) const {
    FockPolynomial out(reg_);
    for (const auto& [occ, amp] : terms_) out.add(occ, amp * factor);
    return out;
}

FockPolynomial FockPolynomial::operator+(const FockPolynomial& other) const {
    if (!(reg_ == other.reg_)) {
        throw std::invalid_argument("cannot add polynomials over different registers");
    }
    FockPolynomial out = *this;
    for (const auto& [occ, amp] : other.terms_) out.add(occ, amp);
    return out;
}

void FockPolynomial::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it = std::abs(it->second) < kCollectTol ? terms_.erase(it) : std::next(it);
    }
}

std::optional<int> FockPolynomial::total_photon_number() const {
    std::optional<int> total;
    for (const auto& [occ, amp] : terms_) {
        const int t = std::accumulate(occ.begin(), occ.end(), 0);
        if (!total) {
            total = t;
        } else if (*total != t) {
            return std::nullopt;
        }
    }
    return total;
}

PdcSource::PdcSource(std::complex<double> alpha_, double relativePhase_) : alpha(alpha_) {
    if (std::abs(alpha) >= 1.0) {
        throw std::domain_error("pair coupling must satisfy |alpha| < 1");
    }
    relativePhase = std::fmod(relativePhase_, 2.0 * M_PI);
    if (relativePhase < 0) relativePhase += 2.0 * M_PI;
}

double normalization_constant(std::complex<double> alpha) {
    if (std::abs(alpha) >= 1.0) {
        throw std::domain_error("state not normalizable: |alpha| must be < 1");
    }
    // 1/sqrt(sum_n (1+n) x^n) with x = |alpha|^2 sums to 1 - x.
    return 1.0 - std::norm(alpha);
}

std::vector<double> pair_number_distribution(const PdcSource& source, int maxOrder) {
    if (maxOrder < 0) throw std::invalid_argument("maxOrder must be non-negative");
    const double c2 = std::pow(normalization_constant(source.alpha), 2);
    const double x = std::norm(source.alpha);
    std::vector<double> p(static_cast<std::size_t>(maxOrder) + 1);
    double xn = 1;
    for (int n = 0; n <= maxOrder; ++n) {
        p[static_cast<std::size_t>(n)] = c2 * (1 + n) * xn;
        xn *= x;
    }
    return p;
}

FockPolynomial pdc_term(const PdcSource& source, int order) {
    if (order < 0) throw std::invalid_argument("order must be non-negative");
    FockPolynomial out(source.inputModes);
    // (-i alpha)^n / n! * sum_k C(n,k) e^{i(n-k)phi} (a0H b0V)^k (a0V b0H)^{n-k}
    const std::complex<double> prefactor = ipow(-kI * source.alpha, order) / factorial(order);
    for (int k = 0; k <= order; ++k) {
        const double binom = factorial(order) / (factorial(k) * factorial(order - k));
        const std::complex<double> phase =
            std::exp(kI * (source.relativePhase * static_cast<double>(order - k)));
        out.add({k, order - k, order - k, k}, prefactor * binom * phase);
    }
    return out;
}

FockPolynomial apply_network(const FockPolynomial& state, const LinearNetwork& network) {
    if (!(network.input_register() == state.mode_register())) {
        throw std::invalid_argument("network input register does not match the state register");
    }
    const Eigen::MatrixXcd& m = network.matrix();
    const std::size_t outModes = network.output_register().size();
    FockPolynomial out(network.output_register());
    for (const auto& [occ, amp] : state.terms()) {
        // Expand prod_k (sum_j m(j,k) out_j)^{occ_k} one photon at a time.
        std::map<Occupation, std::complex<double>> partial{{Occupation(outModes, 0), amp}};
        for (std::size_t k = 0; k < occ.size(); ++k) {
            for (int photon = 0; photon < occ[static_cast<std::size_t>(k)]; ++photon) {
                std::map<Occupation, std::complex<double>> next;
                for (const auto& [pocc, pamp] : partial) {
                    for (std::size_t j = 0; j < outModes; ++j) {
                        const std::complex<double> c =
                            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
                        if (std::abs(c) == 0.0) continue;
                        Occupation nocc = pocc;
                        ++nocc[j];
                        next[nocc] += pamp * c;
                    }
                }
                partial = std::move(next);
            }
        }
        for (const auto& [pocc, pamp] : partial) out.add(pocc, pamp);
    }
    out.prune();
    return out;
}

PostselectResult postselect_one_per_spatial_mode(const FockPolynomial& state,
                                                 const std::vector<std::string>& spatialModes) {
    const ModeRegister& reg = state.mode_register();
    const int n = static_cast<int>(spatialModes.size());
    // Locate the H and V sub-modes of every listed spatial mode.
    std::vector<std::pair<std::size_t, std::size_t>> hv;
    hv.reserve(spatialModes.size());
    for (const auto& s : spatialModes) {
        const auto ih = reg.index_of({s, Pol::H});
        const auto iv = reg.index_of({s, Pol::V});
        if (!ih || !iv) {
            throw std::invalid_argument("register lacks H/V sub-modes for spatial mode '" + s +
                                        "'");
        }
        hv.emplace_back(*ih, *iv);
    }

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    double weight = 0;
    for (const auto& [occ, amp] : state.terms()) {
        std::uint64_t index = 0;
        bool keep = true;
        int listed = 0;
        for (int q = 0; q < n && keep; ++q) {
            const int nh = occ[hv[static_cast<std::size_t>(q)].first];
            const int nv = occ[hv[static_cast<std::size_t>(q)].second];
            if (nh + nv != 1) {
                keep = false;
            } else {
                index = (index << 1) | static_cast<std::uint64_t>(nv);
                listed += 1;
            }
        }
        if (!keep) continue;
        // No photons outside the listed modes.
        int total = std::accumulate(occ.begin(), occ.end(), 0);
        if (total != listed) continue;
        // All surviving occupations are 0/1, so monomial and orthonormal
        // amplitudes coincide.
        amps(static_cast<Eigen::Index>(index)) += amp;
    }
    weight = amps.squaredNorm();

    PostselectResult result;
    result.probability = weight;
    if (weight < 1e-28) {
        result.probability = 0;
        return result;  // null result: empty post-selected subspace
    }
    // Gauge fix: rotate the first nonzero amplitude to the positive real axis.
    std::complex<double> gauge = 1.0;
    for (Eigen::Index k = 0; k < amps.size(); ++k) {
        const std::complex<double> a = amps(k);
        if (std::abs(a) > 1e-14) {
            gauge = std::conj(a) / std::abs(a);
            break;
        }
    }
    result.ket = QubitKet(n, amps * gauge / std::sqrt(weight));
    return result;
}

nlohmann::json fock_to_json(const FockPolynomial& poly) {
    nlohmann::json modes = nlohmann::json::array();
    for (const auto& m : poly.mode_register().modes()) modes.push_back(m.label());
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [occ, amp] : poly.terms()) {
        terms.push_back({{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return {{"modes", std::move(modes)}, {"terms", std::move(terms)}};
}

FockPolynomial fock_from_json(const nlohmann::json& j) {
    std::vector<OpticalMode> modes;
    for (const auto& label : j.at("modes")) {
        const std::string s = label.get<std::string>();
        if (s.size() < 2 || (s.back() != 'H' && s.back() != 'V')) {
            throw std::invalid_argument("mode label must end in H or V: " + s);
        }
        modes.push_back({s.substr(0, s.size() - 1), s.back() == 'H' ? Pol::H : Pol::V});
    }
    FockPolynomial poly{ModeRegister(std::move(modes))};
    for (const auto& t : j.at("terms")) {
        poly.add(t.at("occ").get<Occupation>(),
                 {t.at("re").get<double>(), t.at("im").get<double>()});
    }
    return poly;
}

}  // namespace psi6
