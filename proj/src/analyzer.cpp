#include "psi6/analyzer.hpp"

#include <cmath>
#include <stdexcept>

namespace psi6 {

namespace {
const std::complex<double> kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.7071067811865475244;

Eigen::Matrix2cd rotation(double theta) {
    Eigen::Matrix2cd r;
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return r;
}
}  // namespace

AnalyzerSetting AnalyzerSetting::named(NamedBasis b) {
    AnalyzerSetting s;
    s.kind_ = Kind::Named;
    s.named_ = b;
    return s;
}

AnalyzerSetting AnalyzerSetting::waveplates(double hwpAngle, double qwpAngle) {
    AnalyzerSetting s;
    s.kind_ = Kind::Waveplates;
    s.named_.reset();
    s.hwp_ = hwpAngle;
    s.qwp_ = qwpAngle;
    return s;
}

AnalyzerSetting AnalyzerSetting::bloch(double nx, double ny, double nz) {
    const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (norm < 1e-12) throw std::invalid_argument("Bloch direction must be nonzero");
    AnalyzerSetting s;
    s.kind_ = Kind::Bloch;
    s.named_.reset();
    s.blochDir_ = Eigen::Vector3d(nx / norm, ny / norm, nz / norm);
    return s;
}

Eigen::Matrix2cd jones_hwp(double theta) {
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = 1;
    d(1, 1) = -1;
    return rotation(theta) * d * rotation(-theta);
}

Eigen::Matrix2cd jones_qwp(double theta) {
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = 1;
    d(1, 1) = kI;
    return rotation(theta) * d * rotation(-theta);
}

Eigen::Matrix2cd MeasurementBasis::rotation() const {
    Eigen::Matrix2cd r;
    r.row(0) = plus.adjoint();
    r.row(1) = minus.adjoint();
    return r;
}

MeasurementBasis analyzer_basis(const AnalyzerSetting& setting) {
    MeasurementBasis b;
    if (setting.named_basis()) {
        switch (*setting.named_basis()) {
            case NamedBasis::HV:
                b.plus << 1, 0;
                b.minus << 0, 1;
                b.labelPlus = 'H';
                b.labelMinus = 'V';
                return b;
            case NamedBasis::DA:
                b.plus << kInvSqrt2, kInvSqrt2;
                b.minus << kInvSqrt2, -kInvSqrt2;
                b.labelPlus = 'D';
                b.labelMinus = 'A';
                return b;
            case NamedBasis::LR:
                b.plus << kInvSqrt2, kI * kInvSqrt2;
                b.minus << kInvSqrt2, -kI * kInvSqrt2;
                b.labelPlus = 'L';
                b.labelMinus = 'R';
                return b;
        }
    }
    if (setting.kind() == AnalyzerSetting::Kind::Waveplates) {
        const Eigen::Matrix2cd u = jones_qwp(setting.qwp_angle()) * jones_hwp(setting.hwp_angle());
        b.plus = u.adjoint() * Eigen::Vector2cd(1, 0);
        b.minus = u.adjoint() * Eigen::Vector2cd(0, 1);
        return b;
    }
    // Bloch direction: +-1 eigenvectors of n.sigma.
    const Eigen::Vector3d n = setting.bloch_direction();
    const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
    const double phi = std::atan2(n.y(), n.x());
    b.plus << std::cos(theta / 2), std::exp(kI * phi) * std::sin(theta / 2);
    b.minus << -std::exp(-kI * phi) * std::sin(theta / 2), std::cos(theta / 2);
    return b;
}

SettingVector uniform_settings(NamedBasis b, int n) {
    return SettingVector(static_cast<std::size_t>(n), AnalyzerSetting::named(b));
}

std::optional<NamedBasis> parse_basis(const std::string& name) {
    if (name == "HV" || name == "hv") return NamedBasis::HV;
    if (name == "DA" || name == "da") return NamedBasis::DA;
    if (name == "LR" || name == "lr") return NamedBasis::LR;
    return std::nullopt;
}

std::string basis_name(NamedBasis b) {
    switch (b) {
        case NamedBasis::HV: return "HV";
        case NamedBasis::DA: return "DA";
        case NamedBasis::LR: return "LR";
    }
    return "HV";
}

}  // namespace psi6
