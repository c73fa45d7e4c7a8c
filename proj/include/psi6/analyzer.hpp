#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace psi6 {

enum class NamedBasis { HV, DA, LR };

/// One polarization analyzer: either a named basis or a HWP/QWP pair in
/// front of a polarizing splitter, or an explicit Bloch direction.
/// Named bases: HV = sigma_z eigenbasis, DA = sigma_x with
/// |D/A> = (|H> +- |V>)/sqrt2, LR = sigma_y with |L/R> = (|H> +- i|V>)/sqrt2.
class AnalyzerSetting {
public:
    enum class Kind { Named, Waveplates, Bloch };

    static AnalyzerSetting named(NamedBasis b);
    static AnalyzerSetting waveplates(double hwpAngle, double qwpAngle);
    static AnalyzerSetting bloch(double nx, double ny, double nz);

    Kind kind() const { return kind_; }
    std::optional<NamedBasis> named_basis() const { return named_; }
    double hwp_angle() const { return hwp_; }
    double qwp_angle() const { return qwp_; }
    const Eigen::Vector3d& bloch_direction() const { return blochDir_; }

private:
    AnalyzerSetting() = default;
    Kind kind_ = Kind::Named;
    std::optional<NamedBasis> named_ = NamedBasis::HV;
    double hwp_ = 0, qwp_ = 0;
    Eigen::Vector3d blochDir_{0, 0, 1};
};

/// Orthonormal single-qubit measurement pair. `plus` is the outcome reported
/// with the basis's first letter (H, D, L) and maps to bit 0.
struct MeasurementBasis {
    Eigen::Vector2cd plus;
    Eigen::Vector2cd minus;
    char labelPlus = '0';
    char labelMinus = '1';

    /// Rotation into the measurement frame: rows are <plus| and <minus|.
    Eigen::Matrix2cd rotation() const;
    Eigen::Matrix2cd projector_plus() const { return plus * plus.adjoint(); }
    Eigen::Matrix2cd projector_minus() const { return minus * minus.adjoint(); }
};

/// Fast-axis-angle Jones matrices: HWP(t) = R(t) diag(1,-1) R(-t),
/// QWP(t) = R(t) diag(1,i) R(-t), with R a real rotation by t.
Eigen::Matrix2cd jones_hwp(double theta);
Eigen::Matrix2cd jones_qwp(double theta);

/// Named settings return the exact analytic pairs; wave-plate settings use
/// {U^dag|H>, U^dag|V>} with U = QWP(q) HWP(h); Bloch settings the +-1
/// eigenvectors of n.sigma.
MeasurementBasis analyzer_basis(const AnalyzerSetting& setting);

using SettingVector = std::vector<AnalyzerSetting>;

SettingVector uniform_settings(NamedBasis b, int n);
std::optional<NamedBasis> parse_basis(const std::string& name);
std::string basis_name(NamedBasis b);

}  // namespace psi6
