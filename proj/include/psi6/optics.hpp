#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "json.hpp"
#include "psi6/modes.hpp"

namespace psi6 {

/// Isometric linear map from input optical modes to output optical modes.
/// matrix() maps input creation operators to linear combinations of output
/// creation operators: in_k^dag -> sum_j matrix(j,k) out_j^dag. Columns are
/// orthonormal to 1e-12 (unitary when the registers have equal size).
class LinearNetwork {
public:
    LinearNetwork(ModeRegister input, ModeRegister output, Eigen::MatrixXcd matrix);

    static LinearNetwork identity(const ModeRegister& reg);

    const ModeRegister& input_register() const { return input_; }
    const ModeRegister& output_register() const { return output_; }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    /// max |col_i . col_j - delta_ij| over column pairs.
    double isometry_defect() const;

private:
    ModeRegister input_;
    ModeRegister output_;
    Eigen::MatrixXcd matrix_;
};

/// Symmetric 50-50 splitter on two spatial modes, acting identically on H
/// and V: inA -> (outA + i outB)/sqrt2, inB -> (i outA + outB)/sqrt2.
LinearNetwork fifty_fifty_splitter(const std::string& inA, const std::string& inB,
                                   const std::string& outA, const std::string& outB);

/// Incrementally builds a network by chaining elements onto the live modes.
/// All elements act on both polarizations; phase plates may act on H and V
/// separately (that is how splitter phase compensation is modeled).
class NetworkBuilder {
public:
    explicit NetworkBuilder(std::vector<std::string> inputSpatials);

    /// Full two-input 50-50 splitter; both inputs must be live.
    NetworkBuilder& splitter(const std::string& inA, const std::string& inB,
                             const std::string& outA, const std::string& outB);

    /// 50-50 splitter with the second input port in vacuum:
    /// in -> (outT + i outR)/sqrt2.
    NetworkBuilder& split(const std::string& in, const std::string& outT,
                          const std::string& outR);

    /// Birefringent phase plate on one live spatial mode.
    NetworkBuilder& phase_plate(const std::string& mode, double phaseH, double phaseV);

    /// Finish, ordering outputs as given (all live modes must be listed).
    /// With an empty list, modes keep their creation order.
    LinearNetwork build(const std::vector<std::string>& outputOrder = {}) const;

private:
    std::size_t live_index(const std::string& spatial) const;

    ModeRegister input_;
    std::vector<std::string> liveSpatials_;
    Eigen::MatrixXcd matrix_;  // 2*live x input
};

/// The six-mode splitter tree: a0 -> (a, b, c) and b0 -> (d, e, f), each arm
/// through two cascaded 50-50 splitters (the first output of each splitter is
/// the direct port), with per-arm compensation phase plates. The defaults
/// (all zero) already make the post-selected third-order state land on the
/// canonical reference amplitudes.
LinearNetwork experiment_network();

/// Identity on the source modes (a0, b0); used to inspect raw emission terms.
LinearNetwork pair_network();

/// One splitter per arm: a0 -> (a, b), b0 -> (c, d).
LinearNetwork four_mode_network();

/// Builds a network from a JSON layout:
///   {"inputs": ["a0","b0"],
///    "elements": [{"type":"split","in":"a0","out":["a","x"]},
///                 {"type":"splitter","in":["u","v"],"out":["p","q"]},
///                 {"type":"phase","mode":"a","phaseH":0.0,"phaseV":0.0}],
///    "order": ["a","b","c"]}
/// "order" is optional.
LinearNetwork network_from_json(const nlohmann::json& j);

/// The JSON layout whose network_from_json image equals experiment_network().
nlohmann::json experiment_network_layout();

}  // namespace psi6
