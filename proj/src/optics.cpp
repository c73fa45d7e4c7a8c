#include "psi6/optics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace psi6 {

namespace {
constexpr double kIsometryTol = 1e-12;
const std::complex<double> kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.7071067811865475244;
}  // namespace

LinearNetwork::LinearNetwork(ModeRegister input, ModeRegister output, Eigen::MatrixXcd matrix)
    : input_(std::move(input)), output_(std::move(output)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != static_cast<Eigen::Index>(output_.size()) ||
        matrix_.cols() != static_cast<Eigen::Index>(input_.size())) {
        throw std::invalid_argument("network matrix shape does not match its registers");
    }
    if (isometry_defect() > kIsometryTol) {
        throw std::invalid_argument("network matrix is not an isometry");
    }
}

LinearNetwork LinearNetwork::identity(const ModeRegister& reg) {
    return LinearNetwork(reg, reg,
                         Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(reg.size()),
                                                    static_cast<Eigen::Index>(reg.size())));
}

double LinearNetwork::isometry_defect() const {
    Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
    gram -= Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
    return gram.cwiseAbs().maxCoeff();
}

LinearNetwork fifty_fifty_splitter(const std::string& inA, const std::string& inB,
                                   const std::string& outA, const std::string& outB) {
    if (inA == inB || outA == outB) {
        throw std::invalid_argument("splitter ports must be distinct modes");
    }
    NetworkBuilder b({inA, inB});
    b.splitter(inA, inB, outA, outB);
    return b.build({outA, outB});
}

NetworkBuilder::NetworkBuilder(std::vector<std::string> inputSpatials)
    : input_(ModeRegister::polarization_pairs(inputSpatials)), liveSpatials_(inputSpatials) {
    matrix_ = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(input_.size()),
                                         static_cast<Eigen::Index>(input_.size()));
}

std::size_t NetworkBuilder::live_index(const std::string& spatial) const {
    for (std::size_t i = 0; i < liveSpatials_.size(); ++i) {
        if (liveSpatials_[i] == spatial) return i;
    }
    throw std::invalid_argument("mode '" + spatial + "' is not a live network mode");
}

NetworkBuilder& NetworkBuilder::splitter(const std::string& inA, const std::string& inB,
                                         const std::string& outA, const std::string& outB) {
    if (inA == inB || outA == outB) {
        throw std::invalid_argument("splitter ports must be distinct modes");
    }
    const std::size_t ia = live_index(inA);
    const std::size_t ib = live_index(inB);
    for (int pol = 0; pol < 2; ++pol) {
        const Eigen::Index ra = static_cast<Eigen::Index>(2 * ia + pol);
        const Eigen::Index rb = static_cast<Eigen::Index>(2 * ib + pol);
        Eigen::RowVectorXcd rowA = matrix_.row(ra);
        Eigen::RowVectorXcd rowB = matrix_.row(rb);
        matrix_.row(ra) = kInvSqrt2 * (rowA + kI * rowB);
        matrix_.row(rb) = kInvSqrt2 * (kI * rowA + rowB);
    }
    liveSpatials_[ia] = outA;
    liveSpatials_[ib] = outB;
    return *this;
}

NetworkBuilder& NetworkBuilder::split(const std::string& in, const std::string& outT,
                                      const std::string& outR) {
    if (outT == outR) {
        throw std::invalid_argument("splitter ports must be distinct modes");
    }
    const std::size_t ii = live_index(in);
    const Eigen::Index oldRows = matrix_.rows();
    Eigen::MatrixXcd grown(oldRows + 2, matrix_.cols());
    grown.topRows(oldRows) = matrix_;
    for (int pol = 0; pol < 2; ++pol) {
        const Eigen::Index rIn = static_cast<Eigen::Index>(2 * ii + pol);
        grown.row(oldRows + pol) = kI * kInvSqrt2 * matrix_.row(rIn);
        grown.row(rIn) = kInvSqrt2 * matrix_.row(rIn);
    }
    matrix_ = std::move(grown);
    liveSpatials_[ii] = outT;
    liveSpatials_.push_back(outR);
    return *this;
}

NetworkBuilder& NetworkBuilder::phase_plate(const std::string& mode, double phaseH, double phaseV) {
    const std::size_t ii = live_index(mode);
    matrix_.row(static_cast<Eigen::Index>(2 * ii)) *= std::exp(kI * phaseH);
    matrix_.row(static_cast<Eigen::Index>(2 * ii + 1)) *= std::exp(kI * phaseV);
    return *this;
}

LinearNetwork NetworkBuilder::build(const std::vector<std::string>& outputOrder) const {
    std::vector<std::string> order = outputOrder.empty() ? liveSpatials_ : outputOrder;
    if (order.size() != liveSpatials_.size()) {
        throw std::invalid_argument("output order must list every live mode exactly once");
    }
    Eigen::MatrixXcd reordered(matrix_.rows(), matrix_.cols());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t src = live_index(order[i]);
        reordered.row(static_cast<Eigen::Index>(2 * i)) =
            matrix_.row(static_cast<Eigen::Index>(2 * src));
        reordered.row(static_cast<Eigen::Index>(2 * i + 1)) =
            matrix_.row(static_cast<Eigen::Index>(2 * src + 1));
    }
    return LinearNetwork(input_, ModeRegister::polarization_pairs(order), std::move(reordered));
}

LinearNetwork experiment_network() { return network_from_json(experiment_network_layout()); }

LinearNetwork pair_network() { return LinearNetwork::identity(source_register()); }

LinearNetwork four_mode_network() {
    NetworkBuilder b({"a0", "b0"});
    b.split("a0", "a", "b");
    b.split("b0", "c", "d");
    return b.build({"a", "b", "c", "d"});
}

nlohmann::json experiment_network_layout() {
    // Each arm: BS1 feeds the direct port and an internal mode that BS2
    // splits again; the compensation plates default to zero.
    return nlohmann::json{
        {"inputs", {"a0", "b0"}},
        {"elements",
         {
             {{"type", "split"}, {"in", "a0"}, {"out", {"a", "x1"}}},
             {{"type", "split"}, {"in", "x1"}, {"out", {"b", "c"}}},
             {{"type", "split"}, {"in", "b0"}, {"out", {"d", "x2"}}},
             {{"type", "split"}, {"in", "x2"}, {"out", {"e", "f"}}},
             {{"type", "phase"}, {"mode", "a"}, {"phaseH", 0.0}, {"phaseV", 0.0}},
             {{"type", "phase"}, {"mode", "b"}, {"phaseH", 0.0}, {"phaseV", 0.0}},
             {{"type", "phase"}, {"mode", "c"}, {"phaseH", 0.0}, {"phaseV", 0.0}},
             {{"type", "phase"}, {"mode", "d"}, {"phaseH", 0.0}, {"phaseV", 0.0}},
             {{"type", "phase"}, {"mode", "e"}, {"phaseH", 0.0}, {"phaseV", 0.0}},
             {{"type", "phase"}, {"mode", "f"}, {"phaseH", 0.0}, {"phaseV", 0.0}},
         }},
        {"order", {"a", "b", "c", "d", "e", "f"}},
    };
}

LinearNetwork network_from_json(const nlohmann::json& j) {
    if (!j.contains("inputs") || !j["inputs"].is_array()) {
        throw std::invalid_argument("network layout needs an \"inputs\" array");
    }
    NetworkBuilder b(j["inputs"].get<std::vector<std::string>>());
    for (const auto& el : j.value("elements", nlohmann::json::array())) {
        const std::string type = el.at("type").get<std::string>();
        if (type == "split") {
            const auto out = el.at("out").get<std::vector<std::string>>();
            if (out.size() != 2) throw std::invalid_argument("split element needs two outputs");
            b.split(el.at("in").get<std::string>(), out[0], out[1]);
        } else if (type == "splitter") {
            const auto in = el.at("in").get<std::vector<std::string>>();
            const auto out = el.at("out").get<std::vector<std::string>>();
            if (in.size() != 2 || out.size() != 2) {
                throw std::invalid_argument("splitter element needs two inputs and two outputs");
            }
            b.splitter(in[0], in[1], out[0], out[1]);
        } else if (type == "phase") {
            b.phase_plate(el.at("mode").get<std::string>(), el.value("phaseH", 0.0),
                          el.value("phaseV", 0.0));
        } else {
            throw std::invalid_argument("unknown network element type: " + type);
        }
    }
    std::vector<std::string> order;
    if (j.contains("order")) order = j["order"].get<std::vector<std::string>>();
    return b.build(order);
}

}  // namespace psi6
