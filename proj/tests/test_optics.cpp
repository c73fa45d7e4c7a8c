#include <cmath>
#include <complex>

#include "doctest.h"
#include "psi6/optics.hpp"

using namespace psi6;
using doctest::Approx;

TEST_CASE("50-50 splitter convention and unitarity") {
    const auto bs = fifty_fifty_splitter("p", "q", "r", "s");
    const auto& m = bs.matrix();
    REQUIRE(m.rows() == 4);
    REQUIRE(m.cols() == 4);
    CHECK(bs.isometry_defect() < 1e-14);
    // p -> (r + i s)/sqrt2, identically for H and V.
    const double s2 = 1.0 / std::sqrt(2.0);
    for (int pol = 0; pol < 2; ++pol) {
        CHECK(std::abs(m(0 + pol, 0 + pol) - s2) < 1e-15);
        CHECK(std::abs(m(2 + pol, 0 + pol) - std::complex<double>(0, s2)) < 1e-15);
        CHECK(std::abs(m(0 + pol, 2 + pol) - std::complex<double>(0, s2)) < 1e-15);
        CHECK(std::abs(m(2 + pol, 2 + pol) - s2) < 1e-15);
    }
    CHECK_THROWS_AS(fifty_fifty_splitter("p", "p", "r", "s"), std::invalid_argument);
    CHECK_THROWS_AS(fifty_fifty_splitter("p", "q", "r", "r"), std::invalid_argument);
}

TEST_CASE("cascaded splitters give the 1/sqrt2, 1/2, 1/2 arm amplitudes") {
    NetworkBuilder b({"a0"});
    b.split("a0", "a", "x");
    b.split("x", "b", "c");
    const auto net = b.build({"a", "b", "c"});
    CHECK(net.isometry_defect() < 1e-14);
    const auto& m = net.matrix();
    // Column 0 is a0H: moduli (1/sqrt2, 1/2, 1/2) on (aH, bH, cH).
    CHECK(std::abs(m(0, 0)) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(m(2, 0)) == Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(m(4, 0)) == Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(m(1, 0)) == 0.0);  // no polarization mixing
}

TEST_CASE("experiment network structure") {
    const auto net = experiment_network();
    CHECK(net.isometry_defect() < 1e-13);
    CHECK(net.input_register() == source_register());
    const auto spatials = net.output_register().spatial_labels();
    REQUIRE(spatials.size() == 6);
    const std::vector<std::string> expected{"a", "b", "c", "d", "e", "f"};
    CHECK(spatials == expected);
    // Each arm splits with moduli (1/sqrt2, 1/2, 1/2); arms do not mix.
    const auto& m = net.matrix();
    const double expectedMod[3] = {1.0 / std::sqrt(2.0), 0.5, 0.5};
    for (int arm = 0; arm < 2; ++arm) {
        const Eigen::Index col = 4 * arm;  // a0H / b0H columns
        for (int out = 0; out < 3; ++out) {
            CHECK(std::abs(m(6 * arm + 2 * out, col)) == Approx(expectedMod[out]).epsilon(1e-13));
        }
        // No amplitude in the other arm.
        for (int out = 0; out < 3; ++out) {
            CHECK(std::abs(m(6 * (1 - arm) + 2 * out, col)) == 0.0);
        }
    }
}

TEST_CASE("network json layout round trip") {
    const auto fromJson = network_from_json(experiment_network_layout());
    const auto builtin = experiment_network();
    CHECK(fromJson.input_register() == builtin.input_register());
    CHECK(fromJson.output_register() == builtin.output_register());
    CHECK((fromJson.matrix() - builtin.matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("network json validation") {
    CHECK_THROWS_AS(network_from_json(nlohmann::json{{"elements", nlohmann::json::array()}}),
                    std::invalid_argument);
    nlohmann::json bad{{"inputs", {"a0"}},
                       {"elements", {{{"type", "warp"}, {"in", "a0"}}}}};
    CHECK_THROWS_AS(network_from_json(bad), std::invalid_argument);
}

TEST_CASE("phase plates keep networks isometric and act per polarization") {
    NetworkBuilder b({"a0"});
    b.split("a0", "a", "x");
    b.phase_plate("a", 0.3, -0.7);
    const auto net = b.build({"a", "x"});
    CHECK(net.isometry_defect() < 1e-14);
    const auto& m = net.matrix();
    const double s2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(m(0, 0) - s2 * std::exp(std::complex<double>(0, 0.3))) < 1e-15);
    CHECK(std::abs(m(1, 1) - s2 * std::exp(std::complex<double>(0, -0.7))) < 1e-15);
}
