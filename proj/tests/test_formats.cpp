#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "psi6/fock.hpp"
#include "psi6/report.hpp"
#include "psi6/teleclone.hpp"
#include "schema_check.hpp"

using namespace psi6;
using doctest::Approx;

namespace {
nlohmann::json load_schema(const std::string& name) {
    std::ifstream in(std::string(PSI6_SOURCE_DIR) + "/schemas/" + name);
    REQUIRE_MESSAGE(in.good(), "schema file missing: ", name);
    return nlohmann::json::parse(in);
}
}  // namespace

TEST_CASE("analytic report values and schema") {
    SUBCASE("pure state") {
        const auto j = analytic_report(1.0);
        CHECK(psi6::testing::schema_check(j, load_schema("report.schema.json")).empty());
        CHECK(j["correlations"]["z"].get<double>() == Approx(-1.0).epsilon(1e-12));
        CHECK(j["correlations"]["x"].get<double>() == Approx(1.0).epsilon(1e-12));
        CHECK(j["correlations"]["y"].get<double>() == Approx(1.0).epsilon(1e-12));
        CHECK(j["fidelity"].get<double>() == Approx(1.0).epsilon(1e-12));
        CHECK(j["witnessMax"]["expectation"].get<double>() ==
              Approx(-1.0 / 3).epsilon(1e-11));
        CHECK(j["witnessReduced"]["expectation"].get<double>() ==
              Approx(-1.0 / 18).epsilon(1e-10));
        CHECK(j["witnessMax"]["verdict"] == "entangled");
        CHECK(j["indicator"]["threeBasis"].get<double>() == Approx(3.0).epsilon(1e-11));
    }
    SUBCASE("white-noise state at p = 0.859") {
        const auto j = analytic_report(0.859);
        CHECK(j["fidelity"].get<double>() == Approx(0.861203125).epsilon(1e-10));
        CHECK(j["indicator"]["threeBasis"].get<double>() ==
              Approx(3 * 0.859 * 0.859).epsilon(1e-9));
        CHECK(j["indicator"]["pairs"]["xy"].get<double>() ==
              Approx(2 * 0.859 * 0.859).epsilon(1e-9));
        CHECK(j["witnessReduced"]["verdict"] == "entangled");
    }
    SUBCASE("maximally mixed state is inconclusive everywhere") {
        const auto j = analytic_report(0.0);
        CHECK(j["witnessMax"]["verdict"] == "inconclusive");
        CHECK(j["witnessReduced"]["verdict"] == "inconclusive");
        CHECK(j["indicator"]["verdict"] == "inconclusive");
        CHECK(j["pHat"].get<double>() == Approx(0.0).scale(1).epsilon(1e-12));
    }
    CHECK_THROWS_AS(analytic_report(1.5), std::domain_error);
}

TEST_CASE("counts report from sampled tables") {
    const auto rho = add_white_noise(reference_state(ReferenceState::Psi6Plus), 0.859);
    const auto z = sample_counts(rho, uniform_settings(NamedBasis::HV, 6), "HV", 100000, 11);
    const auto x = sample_counts(rho, uniform_settings(NamedBasis::DA, 6), "DA", 100000, 12);
    const auto y = sample_counts(rho, uniform_settings(NamedBasis::LR, 6), "LR", 100000, 13);
    const auto j = counts_report(z, x, y, 1.5);
    CHECK(psi6::testing::schema_check(j, load_schema("report.schema.json")).empty());
    CHECK(j["pHat"].get<double>() == Approx(0.859).epsilon(0.02));
    CHECK(j["correlations"]["z"]["standardError"].get<double>() > 0);
    CHECK(j["witnessReduced"].contains("standardError"));
}

TEST_CASE("histogram artifacts") {
    const auto probs = histogram_analytic(NamedBasis::HV, 1.0);
    std::vector<std::string> labels;
    for (std::uint64_t k = 0; k < 64; ++k) {
        labels.push_back(outcome_label(k, uniform_settings(NamedBasis::HV, 6)));
    }
    SUBCASE("analytic values") {
        CHECK(probs[outcome_index("HHHVVV")] == Approx(0.25).epsilon(1e-12));
        CHECK(probs[outcome_index("VVVHHH")] == Approx(0.25).epsilon(1e-12));
        CHECK(probs[outcome_index("HHVHVV")] == Approx(1.0 / 36).epsilon(1e-12));
        const auto mixed = histogram_analytic(NamedBasis::HV, 0.0);
        for (double p : mixed) CHECK(p == Approx(1.0 / 64).epsilon(1e-12));
    }
    SUBCASE("CSV layout") {
        std::ostringstream out;
        write_histogram_csv(out, labels, probs, {}, {});
        const std::string text = out.str();
        CHECK(text.rfind("label,probability\n", 0) == 0);
        CHECK(text.find("HHHVVV,0.25\n") != std::string::npos);
        // One line per bin plus the header.
        CHECK(std::count(text.begin(), text.end(), '\n') == 65);
    }
    SUBCASE("JSON layout and schema") {
        const auto j = histogram_json(labels, probs, {}, {});
        CHECK(psi6::testing::schema_check(j, load_schema("histogram.schema.json")).empty());
        CHECK(j["bins"].size() == 64);
    }
    SUBCASE("SVG output is well formed enough") {
        std::ostringstream out;
        write_bar_chart_svg(out, "test chart", labels, probs);
        const std::string svg = out.str();
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(std::count(svg.begin(), svg.end(), '<') > 64);
        CHECK(svg.find("</svg>") != std::string::npos);
    }
}

TEST_CASE("teleclone report schema") {
    const auto layout = ProtocolLayout::canonical();
    const auto table = derive_correction_table(layout);
    const auto j = teleclone_report(layout, table, Eigen::Vector2cd(1, 0), "H");
    CHECK(psi6::testing::schema_check(j, load_schema("teleclone.schema.json")).empty());
}

TEST_CASE("derive report schema") {
    // Mirrors the CLI's derive output structure.
    const auto term = pdc_term(PdcSource(0.1), 3);
    const auto res = postselect_one_per_spatial_mode(apply_network(term, experiment_network()),
                                                     {"a", "b", "c", "d", "e", "f"});
    REQUIRE(res.ket.has_value());
    nlohmann::json j{{"network", "experiment"},
                     {"order", 3},
                     {"successProbability", res.probability / term.squared_norm()},
                     {"fidelity", fidelity(*res.ket, reference_state(ReferenceState::Psi6Plus))},
                     {"target", "Psi6Plus"},
                     {"state", ket_to_json(*res.ket)}};
    CHECK(psi6::testing::schema_check(j, load_schema("derive.schema.json")).empty());
}
