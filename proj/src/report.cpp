#include "psi6/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "psi6/witness.hpp"

namespace psi6 {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {
struct WitnessPack {
    PauliObservable maxOverlap;
    PauliObservable reduced;
    QubitKet target;
};

const WitnessPack& witness_pack() {
    static const WitnessPack pack = [] {
        QubitKet target = reference_state(ReferenceState::Psi6Plus);
        PauliObservable wMax = max_overlap_witness(target, 2.0 / 3.0);
        PauliObservable wRed = reduce_witness(wMax, 181.0 / 576.0);
        return WitnessPack{std::move(wMax), std::move(wRed), std::move(target)};
    }();
    return pack;
}

nlohmann::json witness_json(const WitnessReport& r) {
    nlohmann::json j{{"expectation", r.expectation},
                     {"threshold", r.threshold},
                     {"verdict", r.entangled ? "entangled" : "inconclusive"},
                     {"noiseTolerance", r.noiseToleranceAtPureTarget}};
    if (r.standardError) j["standardError"] = *r.standardError;
    return j;
}

nlohmann::json indicator_json(double z, double x, double y,
                              std::optional<std::array<double, 3>> errs) {
    const double three = z * z + x * x + y * y;
    nlohmann::json pairs{{"zx", z * z + x * x}, {"zy", z * z + y * y}, {"xy", x * x + y * y}};
    nlohmann::json j{{"threeBasis", three},
                     {"pairs", std::move(pairs)},
                     {"verdict", three > 1.0 ? "not fully separable" : "inconclusive"}};
    if (errs) {
        // Delta method: Var(sum E_i^2) = sum (2 E_i SE_i)^2.
        const std::array<double, 3> vals{z, x, y};
        double var = 0;
        for (int i = 0; i < 3; ++i) {
            var += std::pow(2.0 * vals[static_cast<std::size_t>(i)] *
                                (*errs)[static_cast<std::size_t>(i)],
                            2);
        }
        j["threeBasisStandardError"] = std::sqrt(var);
    }
    return j;
}
}  // namespace

nlohmann::json analytic_report(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p must lie in [0, 1]");
    const WitnessPack& pack = witness_pack();
    const DensityOperator rho = add_white_noise(pack.target, p);
    const double z = correlation(rho, uniform_settings(NamedBasis::HV, 6));
    const double x = correlation(rho, uniform_settings(NamedBasis::DA, 6));
    const double y = correlation(rho, uniform_settings(NamedBasis::LR, 6));
    const double pHat = estimate_p_from_correlations(z, x, y);
    nlohmann::json j{
        {"mode", "analytic"},
        {"p", p},
        {"correlations", {{"z", z}, {"x", x}, {"y", y}}},
        {"pHat", pHat},
        {"fidelity", fidelity(rho, pack.target)},
        {"witnessMax", witness_json(witness_report(pack.maxOverlap, rho, pack.target))},
        {"witnessReduced", witness_json(witness_report(pack.reduced, rho, pack.target))},
        {"indicator", indicator_json(z, x, y, std::nullopt)},
    };
    return j;
}

nlohmann::json counts_report(const CountTable& z, const CountTable& x, const CountTable& y,
                             double significance) {
    const WitnessPack& pack = witness_pack();
    const Estimate ez = estimate_correlation(z);
    const Estimate ex = estimate_correlation(x);
    const Estimate ey = estimate_correlation(y);
    const double pHat = estimate_p_from_correlations(
        std::clamp(ez.value, -1.0, 1.0), std::clamp(ex.value, -1.0, 1.0),
        std::clamp(ey.value, -1.0, 1.0));

    const Estimate wMax = [&] {
        // The max-overlap witness is not three-setting measurable; report the
        // white-noise model value at pHat instead, without an error bar.
        Estimate e;
        const DensityOperator rho = add_white_noise(pack.target, std::min(pHat, 1.0));
        e.value = expectation(pack.maxOverlap, rho);
        e.standardError = 0;
        e.sampleSize = 0;
        return e;
    }();
    const Estimate wRed = witness_from_tables(pack.reduced, z, x, y);

    auto corr_json = [](const Estimate& e) {
        return nlohmann::json{{"value", e.value},
                              {"standardError", e.standardError},
                              {"events", e.sampleSize}};
    };
    const std::vector<double> residuals = noise_residual_correlation(
        {ez, ex, ey}, std::min(pHat, 1.0 - 1e-12), {-1.0, 1.0, 1.0});

    nlohmann::json j{
        {"mode", "counts"},
        {"correlations", {{"z", corr_json(ez)}, {"x", corr_json(ex)}, {"y", corr_json(ey)}}},
        {"pHat", pHat},
        {"fidelity", std::min(pHat, 1.0) + (1.0 - std::min(pHat, 1.0)) / 64.0},
        {"noiseResiduals", {{"z", residuals[0]}, {"x", residuals[1]}, {"y", residuals[2]}}},
        {"witnessMax",
         witness_json(witness_report_from_estimate(pack.maxOverlap, wMax.value, std::nullopt,
                                                   pack.target, significance))},
        {"witnessReduced",
         witness_json(witness_report_from_estimate(pack.reduced, wRed.value, wRed.standardError,
                                                   pack.target, significance))},
        {"indicator",
         indicator_json(ez.value, ex.value, ey.value,
                        std::array<double, 3>{ez.standardError, ex.standardError,
                                              ey.standardError})},
        {"significance", significance},
    };
    return j;
}

std::vector<double> histogram_analytic(NamedBasis basis, double p) {
    const QubitKet psi = reference_state(ReferenceState::Psi6Plus);
    return outcome_distribution(add_white_noise(psi, p), uniform_settings(basis, 6));
}

void write_histogram_csv(std::ostream& out, const std::vector<std::string>& labels,
                         const std::vector<double>& probabilities,
                         const std::vector<std::uint64_t>& counts,
                         const std::vector<double>& stderrs) {
    const bool sampled = !counts.empty();
    out << (sampled ? "label,count,probability,stderr" : "label,probability") << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << labels[i];
        if (sampled) out << ',' << counts[i];
        out << ',' << format_double(probabilities[i]);
        if (sampled) out << ',' << format_double(stderrs[i]);
        out << '\n';
    }
}

nlohmann::json histogram_json(const std::vector<std::string>& labels,
                              const std::vector<double>& probabilities,
                              const std::vector<std::uint64_t>& counts,
                              const std::vector<double>& stderrs) {
    nlohmann::json bins = nlohmann::json::array();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        nlohmann::json bin{{"label", labels[i]}, {"probability", probabilities[i]}};
        if (!counts.empty()) {
            bin["count"] = counts[i];
            bin["stderr"] = stderrs[i];
        }
        bins.push_back(std::move(bin));
    }
    return {{"bins", std::move(bins)}};
}

void write_bar_chart_svg(std::ostream& out, const std::string& title,
                         const std::vector<std::string>& labels,
                         const std::vector<double>& values) {
    const int barW = 12, gap = 2, plotH = 240, marginL = 44, marginB = 70, marginT = 34;
    const std::size_t nBars = values.size();
    const int width = marginL + static_cast<int>(nBars) * (barW + gap) + 16;
    const int height = marginT + plotH + marginB;
    double vMax = 0;
    for (double v : values) vMax = std::max(vMax, v);
    if (vMax <= 0) vMax = 1;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<text x=\"" << marginL << "\" y=\"20\" font-size=\"14\" font-family=\"sans-serif\">"
        << title << "</text>\n";
    out << "<line x1=\"" << marginL << "\" y1=\"" << marginT + plotH << "\" x2=\""
        << width - 8 << "\" y2=\"" << marginT + plotH << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << marginL << "\" y1=\"" << marginT << "\" x2=\"" << marginL
        << "\" y2=\"" << marginT + plotH << "\" stroke=\"black\"/>\n";
    out << "<text x=\"2\" y=\"" << marginT + 6 << "\" font-size=\"10\" font-family=\"sans-serif\">"
        << format_double(vMax) << "</text>\n";
    for (std::size_t i = 0; i < nBars; ++i) {
        const int h = static_cast<int>(std::lround(plotH * values[i] / vMax));
        const int xpos = marginL + static_cast<int>(i) * (barW + gap);
        out << "<rect x=\"" << xpos << "\" y=\"" << marginT + plotH - h << "\" width=\"" << barW
            << "\" height=\"" << h << "\" fill=\"#4878a8\"/>\n";
        out << "<text x=\"" << xpos + barW / 2 << "\" y=\"" << marginT + plotH + 8
            << "\" font-size=\"7\" font-family=\"monospace\" text-anchor=\"start\" "
               "transform=\"rotate(90 "
            << xpos + barW / 2 << ' ' << marginT + plotH + 8 << ")\">" << labels[i]
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace psi6
