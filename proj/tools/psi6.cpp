// Command-line front end: derives the six-photon state from the pair-emitter
// model and reproduces the analysis artifacts (histograms, conditional
// states, correlation/witness/indicator reports, telecloning, simulated
// acquisition runs).
//
// Exit codes: 0 success, 1 usage error, 2 validation failure,
// 3 numerical-check failure.
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "psi6/fock.hpp"
#include "psi6/montecarlo.hpp"
#include "psi6/optics.hpp"
#include "psi6/report.hpp"
#include "psi6/teleclone.hpp"
#include "psi6/witness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_artifact(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << content;
}

Eigen::Vector2cd named_single_qubit(const std::string& name) {
    const std::complex<double> I{0, 1};
    const double s = 1.0 / std::sqrt(2.0);
    if (name == "H") return {1, 0};
    if (name == "V") return {0, 1};
    if (name == "D") return {s, s};
    if (name == "A") return {s, -s};
    if (name == "L") return {s, I * s};
    if (name == "R") return {s, -I * s};
    throw ValidationError("unknown single-qubit state name: " + name);
}

psi6::NamedBasis require_basis(const std::string& name) {
    const auto basis = psi6::parse_basis(name);
    if (!basis) throw ValidationError("unknown basis '" + name + "' (use HV, DA or LR)");
    return *basis;
}

// ---------------------------------------------------------------- derive --

int cmd_derive(int order, const std::string& networkName, double alpha,
               std::optional<double> phase, const std::string& outPath) {
    using namespace psi6;
    LinearNetwork net = [&] {
        if (networkName == "experiment") return experiment_network();
        if (networkName == "pair") return pair_network();
        if (networkName == "four-mode") return four_mode_network();
        std::ifstream in(networkName);
        if (!in) throw ValidationError("network must be experiment, pair, four-mode or a JSON file");
        nlohmann::json j;
        try {
            in >> j;
            return network_from_json(j);
        } catch (const std::exception& e) {
            throw ValidationError(std::string("bad network layout: ") + e.what());
        }
    }();

    // The four-qubit singlet needs the opposite sign between the two pair
    // terms; the six-photon state needs the aligned one.
    const double pairPhase = phase.value_or(networkName == "four-mode" ? M_PI : 0.0);
    const PdcSource source(alpha, pairPhase);
    const FockPolynomial term = pdc_term(source, order);
    const FockPolynomial distributed = apply_network(term, net);
    const auto spatials = net.output_register().spatial_labels();
    const auto res = postselect_one_per_spatial_mode(distributed, spatials);
    if (!res.ket) {
        std::fprintf(stderr, "post-selection removed every term (order %d into %zu modes)\n",
                     order, spatials.size());
        return kExitValidation;
    }
    const double successProbability = res.probability / term.squared_norm();

    std::optional<QubitKet> target;
    std::string targetName;
    if (networkName == "experiment" && order == 3) {
        target = reference_state(ReferenceState::Psi6Plus);
        targetName = "Psi6Plus";
    } else if (networkName == "pair" && order == 1) {
        target = reference_state(ReferenceState::Psi2Plus);
        targetName = "Psi2Plus";
    } else if (networkName == "four-mode" && order == 2) {
        target = four_qubit_singlet();
        targetName = "Psi4Minus";
    }

    nlohmann::json j{{"network", networkName},
                     {"order", order},
                     {"successProbability", successProbability},
                     {"state", ket_to_json(*res.ket)}};
    std::printf("order %d through '%s': %d qubits, success probability %.9g\n", order,
                networkName.c_str(), res.ket->qubit_count(), successProbability);

    if (target) {
        const double f = fidelity(*res.ket, *target);
        j["fidelity"] = f;
        j["target"] = targetName;
        std::printf("fidelity with %s: %.9f\n", targetName.c_str(), f);
        if (targetName == "Psi4Minus") {
            // Collective-rotation invariance report for the singlet.
            std::mt19937_64 rng(1);
            double minFid = 1.0;
            const int samples = 20;
            for (int rep = 0; rep < samples; ++rep) {
                const Eigen::Matrix2cd u = random_single_qubit_unitary(rng);
                QubitKet rotated = *res.ket;
                for (int q = 0; q < 4; ++q) rotated = apply_single_qubit(rotated, q, u);
                minFid = std::min(minFid, fidelity(rotated, *res.ket));
            }
            j["invariance"] = {{"samples", samples}, {"minFidelity", minFid}};
            std::printf("collective-unitary invariance over %d samples: min fidelity %.9f\n",
                        samples, minFid);
        }
        if (!outPath.empty()) write_artifact(outPath, j.dump(2) + "\n");
        if (f < 1.0 - 1e-9) {
            std::fprintf(stderr, "fidelity check failed (%.12f < 1 - 1e-9)\n", f);
            return kExitNumerical;
        }
        return kExitOk;
    }
    if (!outPath.empty()) write_artifact(outPath, j.dump(2) + "\n");
    return kExitOk;
}

// ------------------------------------------------------------- histogram --

int cmd_histogram(const std::string& basisName, double p, const std::string& mode,
                  std::uint64_t events, double duration, double rate, std::uint64_t seed,
                  const std::string& outPath, const std::string& format) {
    using namespace psi6;
    const NamedBasis basis = require_basis(basisName);
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("--p must lie in [0, 1]");
    const SettingVector settings = uniform_settings(basis, 6);
    std::vector<std::string> labels;
    for (std::uint64_t k = 0; k < 64; ++k) labels.push_back(outcome_label(k, settings));

    std::vector<double> probs;
    std::vector<std::uint64_t> counts;
    std::vector<double> errs;
    if (mode == "analytic") {
        probs = histogram_analytic(basis, p);
    } else if (mode == "sampled") {
        const auto rho = add_white_noise(reference_state(ReferenceState::Psi6Plus), p);
        const CountTable table =
            events > 0 ? sample_counts(rho, settings, basisName, events, seed)
                       : sample_counts_timed(rho, settings, basisName, duration, rate, seed);
        counts = table.counts;
        for (const auto& est : estimate_probabilities(table)) {
            probs.push_back(est.value);
            errs.push_back(est.standardError);
        }
    } else {
        throw ValidationError("--mode must be analytic or sampled");
    }

    std::ostringstream out;
    if (format == "csv") {
        write_histogram_csv(out, labels, probs, counts, errs);
    } else if (format == "json") {
        out << histogram_json(labels, probs, counts, errs).dump(2) << "\n";
    } else if (format == "svg") {
        write_bar_chart_svg(out, basisName + " sixfold coincidence probabilities", labels, probs);
    } else {
        throw ValidationError("--format must be csv, json or svg");
    }
    write_artifact(outPath, out.str());
    return kExitOk;
}

// --------------------------------------------------------------- project --

int cmd_project(const std::string& qubitName, const std::string& outcomeName,
                const std::string& outPath, const std::string& format) {
    using namespace psi6;
    const std::string modes = "abcdef";
    const auto pos = modes.find(qubitName.size() == 1 ? qubitName[0] : '?');
    if (pos == std::string::npos) throw ValidationError("--qubit must be one of a..f");
    const auto res = project_qubit(reference_state(ReferenceState::Psi6Plus),
                                   static_cast<int>(pos), named_single_qubit(outcomeName));
    if (!res.state) {
        std::fprintf(stderr, "projection has zero probability\n");
        return kExitNumerical;
    }
    std::printf("projection of mode %s onto |%s>: probability %.9f\n", qubitName.c_str(),
                outcomeName.c_str(), res.probability);

    std::ostringstream out;
    if (format == "json") {
        nlohmann::json j{{"qubit", qubitName},
                         {"outcome", outcomeName},
                         {"probability", res.probability},
                         {"state", ket_to_json(*res.state)}};
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        const auto probs =
            outcome_distribution(*res.state, uniform_settings(NamedBasis::HV, 5));
        std::vector<std::string> labels;
        for (std::uint64_t k = 0; k < 32; ++k) labels.push_back(outcome_label(k, 5));
        write_histogram_csv(out, labels, probs, {}, {});
    } else {
        throw ValidationError("--format must be csv or json");
    }
    write_artifact(outPath, out.str());
    return kExitOk;
}

// ---------------------------------------------------------------- report --

int cmd_report(std::optional<double> p, const std::vector<std::string>& countFiles,
               double significance, const std::string& outPath) {
    using namespace psi6;
    nlohmann::json j;
    if (!countFiles.empty()) {
        if (countFiles.size() != 3) {
            throw ValidationError("--counts needs exactly three files (z, x, y bases)");
        }
        CountTable tables[3];
        for (int i = 0; i < 3; ++i) {
            std::ifstream in(countFiles[static_cast<std::size_t>(i)]);
            if (!in) throw ValidationError("cannot open " + countFiles[static_cast<std::size_t>(i)]);
            try {
                tables[i] = read_count_table_csv(in);
            } catch (const CsvError& e) {
                throw ValidationError(countFiles[static_cast<std::size_t>(i)] + ": " + e.what());
            }
        }
        j = counts_report(tables[0], tables[1], tables[2], significance);
    } else {
        j = analytic_report(p.value_or(1.0));
    }
    write_artifact(outPath, j.dump(2) + "\n");
    return kExitOk;
}

// --------------------------------------------------------------- witness --

int cmd_witness(const std::string& which, const std::string& outPath) {
    using namespace psi6;
    const QubitKet target = reference_state(ReferenceState::Psi6Plus);
    const PauliObservable wMax = max_overlap_witness(target, 2.0 / 3.0);
    if (which != "max" && which != "reduced") {
        throw ValidationError("--which must be max or reduced");
    }
    const PauliObservable chosen =
        which == "max" ? wMax : reduce_witness(wMax, 181.0 / 576.0);
    std::printf("%s witness: %zu terms, <target> = %.9f, noise tolerance %.6f\n", which.c_str(),
                chosen.term_count(), expectation(chosen, target),
                white_noise_tolerance(chosen, target));
    write_artifact(outPath, pauli_to_text(chosen));
    return kExitOk;
}

// ------------------------------------------------------------- teleclone --

int cmd_teleclone(const std::string& inputName, std::uint64_t seed, const std::string& outPath) {
    using namespace psi6;
    Eigen::Vector2cd input;
    std::string label = inputName;
    if (inputName == "random") {
        std::mt19937_64 rng(seed);
        input = random_bloch_ket(rng);
        label = "random(seed=" + std::to_string(seed) + ")";
    } else {
        input = named_single_qubit(inputName);
    }
    const auto layout = ProtocolLayout::canonical();
    const auto table = derive_correction_table(layout);
    const auto j = teleclone_report(layout, table, input, label);
    for (const auto& o : j.at("outcomes")) {
        std::printf("outcome %-4s (message %d): probability %.6f, correction %s, fidelities "
                    "%.9f %.9f %.9f\n",
                    o.at("outcome").get<std::string>().c_str(), o.at("message").get<int>(),
                    o.at("probability").get<double>(),
                    o.at("correction").get<std::string>().c_str(),
                    o.at("fidelities")[0].get<double>(), o.at("fidelities")[1].get<double>(),
                    o.at("fidelities")[2].get<double>());
    }
    if (!outPath.empty()) write_artifact(outPath, j.dump(2) + "\n");
    return kExitOk;
}

// -------------------------------------------------------------- simulate --

int cmd_simulate(const std::string& basisName, double p, std::uint64_t events, double duration,
                 double rate, std::uint64_t seed, const std::string& outPath) {
    using namespace psi6;
    const NamedBasis basis = require_basis(basisName);
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("--p must lie in [0, 1]");
    const auto rho = add_white_noise(reference_state(ReferenceState::Psi6Plus), p);
    const SettingVector settings = uniform_settings(basis, 6);
    const CountTable table =
        events > 0 ? sample_counts(rho, settings, basisName, events, seed)
                   : sample_counts_timed(rho, settings, basisName, duration, rate, seed);
    std::ostringstream out;
    write_count_table_csv(out, table);
    write_artifact(outPath, out.str());
    std::fprintf(stderr, "%llu events in basis %s (seed %llu)\n",
                 static_cast<unsigned long long>(table.total_events()), basisName.c_str(),
                 static_cast<unsigned long long>(seed));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"six-photon entangled-state derivation and analysis toolkit"};
    app.require_subcommand(1);

    // derive
    auto* derive = app.add_subcommand("derive", "run the emission -> splitter -> post-selection "
                                                "pipeline and dump the resulting state");
    int order = 3;
    std::string network = "experiment";
    double alpha = 0.1;
    double phaseValue = 0;
    bool phaseSet = false;
    std::string outPath;
    derive->add_option("--order", order, "emission order (pairs)")->check(CLI::NonNegativeNumber);
    derive->add_option("--network", network, "experiment, pair, four-mode or a JSON layout file");
    derive->add_option("--alpha", alpha, "pair coupling, |alpha| < 1");
    derive->add_option("--phase", phaseValue, "relative phase between the two pair terms")
        ->each([&](const std::string&) { phaseSet = true; });
    derive->add_option("--out", outPath, "write the JSON state dump here");

    // histogram
    auto* histogram = app.add_subcommand("histogram", "64-bin sixfold coincidence distribution");
    std::string basisName = "HV";
    double p = 1.0;
    std::string mode = "analytic";
    std::uint64_t events = 0;
    double duration = 94.0, rate = 3.4;
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string histOut;
    histogram->add_option("--basis", basisName, "HV, DA or LR");
    histogram->add_option("--p", p, "white-noise weight of the target state");
    histogram->add_option("--mode", mode, "analytic or sampled");
    histogram->add_option("--events", events, "fixed event count for sampled mode");
    histogram->add_option("--duration", duration, "acquisition hours (Poisson mode)");
    histogram->add_option("--rate", rate, "events per hour (Poisson mode)");
    histogram->add_option("--seed", seed, "sampling seed");
    histogram->add_option("--out", histOut, "output path (default stdout)");
    histogram->add_option("--format", format, "csv, json or svg");

    // project
    auto* project = app.add_subcommand("project", "five-photon conditional state from a "
                                                  "single-mode projection");
    std::string qubitName = "b";
    std::string outcomeName = "H";
    std::string projOut;
    std::string projFormat = "json";
    project->add_option("--qubit", qubitName, "mode to project (a..f)");
    project->add_option("--outcome", outcomeName, "H, V, D, A, L or R");
    project->add_option("--out", projOut, "output path (default stdout)");
    project->add_option("--format", projFormat, "json (state) or csv (H/V distribution)");

    // report
    auto* report = app.add_subcommand("report", "correlations, fidelity, witnesses and the "
                                                "tensor-norm indicator");
    std::optional<double> reportP;
    std::vector<std::string> countFiles;
    double significance = 0.0;
    std::string reportOut;
    report->add_option("--p", reportP, "analytic white-noise weight");
    report->add_option("--counts", countFiles, "three count-table CSVs (z, x, y bases)")
        ->expected(3);
    report->add_option("--significance", significance,
                       "standard-error multiplier used in verdicts");
    report->add_option("--out", reportOut, "output path (default stdout)");

    // witness
    auto* witness = app.add_subcommand("witness", "dump a witness decomposition as text");
    std::string which = "reduced";
    std::string witnessOut;
    witness->add_option("--which", which, "max or reduced");
    witness->add_option("--out", witnessOut, "output path (default stdout)");

    // teleclone
    auto* teleclone = app.add_subcommand("teleclone", "qubit-level telecloning over the shared "
                                                      "six-qubit state");
    std::string inputName = "H";
    std::uint64_t cloneSeed = 0;
    std::string cloneOut;
    teleclone->add_option("--input", inputName, "H, V, D, A, L, R or random");
    teleclone->add_option("--seed", cloneSeed, "seed for a random input state");
    teleclone->add_option("--out", cloneOut, "write the JSON report here");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "simulated acquisition run -> count table CSV");
    std::string simBasis = "HV";
    double simP = 1.0;
    std::uint64_t simEvents = 0;
    double simDuration = 94.0, simRate = 3.4;
    std::uint64_t simSeed = 0;
    std::string simOut;
    simulate->add_option("--basis", simBasis, "HV, DA or LR");
    simulate->add_option("--p", simP, "white-noise weight of the target state");
    simulate->add_option("--events", simEvents, "fixed event count (0 = Poisson mode)");
    simulate->add_option("--duration", simDuration, "acquisition hours (Poisson mode)");
    simulate->add_option("--rate", simRate, "events per hour (Poisson mode)");
    simulate->add_option("--seed", simSeed, "sampling seed");
    simulate->add_option("--out", simOut, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (derive->parsed()) {
            return cmd_derive(order, network, alpha,
                              phaseSet ? std::optional<double>(phaseValue) : std::nullopt,
                              outPath);
        }
        if (histogram->parsed()) {
            return cmd_histogram(basisName, p, mode, events, duration, rate, seed, histOut,
                                 format);
        }
        if (project->parsed()) return cmd_project(qubitName, outcomeName, projOut, projFormat);
        if (report->parsed()) return cmd_report(reportP, countFiles, significance, reportOut);
        if (witness->parsed()) return cmd_witness(which, witnessOut);
        if (teleclone->parsed()) return cmd_teleclone(inputName, cloneSeed, cloneOut);
        if (simulate->parsed()) return cmd_simulate(simBasis, simP, simEvents, simDuration,
                                                    simRate, simSeed, simOut);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitValidation;
    }
    return kExitUsage;
}
