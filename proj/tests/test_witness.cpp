#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "psi6/witness.hpp"
#include "test_oracles.hpp"

using namespace psi6;
using doctest::Approx;

namespace {
const QubitKet& psi6plus() {
    static const QubitKet psi = reference_state(ReferenceState::Psi6Plus);
    return psi;
}

const PauliObservable& wmax() {
    static const PauliObservable w = max_overlap_witness(psi6plus(), 2.0 / 3.0);
    return w;
}

const PauliObservable& wred() {
    static const PauliObservable w = reduce_witness(wmax(), 181.0 / 576.0);
    return w;
}

// The three-setting witness written out term by term: per Pauli type i the
// listed supports are every 2-subset inside a triple (weight 3/576) and
// every 2+2 support across both triples (weight 5/576), all entering with a
// minus sign; their support-complements repeat the weights with the same
// sign for i = x, y and the opposite sign for i = z. The full six-letter
// words carry -1/64 (x, y) and +1/64 (z), and the identity 181/576.
PauliObservable handwritten_reduced_witness() {
    PauliObservable w(6);
    w.set("IIIIII", 181.0 / 576.0);
    const std::vector<std::pair<std::vector<int>, double>> listed{
        {{0, 1}, 3.0}, {{0, 2}, 3.0}, {{1, 2}, 3.0},
        {{3, 4}, 3.0}, {{3, 5}, 3.0}, {{4, 5}, 3.0},
        {{0, 1, 3, 4}, 5.0}, {{0, 1, 3, 5}, 5.0}, {{0, 1, 4, 5}, 5.0},
        {{0, 2, 3, 4}, 5.0}, {{0, 2, 3, 5}, 5.0}, {{0, 2, 4, 5}, 5.0},
        {{1, 2, 3, 4}, 5.0}, {{1, 2, 3, 5}, 5.0}, {{1, 2, 4, 5}, 5.0},
    };
    for (const char letter : {'X', 'Y', 'Z'}) {
        std::string full(6, letter);
        w.set(full, letter == 'Z' ? 1.0 / 64 : -1.0 / 64);
        for (const auto& [support, weight] : listed) {
            std::string word(6, 'I');
            for (int q : support) word[static_cast<std::size_t>(q)] = letter;
            w.set(word, -weight / 576.0);
            std::string complement(6, letter);
            for (int q : support) complement[static_cast<std::size_t>(q)] = 'I';
            w.set(complement, (letter == 'Z' ? weight : -weight) / 576.0);
        }
    }
    return w;
}
}  // namespace

TEST_CASE("max-overlap witness values") {
    CHECK(expectation(wmax(), psi6plus()) == Approx(-1.0 / 3).epsilon(1e-12));
    CHECK(expectation(wmax(), DensityOperator::maximally_mixed(6)) ==
          Approx(2.0 / 3 - 1.0 / 64).epsilon(1e-12));
    CHECK(white_noise_tolerance(wmax(), psi6plus()) == Approx(64.0 / 189).epsilon(1e-12));
    CHECK_THROWS_AS(max_overlap_witness(psi6plus(), 0.0), std::domain_error);
    CHECK_THROWS_AS(max_overlap_witness(psi6plus(), 1.0), std::domain_error);
}

TEST_CASE("reduced witness matches the handwritten coefficient table") {
    const auto expected = handwritten_reduced_witness();
    const auto& actual = wred();
    // Every actual term appears in the handwritten table and vice versa.
    REQUIRE(actual.term_count() == expected.term_count());
    for (const auto& [word, coeff] : expected.terms()) {
        INFO("word ", word);
        CHECK(actual.coeff(word) == Approx(coeff).epsilon(1e-11));
    }
    CHECK(actual.term_count() == 94);
}

TEST_CASE("reduced witness core values") {
    CHECK(expectation(wred(), psi6plus()) == Approx(-1.0 / 18).epsilon(1e-11));
    CHECK(expectation(wred(), DensityOperator::maximally_mixed(6)) ==
          Approx(181.0 / 576).epsilon(1e-12));
    CHECK(white_noise_tolerance(wred(), psi6plus()) == Approx(32.0 / 213).epsilon(1e-10));
    // The filtered part carries weight 213/576 on the target.
    PauliObservable filtered = wred();
    filtered.set(filtered.identity_word(), 0.0);
    CHECK(expectation(filtered, psi6plus()) == Approx(213.0 / 576).epsilon(1e-11));
    // Expectation on the white-noise state at p = 0.859.
    const auto rho = add_white_noise(psi6plus(), 0.859);
    CHECK(expectation(wred(), rho) ==
          Approx(181.0 / 576 - 0.859 * 213.0 / 576).epsilon(1e-9));
    CHECK(expectation(wred(), rho) < 0.0);
    CHECK(expectation(wmax(), psi6plus()) == Approx(-1.0 / 3).epsilon(1e-12));
}

TEST_CASE("max-overlap witness decomposition matches the dense kron oracle") {
    const Eigen::MatrixXcd op =
        (2.0 / 3.0) * Eigen::MatrixXcd::Identity(64, 64) -
        psi6plus().amplitudes() * psi6plus().amplitudes().adjoint();
    const auto oracle = psi6::testing::oracle_decompose(op, 6);
    REQUIRE(oracle.size() == wmax().term_count());
    for (const auto& [word, coeff] : oracle) {
        INFO("word ", word);
        CHECK(wmax().coeff(word) == Approx(coeff).epsilon(1e-10));
    }
}

TEST_CASE("reduced witness words are all single-type") {
    for (const auto& [word, coeff] : wred().terms()) {
        CHECK(single_pauli_type(word));
    }
}

TEST_CASE("every state the reduced witness flags is flagged by the full witness") {
    const auto& psi = psi6plus();
    for (double p = 0.0; p <= 1.0; p += 0.01) {
        const auto rho = add_white_noise(psi, p);
        if (expectation(wred(), rho) < 0) {
            CHECK(expectation(wmax(), rho) < 0);
        }
    }
}

TEST_CASE("witness reports") {
    const auto rho = add_white_noise(psi6plus(), 0.9);
    const auto report = witness_report(wred(), rho, psi6plus());
    CHECK(report.expectation < 0);
    CHECK(report.entangled);
    CHECK(report.noiseToleranceAtPureTarget == Approx(32.0 / 213).epsilon(1e-10));
    // A positive significance margin can turn a marginal value inconclusive.
    const auto marginal =
        witness_report_from_estimate(wred(), -0.01, 0.014, psi6plus(), 1.5);
    CHECK_FALSE(marginal.entangled);
    const auto clear = witness_report_from_estimate(wred(), -0.05, 0.014, psi6plus(), 1.5);
    CHECK(clear.entangled);
}

TEST_CASE("degenerate tolerance solve") {
    // Expectation 0 on the mixed state and -1 on the target: threshold
    // p* = 0, tolerance 1.
    PauliObservable obs(2);
    obs.set("ZZ", -1.0);  // <ZZ> on |HV> is -1, on the mixed state 0
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0b01) = 1.0;
    const QubitKet hv(2, v);
    CHECK(expectation(obs, hv) == Approx(-1.0).epsilon(1e-14));
    CHECK(white_noise_tolerance(obs, hv) == Approx(1.0).epsilon(1e-14));
    // A witness that never detects the target is a domain error.
    PauliObservable never(2);
    never.set("II", 1.0);
    CHECK_THROWS_AS(white_noise_tolerance(never, hv), std::domain_error);
}

TEST_CASE("correlation tensor") {
    SUBCASE("three-basis entries of the six-photon state") {
        const auto tensor = CorrelationTensor::full(psi6plus());
        CHECK(tensor.at("zzzzzz") == Approx(-1.0).epsilon(1e-12));
        CHECK(tensor.at("xxxxxx") == Approx(1.0).epsilon(1e-12));
        CHECK(tensor.at("yyyyyy") == Approx(1.0).epsilon(1e-12));
        const auto ind = indicator_norm(tensor, {"zzzzzz", "xxxxxx", "yyyyyy"});
        CHECK(ind.value == Approx(3.0).epsilon(1e-12));
        CHECK(ind.notFullySeparable);
    }
    SUBCASE("white-noise state scales every entry by p") {
        const auto rho = add_white_noise(psi6plus(), 0.859);
        const auto tensor = CorrelationTensor::full(rho);
        const auto three = indicator_norm(tensor, {"zzzzzz", "xxxxxx", "yyyyyy"});
        CHECK(three.value == Approx(3 * 0.859 * 0.859).epsilon(1e-10));
        CHECK(three.notFullySeparable);
        for (const auto& pair : {std::vector<std::string>{"zzzzzz", "xxxxxx"},
                                 std::vector<std::string>{"zzzzzz", "yyyyyy"},
                                 std::vector<std::string>{"xxxxxx", "yyyyyy"}}) {
            const auto two = indicator_norm(tensor, pair);
            CHECK(two.value == Approx(2 * 0.859 * 0.859).epsilon(1e-10));
            CHECK(two.notFullySeparable);
        }
    }
    SUBCASE("missing entries are a usage error") {
        const auto tensor =
            CorrelationTensor::subset(6, {{"zzzzzz", -0.895}, {"xxxxxx", 0.863}});
        CHECK_THROWS_AS(indicator_norm(tensor, {"zzzzzz", "yyyyyy"}), std::invalid_argument);
        CHECK(indicator_norm(tensor, {"zzzzzz", "xxxxxx"}).value ==
              Approx(0.895 * 0.895 + 0.863 * 0.863).epsilon(1e-12));
    }
    SUBCASE("product states factorize: tensor norm equals the Bloch product") {
        std::mt19937_64 rng(31337);
        for (int rep = 0; rep < 10; ++rep) {
            const QubitKet ket = random_product_ket(6, rng);
            const auto values = correlation_tensor_values(ket, Execution::Serial);
            double norm2 = 0;
            for (double t : values) norm2 += t * t;
            // Independent route: per-qubit Bloch vectors, norm = product.
            double expected = 1;
            for (int q = 0; q < 6; ++q) {
                const DensityOperator r = reduce_to_qubit(ket, q);
                const double bx = 2 * r.matrix()(0, 1).real();
                const double by = -2 * r.matrix()(0, 1).imag();
                const double bz = (r.matrix()(0, 0) - r.matrix()(1, 1)).real();
                expected *= bx * bx + by * by + bz * bz;
            }
            CHECK(norm2 == Approx(expected).epsilon(1e-9));
            CHECK(norm2 <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("product-state sweep never flags product states") {
    const auto bounds = product_state_sweep(wmax(), wred(), 500, 777);
    CHECK(bounds.states == 500);
    CHECK(bounds.minMaxOverlapWitness >= 0.0);
    CHECK(bounds.minReducedWitness >= 0.0);
    CHECK(bounds.maxTensorNormSquared <= 1.0 + 1e-10);
}

TEST_CASE("serial and parallel tensor kernels are identical") {
    const auto rho = add_white_noise(psi6plus(), 0.3);
    const auto serial = correlation_tensor_values(rho, Execution::Serial);
    const auto parallel = correlation_tensor_values(rho, Execution::Parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t w = 0; w < serial.size(); ++w) CHECK(serial[w] == parallel[w]);
}

TEST_CASE("reduced witness golden file") {
    const char* src = PSI6_SOURCE_DIR;
    std::ifstream in(std::string(src) + "/tests/golden/witness_reduced_psi6.txt");
    REQUIRE_MESSAGE(in.good(), "golden witness file missing");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == pauli_to_text(wred()));
}
