#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "evaplab/lattice.hpp"
#include "oracles.hpp"

using namespace evaplab;

TEST_CASE("uncoupled chain is a product vacuum") {
    const HarmonicChain chain(8, 1.0, 1.0, 0.0);
    const auto cov = ground_state_covariance(chain);
    for (int s = 0; s < 8; ++s) {
        const double nu = std::sqrt(cov.position_block(s, s) * cov.momentum_block(s, s));
        CHECK(nu == Catch::Approx(0.5).margin(1e-12));
        CHECK(block_entropy(cov, {s}) == Catch::Approx(0.0).margin(1e-10));
    }
    CHECK(cross_block_mutual_information(cov, {2}, {3}) == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("two-site chain matches the closed-form normal-mode solution") {
    const double w0 = 1.3, k = 0.7;
    const auto cov = ground_state_covariance(HarmonicChain(2, 1.0, w0, k));
    const auto exact = oracles::two_site_chain_covariance(w0, k);
    CHECK(cov.position_block(0, 0) == Catch::Approx(exact.x11).margin(1e-12));
    CHECK(cov.position_block(0, 1) == Catch::Approx(exact.x12).margin(1e-12));
    CHECK(cov.momentum_block(0, 0) == Catch::Approx(exact.p11).margin(1e-12));
    CHECK(cov.momentum_block(0, 1) == Catch::Approx(exact.p12).margin(1e-12));
    CHECK(cov.position_block(0, 1) > 0.0);
}

TEST_CASE("periodic chain covariance is circulant and translation invariant") {
    const auto cov = ground_state_covariance(HarmonicChain(64, 1.0, 1.0, 1.0, Boundary::periodic));
    CHECK(cov.position_block(0, 1) == Catch::Approx(cov.position_block(10, 11)).margin(1e-12));
    CHECK(cov.position_block(0, 5) == Catch::Approx(cov.position_block(20, 25)).margin(1e-12));
    CHECK(block_entropy(cov, {0}) == Catch::Approx(block_entropy(cov, {31})).margin(1e-9));
}

TEST_CASE("whole chain is pure and blocks match complements") {
    const auto cov = ground_state_covariance(HarmonicChain(16, 1.0, 1.0, 1.0));
    std::vector<int> all;
    for (int i = 0; i < 16; ++i) all.push_back(i);
    CHECK(block_entropy(cov, all) == Catch::Approx(0.0).margin(1e-9));

    std::vector<int> block, complement;
    for (int i = 0; i < 6; ++i) block.push_back(i);
    for (int i = 6; i < 16; ++i) complement.push_back(i);
    CHECK(block_entropy(cov, block) ==
          Catch::Approx(block_entropy(cov, complement)).margin(1e-9));
}

TEST_CASE("adjacent blocks are strictly correlated, far blocks are not") {
    const auto cov = ground_state_covariance(HarmonicChain(60, 1.0, 1.0, 1.0));
    const double adjacent = cross_block_mutual_information(cov, {29}, {30});
    CHECK(adjacent > 1e-3);
    const double far = cross_block_mutual_information(cov, {0}, {59});
    CHECK(far < 1e-6 * adjacent);
}

TEST_CASE("separation sweep matches the frozen oracle run") {
    const auto series = entanglement_vs_separation(HarmonicChain(60, 1.0, 1.0, 1.0), 1, 10);
    REQUIRE(series.size() == 11);
    // Frozen from the independent covariance oracle.
    CHECK(series[0].mutual_information == Catch::Approx(8.011500177193e-02).epsilon(1e-6));
    CHECK(series[1].mutual_information == Catch::Approx(8.489286824177e-03).epsilon(1e-6));
    CHECK(series[1].mutual_information / series[0].mutual_information < 0.5);
    for (std::size_t i = 2; i < series.size(); ++i) {
        CHECK(series[i].mutual_information < series[i - 1].mutual_information);
    }
}

TEST_CASE("uncoupled chain separation sweep is identically zero") {
    const auto series = entanglement_vs_separation(HarmonicChain(20, 1.0, 1.0, 0.0), 1, 6);
    for (const auto& p : series) CHECK(p.mutual_information == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("fit_decay recovers a synthetic exponential exactly") {
    std::vector<SeparationPoint> series;
    for (int d = 0; d <= 8; ++d) series.push_back({d, std::exp(-2.0 * d)});
    const auto fit = fit_decay(series);
    CHECK(fit.rate == Catch::Approx(2.0).margin(1e-9));
    CHECK(fit.r_squared == Catch::Approx(1.0).margin(1e-12));
    CHECK(fit.points_used == 9);
}

TEST_CASE("fit_decay on the regulated chain is close to log-linear") {
    const auto series = entanglement_vs_separation(HarmonicChain(60, 1.0, 1.0, 1.0), 1, 10);
    const auto fit = fit_decay(series);
    CHECK(fit.r_squared > 0.9);
    CHECK(fit.rate > 1.0);
}

TEST_CASE("fit_decay needs at least three usable points") {
    std::vector<SeparationPoint> zeros{{0, 0.0}, {1, 0.0}, {2, 0.0}, {3, 0.0}};
    CHECK_THROWS_AS(fit_decay(zeros), InsufficientDataError);
    std::vector<SeparationPoint> two{{0, 1.0}, {1, 0.1}};
    CHECK_THROWS_AS(fit_decay(two), InsufficientDataError);
}

TEST_CASE("geometry and regulator errors") {
    CHECK_THROWS_AS(entanglement_vs_separation(HarmonicChain(10, 1.0, 1.0, 1.0), 3, 6),
                    ArgumentError);
    CHECK_THROWS_AS(cross_block_mutual_information(
                        ground_state_covariance(HarmonicChain(4, 1.0, 1.0, 1.0)), {1}, {1}),
                    ArgumentError);
    // Periodic massless chain keeps its zero mode.
    CHECK_THROWS_MATCHES(ground_state_covariance(HarmonicChain(8, 1.0, 0.0, 1.0, Boundary::periodic)),
                         NumericalError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("self_freq")));
    // Fixed-wall open chain is regulated by the boundary itself.
    CHECK_NOTHROW(ground_state_covariance(HarmonicChain(8, 1.0, 0.0, 1.0)));
}

TEST_CASE("reduced covariances respect the uncertainty bound") {
    const auto cov = ground_state_covariance(HarmonicChain(24, 1.0, 0.5, 2.0));
    for (int start = 0; start < 20; start += 4) {
        std::vector<int> sites{start, start + 1, start + 3};
        CHECK_NOTHROW(block_entropy(cov, sites)); // throws if any nu < 1/2 - 1e-10
    }
}
