#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bcva/mc_core.hpp"

using namespace bcva;

TEST_CASE("constant sampler has zero standard error", "[mc]") {
    McConfig config;
    config.n_paths = 100'000;
    const McEstimate e = estimate([](RandomStream&) { return 3.25; }, config);
    CHECK(e.mean == 3.25);
    CHECK(e.std_error == 0.0);
    CHECK(e.n == 100'000);
}

TEST_CASE("normal sampler mean within the CLT bound", "[mc]") {
    McConfig config;
    config.n_paths = 1'000'000;
    config.seed = 77;
    const McEstimate e = estimate([](RandomStream& s) { return s.normal(); }, config);
    CHECK(std::abs(e.mean) < 3.0 / std::sqrt(1e6));
    CHECK(std::abs(e.std_error - 1e-3) < 2e-5);
}

TEST_CASE("results do not depend on the worker count", "[mc]") {
    McConfig config;
    config.n_paths = 300'001;
    config.chunk_size = 1000;
    config.seed = 31337;
    auto sampler = [](RandomStream& s) { return std::exp(0.3 * s.normal()) + s.exponential(); };
    const McEstimate one = estimate(sampler, config, 1);
    const McEstimate eight = estimate(sampler, config, 8);
    CHECK(one.mean == eight.mean);
    CHECK(one.std_error == eight.std_error);
    CHECK(one.n == eight.n);
    CHECK(one.n == 300'001);

    const McEstimate again = estimate(sampler, config, 3);
    CHECK(again.mean == one.mean);

    config.chunk_size = 999;
    const McEstimate rechunked = estimate(sampler, config, 1);
    CHECK(rechunked.mean != one.mean);
}

TEST_CASE("chunked moments match a direct two-pass computation", "[mc]") {
    McConfig config;
    config.n_paths = 10'000;
    config.chunk_size = 97;
    config.seed = 5;
    const McEstimate e = estimate([](RandomStream& s) { return 10.0 + s.normal(); }, config);

    std::vector<double> xs;
    for (std::uint64_t chunk = 0; chunk * config.chunk_size < config.n_paths; ++chunk) {
        RandomStream s(config.seed, chunk);
        const std::uint64_t count = std::min(config.chunk_size, config.n_paths - chunk * config.chunk_size);
        for (std::uint64_t i = 0; i < count; ++i) xs.push_back(10.0 + s.normal());
    }
    double mean = 0.0;
    for (const double x : xs) mean += x;
    mean /= xs.size();
    double ss = 0.0;
    for (const double x : xs) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (xs.size() - 1) / xs.size());
    CHECK_THAT(e.mean, Catch::Matchers::WithinRel(mean, 1e-14));
    CHECK_THAT(e.std_error, Catch::Matchers::WithinRel(se, 1e-10));
}

TEST_CASE("standard error halves when paths quadruple", "[mc]") {
    auto sampler = [](RandomStream& s) { return s.exponential(); };
    McConfig small;
    small.n_paths = 250'000;
    small.seed = 1;
    McConfig large = small;
    large.n_paths = 1'000'000;
    large.seed = 2;
    const double ratio = estimate(sampler, small).std_error / estimate(sampler, large).std_error;
    CHECK(std::abs(ratio - 2.0) < 0.4);
}

TEST_CASE("non-finite samples fail with the chunk index", "[mc]") {
    McConfig config;
    config.n_paths = 10'000;
    config.chunk_size = 1000;
    std::uint64_t call = 0;
    auto bad = [&call](RandomStream&) { return ++call == 4321 ? std::nan("") : 1.0; };
    REQUIRE_THROWS_AS(estimate(bad, config), NumericalFailure);
    call = 0;
    REQUIRE_THROWS_WITH(estimate(bad, config), Catch::Matchers::ContainsSubstring("chunk 4"));
}

TEST_CASE("lowest failing chunk is reported regardless of scheduling", "[mc]") {
    McConfig config;
    config.n_paths = 64'000;
    config.chunk_size = 1000;
    auto bad = [](RandomStream& s) {
        const double u = s.uniform();
        return u < 1e-4 ? std::numeric_limits<double>::infinity() : u;
    };
    std::string first, second;
    try { estimate(bad, config, 1); } catch (const NumericalFailure& e) { first = e.what(); }
    try { estimate(bad, config, 6); } catch (const NumericalFailure& e) { second = e.what(); }
    CHECK(!first.empty());
    CHECK(first == second);
}

TEST_CASE("invalid configurations are rejected", "[mc]") {
    McConfig config;
    config.n_paths = 1;
    CHECK_THROWS_AS(estimate([](RandomStream&) { return 0.0; }, config), InvalidArgument);
    config.n_paths = 10;
    config.chunk_size = 0;
    CHECK_THROWS_AS(estimate([](RandomStream&) { return 0.0; }, config), InvalidArgument);
}

TEST_CASE("antithetic pairs reduce variance of a monotone payoff", "[mc]") {
    McConfig config;
    config.n_paths = 200'000;
    config.seed = 8;
    auto payoff = [](RandomStream& s) { return std::exp(0.4 * s.normal()); };
    const McEstimate plain = estimate(payoff, config);
    config.antithetic = true;
    const McEstimate paired = estimate(payoff, config);
    CHECK(paired.std_error < 0.5 * plain.std_error);
    CHECK(std::abs(paired.mean - std::exp(0.08)) < 3.0 * paired.std_error);
}

TEST_CASE("multi-output estimates share draws", "[mc]") {
    McConfig config;
    config.n_paths = 50'000;
    const auto est = estimate_many<3>(
        [](RandomStream& s) {
            const double z = s.normal();
            return std::array<double, 3>{z, -z, 2.0 * z};
        },
        config);
    CHECK(est[0].mean == -est[1].mean);
    CHECK_THAT(est[2].mean, Catch::Matchers::WithinRel(2.0 * est[0].mean, 1e-12));
    CHECK_THAT(est[2].std_error, Catch::Matchers::WithinRel(2.0 * est[0].std_error, 1e-12));
}
