#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bbox/algorithms.hpp"
#include "bbox/bounds.hpp"
#include "bbox/harness.hpp"

using namespace bbox;

TEST_CASE("(1+1) bounds")
{
    const OneOneBound half = lb_1plus1(100, 0.5);
    CHECK(half.las_vegas == 99);
    CHECK(half.monte_carlo == 99);
    CHECK(lb_1plus1(100, 0.0).monte_carlo == 100);
    CHECK(lb_1plus1(100, 0.75).monte_carlo == 98);
    CHECK_THROWS_AS(lb_1plus1(100, 1.0), DomainError);
    CHECK_THROWS_AS(lb_1plus1(100, -0.1), DomainError);
}

TEST_CASE("(1+lambda) and (mu+1) bounds")
{
    CHECK(lb_1pluslambda(1024, 1) == doctest::Approx(1024));
    CHECK(lb_1pluslambda(1024, 3) == doctest::Approx(512));
    CHECK(lb_1pluslambda(1024, 7) == doctest::Approx(341.3333333).epsilon(1e-9));
    CHECK(lb_muplus1(1000, 1) == doctest::Approx(630.929753571).epsilon(1e-9));
    CHECK(lb_muplus1(1000, 4) == doctest::Approx(315.464876786).epsilon(1e-9));
    for (std::size_t mu = 1; mu < 64; ++mu)
        CHECK(lb_muplus1(1000, mu + 1) < lb_muplus1(1000, mu));
}

TEST_CASE("(mu+lambda) bits per generation")
{
    // Reference values evaluated separately at 30 significant digits.
    CHECK(bits_mupluslambda(2, 2) == doctest::Approx(2.64249524661095).epsilon(1e-12));
    CHECK(bits_mupluslambda(2, 4) == doctest::Approx(3.96442334149831).epsilon(1e-12));
    CHECK(bits_mupluslambda(3, 3) == doctest::Approx(6.66311471588552).epsilon(1e-12));
    CHECK(std::abs(bits_mupluslambda(2, 2) - 2.6426) < 2e-4);
    for (std::size_t lambda = 2; lambda < 40; ++lambda)
        CHECK(bits_mupluslambda(4, lambda + 1) > bits_mupluslambda(4, lambda));
    CHECK(lb_mupluslambda(1000, 2, 2) == doctest::Approx(1000 / 2.64249524661095).epsilon(1e-12));
    CHECK_THROWS_AS(bits_mupluslambda(1, 4), DomainError);
}

TEST_CASE("ordered Bell numbers")
{
    const std::uint64_t expected[] = {1, 1, 3, 13, 75, 541, 4683, 47293, 545835};
    for (std::size_t m = 0; m < 9; ++m)
        CHECK(ordered_bell(m) == expected[m]);
    CHECK(ordered_bell(18) == 3385534663256845323ULL);
    CHECK_THROWS_AS(ordered_bell(30), std::overflow_error);
}

TEST_CASE("Las Vegas to Monte Carlo conversion")
{
    CHECK(remark1_bound(100, 0.5, 0.0) == doctest::Approx(200));
    CHECK(remark1_bound(100, 0.5, 0.25) == doctest::Approx(400));
    CHECK(remark1_bound(100, 1.0, 0.0) == doctest::Approx(100));
    CHECK_THROWS_AS(remark1_bound(100, 0.3, 0.3), DomainError);
    CHECK_THROWS_AS(remark1_bound(100, 0.2, 0.3), DomainError);
}

TEST_CASE("bound reports and their CSV line")
{
    const BoundReport r = bound_report(100, 1, 1, 0.5);
    CHECK_FALSE(r.additive_slack);
    CHECK(format_bound_line(r) == "(1+1),100,99.000000,99.000000,1.000000");
    const BoundReport m = bound_report(1024, 1, 3, 0.5);
    CHECK(m.additive_slack);
    CHECK(m.las_vegas_lb == doctest::Approx(512));
    CHECK(m.monte_carlo_lb == doctest::Approx(511.5));
    CHECK(model_label(16, 1) == "(16+1)");
    CHECK(bound_report(1000, 2, 2, 0.5).bits_per_query == doctest::Approx(2.64249524661095));
    CHECK_THROWS_AS(bound_report(10, 0, 1, 0.5), DomainError);
}

TEST_CASE("measured mean queries respect the Las Vegas bounds")
{
    struct Case {
        const char* id;
        std::size_t n, mu, lambda;
        double bound;
    };
    const Case cases[] = {
        {"two-plus-one", 512, 2, 1, lb_muplus1(512, 2)},
        {"rls", 512, 1, 1, lb_1plus1(512, 0.5).las_vegas},
        {"one-plus-one-mc", 1024, 1, 1, lb_1plus1(1024, 0.5).las_vegas},
        {"one-plus-lambda", 1024, 1, 16, lb_1pluslambda(1024, 16)},
        {"mu-plus-one", 1024, 12, 1, lb_muplus1(1024, 12)},
    };
    for (const auto& c : cases) {
        SweepConfig cfg;
        cfg.algo_id = c.id;
        cfg.n_list = {c.n};
        cfg.mu = c.id == std::string("mu-plus-one") ? c.mu : 0;
        cfg.lambda = c.id == std::string("one-plus-lambda") ? c.lambda : 0;
        cfg.trials = 20;
        double sum = 0;
        std::size_t wins = 0;
        for (const auto& r : run_sweep(cfg))
            if (r.success) {
                sum += static_cast<double>(r.queries);
                ++wins;
            }
        CAPTURE(c.id);
        REQUIRE(wins > 0);
        CHECK(sum / static_cast<double>(wins) >= 0.9 * c.bound);
    }
}
