#include <doctest.h>

#include <cmath>

#include "coex/quadrature.hpp"
#include "coex/radio.hpp"

using namespace coex;
using namespace coex::geom;

TEST_CASE("signal_power arithmetic and errors") {
    CHECK(radio::signal_power(3.0, 1.0, 4.0, 1.0) == 3.0);
    CHECK(radio::signal_power(2.0, 10.0, 4.0, 1.0) == doctest::Approx(2e-4).epsilon(1e-12));
    CHECK_THROWS_AS(radio::signal_power(2.0, 0.0, 4.0, 1.0), DomainError);
    CHECK_THROWS_AS(radio::signal_power(2.0, -1.0, 4.0, 1.0), ParameterError);
    CHECK_THROWS_AS(radio::signal_power(0.0, 1.0, 4.0, 1.0), ParameterError);
}

TEST_CASE("faded signal power has mean p d^-alpha") {
    RngStream rng(4, "fade");
    const double p = 2.0, d = 55.0, alpha = 4.0;
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) sum += radio::signal_power(p, d, alpha, rng.exponential());
    const double want = p * std::pow(d, -alpha);
    CHECK(std::fabs(sum / n - want) < 4.0 * want / std::sqrt(double(n)));
}

TEST_CASE("aggregate_interference basics") {
    radio::TxPowers powers{2.0, 1.0, 1.0};
    RngStream rng(5, "i");
    CHECK(radio::aggregate_interference(Deployment{}, powers, 4.0, rng) == 0.0);

    Deployment one;
    one.points = {{100.0, 0.0, Tier::wifi, Band::unlicensed, -1, false}};
    // fading variates are random; check the no-fading value through the mean
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += radio::aggregate_interference(one, powers, 4.0, rng);
    CHECK(std::fabs(sum / n - 1e-8) < 4e-8 / std::sqrt(double(n)));

    CHECK_THROWS_AS(radio::aggregate_interference(one, powers, 2.0, rng), DomainError);
}

TEST_CASE("aggregate_interference is monotone in the interferer set") {
    radio::TxPowers powers{2.0, 1.0, 1.0};
    Deployment small, big;
    RngStream gen(6, "pts");
    for (int i = 0; i < 30; ++i) {
        PointRecord p{gen.uniform(-2000, 2000), gen.uniform(-2000, 2000), Tier::wifi,
                      Band::unlicensed, -1, false};
        big.points.push_back(p);
        if (i < 20) small.points.push_back(p);
    }
    for (int rep = 0; rep < 50; ++rep) {
        RngStream ra(7, "mono", rep), rb(7, "mono", rep);
        const double a = radio::aggregate_interference(small, powers, 4.0, ra);
        const double b = radio::aggregate_interference(big, powers, 4.0, rb);
        CHECK(b >= a);  // shared prefix of fading draws, extra nonnegative terms
    }
}

TEST_CASE("mean interference matches the Campbell integral on an annulus") {
    // deployment restricted to distances [300, 2000] m keeps the sample
    // variance finite enough for a clean mean test
    const double lambda = 25e-6, p = 2.0, alpha = 4.0;
    const double r0 = 300.0, r1 = 2000.0;
    radio::TxPowers powers{p, p, p};
    RngStream gen(8, "annulus");
    const int draws = 4000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < draws; ++k) {
        Deployment d;
        const double area = units::pi * (r1 * r1 - r0 * r0);
        const auto n = gen.poisson(lambda * area);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double r = std::sqrt(r0 * r0 + (r1 * r1 - r0 * r0) * gen.uniform());
            const double th = 2 * units::pi * gen.uniform();
            d.points.push_back({r * std::cos(th), r * std::sin(th), Tier::cellular,
                                Band::licensed, -1, false});
        }
        const double v = radio::aggregate_interference(d, powers, alpha, gen);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
    const double oracle = 2.0 * units::pi * lambda * p *
                          quad::integrate_adaptive(
                              [alpha](double r) { return std::pow(r, 1.0 - alpha); }, r0, r1,
                              1e-10);
    CHECK(std::fabs(mean - oracle) < 4.0 * se);
}

TEST_CASE("sinr definition, edge cases and scale invariance") {
    CHECK(radio::sinr(1.0, 0.0, 1.0) == 1.0);
    CHECK(radio::sinr(1.0, 3.0, 1.0) == 0.25);
    CHECK(radio::sinr(0.0, 1.0, 0.0) == 0.0);
    CHECK(std::isinf(radio::sinr(1.0, 0.0, 0.0)));
    CHECK_THROWS_AS(radio::sinr(-1.0, 0.0, 0.0), ParameterError);

    RngStream rng(9, "scale");
    for (int i = 0; i < 200; ++i) {
        const double s = rng.uniform(0.0, 5.0), in = rng.uniform(0.0, 5.0),
                     no = rng.uniform(0.0, 5.0), c = rng.uniform(0.1, 100.0);
        CHECK(radio::sinr(c * s, c * in, c * no) ==
              doctest::Approx(radio::sinr(s, in, no)).epsilon(1e-12));
    }
}

TEST_CASE("association helpers") {
    Deployment d;
    d.points = {{10, 0, Tier::cellular, Band::licensed, -1, false},
                {5, 0, Tier::cellular, Band::unlicensed, -1, false},
                {-3, 0, Tier::cellular, Band::licensed, -1, false},
                {40, 0, Tier::wifi, Band::licensed, -1, false}};
    CHECK(radio::nearest_index(d, Tier::cellular, Band::licensed) == 2);
    CHECK(radio::nearest_index(d, Tier::cellular, Band::unlicensed) == 1);
    CHECK(radio::nearest_index(d, Tier::wifi, Band::unlicensed) == -1);

    RngStream rng(10, "assoc");
    CHECK(radio::uniform_in_range_index(d, Tier::wifi, Band::licensed, 50.0, rng) == 3);
    CHECK(radio::uniform_in_range_index(d, Tier::wifi, Band::licensed, 10.0, rng) == -1);
    int seen0 = 0, seen2 = 0;
    for (int i = 0; i < 2000; ++i) {
        const int k = radio::uniform_in_range_index(d, Tier::cellular, Band::licensed, 20.0, rng);
        seen0 += k == 0;
        seen2 += k == 2;
    }
    CHECK(seen0 + seen2 == 2000);
    CHECK(std::fabs(seen0 - 1000) < 3 * std::sqrt(500.0));
}
