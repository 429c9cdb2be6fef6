#include <doctest.h>

#include <cmath>

#include "coex/montecarlo.hpp"

using namespace coex;
using namespace coex::mc;
using geom::Band;
using geom::Tier;

namespace {

McConfig quick_config(int n, std::uint64_t seed) {
    McConfig cfg;
    cfg.n_realizations = n;
    cfg.window = geom::Window{3000.0};
    cfg.seed = seed;
    cfg.gamma_grid_db = {-10, -5, 0, 5, 10, 15, 20};
    cfg.threads = 2;
    return cfg;
}

}  // namespace

TEST_CASE("wilson halfwidth matches the closed formula") {
    const double z = 2.5758293035489004;
    for (auto [p, n] : std::initializer_list<std::pair<double, int>>{
             {0.5, 100}, {0.2, 2000}, {0.0, 50}, {1.0, 400}}) {
        const double z2 = z * z;
        const double want =
            z * std::sqrt(p * (1 - p) / n + z2 / (4.0 * double(n) * n)) / (1 + z2 / n);
        CHECK(wilson_halfwidth(p, n) == doctest::Approx(want).epsilon(1e-12));
        CHECK(wilson_halfwidth(p, n) >= 0.0);
    }
}

TEST_CASE("estimates are deterministic for a fixed seed") {
    const analytic::Scenario sc;
    const auto a = simulate_coverage(sc, Tier::cellular, Band::licensed, 0.7, 0.2,
                                     quick_config(150, 3));
    const auto b = simulate_coverage(sc, Tier::cellular, Band::licensed, 0.7, 0.2,
                                     quick_config(150, 3));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].p_hat == b[i].p_hat);
        CHECK(a[i].ci99 == b[i].ci99);
    }
}

TEST_CASE("p_hat is non-increasing in gamma") {
    const analytic::Scenario sc;
    const auto est = simulate_coverage(sc, Tier::wifi, Band::licensed, 0.7, 0.2,
                                       quick_config(250, 4));
    for (std::size_t i = 1; i < est.size(); ++i) CHECK(est[i].p_hat <= est[i - 1].p_hat);
}

TEST_CASE("doubling realizations shrinks the interval by about 1/sqrt(2)") {
    const analytic::Scenario sc;
    const auto small = simulate_coverage(sc, Tier::cellular, Band::licensed, 0.7, 0.2,
                                         quick_config(600, 5));
    const auto large = simulate_coverage(sc, Tier::cellular, Band::licensed, 0.7, 0.2,
                                         quick_config(1200, 6));
    const std::size_t mid = 4;  // gamma = 10 dB, p around 0.2
    const double ratio = large[mid].ci99 / small[mid].ci99;
    CHECK(ratio > 0.6364);  // 1/sqrt(2) - 10%
    CHECK(ratio < 0.7778);  // 1/sqrt(2) + 10%
}

TEST_CASE("single-tier cellular coverage matches the nearest-transmitter law") {
    // kappa = 0, only the licensed cellular tier interferes; composing the
    // interference transforms gives 1/(1 + gamma^{2/a} T(gamma^{-2/a}))
    analytic::Scenario sc;
    sc.lambda_z = 0.0;
    sc.lambda_w = 0.0;
    const auto est =
        simulate_coverage(sc, Tier::cellular, Band::licensed, 0.0, 0.0, quick_config(800, 7));
    for (const auto& e : est) {
        const double g = units::db_to_linear(e.gamma_db);
        const double want = analytic::coverage_cellular_licensed(g, 0.0, sc);
        CHECK(std::fabs(e.p_hat - want) <= e.ci99 + 0.01);
    }
}

TEST_CASE("very low threshold saturates coverage") {
    analytic::Scenario sc;
    McConfig cfg = quick_config(300, 8);
    cfg.gamma_grid_db = {-40.0};
    const auto est = simulate_coverage(sc, Tier::cellular, Band::licensed, 0.7, 0.2, cfg);
    CHECK(est[0].p_hat >= 0.99);
}

TEST_CASE("conditioned wifi association inflates coverage") {
    // the uniform-pick variant conditions the in-range count on association,
    // which removes near interferers relative to the cluster-parent model
    analytic::Scenario sc;
    McConfig parent = quick_config(800, 9);
    McConfig cond = quick_config(800, 9);
    cond.wifi_mode = WifiAssociation::conditioned_uniform;
    const auto a = simulate_coverage(sc, Tier::wifi, Band::licensed, 0.7, 0.2, parent);
    const auto b = simulate_coverage(sc, Tier::wifi, Band::licensed, 0.7, 0.2, cond);
    const std::size_t mid = 3;
    CHECK(b[mid].p_hat > a[mid].p_hat);
    const double want = analytic::coverage_wifi_legacy(units::db_to_linear(a[mid].gamma_db),
                                                       0.2, sc);
    CHECK(std::fabs(a[mid].p_hat - want) <= a[mid].ci99 + 0.01);
}

TEST_CASE("association redraw budget raises a timeout") {
    analytic::Scenario sc;
    sc.lambda_c = 1e-12;  // essentially no cellular network
    McConfig cfg = quick_config(10, 10);
    cfg.redraw_budget_per_realization = 5;
    CHECK_THROWS_AS(
        simulate_coverage(sc, Tier::cellular, Band::licensed, 0.5, 0.5, cfg), TimeoutError);
}

TEST_CASE("config validation") {
    analytic::Scenario sc;
    McConfig cfg = quick_config(0, 1);
    CHECK_THROWS_AS(simulate_coverage(sc, Tier::cellular, Band::licensed, 0.5, 0.5, cfg),
                    ParameterError);
    cfg = quick_config(10, 1);
    cfg.gamma_grid_db.clear();
    CHECK_THROWS_AS(simulate_coverage(sc, Tier::cellular, Band::licensed, 0.5, 0.5, cfg),
                    ParameterError);
}

TEST_CASE("empirical rates on synthetic input match the analytic licensed rate") {
    // one entity, everything licensed, kappa = 0: the average cellular rate
    // should match the closed-form licensed term when sites are a PPP
    analytic::Scenario sc;
    sc.lambda_z = 0.0;
    sc.lambda_w = 1e-6;  // a token wifi network so shares validate
    const double want = sc.b_cell_licensed * std::log2(1.0 + sc.gamma) *
                        analytic::coverage_cellular_licensed(sc.gamma, 0.0, sc);

    RngStream rng(31, "synthetic");
    const geom::Window win{6000.0};
    double sum = 0.0, sum2 = 0.0;
    const int reps = 24;
    for (int rep = 0; rep < reps; ++rep) {
        geom::Deployment d = geom::sample_ppp(sc.lambda_c, win, Tier::cellular, rng);
        geom::Deployment aps = geom::sample_ppp(20e-6, win, Tier::wifi, rng);
        for (auto& p : d.points) p.owner = 0;
        for (auto& p : aps.points) p.owner = 0;
        d.points.insert(d.points.end(), aps.points.begin(), aps.points.end());
        // users confined to the window core to dodge edge truncation
        EmpiricalNetwork net(d, sc, 1, Rect{-1500, 1500, -1500, 1500}, 100 + rep);
        const EntityAction profile[] = {{0.0, 0.0}};
        const auto rates = net.entity_rates(0, profile, 400, 0);
        sum += rates.cellular_bps;
        sum2 += rates.cellular_bps * rates.cellular_bps;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
    CHECK(std::fabs(mean - want) <= 3.5 * se + 0.01 * want);
}

TEST_CASE("empirical evaluator rejects abuse") {
    analytic::Scenario sc;
    geom::Deployment d;
    d.points = {{10, 10, Tier::cellular, Band::none, 0, false},
                {-20, 5, Tier::wifi, Band::none, 0, false}};
    EmpiricalNetwork net(d, sc, 1, Rect{-100, 100, -100, 100}, 1);
    const EntityAction profile[] = {{0.5, 0.5}};
    CHECK_THROWS_AS(net.entity_rates(0, profile, 0, 0), ParameterError);
    CHECK_THROWS_AS(net.entity_rates(1, profile, 10, 0), ParameterError);

    // an entity with a share but no elements is a data error
    const EntityAction two[] = {{0.5, 0.5}, {0.5, 0.5}};
    CHECK_THROWS_AS(simulate_datarate_empirical(d, sc, two, 10, 1), DataError);
}

TEST_CASE("glasgow-shaped input yields positive finite rates") {
    analytic::Scenario sc;
    RngStream rng(32, "city");
    geom::Deployment d;
    for (int i = 0; i < 60; ++i)
        d.points.push_back({rng.uniform(-800, 800), rng.uniform(-900, 900), Tier::cellular,
                            Band::none, i % 4, false});
    for (int i = 0; i < 240; ++i)
        d.points.push_back({rng.uniform(-800, 800), rng.uniform(-900, 900), Tier::wifi,
                            Band::none, i % 4, false});
    for (int i = 0; i < 3; ++i)
        d.points.push_back({rng.uniform(-500, 500), rng.uniform(-500, 500), Tier::incumbent,
                            Band::none, -1, false});
    geom::ExclusionZones zones;
    zones.radius = sc.rho;
    for (const auto& p : d.points)
        if (p.tier == Tier::incumbent) zones.centers.emplace_back(p.x, p.y);
    geom::tag_zones(d, zones);

    std::vector<EntityAction> profile(4);
    for (auto& a : profile) a = {0.6, 0.4};
    const auto rates = simulate_datarate_empirical(d, sc, profile, 80, 5);
    REQUIRE(rates.size() == 4);
    for (const auto& r : rates) {
        CHECK(r.cellular_bps > 0.0);
        CHECK(r.wifi_bps > 0.0);
        CHECK(std::isfinite(r.cellular_bps));
        CHECK(std::isfinite(r.wifi_bps));
    }
}
