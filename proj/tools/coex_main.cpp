// Command-line front end: coverage sweeps, rate surfaces, best-response games,
// baseline comparisons, self-checks and the real-deployment case study.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "coex/parallel.hpp"
#include "coex/scenario_io.hpp"
#include "coex/version.hpp"
#include "svg_plot.hpp"

namespace {

using namespace coex;

struct CommonArgs {
    std::string config;
    std::string out = "result";
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    int threads = default_thread_count();
    bool svg = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config = true) {
    auto* c = cmd->add_option("--config", args.config, "scenario file (TOML)");
    if (needs_config) c->required();
    cmd->add_option("--out", args.out, "output path stem");
    cmd->add_option("--set", args.overrides, "override a config key (section.key=value)");
    cmd->add_option("--seed", args.seed, "override the configured seed");
    cmd->add_option("--threads", args.threads, "worker thread cap");
    cmd->add_flag("--svg", args.svg, "also emit an SVG plot");
}

io::ScenarioFile load(const CommonArgs& args) {
    io::ScenarioFile sf = io::load_scenario(args.config, args.overrides);
    if (args.seed) sf.game.seed = *args.seed;
    for (const auto& w : sf.warnings) std::cerr << "warning: " << w << "\n";
    return sf;
}

void write_metadata(const CommonArgs& args, const io::ScenarioFile& sf,
                    const std::string& command, double wall_seconds) {
    nlohmann::ordered_json meta;
    meta["command"] = command;
    meta["version"] = coex::version;
    meta["seed"] = sf.game.seed;
    meta["threads"] = args.threads;
    meta["wall_time_s"] = wall_seconds;
    meta["config"] = sf.resolved;
    io::write_json(meta, args.out + ".meta.json");
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// ---- coverage --------------------------------------------------------------

int cmd_coverage(const CommonArgs& args, const std::string& gamma_spec, double delta_c,
                 double delta_w) {
    Timer timer;
    io::ScenarioFile sf = load(args);
    const analytic::Scenario& sc = sf.scenario;
    std::vector<double> grid =
        gamma_spec.empty() ? sf.mc.gamma_grid_db : io::parse_gamma_range(gamma_spec);

    game::AggregateUtilization agg{delta_c, delta_w};
    mc::McConfig mcc;
    mcc.n_realizations = sf.mc.realizations;
    mcc.window = geom::Window{sc.window_radius};
    mcc.seed = sf.game.seed;
    mcc.gamma_grid_db = grid;
    mcc.threads = args.threads;
    mcc.wifi_mode = sf.mc.wifi_mode;

    io::ResultTable table;
    table.columns = {"gamma_db", "tier", "band", "analytic", "p_hat", "ci99", "n"};
    struct Curve {
        geom::Tier tier;
        geom::Band band;
        const char* tier_name;
        const char* band_name;
    };
    const Curve curves[] = {
        {geom::Tier::cellular, geom::Band::licensed, "cellular", "licensed"},
        {geom::Tier::cellular, geom::Band::unlicensed, "cellular", "unlicensed"},
        {geom::Tier::wifi, geom::Band::licensed, "wifi", "legacy"},
        {geom::Tier::wifi, geom::Band::unlicensed, "wifi", "unlicensed"},
    };
    std::vector<plot::Series> analytic_series, mc_series;
    for (const Curve& c : curves) {
        const auto est = mc::simulate_coverage(sc, c.tier, c.band, agg.delta_c, agg.delta_w, mcc);
        plot::Series sa{std::string(c.tier_name) + "|" + c.band_name + " analytic", {}, {}};
        plot::Series sm{std::string(c.tier_name) + "|" + c.band_name + " mc", {}, {}};
        for (const auto& e : est) {
            const double g = units::db_to_linear(e.gamma_db);
            double a = 0.0;
            if (c.tier == geom::Tier::cellular)
                a = c.band == geom::Band::licensed
                        ? analytic::coverage_cellular_licensed(g, agg.delta_c, sc)
                        : analytic::coverage_cellular_unlicensed(g, agg.delta_c, agg.delta_w, sc);
            else
                a = c.band == geom::Band::licensed
                        ? analytic::coverage_wifi_legacy(g, agg.delta_w, sc)
                        : analytic::coverage_wifi_unlicensed(g, agg.delta_c, agg.delta_w, sc);
            table.add_row({io::cell(e.gamma_db), c.tier_name, c.band_name, io::cell(a),
                           io::cell(e.p_hat), io::cell(e.ci99), std::to_string(e.n)});
            sa.x.push_back(e.gamma_db);
            sa.y.push_back(a);
            sm.x.push_back(e.gamma_db);
            sm.y.push_back(e.p_hat);
        }
        analytic_series.push_back(std::move(sa));
        mc_series.push_back(std::move(sm));
    }
    io::write_csv(table, args.out + ".csv");
    if (args.svg) {
        std::vector<plot::Series> all = analytic_series;
        all.insert(all.end(), mc_series.begin(), mc_series.end());
        plot::write_svg_curves(args.out + ".svg", "coverage probability vs gamma (dB)", all);
    }
    write_metadata(args, sf, "coverage", timer.seconds());
    std::cerr << "coverage: wrote " << args.out << ".csv in " << timer.seconds() << " s\n";
    return 0;
}

// ---- rate surface ----------------------------------------------------------

int cmd_rate_surface(const CommonArgs& args, double grid_step) {
    Timer timer;
    io::ScenarioFile sf = load(args);
    const analytic::Scenario& sc = sf.scenario;
    const game::ActionGrid grid(grid_step > 0 ? grid_step : sf.game.mu);

    io::ResultTable table;
    table.columns = {"delta_c", "delta_w", "rate_cellular_bps", "rate_wifi_bps"};
    const int n = grid.axis_size();
    std::vector<double> rc(n * n), rw(n * n);
    parallel_for(static_cast<std::size_t>(n) * n, args.threads, [&](std::size_t flat) {
        const double dc = grid.level(static_cast<int>(flat) / n);
        const double dw = grid.level(static_cast<int>(flat) % n);
        rc[flat] = analytic::avg_datarate_cellular(sc.gamma, dc, dw, dc, sc);
        rw[flat] = analytic::avg_datarate_wifi(sc.gamma, dc, dw, dw, sc);
    });
    int best_c = 0, best_w = 0;
    for (int flat = 0; flat < n * n; ++flat) {
        const double dc = grid.level(flat / n), dw = grid.level(flat % n);
        table.add_row({io::cell(dc), io::cell(dw), io::cell(rc[flat]), io::cell(rw[flat])});
        if (rc[flat] > rc[best_c]) best_c = flat;
        if (rw[flat] > rw[best_w]) best_w = flat;
    }
    io::write_csv(table, args.out + ".csv");
    nlohmann::ordered_json summary;
    summary["cellular_argmax"] = {{"delta_c", grid.level(best_c / n)},
                                  {"delta_w", grid.level(best_c % n)},
                                  {"rate_bps", rc[best_c]}};
    summary["wifi_argmax"] = {{"delta_c", grid.level(best_w / n)},
                              {"delta_w", grid.level(best_w % n)},
                              {"rate_bps", rw[best_w]}};
    io::write_json(summary, args.out + ".summary.json");
    if (args.svg) {
        std::vector<plot::Series> rows;
        for (int i = 0; i < n; ++i) {
            plot::Series s{"dc=" + io::cell(grid.level(i)), {}, {}};
            for (int j = 0; j < n; ++j) {
                s.x.push_back(grid.level(j));
                s.y.push_back(rw[i * n + j] / 1e6);
            }
            rows.push_back(std::move(s));
        }
        plot::write_svg_curves(args.out + ".svg", "wifi rate (Mbit/s) vs delta_w", rows);
    }
    write_metadata(args, sf, "rate-surface", timer.seconds());
    std::cerr << "rate-surface: wrote " << args.out << ".csv in " << timer.seconds() << " s\n";
    return 0;
}

// ---- game ------------------------------------------------------------------

void write_game_outputs(const CommonArgs& args, const io::ScenarioFile& sf,
                        const game::GameResult& result) {
    io::ResultTable table;
    table.columns = {"activation", "actor", "delta_c_i", "delta_w_i", "payoff",
                     "rate_c",     "rate_w", "agg_delta_c", "agg_delta_w"};
    for (const auto& r : result.trace.records)
        table.add_row({std::to_string(r.activation), std::to_string(r.actor),
                       io::cell(r.action.delta_c), io::cell(r.action.delta_w),
                       io::cell(r.payoff), io::cell(r.rate_c), io::cell(r.rate_w),
                       io::cell(r.agg_delta_c), io::cell(r.agg_delta_w)});
    io::write_csv(table, args.out + ".trace.csv");

    nlohmann::ordered_json summary;
    summary["outcome"] =
        result.outcome == game::Outcome::converged ? "converged" : "non-terminated";
    summary["activations"] = result.activations;
    nlohmann::ordered_json profile = nlohmann::ordered_json::array();
    for (const auto& e : result.entities)
        profile.push_back({{"name", e.name},
                           {"delta_c", e.action.delta_c},
                           {"delta_w", e.action.delta_w}});
    summary["final_profile"] = profile;
    if (result.outcome == game::Outcome::non_terminated) {
        const int burn =
            static_cast<int>(sf.game.burn_in_fraction * result.trace.records.size());
        const auto mixed = game::empirical_mixed_strategy(result.trace, burn);
        nlohmann::ordered_json jm = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < mixed.size(); ++i) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const auto& m : mixed[i])
                rows.push_back({{"delta_c", m.action.delta_c},
                                {"delta_w", m.action.delta_w},
                                {"probability", m.probability}});
            jm.push_back({{"entity", result.entities[i].name}, {"distribution", rows}});
        }
        summary["mixed_strategy"] = jm;
    }
    summary["config"] = sf.resolved;
    io::write_json(summary, args.out + ".summary.json");

    if (args.svg) {
        std::vector<plot::Series> series;
        for (int i = 0; i < result.trace.n_entities; ++i) {
            series.push_back({"e" + std::to_string(i) + " rate_c (Mbit/s)", {}, {}});
            series.push_back({"e" + std::to_string(i) + " rate_w (Mbit/s)", {}, {}});
        }
        for (const auto& r : result.trace.records) {
            series[2 * r.actor].x.push_back(r.activation);
            series[2 * r.actor].y.push_back(r.rate_c / 1e6);
            series[2 * r.actor + 1].x.push_back(r.activation);
            series[2 * r.actor + 1].y.push_back(r.rate_w / 1e6);
        }
        plot::write_svg_curves(args.out + ".svg", "datarates per activation", series);
    }
}

int cmd_game(const CommonArgs& args) {
    Timer timer;
    io::ScenarioFile sf = load(args);
    game::GameConfig cfg = sf.game;
    cfg.threads = args.threads;
    game::AnalyticRateModel model(sf.scenario);
    const game::GameResult result = game::run_dbra(sf.entities, model, cfg);
    write_game_outputs(args, sf, result);
    write_metadata(args, sf, "game", timer.seconds());
    std::cerr << "game: " << (result.outcome == game::Outcome::converged ? "converged"
                                                                         : "non-terminated")
              << " after " << result.activations << " activations, wrote " << args.out
              << ".trace.csv in " << timer.seconds() << " s\n";
    return 0;
}

// ---- compare-random ----------------------------------------------------------

int cmd_compare_random(const CommonArgs& args, int runs, bool randomize_shares,
                       const std::vector<double>& theta_ratios) {
    Timer timer;
    io::ScenarioFile sf = load(args);
    if (sf.entities.size() != 2 && randomize_shares)
        throw ParameterError("share randomization expects exactly two entities");
    game::GameConfig cfg = sf.game;
    cfg.threads = args.threads;

    io::ResultTable table;
    table.columns = {"run",    "seed",   "theta_ratio", "dbra_rate_c", "dbra_rate_w",
                     "rnd_rate_c", "rnd_rate_w", "dbra_outcome"};
    double sum_dc = 0, sum_dw = 0, sum_rc = 0, sum_rw = 0;
    for (int run = 0; run < runs; ++run) {
        std::vector<game::Entity> entities = sf.entities;
        RngStream setup(sf.game.seed, "compare-setup", run);
        if (randomize_shares) {
            const double vc = setup.uniform(0.1, 0.9);
            const double vw = setup.uniform(0.1, 0.9);
            entities[0].v_c = vc;
            entities[1].v_c = 1.0 - vc;
            entities[0].v_w = vw;
            entities[1].v_w = 1.0 - vw;
        }
        const double ratio = theta_ratios.empty()
                                 ? entities[0].theta_c / entities[0].theta_w
                                 : theta_ratios[run % theta_ratios.size()];
        for (auto& e : entities) {
            e.theta_w = 1.0;
            e.theta_c = ratio;
        }
        game::GameConfig run_cfg = cfg;
        run_cfg.seed = detail::splitmix64(sf.game.seed + 1000003ULL * run);

        game::AnalyticRateModel model(sf.scenario);
        game::GameResult res = game::run_dbra(entities, model, run_cfg);
        // converged: rates of the final profile; cycling: post-burn-in average
        double dbra_c = 0, dbra_w = 0;
        if (res.outcome == game::Outcome::converged) {
            for (std::size_t i = 0; i < res.entities.size(); ++i) {
                const auto pb = game::evaluate_payoff(static_cast<int>(i),
                                                      res.entities[i].action, res.entities,
                                                      model);
                dbra_c += pb.rate_c;
                dbra_w += pb.rate_w;
            }
            dbra_c /= res.entities.size();
            dbra_w /= res.entities.size();
        } else {
            const int burn = static_cast<int>(cfg.burn_in_fraction * res.trace.records.size());
            std::vector<game::ActionVector> profile = res.trace.initial_profile;
            int kept = 0;
            for (int k = 0; k < static_cast<int>(res.trace.records.size()); ++k) {
                profile[res.trace.records[k].actor] = res.trace.records[k].action;
                if (k < burn) continue;
                ++kept;
                std::vector<game::Entity> snap = res.entities;
                for (std::size_t i = 0; i < snap.size(); ++i) snap[i].action = profile[i];
                for (std::size_t i = 0; i < snap.size(); ++i) {
                    const auto pb = game::evaluate_payoff(static_cast<int>(i), snap[i].action,
                                                          snap, model);
                    dbra_c += pb.rate_c / snap.size();
                    dbra_w += pb.rate_w / snap.size();
                }
            }
            dbra_c /= kept;
            dbra_w /= kept;
        }

        RngStream rnd(run_cfg.seed, "random-baseline");
        const auto actions = game::random_strategy(static_cast<int>(entities.size()), rnd);
        std::vector<game::Entity> rnd_entities = entities;
        for (std::size_t i = 0; i < rnd_entities.size(); ++i)
            rnd_entities[i].action = actions[i];
        double rnd_c = 0, rnd_w = 0;
        for (std::size_t i = 0; i < rnd_entities.size(); ++i) {
            const auto pb = game::evaluate_payoff(static_cast<int>(i), rnd_entities[i].action,
                                                  rnd_entities, model);
            rnd_c += pb.rate_c;
            rnd_w += pb.rate_w;
        }
        rnd_c /= rnd_entities.size();
        rnd_w /= rnd_entities.size();

        sum_dc += dbra_c;
        sum_dw += dbra_w;
        sum_rc += rnd_c;
        sum_rw += rnd_w;
        table.add_row({std::to_string(run), std::to_string(run_cfg.seed), io::cell(ratio),
                       io::cell(dbra_c), io::cell(dbra_w), io::cell(rnd_c), io::cell(rnd_w),
                       res.outcome == game::Outcome::converged ? "converged" : "non-terminated"});
    }
    io::write_csv(table, args.out + ".csv");
    nlohmann::ordered_json summary;
    summary["runs"] = runs;
    summary["dbra_mean_rate_c_bps"] = sum_dc / runs;
    summary["dbra_mean_rate_w_bps"] = sum_dw / runs;
    summary["random_mean_rate_c_bps"] = sum_rc / runs;
    summary["random_mean_rate_w_bps"] = sum_rw / runs;
    summary["improvement_c_percent"] = 100.0 * (sum_dc - sum_rc) / sum_rc;
    summary["improvement_w_percent"] = 100.0 * (sum_dw - sum_rw) / sum_rw;
    summary["config"] = sf.resolved;
    io::write_json(summary, args.out + ".summary.json");
    write_metadata(args, sf, "compare-random", timer.seconds());
    std::cerr << "compare-random: cellular " << summary["improvement_c_percent"]
              << "% wifi " << summary["improvement_w_percent"] << "% over " << runs
              << " runs in " << timer.seconds() << " s\n";
    return 0;
}

// ---- validate ----------------------------------------------------------------

int cmd_validate() {
    using namespace coex::analytic;
    int failures = 0;
    auto check = [&](const char* name, double got, double want, double tol) {
        const bool ok = std::fabs(got - want) <= tol;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": got " << got << ", expected "
                  << want << " (tol " << tol << ")\n";
        failures += !ok;
    };
    Scenario sc;  // reference parameter set

    check("zeta(1, 4) = pi/8", zeta(1.0, 4.0), units::pi / 8.0, 1e-9);
    check("zeta(10, 4) closed form", zeta(10.0, 4.0),
          0.5 * std::sqrt(10.0) * std::atan(std::sqrt(10.0)), 1e-9);

    // interference-limited closed forms against quadrature
    const double g = 10.0;
    const double rho2 = 2.0 * zeta(g, sc.alpha);
    check("cellular licensed kappa=0 closed form",
          coverage_cellular_licensed(g, 0.7, sc), 1.0 / (1.0 + rho2), 1e-8);
    const double cw = units::pi * std::sqrt(g) * (sc.lambda_w - 0.2 * sc.lambda_bar_w()) /
                      units::sinc(0.5);
    const double xw = cw * sc.rho_w * sc.rho_w;
    check("wifi legacy kappa=0 closed form", coverage_wifi_legacy(g, 0.2, sc),
          (1.0 - std::exp(-xw)) / xw, 1e-8);

    // Laplace product reproduces the unlicensed coverage exponent
    const double r = 60.0;
    const double s = g * std::pow(r, sc.alpha) / sc.p_c;
    const double product =
        laplace_interference(s, geom::Tier::cellular, geom::Tier::cellular,
                             geom::Band::unlicensed, 0.7, 0.2, sc, r) *
        laplace_interference(s, geom::Tier::wifi, geom::Tier::cellular,
                             geom::Band::unlicensed, 0.7, 0.2, sc) *
        laplace_interference(s, geom::Tier::incumbent, geom::Tier::cellular,
                             geom::Band::unlicensed, 0.7, 0.2, sc);
    const double g2a = std::pow(g, 2.0 / sc.alpha);
    const double cross = units::pi * g2a /
                         (std::pow(sc.p_c, 2.0 / sc.alpha) * units::sinc(2.0 / sc.alpha)) *
                         (0.2 * sc.lambda_bar_w() * std::pow(sc.p_w, 2.0 / sc.alpha) +
                          sc.lambda_z * std::pow(sc.p_z, 2.0 / sc.alpha));
    const double self = units::pi * 0.7 * sc.lambda_bar_c() * rho2;
    check("laplace product vs exponent", std::log(product), -(cross + self) * r * r, 1e-8);

    // adaptive quadrature vs a brute trapezoid of the same noisy integrand
    Scenario noisy = sc;
    noisy.noise_c = 3.2e-12;
    const double lam_s = noisy.lambda_c - 0.7 * noisy.lambda_bar_c();
    const double a = noisy.noise_c * g / noisy.p_c;
    const double c2 = units::pi * lam_s * (1.0 + rho2);
    const double rmax = 2500.0;
    const int steps = 400000;
    double trap = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double x = rmax * i / steps;
        const double f = x * std::exp(-a * std::pow(x, noisy.alpha) - c2 * x * x);
        trap += (i == 0 || i == steps) ? 0.5 * f : f;
    }
    trap *= 2.0 * units::pi * lam_s * rmax / steps;
    check("noisy coverage vs trapezoid oracle", coverage_cellular_licensed(g, 0.7, noisy),
          trap, 1e-6);

    std::cout << (failures ? "validate: FAILURES\n" : "validate: all checks passed\n");
    return failures ? 2 : 0;
}

// ---- casestudy ----------------------------------------------------------------

// a relative geodata path is taken relative to the config file's directory
std::string resolve_near_config(const std::string& path, const std::string& config) {
    if (path.empty() || path.front() == '/') return path;
    const std::size_t slash = config.find_last_of('/');
    if (slash == std::string::npos) return path;
    return config.substr(0, slash + 1) + "../" + path;
}

int cmd_casestudy(const CommonArgs& args) {
    Timer timer;
    io::ScenarioFile sf = load(args);
    if (sf.mode != "casestudy")
        throw ParameterError("casestudy subcommand needs mode = \"casestudy\"");
    std::vector<double> shares;
    for (const auto& e : sf.entities) shares.push_back(e.v_c);

    const io::BBox bbox{sf.casestudy.lon_min, sf.casestudy.lat_min, sf.casestudy.lon_max,
                        sf.casestudy.lat_max};
    std::string geopath = sf.casestudy.geodata_path;
    {
        std::ifstream probe(geopath);
        if (!probe) geopath = resolve_near_config(geopath, args.config);
    }
    geom::Deployment dep = io::load_geodata(geopath, bbox, shares, sf.scenario.rho,
                                            sf.casestudy.owner_seed);

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& p : dep.points) {
        if (first) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            first = false;
        }
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    mc::EmpiricalNetwork net(dep, sf.scenario, static_cast<int>(sf.entities.size()),
                             mc::Rect{xmin, xmax, ymin, ymax}, sf.game.seed);
    game::EmpiricalRateModel model(net, sf.casestudy.users_per_entity);
    game::GameConfig cfg = sf.game;
    cfg.threads = args.threads;
    const game::GameResult result = game::run_dbra(sf.entities, model, cfg);
    write_game_outputs(args, sf, result);
    write_metadata(args, sf, "casestudy", timer.seconds());
    std::cerr << "casestudy: " << dep.size() << " elements, "
              << (result.outcome == game::Outcome::converged ? "converged" : "non-terminated")
              << " after " << result.activations << " activations in " << timer.seconds()
              << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"6-GHz spectrum-sharing simulator and game solver"};
    app.require_subcommand(1);

    CommonArgs cov_args, surf_args, game_args, cmp_args, case_args;
    std::string gamma_spec;
    double grid_step = 0.0;
    double cov_delta_c = 0.7, cov_delta_w = 0.2;
    int runs = 30;
    bool randomize_shares = false;
    std::vector<double> theta_ratios;

    CLI::App* cov = app.add_subcommand("coverage", "analytic + Monte Carlo coverage curves");
    add_common(cov, cov_args);
    cov->add_option("--gamma-db", gamma_spec, "gamma sweep start:stop:step in dB");
    cov->add_option("--delta-c", cov_delta_c, "network-wide cellular utilization");
    cov->add_option("--delta-w", cov_delta_w, "network-wide wifi utilization");

    CLI::App* surf = app.add_subcommand("rate-surface", "average datarates on the action grid");
    add_common(surf, surf_args);
    surf->add_option("--grid-step", grid_step, "surface step (default: game grid step)");

    CLI::App* gm = app.add_subcommand("game", "run the best-response dynamics");
    add_common(gm, game_args);

    CLI::App* cmp = app.add_subcommand("compare-random", "best response vs random baseline");
    add_common(cmp, cmp_args);
    cmp->add_option("--runs", runs, "number of seeded runs");
    cmp->add_flag("--randomize-shares", randomize_shares,
                  "draw two-entity shares per run from [0.1, 0.9]");
    cmp->add_option("--theta-ratios", theta_ratios, "preference ratios cycled across runs");

    CLI::App* val = app.add_subcommand("validate", "closed-form self checks");

    CLI::App* cs = app.add_subcommand("casestudy", "empirical-payoff game on real locations");
    add_common(cs, case_args);

    try {
        app.parse(argc, argv);
        if (cov->parsed()) return cmd_coverage(cov_args, gamma_spec, cov_delta_c, cov_delta_w);
        if (surf->parsed()) return cmd_rate_surface(surf_args, grid_step);
        if (gm->parsed()) return cmd_game(game_args);
        if (cmp->parsed())
            return cmd_compare_random(cmp_args, runs, randomize_shares, theta_ratios);
        if (val->parsed()) return cmd_validate();
        if (cs->parsed()) return cmd_casestudy(case_args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n" << app.help() << std::flush;
        return 1;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
