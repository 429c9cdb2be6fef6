#include "coex/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>

#include "coex/parallel.hpp"

namespace coex::mc {

using geom::Band;
using geom::Deployment;
using geom::Tier;

double wilson_halfwidth(double p_hat, int n, double z) {
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    return z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * double(n) * n)) / denom;
}

namespace {

struct Realization {
    Deployment all;  // cellular + wifi + incumbents, zone/band tagged
};

Realization draw_realization(const analytic::Scenario& sc, double delta_c, double delta_w,
                             const geom::Window& window, RngStream& rng) {
    // incumbents are sampled in an inflated window so that zones whose
    // centres fall outside still carve the observed region
    geom::Window inflated{window.radius_m + sc.rho};
    Deployment inc = geom::sample_ppp(sc.lambda_z, inflated, Tier::incumbent, rng);
    geom::ExclusionZones zones;
    zones.radius = sc.rho;
    for (const auto& p : inc.points) zones.centers.emplace_back(p.x, p.y);

    Deployment cell = geom::sample_ppp(sc.lambda_c, window, Tier::cellular, rng);
    geom::tag_zones(cell, zones);
    geom::tag_band(cell, delta_c, rng);

    Deployment wifi = geom::sample_ppp(sc.lambda_w, window, Tier::wifi, rng);
    geom::tag_zones(wifi, zones);
    geom::tag_band(wifi, delta_w, rng);

    Realization r;
    r.all.points.reserve(inc.size() + cell.size() + wifi.size());
    r.all.points.insert(r.all.points.end(), cell.points.begin(), cell.points.end());
    r.all.points.insert(r.all.points.end(), wifi.points.begin(), wifi.points.end());
    r.all.points.insert(r.all.points.end(), inc.points.begin(), inc.points.end());
    return r;
}

bool interferes(const geom::PointRecord& p, Tier victim, Band band) {
    if (band == Band::unlicensed)
        return p.tier == Tier::incumbent || p.band == Band::unlicensed;
    // licensed / legacy access: own network only
    return p.tier == victim && p.band == Band::licensed;
}

// One SINR sample for the typical user of (tier, band); NaN when the
// realization must be redrawn.
double sample_sinr(const analytic::Scenario& sc, Tier tier, Band band, double delta_c,
                   double delta_w, const McConfig& cfg, RngStream& rng) {
    const Realization real = draw_realization(sc, delta_c, delta_w, cfg.window, rng);
    const radio::TxPowers powers{sc.p_c, sc.p_w, sc.p_z};
    const double min2 = geom::min_separation_m * geom::min_separation_m;

    double signal = 0.0;
    int serving = -1;
    if (tier == Tier::cellular) {
        serving = radio::nearest_index(real.all, Tier::cellular, band);
        if (serving < 0) return std::nan("");
        const double d = std::sqrt(std::max(real.all[serving].dist2(), min2));
        signal = radio::signal_power(sc.p_c, d, sc.alpha, rng.exponential());
    } else if (cfg.wifi_mode == WifiAssociation::cluster_parent) {
        // the user's own AP, at the in-cell distance; not part of the field
        const double d = std::max(geom::sample_wifi_serving_distance(sc.rho_w, rng),
                                  geom::min_separation_m);
        signal = radio::signal_power(sc.p_w, d, sc.alpha, rng.exponential());
    } else {
        serving = radio::uniform_in_range_index(real.all, Tier::wifi, band, sc.rho_w, rng);
        if (serving < 0) return std::nan("");
        const double d = std::sqrt(std::max(real.all[serving].dist2(), min2));
        signal = radio::signal_power(sc.p_w, d, sc.alpha, rng.exponential());
    }

    double interference = 0.0;
    for (std::size_t i = 0; i < real.all.size(); ++i) {
        if (static_cast<int>(i) == serving) continue;
        const auto& p = real.all[i];
        if (!interferes(p, tier, band)) continue;
        const double d2 = std::max(p.dist2(), min2);
        interference += powers.of(p.tier) * rng.exponential() * std::pow(d2, -0.5 * sc.alpha);
    }
    const double noise = tier == Tier::cellular ? sc.noise_c : sc.noise_w;
    return radio::sinr(signal, interference, noise);
}

}  // namespace

std::vector<CoverageEstimate> simulate_coverage(const analytic::Scenario& sc, Tier tier,
                                                Band band, double delta_c, double delta_w,
                                                const McConfig& cfg) {
    sc.validate();
    if (cfg.n_realizations < 1)
        throw ParameterError("simulate_coverage: need at least one realization");
    if (cfg.gamma_grid_db.empty())
        throw ParameterError("simulate_coverage: empty gamma grid");
    if (tier == Tier::incumbent) throw ParameterError("simulate_coverage: incumbent tier");

    const std::size_t n = static_cast<std::size_t>(cfg.n_realizations);
    std::vector<double> sinr(n);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<bool> cancelled{false};

    parallel_for(n, cfg.threads, [&](std::size_t k) {
        if (cancelled.load(std::memory_order_relaxed)) return;
        try {
            RngStream rng(cfg.seed, "realization", k);
            double s = std::nan("");
            for (int attempt = 0; attempt <= cfg.redraw_budget_per_realization; ++attempt) {
                s = sample_sinr(sc, tier, band, delta_c, delta_w, cfg, rng);
                if (!std::isnan(s)) break;
            }
            if (std::isnan(s))
                throw TimeoutError("simulate_coverage: association redraw budget exhausted");
            sinr[k] = s;
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            cancelled.store(true, std::memory_order_relaxed);
        }
    });
    if (failure) std::rethrow_exception(failure);

    std::vector<CoverageEstimate> out;
    out.reserve(cfg.gamma_grid_db.size());
    for (double gdb : cfg.gamma_grid_db) {
        const double g = units::db_to_linear(gdb);
        int successes = 0;
        for (double s : sinr) successes += (s > g);
        const double p = double(successes) / double(n);
        out.push_back({gdb, p, wilson_halfwidth(p, static_cast<int>(n)), static_cast<int>(n)});
    }
    return out;
}

EmpiricalNetwork::EmpiricalNetwork(const Deployment& deployment, analytic::Scenario scenario,
                                   int n_entities, Rect user_region, std::uint64_t seed)
    : sc_(std::move(scenario)), region_(user_region), seed_(seed), n_entities_(n_entities) {
    sc_.validate();
    if (n_entities < 1) throw ParameterError("EmpiricalNetwork: need at least one entity");
    if (deployment.empty()) throw DataError("EmpiricalNetwork: empty deployment");
    entity_bs_.resize(n_entities);
    entity_ap_.resize(n_entities);
    const std::size_t n = deployment.size();
    x_.reserve(n);
    y_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = deployment[i];
        x_.push_back(p.x);
        y_.push_back(p.y);
        tier_.push_back(p.tier);
        owner_.push_back(p.owner);
        in_zone_.push_back(p.in_zone);
        score_.push_back(RngStream(seed, "element-score", i).uniform());
        if (p.tier == Tier::incumbent) continue;
        if (p.owner < 0 || p.owner >= n_entities)
            throw DataError("EmpiricalNetwork: element without a valid owner");
        (p.tier == Tier::cellular ? entity_bs_ : entity_ap_)[p.owner].push_back(
            static_cast<int>(i));
    }
}

int EmpiricalNetwork::entity_element_count(int entity, Tier tier) const {
    if (entity < 0 || entity >= n_entities_) throw ParameterError("bad entity index");
    return static_cast<int>(
        (tier == Tier::cellular ? entity_bs_ : entity_ap_)[entity].size());
}

void EmpiricalNetwork::assign_bands(std::span<const EntityAction> profile,
                                    std::vector<Band>& bands) const {
    bands.resize(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (tier_[i] == Tier::incumbent) {
            bands[i] = Band::none;  // incumbents always occupy the 6-GHz band
            continue;
        }
        const double delta = tier_[i] == Tier::cellular ? profile[owner_[i]].delta_c
                                                        : profile[owner_[i]].delta_w;
        bands[i] = (!in_zone_[i] && score_[i] < delta) ? Band::unlicensed : Band::licensed;
    }
}

double EmpiricalNetwork::user_success(double ux, double uy, std::size_t serving,
                                      const std::vector<Band>& bands, double noise) const {
    const double alpha = sc_.alpha;
    const Band sband = bands[serving];
    const Tier stier = tier_[serving];
    const double min2 = geom::min_separation_m * geom::min_separation_m;
    auto tx_power = [&](std::size_t j) {
        switch (tier_[j]) {
            case Tier::cellular: return sc_.p_c;
            case Tier::wifi: return sc_.p_w;
            default: return sc_.p_z;
        }
    };
    auto xi = [&](std::size_t j) {
        const double dx = x_[j] - ux, dy = y_[j] - uy;
        const double d2 = std::max(dx * dx + dy * dy, min2);
        return tx_power(j) * std::pow(d2, -0.5 * alpha);
    };
    const double xi_s = xi(serving);
    double prob = std::exp(-sc_.gamma * noise / xi_s);
    for (std::size_t j = 0; j < x_.size(); ++j) {
        if (j == serving) continue;
        const bool in_band = sband == Band::unlicensed
                                 ? (tier_[j] == Tier::incumbent || bands[j] == Band::unlicensed)
                                 : (tier_[j] == stier && bands[j] == Band::licensed);
        if (!in_band) continue;
        prob /= 1.0 + sc_.gamma * xi(j) / xi_s;
    }
    return prob;
}

EntityRates EmpiricalNetwork::entity_rates(int entity, std::span<const EntityAction> profile,
                                           int n_users, std::uint64_t nonce) const {
    if (entity < 0 || entity >= n_entities_)
        throw ParameterError("entity_rates: bad entity index");
    if (static_cast<int>(profile.size()) != n_entities_)
        throw ParameterError("entity_rates: profile size mismatch");
    if (n_users < 1) throw ParameterError("entity_rates: need at least one test user");

    std::vector<Band> bands;
    assign_bands(profile, bands);
    const double spectral = std::log2(1.0 + sc_.gamma);

    EntityRates rates;
    if (!entity_bs_[entity].empty()) {
        RngStream rng(seed_, "cell-users", nonce * 1000003ULL + entity);
        double acc = 0.0;
        for (int u = 0; u < n_users; ++u) {
            const double ux = rng.uniform(region_.xmin, region_.xmax);
            const double uy = rng.uniform(region_.ymin, region_.ymax);
            std::size_t best = 0;
            double best2 = std::numeric_limits<double>::infinity();
            for (int j : entity_bs_[entity]) {
                const double dx = x_[j] - ux, dy = y_[j] - uy;
                const double d2 = dx * dx + dy * dy;
                if (d2 < best2) {
                    best2 = d2;
                    best = static_cast<std::size_t>(j);
                }
            }
            const double bw = bands[best] == Band::unlicensed ? sc_.b_unlicensed
                                                              : sc_.b_cell_licensed;
            acc += bw * spectral * user_success(ux, uy, best, bands, sc_.noise_c);
        }
        rates.cellular_bps = acc / n_users;
    }
    if (!entity_ap_[entity].empty()) {
        RngStream rng(seed_, "wifi-users", nonce * 1000003ULL + entity);
        double acc = 0.0;
        for (int u = 0; u < n_users; ++u) {
            // users cluster around their entity's APs within the cell range
            const int ap = entity_ap_[entity][rng.uniform_int(entity_ap_[entity].size())];
            const double r = geom::sample_wifi_serving_distance(sc_.rho_w, rng);
            const double th = 2.0 * units::pi * rng.uniform();
            const double ux = x_[ap] + r * std::cos(th);
            const double uy = y_[ap] + r * std::sin(th);
            const double bw = bands[ap] == Band::unlicensed ? sc_.b_unlicensed
                                                            : sc_.b_wifi_legacy;
            acc += bw * spectral *
                   user_success(ux, uy, static_cast<std::size_t>(ap), bands, sc_.noise_w);
        }
        rates.wifi_bps = acc / n_users;
    }
    return rates;
}

std::vector<EntityRates> simulate_datarate_empirical(const Deployment& deployment,
                                                     const analytic::Scenario& sc,
                                                     std::span<const EntityAction> profile,
                                                     int n_users, std::uint64_t seed) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& p : deployment.points) {
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
    EmpiricalNetwork net(deployment, sc, static_cast<int>(profile.size()),
                         Rect{xmin, xmax, ymin, ymax}, seed);
    std::vector<EntityRates> out;
    for (int i = 0; i < static_cast<int>(profile.size()); ++i) {
        const int bs = net.entity_element_count(i, Tier::cellular);
        const int ap = net.entity_element_count(i, Tier::wifi);
        if (bs == 0 && ap == 0)
            throw DataError("simulate_datarate_empirical: entity owns no elements");
        out.push_back(net.entity_rates(i, profile, n_users, 0));
    }
    return out;
}

}  // namespace coex::mc
