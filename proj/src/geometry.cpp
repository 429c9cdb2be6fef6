#include "coex/geometry.hpp"

#include <cmath>
#include <numeric>

namespace coex::geom {

Deployment sample_ppp(double intensity, const Window& window, Tier tier, RngStream& rng) {
    if (intensity < 0.0) throw ParameterError("sample_ppp: intensity must be >= 0");
    const std::uint64_t n = rng.poisson(intensity * window.area());
    Deployment out;
    out.points.reserve(n);
    const double min2 = min_separation_m * min_separation_m;
    for (std::uint64_t i = 0; i < n; ++i) {
        double x, y;
        do {
            const double r = window.radius_m * std::sqrt(rng.uniform());
            const double th = 2.0 * units::pi * rng.uniform();
            x = r * std::cos(th);
            y = r * std::sin(th);
        } while (x * x + y * y < min2);
        out.points.push_back({x, y, tier, Band::none, -1, false});
    }
    return out;
}

Deployment carve_php(const Deployment& points, const ExclusionZones& zones) {
    Deployment out;
    out.points.reserve(points.size());
    for (const auto& p : points)
        if (!zones.covers(p.x, p.y)) out.points.push_back(p);
    return out;
}

void tag_zones(Deployment& points, const ExclusionZones& zones) {
    for (auto& p : points.points) p.in_zone = zones.covers(p.x, p.y);
}

double thinned_intensity(double lambda, double lambda_z, double rho) {
    if (lambda < 0.0 || lambda_z < 0.0 || rho < 0.0)
        throw ParameterError("thinned_intensity: arguments must be >= 0");
    return lambda * std::exp(-units::pi * lambda_z * rho * rho);
}

void tag_band(Deployment& points, double delta, RngStream& rng) {
    if (delta < 0.0 || delta > 1.0)
        throw ParameterError("tag_band: delta must lie in [0, 1]");
    for (auto& p : points.points) {
        const double u = rng.uniform();  // one draw per point, zone flag or not
        p.band = (!p.in_zone && u < delta) ? Band::unlicensed : Band::licensed;
    }
}

std::pair<Deployment, Deployment> split_band(const Deployment& points, double delta,
                                             RngStream& rng) {
    Deployment tagged = points;
    tag_band(tagged, delta, rng);
    Deployment lic, unl;
    for (const auto& p : tagged.points)
        (p.band == Band::unlicensed ? unl : lic).points.push_back(p);
    return {std::move(lic), std::move(unl)};
}

void partition_entities(Deployment& points, std::span<const double> shares, RngStream& rng) {
    if (shares.empty()) throw ParameterError("partition_entities: empty share vector");
    double sum = 0.0;
    for (double s : shares) {
        if (s < 0.0) throw ParameterError("partition_entities: negative share");
        sum += s;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ParameterError("partition_entities: shares must sum to 1");
    for (auto& p : points.points) {
        const double u = rng.uniform();
        double acc = 0.0;
        int owner = static_cast<int>(shares.size()) - 1;
        for (std::size_t i = 0; i < shares.size(); ++i) {
            acc += shares[i];
            if (u < acc) {
                owner = static_cast<int>(i);
                break;
            }
        }
        p.owner = owner;
    }
}

double sample_wifi_serving_distance(double rho_w, RngStream& rng) {
    if (!(rho_w > 0.0)) throw ParameterError("sample_wifi_serving_distance: rho_w must be > 0");
    return rho_w * std::sqrt(rng.uniform());
}

}  // namespace coex::geom
