#include "coex/radio.hpp"

#include <cmath>
#include <limits>

namespace coex::radio {

double signal_power(double p_tx, double distance, double alpha, double fading) {
    if (!(p_tx > 0.0)) throw ParameterError("signal_power: p_tx must be > 0");
    if (fading < 0.0) throw ParameterError("signal_power: fading must be >= 0");
    if (distance < 0.0) throw ParameterError("signal_power: negative distance");
    if (distance == 0.0) throw DomainError("signal_power: zero link distance");
    return p_tx * fading * std::pow(distance, -alpha);
}

double aggregate_interference(const geom::Deployment& interferers, const TxPowers& powers,
                              double alpha, RngStream& rng, double ux, double uy) {
    if (alpha <= 2.0)
        throw DomainError("aggregate_interference: alpha <= 2 diverges on the plane");
    double total = 0.0;
    const double min2 = geom::min_separation_m * geom::min_separation_m;
    for (const auto& p : interferers.points) {
        const double d2 = std::max(p.dist2(ux, uy), min2);
        total += powers.of(p.tier) * rng.exponential() * std::pow(d2, -0.5 * alpha);
    }
    return total;
}

double sinr(double signal, double interference, double noise) {
    if (signal < 0.0 || interference < 0.0 || noise < 0.0)
        throw ParameterError("sinr: negative input");
    const double denom = noise + interference;
    if (signal == 0.0) return 0.0;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return signal / denom;
}

int nearest_index(const geom::Deployment& d, geom::Tier tier, geom::Band band, double ux,
                  double uy) {
    int best = -1;
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& p = d[i];
        if (p.tier != tier || p.band != band) continue;
        const double d2 = p.dist2(ux, uy);
        if (d2 < best2) {
            best2 = d2;
            best = static_cast<int>(i);
        }
    }
    return best;
}

int uniform_in_range_index(const geom::Deployment& d, geom::Tier tier, geom::Band band,
                           double range, RngStream& rng, double ux, double uy) {
    const double r2 = range * range;
    std::vector<int> in_range;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& p = d[i];
        if (p.tier == tier && p.band == band && p.dist2(ux, uy) < r2)
            in_range.push_back(static_cast<int>(i));
    }
    if (in_range.empty()) return -1;
    return in_range[rng.uniform_int(in_range.size())];
}

}  // namespace coex::radio
